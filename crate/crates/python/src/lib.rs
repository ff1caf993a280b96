//! Python bindings: `import bhcodes`.

use bhcodes_core::algebra::{self, GaloisField};
use bhcodes_core::bose_chowla::{self as bc, BhSequence, GroupMode};
use bhcodes_core::bounds::{self, UPolicy};
use bhcodes_core::code::{self, CodeInstance, Distance};
use bhcodes_core::mu::{self, MuResult};
use bhcodes_core::table;
use bhcodes_core::{Budget, Error};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    bhcodes,
    BudgetExceeded,
    PyException,
    "An enumeration would exceed the configured budget."
);
create_exception!(
    bhcodes,
    Impossible,
    PyValueError,
    "No modulus of the requested degree avoids the point set."
);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Impossible { .. } => Impossible::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(value: Option<u64>) -> PyResult<Budget> {
    match value {
        Some(v) => Ok(Budget(v)),
        None => Budget::from_env().map_err(py_err),
    }
}

fn policy(name: &str) -> PyResult<UPolicy> {
    name.parse().map_err(py_err)
}

/// `(p, m)` with `n = p^m`, or `None`.
#[pyfunction]
fn is_prime_power(n: u64) -> PyResult<Option<(u64, u32)>> {
    Ok(algebra::is_prime_power(n).map_err(py_err)?.map(|pp| (pp.p(), pp.m())))
}

#[pyfunction]
fn smallest_prime_power_geq(n: u64) -> PyResult<u64> {
    Ok(algebra::smallest_prime_power_geq(n).map_err(py_err)?.q())
}

fn mu_tuple(r: MuResult) -> (BigUint, String, Option<String>) {
    (r.value, r.case.tag().to_string(), r.witness.map(|p| p.to_string()))
}

/// Closed-form `mu(q, n, h)` as `(value, case, witness)`.
#[pyfunction]
fn mu_closed_form(q: u64, n: usize, h: u64) -> PyResult<(BigUint, String, Option<String>)> {
    let field = GaloisField::new(q).map_err(py_err)?;
    let points: Vec<_> = field.elements().into_iter().take(n).collect();
    if points.len() != n {
        return Err(PyValueError::new_err(format!("GF({q}) has fewer than {n} elements")));
    }
    mu::mu_optimal(&field, &points, h).map(mu_tuple).map_err(py_err)
}

/// Exhaustive minimum over moduli avoiding the given points (field element indices).
#[pyfunction]
#[pyo3(signature = (q, points, h, budget_limit=None))]
fn mu_brute_force(
    q: u64,
    points: Vec<u64>,
    h: u64,
    budget_limit: Option<u64>,
) -> PyResult<(BigUint, String, Option<String>)> {
    let field = GaloisField::new(q).map_err(py_err)?;
    let points = points
        .into_iter()
        .map(|i| field.element(i))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    mu::mu_brute_force(&field, &points, h, budget(budget_limit)?)
        .map(mu_tuple)
        .map_err(py_err)
}

/// Upper bound on the least group order carrying a length-`n` B_h-sequence.
#[pyclass(module = "bhcodes", frozen, get_all)]
struct CBound {
    n: u64,
    h: u64,
    value: BigUint,
    route: String,
    q: u64,
}

#[pymethods]
impl CBound {
    fn __repr__(&self) -> String {
        format!(
            "CBound(n={}, h={}, value={}, route='{}', q={})",
            self.n, self.h, self.value, self.route, self.q
        )
    }
}

#[pyfunction]
fn c_upper(n: u64, h: u64) -> PyResult<CBound> {
    let c = mu::c_upper(n, h).map_err(py_err)?;
    Ok(CBound {
        n: c.n,
        h: c.h,
        value: c.value,
        route: c.route.to_string(),
        q: c.q_used.q(),
    })
}

/// A lower bound on `A(n, d)`.
#[pyclass(module = "bhcodes", frozen, get_all)]
struct BoundRecord {
    n: u64,
    d: u64,
    length: u64,
    h: u64,
    lower_bound: BigUint,
    log2: String,
    u: u64,
    policy: String,
    c: Option<BigUint>,
    route: Option<String>,
    /// `(w, bound, method)` for every summed weight class.
    per_weight: Vec<(u64, BigUint, String)>,
}

#[pymethods]
impl BoundRecord {
    fn __repr__(&self) -> String {
        format!(
            "BoundRecord(n={}, d={}, log2='{}', u={}, policy='{}')",
            self.n, self.d, self.log2, self.u, self.policy
        )
    }
}

impl From<bounds::BoundRecord> for BoundRecord {
    fn from(r: bounds::BoundRecord) -> Self {
        BoundRecord {
            n: r.n,
            d: r.d,
            length: r.length,
            h: r.h,
            lower_bound: r.lower_bound,
            log2: r.log2,
            u: r.u_used,
            policy: r.policy.to_string(),
            c: r.c_used.as_ref().map(|c| c.value.clone()),
            route: r.c_used.as_ref().map(|c| c.route.to_string()),
            per_weight: r
                .per_weight
                .into_iter()
                .map(|b| (b.w, b.best, b.method.to_string()))
                .collect(),
        }
    }
}

#[pyfunction]
#[pyo3(signature = (n, d, policy_name="best"))]
fn a_lower(py: Python<'_>, n: u64, d: u64, policy_name: &str) -> PyResult<BoundRecord> {
    let p = policy(policy_name)?;
    py.detach(|| bounds::a_lower(n, d, p)).map(Into::into).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (nmin, nmax, dmin, dmax, policy_name="best"))]
fn table_rows(
    py: Python<'_>,
    nmin: u64,
    nmax: u64,
    dmin: u64,
    dmax: u64,
    policy_name: &str,
) -> PyResult<Vec<BoundRecord>> {
    let p = policy(policy_name)?;
    let rows = py
        .detach(|| table::generate_table(nmin, nmax, dmin, dmax, p))
        .map_err(py_err)?;
    Ok(rows.into_iter().map(Into::into).collect())
}

/// `round(log2(x), 4)` as a string with four decimals.
#[pyfunction]
fn log2_fixed(x: BigUint) -> PyResult<String> {
    bounds::log2_fixed(&x).map_err(py_err)
}

#[pyfunction]
fn binomial(n: u64, w: u64) -> PyResult<BigUint> {
    bounds::binomial(n, w).map_err(py_err)
}

/// Hamming bound `2^n / V(n, h)` as `(numerator, denominator)` in lowest terms.
#[pyfunction]
fn sphere_packing(n: u64, h: u64) -> PyResult<(BigUint, BigUint)> {
    let r = bounds::sphere_packing(n, h).map_err(py_err)?;
    Ok((r.numer().clone(), r.denom().clone()))
}

/// Rows of the bundled table as `(n, d, new, old, ratio)` strings.
#[pyfunction]
fn bundled_fixture() -> Vec<(u64, u64, String, String, String)> {
    table::bundled_fixture()
        .rows
        .into_iter()
        .map(|r| {
            (
                r.n,
                r.d,
                r.new_log2.to_string(),
                r.old_log2.to_string(),
                r.ratio.to_string(),
            )
        })
        .collect()
}

type Collision = (Vec<usize>, Vec<usize>);

/// A generalized Bose–Chowla B_h-sequence.
#[pyclass(module = "bhcodes", frozen)]
struct Sequence(BhSequence);

#[pymethods]
impl Sequence {
    /// Mode `"a"` uses `n` points in the full unit group; mode `"b"` uses
    /// `n - 1` points plus the identity modulo scalars.
    #[new]
    #[pyo3(signature = (q, h, n, mode="a"))]
    fn new(q: u64, h: u64, n: usize, mode: &str) -> PyResult<Self> {
        let field = GaloisField::new(q).map_err(py_err)?;
        let seq = match mode {
            "a" => bc::build_sequence_a(&field, h, n),
            "b" if n >= 1 => bc::build_sequence_b(&field, h, n - 1),
            _ => {
                return Err(PyValueError::new_err(format!(
                    "mode must be 'a' or 'b' (with n >= 1), got {mode:?}"
                )))
            }
        };
        seq.map(Sequence).map_err(py_err)
    }

    /// The smallest construction for a length-`n` sequence.
    #[staticmethod]
    fn planned(n: u64, h: u64) -> PyResult<Self> {
        bc::plan_sequence(n, h)
            .and_then(|p| p.build())
            .map(Sequence)
            .map_err(py_err)
    }

    #[getter]
    fn h(&self) -> u64 {
        self.0.h()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.0.group().field().q()
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.0.mode() {
            GroupMode::FullUnitGroup => "a",
            GroupMode::ModScalars => "b",
        }
    }

    #[getter]
    fn modulus(&self) -> String {
        self.0.modulus().to_string()
    }

    #[getter]
    fn group_order(&self) -> BigUint {
        self.0.group_order().clone()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.0.elements().iter().map(|e| e.to_string()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// `phi` of a 0/1 string, as the canonical representative.
    fn phi(&self, word: &str) -> PyResult<String> {
        let word = word.parse().map_err(py_err)?;
        Ok(bc::phi(&word, &self.0).map_err(py_err)?.rep().to_string())
    }

    /// `(is_bh, multisets_checked, collision)`.
    #[pyo3(signature = (budget_limit=None))]
    fn verify(&self, py: Python<'_>, budget_limit: Option<u64>) -> PyResult<(bool, u64, Option<Collision>)> {
        let b = budget(budget_limit)?;
        let report = py.detach(|| bc::verify_bh(&self.0, b)).map_err(py_err)?;
        Ok((report.is_bh(), report.checked, report.collision))
    }

    fn __repr__(&self) -> String {
        format!(
            "Sequence(q={}, h={}, mode='{}', len={}, modulus='{}')",
            self.q(),
            self.h(),
            self.mode(),
            self.0.len(),
            self.modulus()
        )
    }
}

/// A verified binary code.
#[pyclass(module = "bhcodes", frozen)]
struct Code {
    inner: CodeInstance,
    min_distance: Option<usize>,
}

#[pymethods]
impl Code {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn words(&self) -> Vec<String> {
        self.inner.words.iter().map(|w| w.to_string()).collect()
    }

    #[getter]
    fn claimed_distance(&self) -> usize {
        self.inner.claimed_d
    }

    /// `None` when the code has fewer than two words.
    #[getter]
    fn min_distance(&self) -> Option<usize> {
        self.min_distance
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verified
    }

    fn export(&self) -> String {
        self.inner.export()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }
}

/// Largest weight-`w` bucket (or a union over `w = u mod 2h + 2`), verified exhaustively.
#[pyfunction]
#[pyo3(signature = (n, h, w=None, union=None, budget_limit=None))]
fn construct(
    py: Python<'_>,
    n: u64,
    h: u64,
    w: Option<usize>,
    union: Option<usize>,
    budget_limit: Option<u64>,
) -> PyResult<Code> {
    let b = budget(budget_limit)?;
    py.detach(|| -> Result<Code, Error> {
        let seq = bc::plan_sequence(n, h)?.build()?;
        let mut inner = match (w, union) {
            (Some(w), None) => code::build_constant_weight_code(&seq, w, b)?,
            (None, Some(u)) => code::build_union_code(&seq, u, b)?,
            _ => return Err(Error::InvalidArgument("give exactly one of w and union".into())),
        };
        let report = code::verify_code(&mut inner, b)?;
        let min_distance = match report.min_distance {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        };
        Ok(Code { inner, min_distance })
    })
    .map_err(py_err)
}

#[pyfunction]
fn pigeonhole_floor(n: u64, w: u64, order: BigUint) -> PyResult<BigUint> {
    code::pigeonhole_floor(n, w, &order).map_err(py_err)
}

#[pymodule]
fn bhcodes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("Impossible", m.py().get_type::<Impossible>())?;
    m.add_class::<CBound>()?;
    m.add_class::<BoundRecord>()?;
    m.add_class::<Sequence>()?;
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(is_prime_power, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_prime_power_geq, m)?)?;
    m.add_function(wrap_pyfunction!(mu_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(mu_brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(c_upper, m)?)?;
    m.add_function(wrap_pyfunction!(a_lower, m)?)?;
    m.add_function(wrap_pyfunction!(table_rows, m)?)?;
    m.add_function(wrap_pyfunction!(log2_fixed, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_packing, m)?)?;
    m.add_function(wrap_pyfunction!(bundled_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(pigeonhole_floor, m)?)?;
    Ok(())
}
