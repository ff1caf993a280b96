//! Exact lower bounds on `A(n, d, w)` and `A(n, d)`.
//!
//! Per weight class the bound is the better of the pigeonhole bound
//! `ceil(C(n, w) / c(n, h))` and the constant-weight Gilbert–Varshamov bound;
//! classes congruent mod `2h + 2` are then summed. Odd distances use
//! `A(n, 2h + 1) = A(n + 1, 2h + 2)`. Everything is exact integer arithmetic
//! until the final logarithm.

mod log2;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub use self::log2::{log2_approx, log2_fixed, log2_fixed_ratio, log2_scaled};
use crate::mu::{c_upper, CBound};
use crate::{Error, Result};

pub type BigCount = BigUint;

/// Largest `n` accepted by [`binomial`].
pub const MAX_BINOMIAL_N: u64 = 10_000;

fn row_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigUint>>>> {
    static ROWS: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigUint>>>>> = OnceLock::new();
    ROWS.get_or_init(Default::default)
}

/// `[C(n, 0), ..., C(n, n)]`, computed once per `n` and shared.
pub fn binomial_row(n: u64) -> Result<Arc<Vec<BigUint>>> {
    if n > MAX_BINOMIAL_N {
        return Err(Error::invalid(format!(
            "binomial rows are limited to n <= {MAX_BINOMIAL_N}, got {n}"
        )));
    }
    if let Some(row) = row_cache().read().expect("cache lock").get(&n) {
        return Ok(row.clone());
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    for w in 0..=n {
        row.push(c.clone());
        c = c * (n - w) / (w + 1);
    }
    let row = Arc::new(row);
    row_cache().write().expect("cache lock").insert(n, row.clone());
    Ok(row)
}

pub fn binomial(n: u64, w: u64) -> Result<BigUint> {
    if w > n {
        return Err(Error::invalid(format!("C({n}, {w}) needs w <= n")));
    }
    if n > MAX_BINOMIAL_N {
        return Err(Error::invalid(format!(
            "binomials are limited to n <= {MAX_BINOMIAL_N}, got {n}"
        )));
    }
    let k = w.min(n - w);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// `ceil(C(n, w) / c(n, h))`.
pub fn cw_bound_bc(n: u64, w: u64, c: &CBound) -> Result<BigUint> {
    if c.value.is_zero() {
        return Err(Error::invalid("c(n, h) bound must be positive"));
    }
    if w > n {
        return Err(Error::invalid(format!("weight {w} exceeds length {n}")));
    }
    Ok(binomial_row(n)?[w as usize].div_ceil(&c.value))
}

/// Size of the set of weight-`w` words within distance `2h` of a fixed weight-`w` word.
pub fn gv_denominator(n: u64, h: u64, w: u64) -> Result<BigUint> {
    if w > n {
        return Err(Error::invalid(format!("weight {w} exceeds length {n}")));
    }
    let mut sum = BigUint::zero();
    for i in 0..=h.min(w).min(n - w) {
        sum += binomial(w, i)? * binomial(n - w, i)?;
    }
    Ok(sum)
}

/// `ceil(C(n, w) / sum_{i <= h} C(w, i) C(n - w, i))`.
pub fn cw_bound_gv(n: u64, h: u64, w: u64) -> Result<BigUint> {
    let denominator = gv_denominator(n, h, w)?;
    Ok(binomial_row(n)?[w as usize].div_ceil(&denominator))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassMethod {
    BoseChowla,
    GilbertVarshamov,
}

impl fmt::Display for ClassMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassMethod::BoseChowla => "BC",
            ClassMethod::GilbertVarshamov => "GV",
        })
    }
}

/// Lower bound on `A(n, 2h + 2, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassBound {
    pub n: u64,
    pub h: u64,
    pub w: u64,
    pub bc_value: BigUint,
    pub gv_value: BigUint,
    pub best: BigUint,
    pub method: ClassMethod,
}

pub fn weight_class_bound(n: u64, h: u64, w: u64, c: &CBound) -> Result<WeightClassBound> {
    let bc_value = cw_bound_bc(n, w, c)?;
    let gv_value = cw_bound_gv(n, h, w)?;
    let (best, method) = if gv_value > bc_value {
        (gv_value.clone(), ClassMethod::GilbertVarshamov)
    } else {
        (bc_value.clone(), ClassMethod::BoseChowla)
    };
    Ok(WeightClassBound {
        n,
        h,
        w,
        bc_value,
        gv_value,
        best,
        method,
    })
}

/// How the residue `u` of the summed weight classes is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UPolicy {
    /// `u = floor(N / 2)` for code length `N`.
    Heuristic,
    /// Every residue is tried and the largest total kept.
    #[default]
    Best,
}

impl fmt::Display for UPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UPolicy::Heuristic => "fixed",
            UPolicy::Best => "best",
        })
    }
}

impl FromStr for UPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" | "heuristic" => Ok(UPolicy::Heuristic),
            "best" => Ok(UPolicy::Best),
            _ => Err(Error::invalid(format!(
                "unknown u policy {s:?} (expected fixed or best)"
            ))),
        }
    }
}

/// A lower bound on `A(n, d)` with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub n: u64,
    pub d: u64,
    /// Length of the even-distance problem actually solved (`n + 1` for odd `d`).
    pub length: u64,
    /// Strength: the solved distance is `2h + 2`.
    pub h: u64,
    pub lower_bound: BigUint,
    pub log2: String,
    pub u_used: u64,
    pub policy: UPolicy,
    /// Weight classes in the chosen residue class (empty for the degenerate `d > n`).
    pub per_weight: Vec<WeightClassBound>,
    pub c_used: Option<CBound>,
}

impl BoundRecord {
    pub fn count_by_method(&self, method: ClassMethod) -> usize {
        self.per_weight.iter().filter(|b| b.method == method).count()
    }
}

fn all_weight_classes(length: u64, h: u64, c: &CBound) -> Result<Vec<WeightClassBound>> {
    (0..=length).map(|w| weight_class_bound(length, h, w, c)).collect()
}

#[allow(clippy::too_many_arguments)]
fn record_for_class(
    n: u64,
    d: u64,
    length: u64,
    h: u64,
    u: u64,
    policy: UPolicy,
    classes: &[WeightClassBound],
    c: &CBound,
) -> Result<BoundRecord> {
    let modulus = 2 * h + 2;
    let per_weight: Vec<_> = classes.iter().filter(|b| b.w % modulus == u).cloned().collect();
    let lower_bound: BigUint = per_weight.iter().map(|b| &b.best).sum();
    Ok(BoundRecord {
        n,
        d,
        length,
        h,
        log2: log2_fixed(&lower_bound)?,
        lower_bound,
        u_used: u,
        policy,
        per_weight,
        c_used: Some(c.clone()),
    })
}

/// `A(n, 2h + 2) >= sum over w = u (mod 2h + 2) of the per-weight bounds`.
pub fn union_bound(n: u64, h: u64, u: u64, c: &CBound) -> Result<BoundRecord> {
    if u >= 2 * h + 2 {
        return Err(Error::invalid(format!("residue {u} out of range mod {}", 2 * h + 2)));
    }
    let classes = all_weight_classes(n, h, c)?;
    record_for_class(n, 2 * h + 2, n, h, u, UPolicy::Heuristic, &classes, c)
}

/// Un-ceiled rational version of [`union_bound`]'s total, for diagnostics.
pub fn union_bound_rational(n: u64, h: u64, u: u64, c: &CBound) -> Result<Ratio<BigUint>> {
    let mut total = Ratio::zero();
    for w in (u..=n).step_by(2 * h as usize + 2) {
        let binom = binomial(n, w)?;
        let bc = Ratio::new(binom.clone(), c.value.clone());
        let gv = Ratio::new(binom, gv_denominator(n, h, w)?);
        total += bc.max(gv);
    }
    Ok(total)
}

/// Reduces `(n, d)` to the even-distance problem `(length, h)` it is solved as.
pub fn even_problem(n: u64, d: u64) -> Result<(u64, u64)> {
    if d < 3 {
        return Err(Error::invalid(format!("distance must be at least 3, got {d}")));
    }
    if n == 0 {
        return Err(Error::invalid("length must be at least 1"));
    }
    Ok(if d % 2 == 1 {
        (n + 1, (d - 1) / 2)
    } else {
        (n, (d - 2) / 2)
    })
}

/// Lower bound on `A(n, d)` for `d >= 3`.
pub fn a_lower(n: u64, d: u64, policy: UPolicy) -> Result<BoundRecord> {
    let (length, h) = even_problem(n, d)?;
    let modulus = 2 * h + 2;
    let heuristic_u = (length / 2) % modulus;
    if d > n {
        // Two distinct words are at most n apart, so only one word fits.
        let one = BigUint::one();
        return Ok(BoundRecord {
            n,
            d,
            length,
            h,
            log2: log2_fixed(&one)?,
            lower_bound: one,
            u_used: heuristic_u,
            policy,
            per_weight: Vec::new(),
            c_used: None,
        });
    }
    let c = c_upper(length, h)?;
    let classes = all_weight_classes(length, h, &c)?;
    let total = |u: u64| -> BigUint { classes.iter().filter(|b| b.w % modulus == u).map(|b| &b.best).sum() };
    let u = match policy {
        UPolicy::Heuristic => heuristic_u,
        UPolicy::Best => {
            let mut best_u = heuristic_u;
            let mut best = total(heuristic_u);
            for u in 0..modulus {
                let t = total(u);
                if t > best {
                    best = t;
                    best_u = u;
                }
            }
            best_u
        }
    };
    record_for_class(n, d, length, h, u, policy, &classes, &c)
}

/// Hamming bound `B(n, h) = 2^n / sum_{i <= h} C(n, i)`.
pub fn sphere_packing(n: u64, h: u64) -> Result<Ratio<BigUint>> {
    if h > n {
        return Err(Error::invalid(format!("radius {h} exceeds length {n}")));
    }
    let row = binomial_row(n)?;
    let ball: BigUint = row[..=h as usize].iter().sum();
    Ok(Ratio::new(BigUint::one() << n, ball))
}

/// `a_lower(n, d) / B(n, (d - 1) / 2)` for odd `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityRatio {
    pub value: Ratio<BigUint>,
    /// Six significant digits in scientific notation.
    pub display: String,
}

pub fn density_ratio(n: u64, d: u64) -> Result<DensityRatio> {
    if d.is_multiple_of(2) {
        return Err(Error::invalid("density ratios are defined for odd distances"));
    }
    let record = a_lower(n, d, UPolicy::Best)?;
    let value = Ratio::from(record.lower_bound) / sphere_packing(n, (d - 1) / 2)?;
    let l2 = log2_approx(value.numer(), value.denom())?;
    let l10 = l2 * std::f64::consts::LOG10_2;
    let mut exponent = l10.floor();
    let mut mantissa = 10f64.powf(l10 - exponent);
    if format!("{mantissa:.5}").starts_with("10") {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    let display = format!("{mantissa:.5}e{exponent}");
    Ok(DensityRatio { value, display })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu::CRoute;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn fake_c(value: u64) -> CBound {
        CBound {
            n: 0,
            h: 0,
            value: big(value),
            route: CRoute::Direct,
            q_used: crate::algebra::PrimePower::new(2).unwrap(),
            alternative: None,
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), big(6));
        assert_eq!(binomial(17, 0).unwrap(), big(1));
        let b = binomial(280, 140).unwrap();
        assert_eq!(log2_fixed(&b).unwrap(), "275.6083");
        assert!(binomial(3, 4).is_err());
        assert!(binomial(10_001, 1).is_err());
        assert_eq!(binomial_row(280).unwrap()[140], b);
    }

    #[test]
    fn pascal_rule() {
        for n in 1..60u64 {
            let prev = binomial_row(n - 1).unwrap();
            let row = binomial_row(n).unwrap();
            for w in 1..n as usize {
                assert_eq!(row[w], &prev[w - 1] + &prev[w]);
            }
        }
    }

    #[test]
    fn per_weight_examples() {
        assert_eq!(cw_bound_bc(6, 3, &fake_c(31)).unwrap(), big(1));
        assert_eq!(cw_bound_bc(6, 0, &fake_c(31)).unwrap(), big(1));
        assert_eq!(cw_bound_gv(4, 1, 2).unwrap(), big(2));
        assert_eq!(cw_bound_gv(9, 2, 0).unwrap(), big(1));
        assert_eq!(cw_bound_gv(9, 2, 9).unwrap(), big(1));

        let bc = cw_bound_bc(280, 140, &fake_c(78_680)).unwrap();
        assert_eq!(bc, binomial(280, 140).unwrap().div_ceil(&big(78_680)));
        assert_eq!(log2_fixed(&bc).unwrap(), "259.3446");
    }

    #[test]
    fn union_examples() {
        let c = c_upper(4, 1).unwrap();
        let r = union_bound(4, 1, 2, &c).unwrap();
        assert_eq!(r.lower_bound, big(2));
        assert_eq!(r.per_weight.len(), 1);

        let r = union_bound(4, 1, 0, &c).unwrap();
        assert!(r.per_weight.iter().any(|b| b.w == 0 && b.best >= big(1)));

        let c = c_upper(280, 2).unwrap();
        let r = union_bound(280, 2, 140 % 6, &c).unwrap();
        assert_eq!(r.log2, "261.1513");
        assert!(union_bound(280, 2, 6, &c).is_err());
    }

    #[test]
    fn table_rows() {
        for (n, d, expect) in [(279, 5, "261.1513"), (168, 9, "136.0752"), (150, 11, "111.2378")] {
            for policy in [UPolicy::Heuristic, UPolicy::Best] {
                assert_eq!(a_lower(n, d, policy).unwrap().log2, expect, "({n}, {d}) {policy}");
            }
        }
    }

    #[test]
    fn odd_distance_shift() {
        for n in 5..60u64 {
            for h in 1..4u64 {
                for policy in [UPolicy::Heuristic, UPolicy::Best] {
                    let odd = a_lower(n, 2 * h + 1, policy).unwrap();
                    let even = a_lower(n + 1, 2 * h + 2, policy).unwrap();
                    assert_eq!(odd.lower_bound, even.lower_bound, "n = {n}, h = {h}");
                }
            }
        }
    }

    #[test]
    fn best_policy_dominates() {
        for n in 3..80u64 {
            for d in 3..10u64 {
                let fixed = a_lower(n, d, UPolicy::Heuristic).unwrap();
                let best = a_lower(n, d, UPolicy::Best).unwrap();
                assert!(best.lower_bound >= fixed.lower_bound);
                assert!(best.lower_bound >= big(1));
            }
        }
    }

    #[test]
    fn degenerate_distance() {
        let r = a_lower(3, 7, UPolicy::Best).unwrap();
        assert_eq!(r.lower_bound, big(1));
        assert!(r.c_used.is_none());
        assert!(a_lower(7, 2, UPolicy::Best).is_err());
    }

    #[test]
    fn sphere_packing_examples() {
        assert_eq!(sphere_packing(7, 1).unwrap(), Ratio::from(big(16)));
        assert_eq!(sphere_packing(10, 0).unwrap(), Ratio::from(big(1024)));
        assert_eq!(sphere_packing(23, 3).unwrap(), Ratio::from(big(4096)));
        assert!(sphere_packing(2, 3).is_err());
    }

    #[test]
    fn density_ratio_is_at_most_one() {
        for n in 4..100u64 {
            for d in [3u64, 5, 7, 9] {
                let r = density_ratio(n, d).unwrap();
                assert!(r.value <= Ratio::one(), "({n}, {d})");
            }
        }
        let r = density_ratio(7, 3).unwrap();
        assert!(r.value <= Ratio::one());
        assert!(density_ratio(7, 4).is_err());
    }

    #[test]
    fn density_ratio_279_5() {
        let r = density_ratio(279, 5).unwrap();
        let ball = &binomial_row(279).unwrap()[..=2].iter().sum::<BigUint>();
        let expect = Ratio::new(
            a_lower(279, 5, UPolicy::Best).unwrap().lower_bound * ball,
            BigUint::one() << 279u32,
        );
        assert_eq!(r.value, expect);
        let l2 = log2_approx(r.value.numer(), r.value.denom()).unwrap();
        let b = sphere_packing(279, 2).unwrap();
        let lb = log2_approx(b.numer(), b.denom()).unwrap();
        assert!((l2 - (261.1513 - lb)).abs() < 1e-3);
    }
}
