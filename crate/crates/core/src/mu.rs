//! Unit counts of quotient rings `F_q[X]/P(X)` and the minimum `mu(q, n, h)`
//! over moduli of degree `h` that avoid a prescribed point set.
//!
//! Three independent routes to `mu(q, n, h)` live here: the closed-form case
//! table ([`mu_closed_form`]), an exhaustive search over all monic moduli
//! ([`mu_brute_force`]), and an explicit optimal modulus
//! ([`construct_optimal_poly`]) whose unit count is computed from its
//! factorization pattern ([`mu_of_poly`]).

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{
    is_prime_power, smallest_prime_power_geq, FieldElement, GaloisField, Irreducibles, Polynomial, PrimePower,
};
use crate::{Budget, Error, Result};

/// Which row of the case table applies to `(q, n, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuCase {
    /// `q >= n + h`: `(q-1)^h`.
    QGeNPlusH,
    /// `n < q < n + h`, `n + h - q` even.
    StrictEven,
    /// `n < q < n + h`, `n + h - q` odd.
    StrictOdd,
    /// `q = n`, `h` even.
    EqEven,
    /// `q = n`, `h` odd (and `h >= 3`).
    EqOdd,
}

impl MuCase {
    pub fn tag(self) -> &'static str {
        match self {
            MuCase::QGeNPlusH => "Q_GE_N_PLUS_H",
            MuCase::StrictEven => "STRICT_EVEN",
            MuCase::StrictOdd => "STRICT_ODD",
            MuCase::EqEven => "EQ_EVEN",
            MuCase::EqOdd => "EQ_ODD",
        }
    }
}

impl fmt::Display for MuCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub value: BigUint,
    pub case: MuCase,
    pub witness: Option<Polynomial>,
}

/// Number of units of `F_q[X]/P(X)`.
///
/// Only the factorization pattern matters: an irreducible factor of degree
/// `d` and multiplicity `e` contributes `q^(d(e-1)) (q^d - 1)`. The pattern
/// is read off by distinct-degree factorization, peeling repeated factors
/// off with repeated gcds.
pub fn mu_of_poly(p: &Polynomial) -> Result<BigUint> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::invalid("unit count needs a modulus of degree >= 1"));
    }
    let field = p.field();
    let q = BigUint::from(field.q());
    let x = Polynomial::x(field);
    let mut rest = p.monic();
    let mut frobenius = x.clone();
    let mut result = BigUint::one();
    let mut k = 1usize;
    while let Some(deg) = rest.degree().filter(|&d| d > 0) {
        if deg < 2 * k {
            // Every factor left has degree >= k, so a single irreducible remains.
            result *= q.pow(deg as u32) - 1u32;
            break;
        }
        frobenius = frobenius.pow_mod(field.q(), &rest)?;
        let mut block = rest.gcd(&(&frobenius - &x))?;
        let block_deg = block.degree().unwrap_or(0);
        if block_deg > 0 {
            let distinct = block_deg / k;
            let before = deg;
            loop {
                let common = rest.gcd(&block)?;
                if common.degree() == Some(0) {
                    break;
                }
                rest = rest.exact_div(&common)?.expect("common divides rest");
                block = common;
            }
            let removed = before - rest.degree().unwrap_or(0);
            let qk = q.pow(k as u32);
            result *= (&qk - 1u32).pow(distinct as u32) * q.pow((removed - k * distinct) as u32);
            frobenius = frobenius.rem(&rest)?;
        }
        k += 1;
    }
    Ok(result)
}

fn check_parameters(q: u64, n: u64, h: u64) -> Result<()> {
    if n > q {
        return Err(Error::invalid(format!("point set of size {n} does not fit in GF({q})")));
    }
    if h == 0 || h >= q {
        return Err(Error::invalid(format!("need 1 <= h < q, got h = {h}, q = {q}")));
    }
    Ok(())
}

/// The row of the case table for `(q, n, h)`.
pub fn mu_case(q: u64, n: u64, h: u64) -> Result<MuCase> {
    check_parameters(q, n, h)?;
    classify(q, n, h)
}

fn classify(q: u64, n: u64, h: u64) -> Result<MuCase> {
    Ok(if q >= n + h {
        MuCase::QGeNPlusH
    } else if n < q {
        if (n + h - q).is_multiple_of(2) {
            MuCase::StrictEven
        } else {
            MuCase::StrictOdd
        }
    } else if h == 1 {
        return Err(Error::Impossible { q, n, h });
    } else if h.is_multiple_of(2) {
        MuCase::EqEven
    } else {
        MuCase::EqOdd
    })
}

/// Closed-form `mu(q, n, h)`: the least unit count of `F_q[X]/P(X)` over
/// polynomials `P` of degree `h` with no root in a fixed `n`-subset of `F_q`.
pub fn mu_closed_form(q: PrimePower, n: u64, h: u64) -> Result<MuResult> {
    let qv = q.q();
    let case = mu_case(qv, n, h)?;
    let big_q = BigUint::from(qv);
    let q1 = &big_q - 1u32;
    let q2 = &big_q * &big_q - 1u32;
    let value = match case {
        MuCase::QGeNPlusH => q1.pow(h as u32),
        MuCase::StrictEven => q1.pow((qv - n) as u32) * q2.pow(((n + h - qv) / 2) as u32),
        MuCase::StrictOdd => &big_q * q1.pow((qv - n) as u32) * q2.pow(((n + h - qv - 1) / 2) as u32),
        MuCase::EqEven => q2.pow((h / 2) as u32),
        MuCase::EqOdd => q2.pow(((h - 3) / 2) as u32) * (big_q.pow(3) - 1u32),
    };
    Ok(MuResult {
        value,
        case,
        witness: None,
    })
}

fn validate_points(field: &GaloisField, points: &[FieldElement]) -> Result<()> {
    let mut seen = HashSet::new();
    for &a in points {
        if a.index() as u64 >= field.q() {
            return Err(Error::invalid(format!(
                "point {} is not in GF({})",
                a.index(),
                field.q()
            )));
        }
        if !seen.insert(a) {
            return Err(Error::invalid(format!("point {} appears twice", field.format(a))));
        }
    }
    Ok(())
}

/// Factors (with repetition) of the optimal modulus, in the order they are
/// chosen: linear factors `X - b` for `b` outside the point set in canonical
/// order, then the first irreducible quadratics, then an irreducible cubic.
pub fn optimal_factors(field: &GaloisField, points: &[FieldElement], h: u64) -> Result<Vec<Polynomial>> {
    validate_points(field, points)?;
    let q = field.q();
    let n = points.len() as u64;
    let case = mu_case(q, n, h)?;
    let excluded: HashSet<_> = points.iter().copied().collect();
    let outside: Vec<FieldElement> = field.elements().into_iter().filter(|a| !excluded.contains(a)).collect();
    let linear = |b: &FieldElement| Polynomial::linear(field, *b);

    let (mut factors, quadratics, cubics) = match case {
        MuCase::QGeNPlusH => (outside.iter().take(h as usize).map(linear).collect::<Vec<_>>(), 0, 0),
        MuCase::StrictEven => (outside.iter().map(linear).collect(), (n + h - q) / 2, 0),
        MuCase::StrictOdd => {
            let mut f: Vec<_> = outside.iter().map(linear).collect();
            f.insert(1, linear(&outside[0]));
            (f, (n + h - q - 1) / 2, 0)
        }
        MuCase::EqEven => (Vec::new(), h / 2, 0),
        MuCase::EqOdd => (Vec::new(), (h - 3) / 2, 1),
    };
    let mut quads = Irreducibles::new(field, 2, [])?;
    for _ in 0..quadratics {
        factors.push(
            quads.next().ok_or_else(|| {
                Error::Exhausted(format!("fewer than {quadratics} irreducible quadratics over GF({q})"))
            })?,
        );
    }
    if cubics == 1 {
        factors.push(
            Irreducibles::new(field, 3, [])?
                .next()
                .expect("irreducible cubics exist"),
        );
    }
    Ok(factors)
}

/// A monic polynomial of degree `h` with no root in `points` whose unit count
/// equals `mu(q, |points|, h)`.
pub fn construct_optimal_poly(field: &GaloisField, points: &[FieldElement], h: u64) -> Result<Polynomial> {
    let factors = optimal_factors(field, points, h)?;
    Ok(factors.iter().fold(Polynomial::one(field), |acc, f| &acc * f))
}

/// Closed-form value together with the constructed optimal witness.
pub fn mu_optimal(field: &GaloisField, points: &[FieldElement], h: u64) -> Result<MuResult> {
    let witness = construct_optimal_poly(field, points, h)?;
    let mut result = mu_closed_form(field.order(), points.len() as u64, h)?;
    result.witness = Some(witness);
    Ok(result)
}

/// Unit counts of every monic polynomial of degree `h` over a field, sorted so
/// that minimum queries for many point sets are cheap.
pub struct MuSearch {
    field: GaloisField,
    h: u64,
    /// `(mu, lexicographic index, roots)` sorted by `(mu, index)`.
    entries: Vec<(BigUint, u64, Vec<FieldElement>)>,
}

impl MuSearch {
    /// Unlike the closed form, the search also runs for `h >= q`.
    pub fn new(field: &GaloisField, h: u64, budget: Budget) -> Result<Self> {
        let q = field.q();
        if h == 0 {
            return Err(Error::invalid("need h >= 1"));
        }
        let count = (q as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
        budget.check(count)?;
        let elements = field.elements();
        let mut entries = Vec::with_capacity(count as usize);
        for index in 0..count as u64 {
            let p = Polynomial::monic_from_index(field, h as usize, index);
            let roots: Vec<_> = elements.iter().copied().filter(|&a| p.eval(a).is_zero()).collect();
            entries.push((mu_of_poly(&p)?, index, roots));
        }
        entries.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        Ok(MuSearch {
            field: field.clone(),
            h,
            entries,
        })
    }

    /// Minimum unit count over moduli with no root in `points`, with the
    /// lexicographically first polynomial attaining it.
    pub fn min_avoiding(&self, points: &[FieldElement]) -> Result<MuResult> {
        validate_points(&self.field, points)?;
        let q = self.field.q();
        let n = points.len() as u64;
        let case = classify(q, n, self.h)?;
        let mut excluded = vec![false; q as usize];
        for a in points {
            excluded[a.index() as usize] = true;
        }
        let (value, index, _) = self
            .entries
            .iter()
            .find(|(_, _, roots)| roots.iter().all(|r| !excluded[r.index() as usize]))
            .ok_or(Error::Impossible { q, n, h: self.h })?;
        Ok(MuResult {
            value: value.clone(),
            case,
            witness: Some(Polynomial::monic_from_index(&self.field, self.h as usize, *index)),
        })
    }
}

/// Exhaustive minimum of `mu(P)` over all monic `P` of degree `h` without roots in `points`.
pub fn mu_brute_force(field: &GaloisField, points: &[FieldElement], h: u64, budget: Budget) -> Result<MuResult> {
    MuSearch::new(field, h, budget)?.min_avoiding(points)
}

/// Which construction certifies a bound on `c(n, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CRoute {
    /// `n - 1 = q` is a prime power: `mu(q, q, h + 1) / (q - 1)`, from a
    /// sequence in the unit group modulo scalars.
    Shifted,
    /// `mu(q, n, h)` with `q` the smallest usable prime power `>= n`, from a
    /// sequence in the full unit group.
    Direct,
}

impl fmt::Display for CRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CRoute::Shifted => "shifted",
            CRoute::Direct => "direct",
        })
    }
}

/// An upper bound on `c(n, h)`, the least order of an abelian group holding a
/// B_h-sequence of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBound {
    pub n: u64,
    pub h: u64,
    pub value: BigUint,
    pub route: CRoute,
    pub q_used: PrimePower,
    /// The losing route, when both were available.
    pub alternative: Option<(CRoute, BigUint, PrimePower)>,
}

fn shifted_route(n: u64, h: u64) -> Result<Option<(BigUint, PrimePower)>> {
    if n < 3 {
        return Ok(None);
    }
    let Some(q) = is_prime_power(n - 1)? else {
        return Ok(None);
    };
    if h + 1 >= q.q() {
        return Ok(None);
    }
    let mu = mu_closed_form(q, q.q(), h + 1)?.value;
    let (value, rem) = num_integer::Integer::div_rem(&mu, &BigUint::from(q.q() - 1));
    debug_assert!(rem.is_zero());
    Ok(Some((value, q)))
}

fn direct_route(n: u64, h: u64) -> Result<(BigUint, PrimePower)> {
    let mut q = smallest_prime_power_geq(n)?;
    loop {
        match mu_closed_form(q, n, h) {
            Ok(r) => return Ok((r.value, q)),
            Err(Error::Impossible { .. } | Error::InvalidArgument(_)) => {
                q = smallest_prime_power_geq(q.q() + 1)?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Upper bound on `c(n, h)` from the two Bose–Chowla routes. When both apply
/// the smaller value wins (ties go to the shifted route).
pub fn c_upper(n: u64, h: u64) -> Result<CBound> {
    if n < 2 || h == 0 {
        return Err(Error::invalid(format!(
            "c(n, h) needs n >= 2 and h >= 1, got n = {n}, h = {h}"
        )));
    }
    let direct = direct_route(n, h)?;
    let shifted = shifted_route(n, h)?;
    let (route, (value, q_used), alternative) = match shifted {
        Some(s) if s.0 <= direct.0 => (CRoute::Shifted, s, Some((CRoute::Direct, direct.0, direct.1))),
        Some(s) => (CRoute::Direct, direct, Some((CRoute::Shifted, s.0, s.1))),
        None => (CRoute::Direct, direct, None),
    };
    Ok(CBound {
        n,
        h,
        value,
        route,
        q_used,
        alternative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::new(q).unwrap()
    }

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Counts units of `F_q[X]/P` by brute force: residues coprime to `P`.
    fn count_units(p: &Polynomial) -> u64 {
        let f = p.field();
        let d = p.degree().unwrap();
        (0..f.q().pow(d as u32))
            .filter(|&idx| {
                let mut r = Polynomial::monic_from_index(f, d, idx).coefficients().to_vec();
                r.pop();
                let r = Polynomial::new(f, r);
                !r.is_zero() && r.gcd(p).unwrap().is_one()
            })
            .count() as u64
    }

    #[test]
    fn mu_of_poly_examples() {
        let f = gf(3);
        assert_eq!(mu_of_poly(&Polynomial::from_ints(&f, &[1, 0, 1])).unwrap(), big(8));
        // X(X - 1) = X^2 - X
        assert_eq!(mu_of_poly(&Polynomial::from_ints(&f, &[0, -1, 1])).unwrap(), big(4));
        assert_eq!(mu_of_poly(&Polynomial::from_ints(&f, &[0, 0, 1])).unwrap(), big(6));
        assert!(mu_of_poly(&Polynomial::one(&f)).is_err());
    }

    #[test]
    fn mu_of_poly_matches_unit_count() {
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for d in 1..=4usize {
                if q.pow(d as u32) > 700 {
                    continue;
                }
                for idx in 0..q.pow(d as u32) {
                    let p = Polynomial::monic_from_index(&f, d, idx);
                    assert_eq!(mu_of_poly(&p).unwrap(), big(count_units(&p)), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let r = mu_closed_form(pp(281), 280, 2).unwrap();
        assert_eq!((r.value, r.case), (big(78_680), MuCase::StrictOdd));
        let r = mu_closed_form(pp(11), 5, 3).unwrap();
        assert_eq!((r.value, r.case), (big(1000), MuCase::QGeNPlusH));
        let r = mu_closed_form(pp(5), 5, 3).unwrap();
        assert_eq!((r.value, r.case), (big(124), MuCase::EqOdd));
        let r = mu_closed_form(pp(5), 5, 2).unwrap();
        assert_eq!((r.value, r.case), (big(24), MuCase::EqEven));
        assert_eq!(
            mu_closed_form(pp(3), 3, 1).unwrap_err(),
            Error::Impossible { q: 3, n: 3, h: 1 }
        );
        assert!(mu_closed_form(pp(3), 4, 1).is_err());
        assert!(mu_closed_form(pp(3), 2, 3).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let f = gf(3);
        let r = mu_brute_force(&f, &f.elements(), 2, Budget::DEFAULT).unwrap();
        assert_eq!(r.value, big(8));
        assert_eq!(r.witness.unwrap(), Polynomial::from_ints(&f, &[1, 0, 1]));

        let f5 = gf(5);
        let r = mu_brute_force(&f5, &[f5.from_int(0)], 1, Budget::DEFAULT).unwrap();
        assert_eq!(r.value, big(4));
        let w = r.witness.unwrap();
        assert_eq!(w.degree(), Some(1));
        assert!(!w.eval(f5.from_int(0)).is_zero());

        // h = q lies outside the closed form's range, but for (3, 2, 3) the
        // STRICT_EVEN expression (q-1)^(q-n) (q^2-1) = 2 * 8 still holds.
        let s = [f.from_int(0), f.from_int(1)];
        let r = mu_brute_force(&f, &s, 3, Budget::DEFAULT).unwrap();
        assert_eq!((r.value, r.case), (big(16), MuCase::StrictEven));
        assert!(mu_closed_form(pp(3), 2, 3).is_err());
    }

    #[test]
    fn brute_force_respects_budget() {
        let f = gf(7);
        assert_eq!(
            mu_brute_force(&f, &[], 4, Budget(100)).unwrap_err(),
            Error::BudgetExceeded {
                required: 2401,
                budget: 100
            }
        );
    }

    #[test]
    fn constructed_examples() {
        let f = gf(281);
        let b = f.from_int(7);
        let s: Vec<_> = f.elements().into_iter().filter(|&a| a != b).collect();
        let p = construct_optimal_poly(&f, &s, 2).unwrap();
        let lin = Polynomial::linear(&f, b);
        assert_eq!(p, &lin * &lin);
        assert_eq!(mu_of_poly(&p).unwrap(), big(78_680));

        let f5 = gf(5);
        let p = construct_optimal_poly(&f5, &f5.elements(), 2).unwrap();
        assert!(p.is_irreducible());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(mu_of_poly(&p).unwrap(), big(24));

        let f7 = gf(7);
        let s: Vec<_> = f7.elements().into_iter().take(5).collect();
        let p = construct_optimal_poly(&f7, &s, 2).unwrap();
        let expect = &Polynomial::linear(&f7, f7.from_int(5)) * &Polynomial::linear(&f7, f7.from_int(6));
        assert_eq!(p, expect);
        assert_eq!(mu_of_poly(&p).unwrap(), big(36));
    }

    #[test]
    fn invalid_point_sets_are_rejected() {
        let f = gf(5);
        let dup = [f.from_int(1), f.from_int(1)];
        assert!(construct_optimal_poly(&f, &dup, 2).is_err());
        assert_eq!(
            construct_optimal_poly(&f, &f.elements(), 1).unwrap_err(),
            Error::Impossible { q: 5, n: 5, h: 1 }
        );
    }

    #[test]
    fn c_upper_examples() {
        let c = c_upper(6, 2).unwrap();
        assert_eq!((c.value.clone(), c.route, c.q_used.q()), (big(31), CRoute::Shifted, 5));
        let c = c_upper(280, 2).unwrap();
        assert_eq!(
            (c.value.clone(), c.route, c.q_used.q()),
            (big(78_680), CRoute::Direct, 281)
        );
        let c = c_upper(8, 2).unwrap();
        assert_eq!((c.value.clone(), c.route, c.q_used.q()), (big(57), CRoute::Shifted, 7));
        assert!(c_upper(1, 2).is_err());
        assert!(c_upper(5, 0).is_err());
    }

    #[test]
    fn c_upper_shifted_matches_brute_force() {
        // mu(5, 5, 3) by exhaustion, then divided by q - 1.
        let f = gf(5);
        let r = mu_brute_force(&f, &f.elements(), 3, Budget::DEFAULT).unwrap();
        assert_eq!(r.value / 4u32, c_upper(6, 2).unwrap().value);
    }

    #[test]
    fn direct_route_skips_impossible_and_small_fields() {
        // q = 13 = n with h = 1 has no modulus; the next prime power 16 gives 15.
        let c = c_upper(13, 1).unwrap();
        assert_eq!((c.value, c.route, c.q_used.q()), (big(15), CRoute::Direct, 16));
        // h >= q: n = 3, h = 4 moves up to q = 5.
        let c = c_upper(3, 4).unwrap();
        assert_eq!(c.q_used.q(), 5);
    }

    #[test]
    fn shifted_division_is_exact() {
        for q in (3..200u64).filter(|&q| is_prime_power(q).unwrap().is_some()) {
            for h in 1..q.min(15) - 1 {
                let mu = mu_closed_form(pp(q), q, h + 1).unwrap().value;
                assert!((mu % (q - 1)).is_zero(), "q = {q}, h = {h}");
            }
        }
    }

    #[test]
    fn shifted_route_wins_whenever_available_in_table_range() {
        for n in 3..=513u64 {
            for h in 1..=14 {
                let c = c_upper(n, h).unwrap();
                let shifted_available = shifted_route(n, h).unwrap().is_some();
                assert_eq!(c.route == CRoute::Shifted, shifted_available, "n = {n}, h = {h}");
            }
        }
    }

    #[test]
    fn monotonicity_scan() {
        // Diagnostic only: report, do not assert.
        let mut violations = Vec::new();
        for h in 1..=14u64 {
            let mut prev = c_upper(2, h).unwrap().value;
            for n in 3..=513u64 {
                let cur = c_upper(n, h).unwrap().value;
                if cur < prev {
                    violations.push((n, h));
                }
                prev = cur;
            }
        }
        eprintln!("c(n, h) monotonicity violations in n: {}", violations.len());
    }

    #[test]
    fn unit_count_inequalities() {
        let f = gf(3);
        for i in 0..27u64 {
            for j in 0..9u64 {
                let p = Polynomial::monic_from_index(&f, 3, i);
                let q = Polynomial::monic_from_index(&f, 2, j);
                let prod = mu_of_poly(&(&p * &q)).unwrap();
                let (mp, mq) = (mu_of_poly(&p).unwrap(), mu_of_poly(&q).unwrap());
                assert!(&mp * &mq <= prod);
                assert!(prod <= &mp * 9u32);
                if p.gcd(&q).unwrap().is_one() {
                    assert_eq!(prod, mp * mq);
                }
            }
        }
    }
}
