//! Generalized Bose–Chowla sequences.
//!
//! For a polynomial `P` over `F_q` and distinct points `a_1, ..., a_n` with
//! `P(a_i) != 0`, the linear polynomials `X - a_i` form a B_h-sequence in
//! `(F_q[X]/P)^*` when `deg P = h`, and `1, X - a_1, ..., X - a_n` form one in
//! `(F_q[X]/P)^* / F_q^*` when `deg P = h + 1`.
//!
//! The groups here are multiplicative, so the map `phi` that sends a binary
//! word to "the sum of the sequence elements on its support" is realized as
//! a product.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::algebra::{smallest_prime_power_geq, FieldElement, GaloisField, Polynomial};
use crate::code::BinaryWord;
use crate::mu::{construct_optimal_poly, mu_brute_force, mu_closed_form, mu_of_poly};
use crate::{Budget, Error, Result};

/// `F_q[X] / P(X)` for a monic `P` of degree at least one.
#[derive(Clone)]
pub struct QuotientRing(Arc<Polynomial>);

impl QuotientRing {
    pub fn new(modulus: &Polynomial) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::invalid("quotient ring modulus must have degree >= 1"));
        }
        Ok(QuotientRing(Arc::new(modulus.monic())))
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.0
    }

    pub fn field(&self) -> &GaloisField {
        self.0.field()
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("modulus is nonzero")
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        p.rem(&self.0)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.mul_mod(b, &self.0)
    }

    pub fn is_unit(&self, a: &Polynomial) -> Result<bool> {
        Ok(self.reduce(a)?.gcd(&self.0)?.is_one())
    }

    pub fn unit_count(&self) -> Result<BigUint> {
        mu_of_poly(&self.0)
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[X]/({})", self.field(), self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupMode {
    /// The full unit group `(F_q[X]/P)^*`.
    FullUnitGroup,
    /// `(F_q[X]/P)^* / F_q^*`; classes are represented by the unit scaled so
    /// that its highest nonzero coefficient is one.
    ModScalars,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    ring: QuotientRing,
    mode: GroupMode,
}

impl UnitGroup {
    pub fn new(ring: QuotientRing, mode: GroupMode) -> Self {
        UnitGroup { ring, mode }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn mode(&self) -> GroupMode {
        self.mode
    }

    pub fn field(&self) -> &GaloisField {
        self.ring.field()
    }

    pub fn order(&self) -> Result<BigUint> {
        let units = self.ring.unit_count()?;
        Ok(match self.mode {
            GroupMode::FullUnitGroup => units,
            GroupMode::ModScalars => units / (self.field().q() - 1),
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            rep: Polynomial::one(self.field()),
        }
    }

    /// The group element represented by `p`; fails when `p` is not a unit.
    pub fn element(&self, p: &Polynomial) -> Result<GroupElement> {
        let reduced = self.ring.reduce(p)?;
        if !reduced.gcd(self.ring.modulus())?.is_one() {
            return Err(Error::invalid(format!(
                "{reduced} is not a unit modulo {}",
                self.ring.modulus()
            )));
        }
        Ok(GroupElement {
            group: self.clone(),
            rep: self.normalize(&reduced),
        })
    }

    /// Canonical representative of the class of `p` (already reduced).
    pub fn normalize(&self, p: &Polynomial) -> Polynomial {
        match self.mode {
            GroupMode::FullUnitGroup => p.clone(),
            GroupMode::ModScalars => p.monic(),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        if a.group != *self || b.group != *self {
            return Err(Error::Mismatch("groups"));
        }
        Ok(GroupElement {
            group: self.clone(),
            rep: self.mul_reps(&a.rep, &b.rep),
        })
    }

    pub fn pow(&self, a: &GroupElement, e: &BigUint) -> Result<GroupElement> {
        if a.group != *self {
            return Err(Error::Mismatch("groups"));
        }
        let mut acc = Polynomial::one(self.field());
        for i in (0..e.bits()).rev() {
            acc = self.mul_reps(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_reps(&acc, &a.rep);
            }
        }
        Ok(GroupElement {
            group: self.clone(),
            rep: acc,
        })
    }

    /// `a^(|G| - 1)`.
    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.pow(a, &(self.order()? - 1u32))
    }

    /// Product of two canonical representatives, unchecked.
    pub(crate) fn mul_reps(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let prod = self.ring.mul(a, b).expect("representatives share the ring's field");
        self.normalize(&prod)
    }

    /// Coefficient tuple of a representative, padded to `deg P` entries.
    pub(crate) fn key_of(&self, rep: &Polynomial) -> Vec<u32> {
        let mut key = vec![0; self.ring.degree()];
        for (slot, c) in key.iter_mut().zip(rep.coefficients()) {
            *slot = c.index();
        }
        key
    }
}

/// An element of a [`UnitGroup`] in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: UnitGroup,
    rep: Polynomial,
}

impl GroupElement {
    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    /// Canonical coefficient tuple, lowest degree first.
    pub fn key(&self) -> Vec<u32> {
        self.group.key_of(&self.rep)
    }
}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group.mode {
            GroupMode::FullUnitGroup => write!(f, "{}", self.rep),
            GroupMode::ModScalars => write!(f, "[{}]", self.rep),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.group.ring)
    }
}

/// Group multiplication; both operands must come from the same group.
pub fn ring_mul(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.group.mul(a, b)
}

#[derive(Debug, Clone)]
pub struct BhSequence {
    group: UnitGroup,
    h: u64,
    points: Vec<FieldElement>,
    elements: Vec<GroupElement>,
    group_order: BigUint,
}

impl BhSequence {
    /// The Bose–Chowla sequence for `modulus` and `points`: `X - a_i` in the
    /// full unit group (`deg P = h`) or `1, X - a_i` modulo scalars
    /// (`deg P = h + 1`).
    pub fn bose_chowla(modulus: &Polynomial, mode: GroupMode, points: &[FieldElement], h: u64) -> Result<Self> {
        if h == 0 {
            return Err(Error::invalid("B_h-sequences need h >= 1"));
        }
        let field = modulus.field();
        let expected_degree = match mode {
            GroupMode::FullUnitGroup => h,
            GroupMode::ModScalars => h + 1,
        };
        if modulus.degree() != Some(expected_degree as usize) {
            return Err(Error::invalid(format!(
                "modulus {modulus} must have degree {expected_degree} for h = {h} in mode {mode:?}"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for &a in points {
            if a.index() as u64 >= field.q() || !seen.insert(a) {
                return Err(Error::invalid(format!(
                    "points must be distinct elements of GF({})",
                    field.q()
                )));
            }
            if modulus.eval(a).is_zero() {
                return Err(Error::invalid(format!(
                    "modulus {modulus} vanishes at {}",
                    field.format(a)
                )));
            }
        }
        let group = UnitGroup::new(QuotientRing::new(modulus)?, mode);
        let mut elements = Vec::with_capacity(points.len() + 1);
        if mode == GroupMode::ModScalars {
            elements.push(group.identity());
        }
        for &a in points {
            elements.push(group.element(&Polynomial::linear(field, a))?);
        }
        let group_order = group.order()?;
        Ok(BhSequence {
            group,
            h,
            points: points.to_vec(),
            elements,
            group_order,
        })
    }

    /// An arbitrary list of group elements claimed to be a B_h-sequence.
    pub fn from_elements(group: &UnitGroup, h: u64, elements: Vec<GroupElement>) -> Result<Self> {
        if h == 0 {
            return Err(Error::invalid("B_h-sequences need h >= 1"));
        }
        if elements.iter().any(|e| e.group != *group) {
            return Err(Error::Mismatch("groups"));
        }
        Ok(BhSequence {
            group: group.clone(),
            h,
            points: Vec::new(),
            elements,
            group_order: group.order()?,
        })
    }

    pub fn mode(&self) -> GroupMode {
        self.group.mode
    }

    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    pub fn modulus(&self) -> &Polynomial {
        self.group.ring.modulus()
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn group_order(&self) -> &BigUint {
        &self.group_order
    }
}

fn check_construction(field: &GaloisField, h: u64, count: usize) -> Result<()> {
    if h == 0 {
        return Err(Error::invalid("B_h-sequences need h >= 1"));
    }
    if count as u64 > field.q() {
        return Err(Error::invalid(format!(
            "cannot pick {count} distinct points from GF({})",
            field.q()
        )));
    }
    Ok(())
}

/// A unit-count-minimal monic modulus of the given degree with no root in
/// `points`. Degrees at or above `q` fall outside the closed form and are
/// found by exhaustive search.
fn optimal_modulus(field: &GaloisField, points: &[FieldElement], degree: u64) -> Result<Polynomial> {
    if degree < field.q() {
        return construct_optimal_poly(field, points, degree);
    }
    let found = mu_brute_force(field, points, degree, Budget::default())?;
    Ok(found.witness.expect("search results carry a witness"))
}

/// Sequence `X - a_1, ..., X - a_n` in the full unit group, with the first
/// `n` field elements as points and a unit-count-minimal modulus of degree `h`.
pub fn build_sequence_a(field: &GaloisField, h: u64, n: usize) -> Result<BhSequence> {
    check_construction(field, h, n)?;
    let points: Vec<_> = field.elements().into_iter().take(n).collect();
    let modulus = optimal_modulus(field, &points, h)?;
    BhSequence::bose_chowla(&modulus, GroupMode::FullUnitGroup, &points, h)
}

/// Sequence `1, X - a_1, ..., X - a_n` modulo scalars, with a
/// unit-count-minimal modulus of degree `h + 1`.
pub fn build_sequence_b(field: &GaloisField, h: u64, n_points: usize) -> Result<BhSequence> {
    check_construction(field, h, n_points)?;
    let points: Vec<_> = field.elements().into_iter().take(n_points).collect();
    let modulus = optimal_modulus(field, &points, h + 1)?;
    BhSequence::bose_chowla(&modulus, GroupMode::ModScalars, &points, h)
}

/// A choice of field and construction for a sequence of a given length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePlan {
    pub n: u64,
    pub h: u64,
    pub q: u64,
    pub mode: GroupMode,
    pub group_order: BigUint,
}

impl SequencePlan {
    pub fn build(&self) -> Result<BhSequence> {
        let field = GaloisField::new(self.q)?;
        match self.mode {
            GroupMode::FullUnitGroup => build_sequence_a(&field, self.h, self.n as usize),
            GroupMode::ModScalars => build_sequence_b(&field, self.h, self.n as usize - 1),
        }
    }
}

/// The smallest group either construction reaches for a length-`n`
/// B_h-sequence, over prime powers `q` from `n - 1` up to `2n + h`.
///
/// This includes the two routes behind [`crate::mu::c_upper`] and also
/// modulo-scalars sequences with `q > n - 1`, e.g. order 13 for `(13, 1)`.
pub fn plan_sequence(n: u64, h: u64) -> Result<SequencePlan> {
    if n < 2 || h == 0 {
        return Err(Error::invalid(format!("need n >= 2 and h >= 1, got n = {n}, h = {h}")));
    }
    let limit = 2 * n + h + 2;
    let mut best: Option<SequencePlan> = None;
    let mut q = smallest_prime_power_geq((n - 1).max(2))?;
    while q.q() <= limit {
        let mut consider = |mode, order: BigUint| {
            if best.as_ref().is_none_or(|b| order < b.group_order) {
                best = Some(SequencePlan {
                    n,
                    h,
                    q: q.q(),
                    mode,
                    group_order: order,
                });
            }
        };
        if n <= q.q() {
            if let Ok(r) = mu_closed_form(q, n, h) {
                consider(GroupMode::FullUnitGroup, r.value);
            }
        }
        if let Ok(r) = mu_closed_form(q, n - 1, h + 1) {
            consider(GroupMode::ModScalars, r.value / (q.q() - 1));
        }
        q = smallest_prime_power_geq(q.q() + 1)?;
    }
    best.ok_or_else(|| Error::Unsupported(format!("no construction for n = {n}, h = {h}")))
}

/// `phi(x)`: product of the sequence elements at the positions where `x` is one.
pub fn phi(word: &BinaryWord, seq: &BhSequence) -> Result<GroupElement> {
    if word.len() != seq.len() {
        return Err(Error::invalid(format!(
            "word of length {} for a sequence of length {}",
            word.len(),
            seq.len()
        )));
    }
    let group = &seq.group;
    let rep = word.support().fold(Polynomial::one(group.field()), |acc, i| {
        group.mul_reps(&acc, &seq.elements[i].rep)
    });
    Ok(GroupElement {
        group: group.clone(),
        rep,
    })
}

/// Result of an exhaustive B_h check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhReport {
    /// Number of multisets whose products were computed.
    pub checked: u64,
    /// Two distinct multisets (as sorted 0-based index lists) with equal products.
    pub collision: Option<(Vec<usize>, Vec<usize>)>,
}

impl BhReport {
    pub fn is_bh(&self) -> bool {
        self.collision.is_none()
    }
}

/// Number of multisets of size `k` drawn from `n` items.
fn multiset_count(n: usize, k: u64) -> u128 {
    if n == 0 {
        return (k == 0) as u128;
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n as u64 + i) / (i + 1);
    }
    acc.to_u128().unwrap_or(u128::MAX)
}

/// Checks that all products of `h` sequence elements (with repetition) are
/// distinct, stopping at the first collision.
pub fn verify_bh(seq: &BhSequence, budget: Budget) -> Result<BhReport> {
    budget.check(multiset_count(seq.len(), seq.h))?;
    let mut seen: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut report = BhReport {
        checked: 0,
        collision: None,
    };
    let mut stack = Vec::with_capacity(seq.h as usize);
    let one = Polynomial::one(seq.group.field());
    visit_multisets(seq, 0, &one, &mut stack, &mut seen, &mut report);
    Ok(report)
}

fn visit_multisets(
    seq: &BhSequence,
    start: usize,
    prefix: &Polynomial,
    stack: &mut Vec<usize>,
    seen: &mut HashMap<Vec<u32>, Vec<usize>>,
    report: &mut BhReport,
) {
    if report.collision.is_some() {
        return;
    }
    if stack.len() as u64 == seq.h {
        report.checked += 1;
        // The key is the full canonical coefficient tuple, so equal keys mean equal elements.
        let key = seq.group.key_of(prefix);
        if let Some(previous) = seen.get(&key) {
            report.collision = Some((previous.clone(), stack.clone()));
        } else {
            seen.insert(key, stack.clone());
        }
        return;
    }
    for i in start..seq.len() {
        let next = seq.group.mul_reps(prefix, &seq.elements[i].rep);
        stack.push(i);
        visit_multisets(seq, i, &next, stack, seen, report);
        stack.pop();
        if report.collision.is_some() {
            return;
        }
    }
}

#[cfg(test)]
impl BhSequence {
    /// `true` when the stored group order divides evenly into the ring's unit count.
    pub(crate) fn order_is_consistent(&self) -> bool {
        let units = self.group.ring.unit_count().unwrap_or_default();
        match self.mode() {
            GroupMode::FullUnitGroup => units == self.group_order,
            GroupMode::ModScalars => {
                let (d, r) = num_integer::Integer::div_rem(&units, &BigUint::from(self.group.field().q() - 1));
                num_traits::Zero::is_zero(&r) && d == self.group_order
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::new(q).unwrap()
    }

    fn poly(f: &GaloisField, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(f, c)
    }

    #[test]
    fn ring_mul_examples() {
        let f = gf(3);
        let g = UnitGroup::new(
            QuotientRing::new(&poly(&f, &[1, 0, 1])).unwrap(),
            GroupMode::FullUnitGroup,
        );
        let x = g.element(&Polynomial::x(&f)).unwrap();
        assert_eq!(ring_mul(&x, &x).unwrap().rep(), &poly(&f, &[2]));
        assert_eq!(ring_mul(&x, &g.identity()).unwrap(), x);

        let gb = UnitGroup::new(QuotientRing::new(&poly(&f, &[1, 0, 1])).unwrap(), GroupMode::ModScalars);
        let a = gb.element(&poly(&f, &[1, 2])).unwrap();
        assert_eq!(ring_mul(&a, &gb.identity()).unwrap().rep(), &poly(&f, &[2, 1]));
    }

    #[test]
    fn mixed_groups_are_rejected() {
        let f = gf(3);
        let g1 = UnitGroup::new(
            QuotientRing::new(&poly(&f, &[1, 0, 1])).unwrap(),
            GroupMode::FullUnitGroup,
        );
        let g2 = UnitGroup::new(
            QuotientRing::new(&poly(&f, &[2, 2, 1])).unwrap(),
            GroupMode::FullUnitGroup,
        );
        let g3 = UnitGroup::new(g1.ring().clone(), GroupMode::ModScalars);
        let x = Polynomial::x(&f);
        let a = g1.element(&x).unwrap();
        assert_eq!(
            ring_mul(&a, &g2.element(&x).unwrap()).unwrap_err(),
            Error::Mismatch("groups")
        );
        assert_eq!(
            ring_mul(&a, &g3.element(&x).unwrap()).unwrap_err(),
            Error::Mismatch("groups")
        );
    }

    #[test]
    fn non_units_are_rejected() {
        let f = gf(3);
        // X^2 - 1 = (X - 1)(X + 1), so X - 1 is a zero divisor.
        let g = UnitGroup::new(
            QuotientRing::new(&poly(&f, &[-1, 0, 1])).unwrap(),
            GroupMode::FullUnitGroup,
        );
        assert!(g.element(&poly(&f, &[-1, 1])).is_err());
    }

    #[test]
    fn sequence_a_examples() {
        let s = build_sequence_a(&gf(3), 2, 3).unwrap();
        let f = gf(3);
        assert_eq!(s.modulus(), &poly(&f, &[1, 0, 1]));
        let reps: Vec<_> = s.elements().iter().map(|e| e.rep().clone()).collect();
        assert_eq!(reps, vec![poly(&f, &[0, 1]), poly(&f, &[2, 1]), poly(&f, &[1, 1])]);
        assert_eq!(s.group_order(), &BigUint::from(8u32));

        let s = build_sequence_a(&gf(5), 1, 4).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.group_order(), &BigUint::from(4u32));

        let s = build_sequence_a(&gf(5), 2, 5).unwrap();
        assert!(s.modulus().is_irreducible());
        assert_eq!(s.group_order(), &BigUint::from(24u32));
        assert!(s.order_is_consistent());

        assert!(build_sequence_a(&gf(5), 2, 6).is_err());
    }

    #[test]
    fn sequence_b_examples() {
        let s = build_sequence_b(&gf(5), 2, 5).unwrap();
        assert_eq!(s.modulus().degree(), Some(3));
        assert_eq!(s.group_order(), &BigUint::from(31u32));
        assert_eq!(s.len(), 6);
        assert!(s.elements()[0].rep().is_one());

        let s = build_sequence_b(&gf(3), 1, 3).unwrap();
        assert_eq!(s.group_order(), &BigUint::from(4u32));
        assert!(s.elements()[0].rep().is_one());
        assert!(s.order_is_consistent());
    }

    #[test]
    fn inverses() {
        for (q, h, mode) in [
            (5, 2, GroupMode::FullUnitGroup),
            (4, 2, GroupMode::ModScalars),
            (7, 3, GroupMode::ModScalars),
        ] {
            let s = match mode {
                GroupMode::FullUnitGroup => build_sequence_a(&gf(q), h, q as usize - 1).unwrap(),
                GroupMode::ModScalars => build_sequence_b(&gf(q), h, q as usize).unwrap(),
            };
            let g = s.group();
            for x in s.elements() {
                let y = g.inv(x).unwrap();
                assert_eq!(g.mul(x, &y).unwrap(), g.identity());
                assert_eq!(g.pow(x, &BigUint::from(0u32)).unwrap(), g.identity());
                assert_eq!(g.pow(x, &BigUint::from(2u32)).unwrap(), g.mul(x, x).unwrap());
            }
        }
    }

    #[test]
    fn degree_at_least_q_uses_search() {
        let s = build_sequence_b(&gf(2), 1, 1).unwrap();
        assert_eq!(s.modulus().degree(), Some(2));
        assert_eq!(s.group_order(), &BigUint::from(2u32));
        assert!(verify_bh(&s, Budget::default()).unwrap().is_bh());

        let s = build_sequence_a(&gf(3), 3, 2).unwrap();
        assert_eq!(s.modulus().degree(), Some(3));
        assert!(s.order_is_consistent());
        assert!(verify_bh(&s, Budget::default()).unwrap().is_bh());
    }

    #[test]
    fn bose_chowla_validates_inputs() {
        let f = gf(5);
        let p = poly(&f, &[2, 0, 1]);
        assert!(BhSequence::bose_chowla(&p, GroupMode::FullUnitGroup, &[f.from_int(0)], 3).is_err());
        // X^2 + 2 has no roots in GF(5) but X^2 - 1 vanishes at 1.
        let bad = poly(&f, &[-1, 0, 1]);
        assert!(BhSequence::bose_chowla(&bad, GroupMode::FullUnitGroup, &[f.from_int(1)], 2).is_err());
        let dup = [f.from_int(2), f.from_int(2)];
        assert!(BhSequence::bose_chowla(&p, GroupMode::FullUnitGroup, &dup, 2).is_err());
    }

    #[test]
    fn phi_examples() {
        let s = build_sequence_a(&gf(3), 2, 3).unwrap();
        let f = gf(3);
        let zero = BinaryWord::zeros(3);
        assert!(phi(&zero, &s).unwrap().rep().is_one());
        let e2 = BinaryWord::from_support(3, &[1]).unwrap();
        assert_eq!(phi(&e2, &s).unwrap(), s.elements()[1]);
        let w: BinaryWord = "110".parse().unwrap();
        assert_eq!(phi(&w, &s).unwrap().rep(), &poly(&f, &[2, 2]));
        assert!(phi(&BinaryWord::zeros(4), &s).is_err());
    }

    #[test]
    fn verify_examples() {
        let s = build_sequence_a(&gf(3), 2, 3).unwrap();
        let r = verify_bh(&s, Budget::DEFAULT).unwrap();
        assert!(r.is_bh());
        assert_eq!(r.checked, 6);

        let s = build_sequence_b(&gf(5), 2, 5).unwrap();
        let r = verify_bh(&s, Budget::DEFAULT).unwrap();
        assert!(r.is_bh());
        assert_eq!(r.checked, 21);

        let g = s.group().clone();
        let x = s.elements()[1].clone();
        let dup = BhSequence::from_elements(&g, 1, vec![x.clone(), x]).unwrap();
        let r = verify_bh(&dup, Budget::DEFAULT).unwrap();
        assert_eq!(r.collision, Some((vec![0], vec![1])));

        assert!(matches!(
            verify_bh(&s, Budget(5)),
            Err(Error::BudgetExceeded {
                required: 21,
                budget: 5
            })
        ));
    }

    #[test]
    fn plans_reach_small_groups() {
        let p = plan_sequence(13, 1).unwrap();
        assert_eq!(
            (p.q, p.mode, p.group_order.clone()),
            (13, GroupMode::ModScalars, BigUint::from(13u32))
        );
        let s = p.build().unwrap();
        assert_eq!(s.len(), 13);
        assert_eq!(s.group_order(), &p.group_order);

        // Never worse than the c(n, h) bound.
        for n in 2..40u64 {
            for h in 1..4u64 {
                let plan = plan_sequence(n, h).unwrap();
                assert!(
                    plan.group_order <= crate::mu::c_upper(n, h).unwrap().value,
                    "n = {n}, h = {h}"
                );
            }
        }
    }

    #[test]
    fn scalar_normalization_is_invariant() {
        for q in [2u64, 3, 4, 5, 7] {
            let f = gf(q);
            for d in 1..=3usize {
                let p = Polynomial::monic_from_index(&f, d, 1);
                let group = UnitGroup::new(QuotientRing::new(&p).unwrap(), GroupMode::ModScalars);
                for idx in 0..q.pow(d as u32) {
                    let mut c = Polynomial::monic_from_index(&f, d, idx).coefficients().to_vec();
                    c.pop();
                    let u = Polynomial::new(&f, c);
                    let Ok(base) = group.element(&u) else { continue };
                    assert_eq!(group.normalize(base.rep()), *base.rep());
                    for s in f.elements().into_iter().filter(|s| !s.is_zero()) {
                        assert_eq!(group.element(&u.scale(s)).unwrap(), base);
                    }
                }
            }
        }
    }
}
