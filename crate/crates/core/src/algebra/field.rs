use std::fmt;
use std::sync::Arc;

use super::poly::find_irreducible;
use super::prime::PrimePower;
use crate::{Error, Result};

/// Largest field order supported; keeps dense log/antilog tables small.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of some [`GaloisField`], stored as its index in the canonical
/// enumeration: the base-`p` digits `d_0 + d_1 p + ... + d_{m-1} p^{m-1}`
/// where `d_i` is the coefficient of `t^i` over the defining polynomial.
///
/// Elements do not remember their field; arithmetic goes through the field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Callers must guarantee `i < q` for the field the element is used with.
    pub(crate) fn from_index_unchecked(i: u32) -> Self {
        FieldElement(i)
    }
}

struct Inner {
    order: PrimePower,
    p: u32,
    m: u32,
    q: u32,
    /// Digits of the monic defining polynomial over GF(p), lowest degree first.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed generator `g`, doubled in length so that
    /// `exp[log a + log b]` never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `GF(p^m)`, `p^m <= 2^16`, represented as
/// `GF(p)[t] / (f(t))` where `f` is the first monic irreducible of degree `m`
/// in lexicographic coefficient order. Cloning is cheap.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let order = PrimePower::new(q)?;
        Self::from_prime_power(order)
    }

    pub fn from_prime_power(order: PrimePower) -> Result<Self> {
        if order.q() > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(order.q()));
        }
        let p = order.p() as u32;
        let m = order.m();
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let prime = GaloisField::new(order.p())?;
            find_irreducible(&prime, m as usize)?
                .coefficients()
                .iter()
                .map(|c| c.index())
                .collect()
        };
        let raw = RawField {
            p,
            m,
            modulus: &modulus,
        };
        let q = order.q() as u32;
        let generator = (1..q)
            .find(|&g| raw.is_generator(g, q))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * (q as usize - 1).max(1));
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = raw.mul(x, generator);
        }
        exp.extend_from_within(..);
        Ok(GaloisField(Arc::new(Inner {
            order,
            p,
            m,
            q,
            modulus,
            exp,
            log,
        })))
    }

    pub fn order(&self) -> PrimePower {
        self.0.order
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Digits of the defining polynomial over the prime field, lowest first.
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q() {
            return Err(Error::invalid(format!(
                "index {index} out of range for GF({})",
                self.q()
            )));
        }
        Ok(FieldElement(index as u32))
    }

    /// The image of the integer `k` in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        let Inner { p, m, .. } = *self.0;
        if digits.len() > m as usize || digits.iter().any(|&d| d >= p) {
            return Err(Error::invalid(format!(
                "digits {digits:?} do not describe an element of GF({})",
                self.q()
            )));
        }
        Ok(FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * p + d)))
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let Inner { p, m, .. } = *self.0;
        let mut x = a.0;
        (0..m)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    /// All `q` elements in canonical (lexicographic digit) order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.0.q).map(FieldElement).collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let Inner { p, m, .. } = *self.0;
        if m == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| (x + y) % p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.m == 1 {
            return FieldElement((p - a.0) % p);
        }
        if p == 2 {
            return a;
        }
        self.digitwise(a, FieldElement::ZERO, |x, _| (p - x) % p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.0;
        FieldElement(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.0;
        let l = inner.log[a.0 as usize];
        Ok(FieldElement(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let inner = &*self.0;
        let l = (inner.log[a.0 as usize] as u64 * (e % (inner.q as u64 - 1))) % (inner.q as u64 - 1);
        FieldElement(inner.exp[l as usize])
    }

    /// Renders an element as a polynomial in the generator `t` (or as an
    /// integer for prime fields).
    pub fn format(&self, a: FieldElement) -> String {
        if self.0.m == 1 || a.0 < self.0.p {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let coeff = if d == 1 && i > 0 { String::new() } else { d.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        terms.join("+")
    }

    fn digitwise(&self, a: FieldElement, b: FieldElement, op: impl Fn(u32, u32) -> u32) -> FieldElement {
        let Inner { p, m, .. } = *self.0;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..m {
            out += op(x % p, y % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.order == other.0.order
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

/// Schoolbook arithmetic on digit-encoded elements, used only to build the tables.
struct RawField<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl RawField<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p as u64, self.m as usize);
        let split = |mut x: u32| {
            (0..m)
                .map(|_| {
                    let d = (x % self.p) as u64;
                    x /= self.p;
                    d
                })
                .collect::<Vec<_>>()
        };
        let (da, db) = (split(a), split(b));
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // The modulus is monic of degree m.
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &f) in self.modulus[..m].iter().enumerate() {
                prod[k - m + i] = (prod[k - m + i] + (p - c) * f as u64) % p;
            }
        }
        prod[..m].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }

    fn pow(&self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn is_generator(&self, g: u32, q: u32) -> bool {
        let n = q - 1;
        if n == 1 {
            return g == 1;
        }
        let mut rest = n;
        let mut d = 2;
        while rest > 1 {
            if rest.is_multiple_of(d) {
                if self.pow(g, n / d) == 1 {
                    return false;
                }
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let f3 = GaloisField::new(3).unwrap();
        assert_eq!(f3.add(FieldElement(2), FieldElement(2)), FieldElement(1));

        let f4 = GaloisField::new(4).unwrap();
        assert_eq!(f4.defining_polynomial(), &[1, 1, 1]);
        let t = f4.from_digits(&[0, 1]).unwrap();
        let t_plus_1 = f4.from_digits(&[1, 1]).unwrap();
        assert_eq!(f4.mul(t, t), t_plus_1);
        assert_eq!(f4.format(t_plus_1), "t+1");
    }

    #[test]
    fn enumeration_order() {
        let f2 = GaloisField::new(2).unwrap();
        assert_eq!(f2.elements(), vec![FieldElement(0), FieldElement(1)]);
        let f3 = GaloisField::new(3).unwrap();
        assert_eq!(f3.elements().len(), 3);
        let f4 = GaloisField::new(4).unwrap();
        let names: Vec<_> = f4.elements().into_iter().map(|a| f4.format(a)).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = GaloisField::new(9).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(GaloisField::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(GaloisField::new(1 << 17).unwrap_err(), Error::FieldTooLarge(1 << 17));
    }

    #[test]
    fn axioms_hold_exhaustively_up_to_16() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = GaloisField::new(q).unwrap();
            let els = f.elements();
            assert_eq!(els.len() as u64, q);
            for &a in &els {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = GaloisField::new(25).unwrap();
        for a in f.elements() {
            let mut acc = f.one();
            for e in 0..30 {
                assert_eq!(f.pow(a, e), acc);
                acc = f.mul(acc, a);
            }
        }
    }
}
