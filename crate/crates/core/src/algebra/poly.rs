use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldElement, GaloisField};
use crate::{Error, Result};

/// A polynomial over a [`GaloisField`], coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// no coefficients and [`Polynomial::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: GaloisField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &GaloisField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial whose coefficients lie in the prime subfield.
    pub fn from_ints(field: &GaloisField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &GaloisField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &GaloisField) -> Self {
        Self::constant(field, FieldElement::ONE)
    }

    pub fn constant(field: &GaloisField, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &GaloisField) -> Self {
        Self::new(field, vec![FieldElement::ZERO, FieldElement::ONE])
    }

    /// `X - a`.
    pub fn linear(field: &GaloisField, a: FieldElement) -> Self {
        Self::new(field, vec![field.neg(a), FieldElement::ONE])
    }

    /// The monic polynomial of degree `d` whose lower coefficients are the
    /// base-`q` digits of `index` (`c_0` least significant). Enumerating
    /// `index = 0, 1, ...` lists monic polynomials in lexicographic order.
    pub fn monic_from_index(field: &GaloisField, d: usize, mut index: u64) -> Self {
        let q = field.q();
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FieldElement::from_index_unchecked((index % q) as u32));
            index /= q;
        }
        coeffs.push(FieldElement::ONE);
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient() == Some(FieldElement::ONE)
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    pub fn eval(&self, a: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn has_root_in(&self, points: &[FieldElement]) -> bool {
        points.iter().any(|&a| self.eval(a).is_zero())
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Polynomial::zero(f), self.clone()));
        };
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(f, quot), Polynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// `Some(quotient)` when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
        self.check_field(other)?;
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Ben-Or test: a polynomial of degree `d >= 2` is irreducible iff it
    /// shares no factor with `X^(q^i) - X` for `1 <= i <= d/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        match d {
            0 => false,
            1 => true,
            _ => {
                let f = self.monic();
                let x = Polynomial::x(&self.field);
                let q = self.field.q();
                let mut r = x.clone();
                for _ in 0..d / 2 {
                    r = r.pow_mod(q, &f).expect("modulus is nonzero");
                    let g = f.gcd(&(&r - &x)).expect("same field");
                    if g.degree() != Some(0) {
                        return false;
                    }
                }
                true
            }
        }
    }

    pub(crate) fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::Mismatch("fields"))
        }
    }

    fn zip_with(&self, other: &Polynomial, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> Polynomial {
        assert!(self.field == other.field, "polynomials over different fields");
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| op(self.coefficient(i), other.coefficient(i)))
            .collect();
        Polynomial::new(&self.field, coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.field == rhs.field, "polynomials over different fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::new(f, out)
    }
}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut coeff = self.field.format(c);
            if coeff.contains('+') {
                coeff = format!("({coeff})");
            }
            match (i, c == FieldElement::ONE) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{coeff}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

/// Number of monic irreducibles of degree `d` over `GF(q)`, or `None` on overflow.
pub fn count_irreducibles(q: u64, d: usize) -> Option<u128> {
    if d == 0 {
        return Some(0);
    }
    let mut total: i128 = 0;
    for k in 1..=d {
        if !d.is_multiple_of(k) {
            continue;
        }
        let mu = mobius(k as u64);
        if mu == 0 {
            continue;
        }
        let term = (q as i128).checked_pow((d / k) as u32)?;
        total = total.checked_add(mu as i128 * term)?;
    }
    Some((total / d as i128) as u128)
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Monic irreducibles of a fixed degree in lexicographic order, skipping a
/// caller-supplied set. Iteration ends once every irreducible of that degree
/// has been seen.
pub struct Irreducibles {
    field: GaloisField,
    degree: usize,
    next_index: u64,
    candidates: Option<u64>,
    seen: u128,
    total: Option<u128>,
    avoid: HashSet<Polynomial>,
}

impl Irreducibles {
    pub fn new(field: &GaloisField, degree: usize, avoid: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("irreducible polynomials need degree >= 1"));
        }
        let q = field.q();
        Ok(Irreducibles {
            field: field.clone(),
            degree,
            next_index: 0,
            candidates: q.checked_pow(degree as u32),
            seen: 0,
            total: count_irreducibles(q, degree),
            avoid: avoid.into_iter().map(|p| p.monic()).collect(),
        })
    }

    pub fn is_exhausted(&self) -> bool {
        self.total.is_some_and(|t| self.seen >= t) || self.candidates.is_some_and(|c| self.next_index >= c)
    }
}

impl Iterator for Irreducibles {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        while !self.is_exhausted() {
            let p = Polynomial::monic_from_index(&self.field, self.degree, self.next_index);
            self.next_index += 1;
            if p.is_irreducible() {
                self.seen += 1;
                if !self.avoid.contains(&p) {
                    return Some(p);
                }
            }
        }
        None
    }
}

/// First monic irreducible of degree `d` in lexicographic coefficient order.
pub fn find_irreducible(field: &GaloisField, d: usize) -> Result<Polynomial> {
    Irreducibles::new(field, d, [])?
        .next()
        .ok_or_else(|| Error::Exhausted(format!("no irreducible of degree {d} over GF({})", field.q())))
}
