use std::fmt;

use crate::{Error, Result};

/// `q = p^m` with `p` prime and `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    m: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        is_prime_power(q)?.ok_or(Error::NotPrimePower(q))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_prime(&self) -> bool {
        self.m == 1
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Decomposes `n` as `p^m`, or `None` when `n` has two distinct prime factors.
pub fn is_prime_power(n: u64) -> Result<Option<PrimePower>> {
    if n < 2 {
        return Err(Error::invalid(format!("prime power test needs n >= 2, got {n}")));
    }
    let p = smallest_prime_factor(n);
    let mut rest = n;
    let mut m = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    Ok((rest == 1).then_some(PrimePower { p, m, q: n }))
}

pub fn smallest_prime_power_geq(n: u64) -> Result<PrimePower> {
    if n < 2 {
        return Err(Error::invalid(format!("need n >= 2, got {n}")));
    }
    let mut k = n;
    loop {
        if let Some(pp) = is_prime_power(k)? {
            return Ok(pp);
        }
        k = k
            .checked_add(1)
            .ok_or_else(|| Error::invalid("prime power search overflowed"))?;
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor_by_trial(n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = n;
        for d in 2..=n {
            while rest.is_multiple_of(d) {
                out.push(d);
                rest /= d;
            }
            if rest == 1 {
                break;
            }
        }
        out
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(is_prime_power(279).unwrap(), None);
        assert_eq!(factor_by_trial(279), vec![3, 3, 31]);
        let four = is_prime_power(4).unwrap().unwrap();
        assert_eq!((four.p(), four.m()), (2, 2));
        let p = is_prime_power(281).unwrap().unwrap();
        assert_eq!((p.p(), p.m()), (281, 1));
        assert!(is_prime_power(1).is_err());
        assert!(is_prime_power(0).is_err());
    }

    #[test]
    fn smallest_prime_power_examples() {
        assert_eq!(smallest_prime_power_geq(280).unwrap().q(), 281);
        assert_eq!(smallest_prime_power_geq(5).unwrap().q(), 5);
        assert_eq!(smallest_prime_power_geq(126).unwrap().q(), 127);
        assert!(smallest_prime_power_geq(1).is_err());
    }

    #[test]
    fn prime_power_agrees_with_factorization() {
        for n in 2..2000u64 {
            let factors = factor_by_trial(n);
            let expect = factors.iter().all(|&f| f == factors[0]);
            let got = is_prime_power(n).unwrap();
            assert_eq!(got.is_some(), expect, "n = {n}");
            if let Some(pp) = got {
                assert_eq!(pp.p(), factors[0]);
                assert_eq!(pp.m() as usize, factors.len());
                assert_eq!(pp.p().pow(pp.m()), n);
            }
        }
    }

    #[test]
    fn no_prime_power_is_skipped() {
        for n in 2..=10_000u64 {
            let q = smallest_prime_power_geq(n).unwrap().q();
            assert!(q >= n);
            assert!(is_prime_power(q).unwrap().is_some());
            for k in n..q {
                assert!(is_prime_power(k).unwrap().is_none(), "{k} skipped for n = {n}");
            }
        }
    }
}
