//! Correctly rounded base-2 logarithms of positive rationals.
//!
//! The fractional bits of `log2(y)` for a mantissa `y` in `[1, 2)` are
//! produced by repeated squaring: squaring doubles the logarithm, and the
//! next bit is one exactly when the square reaches 2. The mantissa is
//! carried as a rigorous interval `[lo, hi] / 2^P`; if the interval ever
//! straddles 2 the precision is raised and the extraction restarts.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `floor(log2(num / den))`.
fn floor_log2(num: &BigUint, den: &BigUint) -> i64 {
    let e = num.bits() as i64 - den.bits() as i64;
    let reaches = if e >= 0 {
        *num >= den << (e as u64)
    } else {
        num << (-e as u64) >= *den
    };
    if reaches {
        e
    } else {
        e - 1
    }
}

/// Integer part and the first `frac_bits` fractional bits of `log2(num/den)`,
/// or `None` when `precision` bits of mantissa were not enough.
fn log2_bits(num: &BigUint, den: &BigUint, frac_bits: u64, precision: u64) -> Option<(i64, BigUint)> {
    let e = floor_log2(num, den);
    let (scaled_num, scaled_den) = if e >= 0 {
        (num << precision, den << (e as u64))
    } else {
        (num << (precision + (-e) as u64), den.clone())
    };
    let (lo0, rem) = scaled_num.div_rem(&scaled_den);
    let mut lo = lo0;
    let mut hi = if rem.is_zero() { lo.clone() } else { &lo + 1u32 };
    let one = BigUint::one() << precision;
    let two = BigUint::one() << (precision + 1);
    let mut bits = BigUint::zero();
    for _ in 0..frac_bits {
        lo = (&lo * &lo) >> precision;
        hi = (&hi * &hi + &one - 1u32) >> precision;
        bits <<= 1;
        if lo >= two {
            bits += 1u32;
            lo >>= 1;
            hi = (hi + 1u32) >> 1;
        } else if hi >= two {
            return None;
        }
    }
    Some((e, bits))
}

/// `(e * 2^F + bits)` as a signed fixed-point numerator over `2^F`.
fn fixed_point(e: i64, bits: &BigUint, frac_bits: u64) -> BigInt {
    (BigInt::from(e) << frac_bits) + BigInt::from_biguint(Sign::Plus, bits.clone())
}

fn check_positive(num: &BigUint, den: &BigUint) -> Result<()> {
    if num.is_zero() || den.is_zero() {
        Err(Error::invalid("logarithm of a nonpositive value"))
    } else {
        Ok(())
    }
}

/// `round(log2(num / den) * 10^digits)` with ties impossible (the logarithm
/// of a rational is either an integer or irrational).
pub fn log2_scaled(num: &BigUint, den: &BigUint, digits: u32) -> Result<BigInt> {
    check_positive(num, den)?;
    let scale = BigInt::from(10u32).pow(digits);
    let mut frac_bits = 48u64;
    loop {
        let precision = frac_bits + 64;
        if let Some((e, bits)) = log2_bits(num, den, frac_bits, precision) {
            let lower = fixed_point(e, &bits, frac_bits);
            let upper = &lower + BigInt::one();
            let half = BigInt::one() << frac_bits;
            let denom = BigInt::one() << (frac_bits + 1);
            let k_lo: BigInt = (&scale * &lower * 2u32 + &half).div_floor(&denom);
            let k_hi: BigInt = (&scale * &upper * 2u32 + &half).div_floor(&denom);
            if k_lo == k_hi {
                return Ok(k_lo);
            }
        }
        frac_bits *= 2;
        if frac_bits > 1 << 20 {
            return Err(Error::Unsupported("log2 rounding did not converge".into()));
        }
    }
}

/// Formats `round(log2(num / den), 4)` with exactly four fractional digits.
pub fn log2_fixed_ratio(num: &BigUint, den: &BigUint) -> Result<String> {
    Ok(format_scaled(&log2_scaled(num, den, 4)?, 4))
}

/// Formats `round(log2(x), 4)`, e.g. `"16.2637"` for 78680.
pub fn log2_fixed(x: &BigUint) -> Result<String> {
    log2_fixed_ratio(x, &BigUint::one())
}

/// `log2(num / den)` to double precision, for display-only quantities.
pub fn log2_approx(num: &BigUint, den: &BigUint) -> Result<f64> {
    check_positive(num, den)?;
    let mut precision = 128;
    loop {
        if let Some((e, bits)) = log2_bits(num, den, 60, precision) {
            let frac = u64::try_from(&bits).expect("60 bits fit") as f64 / (1u64 << 60) as f64;
            return Ok(e as f64 + frac);
        }
        precision *= 2;
    }
}

pub(crate) fn format_scaled(k: &BigInt, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let sign = if k.sign() == Sign::Minus { "-" } else { "" };
    let (int, frac) = k.magnitude().div_rem(scale.magnitude());
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: u64) -> String {
        log2_fixed(&BigUint::from(x)).unwrap()
    }

    #[test]
    fn anchors() {
        assert_eq!(s(8), "3.0000");
        assert_eq!(s(1), "0.0000");
        assert_eq!(s(78_680), "16.2637");
        assert_eq!(s(6), "2.5850");
        assert_eq!(s(3), "1.5850");
    }

    #[test]
    fn ratios() {
        let one = BigUint::one();
        assert_eq!(log2_fixed_ratio(&one, &BigUint::from(6u32)).unwrap(), "-2.5850");
        assert_eq!(
            log2_fixed_ratio(&BigUint::from(3u32), &BigUint::from(4u32)).unwrap(),
            "-0.4150"
        );
        assert_eq!(
            log2_fixed_ratio(&(BigUint::from(1u32) << 300u32), &one).unwrap(),
            "300.0000"
        );
    }

    #[test]
    fn rejects_zero() {
        assert!(log2_fixed(&BigUint::zero()).is_err());
        assert!(log2_fixed_ratio(&BigUint::one(), &BigUint::zero()).is_err());
    }

    #[test]
    fn matches_f64_for_small_values() {
        for x in 1..5000u64 {
            let v = (x as f64).log2();
            let expect = format!("{v:.4}");
            // f64 is reliable far from a rounding midpoint.
            let frac = (v * 1e4).fract();
            if (frac - 0.5).abs() > 1e-6 {
                assert_eq!(s(x), expect, "x = {x}");
            }
            let approx = log2_approx(&BigUint::from(x), &BigUint::one()).unwrap();
            assert!((approx - v).abs() < 1e-12);
        }
    }

    #[test]
    fn format_negative_fractions() {
        assert_eq!(format_scaled(&BigInt::from(-15), 4), "-0.0015");
        assert_eq!(format_scaled(&BigInt::from(12345), 4), "1.2345");
    }
}
