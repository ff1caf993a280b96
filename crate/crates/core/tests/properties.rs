use bhcodes_core::algebra::{GaloisField, Polynomial};
use bhcodes_core::bose_chowla::{build_sequence_a, build_sequence_b, phi};
use bhcodes_core::bounds::{a_lower, binomial, log2_fixed, log2_scaled, UPolicy};
use bhcodes_core::code::BinaryWord;
use bhcodes_core::mu::mu_of_poly;
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

const ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn poly(field: &GaloisField, coeffs: &[u64]) -> Polynomial {
    let elements: Vec<_> = coeffs.iter().map(|&c| field.element(c % field.q()).unwrap()).collect();
    Polynomial::new(field, elements)
}

proptest! {
    #[test]
    fn field_distributes(qi in 0..ORDERS.len(), a in 0u64..16, b in 0u64..16, c in 0u64..16) {
        let f = GaloisField::new(ORDERS[qi]).unwrap();
        let (a, b, c) = (f.element(a % f.q()).unwrap(), f.element(b % f.q()).unwrap(), f.element(c % f.q()).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn division_identity(qi in 0..ORDERS.len(), a in prop::collection::vec(0u64..16, 0..8), b in prop::collection::vec(0u64..16, 1..5)) {
        let f = GaloisField::new(ORDERS[qi]).unwrap();
        let a = poly(&f, &a);
        let mut b = poly(&f, &b);
        if b.is_zero() {
            b = Polynomial::one(&f);
        }
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.degree() < b.degree() || rem.is_zero());
    }

    #[test]
    fn unit_count_is_multiplicative(qi in 0..4usize, a in prop::collection::vec(0u64..16, 1..4), b in prop::collection::vec(0u64..16, 1..4)) {
        let f = GaloisField::new(ORDERS[qi]).unwrap();
        let mut pa = poly(&f, &a);
        pa = &(&pa * &Polynomial::x(&f)) + &Polynomial::one(&f);
        let mut pb = poly(&f, &b);
        pb = &(&pb * &Polynomial::x(&f)) + &Polynomial::constant(&f, f.from_int(2 % f.q() as i64));
        prop_assume!(pa.degree().unwrap_or(0) >= 1 && pb.degree().unwrap_or(0) >= 1);
        prop_assume!(pa.gcd(&pb).unwrap().is_one());
        let product = &pa * &pb;
        prop_assert_eq!(mu_of_poly(&product).unwrap(), mu_of_poly(&pa).unwrap() * mu_of_poly(&pb).unwrap());
    }

    #[test]
    fn phi_is_a_homomorphism(mask_a in 0u32..1 << 7, mask_b in 0u32..1 << 7, mode_b: bool) {
        let f = GaloisField::new(7).unwrap();
        let seq = if mode_b { build_sequence_b(&f, 2, 6).unwrap() } else { build_sequence_a(&f, 2, 7).unwrap() };
        let n = seq.len();
        let mask_b = mask_b & !mask_a;
        let word = |m: u32| {
            let support: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
            BinaryWord::from_support(n, &support).unwrap()
        };
        let joint = phi(&word(mask_a | mask_b), &seq).unwrap();
        let parts = seq.group().mul(&phi(&word(mask_a), &seq).unwrap(), &phi(&word(mask_b), &seq).unwrap()).unwrap();
        prop_assert_eq!(joint, parts);
    }

    #[test]
    fn log2_is_monotone(a in 1u64.., b in 1u64..) {
        let (lo, hi) = (a.min(b), a.max(b));
        let one = BigUint::one();
        prop_assert!(log2_scaled(&lo.into(), &one, 4).unwrap() <= log2_scaled(&hi.into(), &one, 4).unwrap());
    }

    #[test]
    fn log2_shifts_exactly(a in 1u64.., k in 0u32..500) {
        let x = BigUint::from(a);
        let shifted = &x << k;
        let one = BigUint::one();
        let base = log2_scaled(&x, &one, 4).unwrap();
        prop_assert_eq!(log2_scaled(&shifted, &one, 4).unwrap(), base + 10_000 * i64::from(k));
        prop_assert_eq!(log2_fixed(&shifted).unwrap().len() >= 6, true);
    }

    #[test]
    fn binomial_symmetry(n in 0u64..400, w in 0u64..400) {
        prop_assume!(w <= n);
        prop_assert_eq!(binomial(n, w).unwrap(), binomial(n, n - w).unwrap());
    }

    #[test]
    fn best_policy_never_loses(n in 5u64..160, d in 3u64..16) {
        let fixed = a_lower(n, d, UPolicy::Heuristic).unwrap();
        let best = a_lower(n, d, UPolicy::Best).unwrap();
        prop_assert!(best.lower_bound >= fixed.lower_bound);
        prop_assert!(best.lower_bound <= BigUint::one() << n);
    }
}
