use std::cmp::Ordering;

use fiberstab_core::poly::Poly;
use fiberstab_core::{compare, parse_scalar, quad_roots, Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const DS: [u64; 4] = [2, 3, 21, 30];

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn element(d: u64) -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(move |(a, b)| Scalar::quad(d, a, b))
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(DS.to_vec()).prop_flat_map(|d| (element(d), element(d), element(d)))
}

/// Sign of `a + b sqrt(d)` from 50-digit integer square roots.
fn sign_oracle(a: &Rational, b: &Rational, d: u64) -> Ordering {
    let scale = BigInt::from(10u32).pow(50);
    // clear the denominators: sign of A + B sqrt(d) with A, B integers
    let big_a = a.numer() * b.denom() * &scale;
    let big_b = b.numer() * a.denom();
    let root = (&big_b * &big_b * BigInt::from(d) * &scale * &scale).sqrt();
    let surd = if big_b.is_negative() { -root } else { root };
    let total = &big_a + &surd;
    // the truncation error is below 1, far under the magnitudes involved
    if total > BigInt::from(1) {
        Ordering::Greater
    } else if total < BigInt::from(-1) {
        Ordering::Less
    } else {
        assert!(big_a.is_zero() && big_b.is_zero(), "sign undecided at 50 digits");
        Ordering::Equal
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Scalar::zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn inverses((x, _, _) in triple()) {
        if x.is_zero() {
            prop_assert!(x.recip().is_err());
        } else {
            prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn sign_matches_oracle(a in rational(), b in rational(), d in prop::sample::select(DS.to_vec())) {
        let x = Scalar::quad(d, a.clone(), b.clone());
        prop_assert_eq!(x.signum().cmp(&0), sign_oracle(&a, &b, d));
    }

    #[test]
    fn order_is_compatible((x, y, z) in triple()) {
        let o = compare(&x, &y).unwrap();
        prop_assert_eq!(compare(&(&x + &z), &(&y + &z)).unwrap(), o);
        prop_assert_eq!(compare(&y, &x).unwrap(), o.reverse());
        prop_assert_eq!((&x - &y).signum().cmp(&0), o);
    }

    #[test]
    fn text_round_trip((x, _, _) in triple()) {
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_scalar(&x.to_sum_form()).unwrap(), x);
    }

    #[test]
    fn squares_have_exact_roots((x, _, _) in triple()) {
        let sq = &x * &x;
        let r = sq.sqrt_exact().unwrap();
        prop_assert_eq!(&r * &r, sq);
        prop_assert!(!r.is_negative());
    }

    #[test]
    fn quadratic_roots_vanish(p2 in rational(), p1 in rational(), p0 in rational()) {
        prop_assume!(!p2.is_zero());
        let poly = Poly::new(vec![p0.clone().into(), p1.clone().into(), p2.clone().into()]);
        let roots = quad_roots(&p2, &p1, &p0).unwrap();
        let disc = &(&p1 * &p1) - &(&(&Rational::from_integer(4) * &p2) * &p0);
        prop_assert_eq!(roots.is_empty(), disc.signum() < 0);
        for r in &roots {
            prop_assert!(poly.eval(r).is_zero());
        }
        for w in roots.windows(2) {
            prop_assert_eq!(compare(&w[0], &w[1]).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn decimals_truncate((x, _, _) in triple()) {
        let text = x.to_decimal(12);
        let approx: f64 = text.parse().unwrap();
        prop_assert!((approx - x.to_f64()).abs() < 1e-9);
    }
}

#[test]
fn mixed_fields_are_rejected() {
    let a = Scalar::sqrt_of_int(2);
    let b = Scalar::sqrt_of_int(3);
    assert!(a.checked_add(&b).is_err());
    assert!(compare(&a, &b).is_err());
}
