use fiberstab_core::cbf::{hirzebruch_bound_check, moduli_degree_from_map, n4_curve_map_degree, BoundVerdict};
use fiberstab_core::Rational;

#[test]
fn bound_matches_inequality_exhaustively() {
    for n in 0..=20u64 {
        for deg in (6..=120u64).step_by(6) {
            let c = hirzebruch_bound_check(n, deg).unwrap();
            let expected = if 6 * n > deg { BoundVerdict::Contradiction } else { BoundVerdict::Consistent };
            assert_eq!(c.verdict, expected, "n={} deg={}", n, deg);
        }
    }
}

#[test]
fn moduli_degree_is_additive() {
    for a in (6..=60u64).step_by(6) {
        for b in (6..=60u64).step_by(6) {
            let sum = &moduli_degree_from_map(a).unwrap() + &moduli_degree_from_map(b).unwrap();
            assert_eq!(moduli_degree_from_map(a + b).unwrap(), sum);
        }
    }
    for n in 1..=10 {
        let d = n4_curve_map_degree(n).unwrap();
        assert_eq!(&Rational::from_integer(d as i64) / &Rational::from_integer(12), Rational::new(n as i64, 2));
    }
}
