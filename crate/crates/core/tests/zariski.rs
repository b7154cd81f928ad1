use fiberstab_core::fujita::{builtin_config, Configuration, BUILTIN_CONFIGS};
use fiberstab_core::lattice::intersect;
use fiberstab_core::zariski::decompose_ray;
use fiberstab_core::{Rational, Scalar};

#[path = "../../fiberstab/src/oracle.rs"]
mod oracle;

use oracle::{panels, riemann_oracle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn configs() -> Vec<Configuration> {
    BUILTIN_CONFIGS.iter().map(|n| builtin_config(n).unwrap()).collect()
}

/// Rational `c` strictly inside the configuration's domain, `k / 101` of it.
fn c_in(cfg: &Configuration, k: i64) -> Scalar {
    let (lo, hi) = &cfg.domain;
    let w = hi - lo;
    Scalar::from(lo + &(&w * &Rational::new(k, 101)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_invariants(ci in 0usize..4, k in 1i64..=100, tk in 0i64..=64) {
        let cfg = &configs()[ci];
        let model = &cfg.model;
        let c = c_in(cfg, k);
        let start = cfg.family.at(&c);
        for d in &cfg.divisors {
            let dir = d.spec.class();
            let dec = decompose_ray(model, &start, dir).unwrap();
            let t = dec.threshold() * &Scalar::ratio(tk, 64);
            let p = dec.positive_at(&t).unwrap();
            let n = dec.negative_at(&t).unwrap();
            // P + N = L - t F
            let mut sum = p.clone();
            for (name, coeff) in &n {
                prop_assert!(!coeff.is_negative(), "negative coefficient on {}", name);
                sum = sum.add(&model.curve(name).unwrap().class.scale(coeff));
            }
            prop_assert_eq!(sum, start.sub(&dir.scale(&t)));
            // P is nef on the registry and orthogonal to the support of N
            for curve in model.negative_curves.iter().chain(&model.nef_test_curves) {
                let v = intersect(model, &p, &curve.class).unwrap();
                prop_assert!(!v.is_negative(), "P.{} < 0", curve.name);
                if n.iter().any(|(name, coeff)| *name == curve.name && !coeff.is_zero()) {
                    prop_assert!(v.is_zero());
                }
            }
            // the volume is nonincreasing along the ray
            let t2 = dec.threshold() * &Scalar::ratio((tk + 1).min(64), 64);
            let p2 = dec.positive_at(&t2).unwrap();
            let v1 = intersect(model, &p, &p).unwrap();
            let v2 = intersect(model, &p2, &p2).unwrap();
            prop_assert!(!(&v1 - &v2).is_negative());
        }
    }
}

#[test]
fn exact_s_matches_riemann_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = panels();
    for cfg in configs() {
        for _ in 0..5 {
            let c = c_in(&cfg, rng.gen_range(1..=100));
            for d in &cfg.divisors {
                let exact = cfg.s_invariant(&c, &d.name).unwrap().to_f64();
                let (lo, hi, mid) = riemann_oracle(&cfg, &c, &d.name, n).unwrap();
                assert!(
                    lo - 1e-6 <= exact && exact <= hi + 1e-6,
                    "{} {} c={}: {} not in [{}, {}]",
                    cfg.name,
                    d.name,
                    c,
                    exact,
                    lo,
                    hi
                );
                assert!((mid - exact).abs() < 1e-6, "{} {} c={}: midpoint {} vs {}", cfg.name, d.name, c, mid, exact);
            }
        }
    }
}
