use fiberstab_core::git::{
    barycenter_position, c0, c1, candidate_frames, git_status, newton_hull, pencil_is_smooth, BiForm, Frame, GitStatus,
    HullPosition,
};
use fiberstab_core::poly::Poly;
use fiberstab_core::{Rational, Scalar};
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Hilbert–Mumford by brute force over integer weights `|r|, |s| <= 20`.
fn oracle(f: &BiForm) -> HullPosition {
    let (d1, d2) = (f.d1 as i64, f.d2 as i64);
    let weights: Vec<(i64, i64)> = f.terms().keys().map(|&(i, j)| (2 * i as i64 - d1, 2 * j as i64 - d2)).collect();
    let mut boundary = false;
    for rr in -20i64..=20 {
        for ss in -20i64..=20 {
            if rr == 0 && ss == 0 {
                continue;
            }
            let ws: Vec<i64> = weights.iter().map(|&(a, b)| rr * a + ss * b).collect();
            if ws.iter().all(|&w| w > 0) {
                return HullPosition::Outside;
            }
            if ws.iter().all(|&w| w >= 0) {
                boundary = true;
            }
        }
    }
    if boundary {
        HullPosition::Boundary
    } else {
        HullPosition::Interior
    }
}

#[derive(Debug, PartialEq, Eq)]
enum FourthPower {
    None,
    Rational,
    Irrational,
}

/// Whether some member `u A + v B` of the pencil is the fourth power of a
/// linear form, i.e. the map has a point of total ramification. A binary
/// quartic is a fourth power iff the Hankel matrix of its coefficients
/// divided by binomials has rank 1; its 2x2 minors are quadratics in
/// `(u, v)` and we look for a common root.
fn fourth_power_member(f: &BiForm) -> FourthPower {
    let binom = [1, 4, 6, 4, 1];
    // p_k = (a_k u + b_k v) / C(4, k)
    let p: Vec<(Rational, Rational)> = (0..5)
        .map(|k| {
            let c = Rational::from_integer(binom[k]);
            (&f.coeff(k as u32, 1) / &c, &f.coeff(k as u32, 0) / &c)
        })
        .collect();
    let mul = |x: &(Rational, Rational), y: &(Rational, Rational)| {
        [&x.0 * &y.0, &(&x.0 * &y.1) + &(&x.1 * &y.0), &x.1 * &y.1]
    };
    let mut minors = Vec::new();
    for c in 0..4 {
        for d in c + 1..4 {
            let (m1, m2) = (mul(&p[c], &p[d + 1]), mul(&p[d], &p[c + 1]));
            minors.push([&m1[0] - &m2[0], &m1[1] - &m2[1], &m1[2] - &m2[2]]);
        }
    }
    if minors.iter().all(|m| m[0].is_zero()) {
        // the member with v = 0
        return FourthPower::Rational;
    }
    let mut g = Poly::zero();
    for m in &minors {
        let q = Poly::new(vec![Scalar::from(m[2].clone()), Scalar::from(m[1].clone()), Scalar::from(m[0].clone())]);
        g = g.gcd(&q);
    }
    match g.degree() {
        None => FourthPower::Rational,
        Some(0) => FourthPower::None,
        Some(_) if !g.rational_roots().is_empty() => FourthPower::Rational,
        Some(_) => FourthPower::Irrational,
    }
}

fn frame_strategy() -> impl Strategy<Value = Frame> {
    let mat = prop::array::uniform4(-3i64..=3).prop_filter("invertible", |m| m[0] * m[3] - m[1] * m[2] != 0);
    (mat.clone(), mat).prop_map(|(a, b)| Frame {
        x: [[r(a[0]), r(a[1])], [r(a[2]), r(a[3])]],
        y: [[r(b[0]), r(b[1])], [r(b[2]), r(b[3])]],
    })
}

fn pencil_strategy() -> impl Strategy<Value = BiForm> {
    prop::collection::vec(-4i64..=4, 10).prop_filter_map("nonzero", |cs| {
        let terms: Vec<(u32, u32, i64)> =
            cs.iter().enumerate().map(|(k, &c)| ((k / 2) as u32, (k % 2) as u32, c)).collect();
        BiForm::from_ints(4, 1, &terms).ok()
    })
}

#[test]
fn fixtures_positions_match_oracle() {
    for f in [c0(), c1()] {
        assert_eq!(barycenter_position(&newton_hull(&f), 4, 1), oracle(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_position_matches_weight_scan(f in pencil_strategy(), g in frame_strategy()) {
        let h = f.transform(&g).unwrap();
        prop_assert_eq!(barycenter_position(&newton_hull(&h), 4, 1), oracle(&h));
        for fr in candidate_frames(&h).into_iter().take(6) {
            let k = h.transform(&fr).unwrap();
            prop_assert_eq!(barycenter_position(&newton_hull(&k), 4, 1), oracle(&k));
        }
    }

    #[test]
    fn fixtures_verdict_is_frame_invariant(g in frame_strategy()) {
        for f in [c0(), c1()] {
            let rep = git_status(&f.transform(&g).unwrap()).unwrap();
            prop_assert_eq!(rep.status, GitStatus::StrictlySemistable);
            prop_assert!(rep.certificate.segment_through_barycenter);
            prop_assert!(!rep.irrational_special_point);
        }
    }

    #[test]
    fn verdict_is_frame_invariant(f in pencil_strategy(), g in frame_strategy()) {
        let a = git_status(&f).unwrap();
        let b = git_status(&f.transform(&g).unwrap()).unwrap();
        if !a.irrational_special_point && !b.irrational_special_point {
            prop_assert_eq!(a.status, b.status);
        }
    }

    #[test]
    fn smooth_pencils_are_stable_unless_totally_ramified(f in pencil_strategy(), g in frame_strategy()) {
        if pencil_is_smooth(&f) == Some(true) {
            let h = f.transform(&g).unwrap();
            let rep = git_status(&h).unwrap();
            match fourth_power_member(&f) {
                FourthPower::None => prop_assert_eq!(rep.status, GitStatus::Stable),
                FourthPower::Rational => prop_assert_eq!(rep.status, GitStatus::StrictlySemistable),
                FourthPower::Irrational => prop_assert!(rep.irrational_special_point),
            }
        }
    }

    #[test]
    fn ramified_base_point_is_not_stable(
        a in prop::collection::vec(-4i64..=4, 4),
        b in prop::collection::vec(-4i64..=4, 4),
        g in frame_strategy(),
    ) {
        // x0 * (y0 A + y1 B) with A, B of degree 3 and no x0 x1^2 terms,
        // so the reduced map is ramified at the base point x0 = 0
        let mut terms = Vec::new();
        for k in [0usize, 2, 3] {
            terms.push(((k + 1) as u32, 1u32, a[k]));
            terms.push(((k + 1) as u32, 0u32, b[k]));
        }
        prop_assume!(a[0] != 0 || b[0] != 0);
        let f = BiForm::from_ints(4, 1, &terms).unwrap();
        let rep = git_status(&f.transform(&g).unwrap()).unwrap();
        prop_assert_ne!(rep.status, GitStatus::Stable);
    }

    #[test]
    fn ruling_factor_is_unstable(a in prop::collection::vec(-4i64..=4, 5), g in frame_strategy()) {
        prop_assume!(a.iter().any(|&c| c != 0));
        let terms: Vec<(u32, u32, i64)> = a.iter().enumerate().map(|(k, &c)| (k as u32, 1, c)).collect();
        let f = BiForm::from_ints(4, 1, &terms).unwrap();
        prop_assert_eq!(git_status(&f.transform(&g).unwrap()).unwrap().status, GitStatus::Unstable);
    }
}

#[test]
fn nodal_reducible_curve_is_stable() {
    // x0 * (y0 (x0^3 + x1^3) + y1 (x0 x1^2 + 2 x1^3)): one node at the base
    // point, where the reduced map is unramified
    let f = BiForm::from_ints(4, 1, &[(4, 1, 1), (1, 1, 1), (2, 0, 1), (1, 0, 2)]).unwrap();
    assert_eq!(pencil_is_smooth(&f), Some(false));
    assert_eq!(git_status(&f).unwrap().status, GitStatus::Stable);
}

#[test]
fn monomial_is_unstable() {
    let f = BiForm::from_ints(4, 1, &[(4, 1, 1)]).unwrap();
    assert_eq!(git_status(&f).unwrap().status, GitStatus::Unstable);
}

#[test]
fn totally_ramified_smooth_pencil_is_strictly_semistable() {
    // A - B = -x0^4, so the fibre over [1 : -1] is a single point
    let f = BiForm::from_ints(4, 1, &[(0, 1, 4), (1, 1, 2), (4, 1, -1), (0, 0, 4), (1, 0, 2)]).unwrap();
    assert_eq!(pencil_is_smooth(&f), Some(true));
    assert_eq!(fourth_power_member(&f), FourthPower::Rational);
    assert_eq!(git_status(&f).unwrap().status, GitStatus::StrictlySemistable);
}
