//! The surface models used by the stability computations.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;

use crate::lattice::{Curve, DivisorClass, ExceptionalData, LatticeError, SurfaceModel};
use crate::scalar::{Rational, Scalar};

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `P^1 x P^1` with rulings `f1, f2`.
pub fn p1xp1() -> SurfaceModel {
    SurfaceModel::new(
        "p1xp1",
        vec!["f1".to_string(), "f2".to_string()],
        vec![vec![r(0), r(1)], vec![r(1), r(0)]],
        DivisorClass::from_ints(&[-2, -2]),
        vec![],
        vec![
            Curve { name: "f1".into(), class: DivisorClass::from_ints(&[1, 0]), self_intersection: r(0) },
            Curve { name: "f2".into(), class: DivisorClass::from_ints(&[0, 1]), self_intersection: r(0) },
        ],
    )
    .expect("built-in model is consistent")
}

/// The Hirzebruch surface `F_m` with negative section `e` and fiber `f`.
pub fn hirzebruch(m: i64) -> Result<SurfaceModel, LatticeError> {
    if m <= 0 {
        return Err(LatticeError::InvalidParameter(format!("hirzebruch index m = {} must be >= 1", m)));
    }
    SurfaceModel::new(
        format!("hirzebruch({})", m),
        vec!["e".to_string(), "f".to_string()],
        vec![vec![r(-m), r(1)], vec![r(1), r(0)]],
        DivisorClass::from_ints(&[-2, -(m + 2)]),
        vec![Curve { name: "e".into(), class: DivisorClass::from_ints(&[1, 0]), self_intersection: r(-m) }],
        vec![Curve { name: "f".into(), class: DivisorClass::from_ints(&[0, 1]), self_intersection: r(0) }],
    )
}

/// Section at infinity `e + m f` of `F_m`.
pub fn hirzebruch_section_at_infinity(m: i64) -> DivisorClass {
    DivisorClass::from_ints(&[1, m])
}

/// Weighted blow-up of `P^1 x P^1` at a torus-fixed point with weights
/// `(a, b)`, on basis `(pi^* f1, pi^* f2, E)`.
///
/// The strict transforms are `f1~ = pi^* f1 - b E` and `f2~ = pi^* f2 - a E`;
/// the exceptional curve has discrepancy `a + b - 1`.
pub fn weighted_blowup_p1xp1(a: i64, b: i64) -> Result<SurfaceModel, LatticeError> {
    if a <= 0 || b <= 0 {
        return Err(LatticeError::InvalidParameter(format!("weights ({}, {}) must be positive", a, b)));
    }
    let e2 = -Rational::new(1, a * b);
    let ab = Rational::new(a, b);
    let ba = Rational::new(b, a);
    let cls = |c: [Rational; 3]| DivisorClass::from_rationals(&c);
    let model = SurfaceModel::new(
        format!("wblowup({},{})", a, b),
        vec!["pi*f1".to_string(), "pi*f2".to_string(), "E".to_string()],
        vec![vec![r(0), r(1), r(0)], vec![r(1), r(0), r(0)], vec![r(0), r(0), e2.clone()]],
        cls([r(-2), r(-2), r(a + b - 1)]),
        vec![
            Curve { name: "f1~".into(), class: cls([r(1), r(0), r(-b)]), self_intersection: -ba },
            Curve { name: "f2~".into(), class: cls([r(0), r(1), r(-a)]), self_intersection: -ab },
            Curve { name: "E".into(), class: cls([r(0), r(0), r(1)]), self_intersection: e2 },
        ],
        vec![],
    )?;
    model.with_exceptional(ExceptionalData {
        class: DivisorClass::from_ints(&[0, 0, 1]),
        discrepancy: r(a + b - 1),
        base_canonical: DivisorClass::from_ints(&[-2, -2, 0]),
    })
}

/// `pi^* (x f1 + y f2)` on a weighted blow-up model.
pub fn pullback(x: Scalar, y: Scalar) -> DivisorClass {
    DivisorClass::new(vec![x, y, Scalar::zero()])
}
