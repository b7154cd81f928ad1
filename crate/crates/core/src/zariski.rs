//! Zariski decomposition along a ray `start - t * direction`.
//!
//! Every class on the ray is affine in `t`. On each interval where the
//! negative-part support is constant, the negative coefficients solve a linear
//! system whose right-hand side is affine in `t`, so they are affine as well,
//! and the positive part is affine too. Breakpoints are the roots of the affine
//! functions `P(t) . C` for registered curves `C`; the threshold `T` is where
//! `P(t)^2`, a quadratic, first vanishes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::lattice::{intersect, is_negative_definite, solve_linear, DivisorClass, LatticeError, SurfaceModel};
use crate::poly::Poly;
use crate::scalar::{compare, quad_roots_scalar, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZariskiError {
    /// The registered curves cannot account for the negative part.
    RegistryInsufficient(String),
    NotPseudoEffective,
    /// `start^2 = 0` on the nef side: the ray has no interior.
    NotBig,
    Lattice(LatticeError),
}

impl fmt::Display for ZariskiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZariskiError::RegistryInsufficient(why) => write!(f, "registry insufficient: {}", why),
            ZariskiError::NotPseudoEffective => f.write_str("not pseudo-effective"),
            ZariskiError::NotBig => f.write_str("start class is not big"),
            ZariskiError::Lattice(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for ZariskiError {}

impl From<LatticeError> for ZariskiError {
    fn from(e: LatticeError) -> Self {
        ZariskiError::Lattice(e)
    }
}

impl From<ScalarError> for ZariskiError {
    fn from(e: ScalarError) -> Self {
        ZariskiError::Lattice(LatticeError::Scalar(e))
    }
}

/// `constant + slope * t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineScalar {
    pub constant: Scalar,
    pub slope: Scalar,
}

impl AffineScalar {
    pub fn eval(&self, t: &Scalar) -> Scalar {
        &self.constant + &(&self.slope * t)
    }

    /// Sign of the function just to the right of `t`.
    fn sign_right(&self, t: &Scalar) -> i32 {
        match self.eval(t).signum() {
            0 => self.slope.signum(),
            s => s,
        }
    }

    /// The zero, if the slope is nonzero.
    fn root(&self) -> Option<Scalar> {
        if self.slope.is_zero() {
            None
        } else {
            Some(-(&self.constant / &self.slope))
        }
    }
}

/// `constant + slope * t` in the Néron–Severi group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineClass {
    pub constant: DivisorClass,
    pub slope: DivisorClass,
}

impl AffineClass {
    pub fn eval(&self, t: &Scalar) -> DivisorClass {
        self.constant.add(&self.slope.scale(t))
    }

    fn dot(&self, model: &SurfaceModel, c: &DivisorClass) -> Result<AffineScalar, LatticeError> {
        Ok(AffineScalar { constant: intersect(model, &self.constant, c)?, slope: intersect(model, &self.slope, c)? })
    }

    /// `self(t)^2` as a polynomial in `t`.
    fn square(&self, model: &SurfaceModel) -> Result<Poly, LatticeError> {
        let aa = intersect(model, &self.constant, &self.constant)?;
        let ab = intersect(model, &self.constant, &self.slope)?;
        let bb = intersect(model, &self.slope, &self.slope)?;
        Ok(Poly::new(alloc::vec![aa, &ab + &ab, bb]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeTerm {
    pub curve: String,
    pub coefficient: AffineScalar,
}

/// The decomposition on one interval `[start, end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub start: Scalar,
    pub end: Scalar,
    pub positive: AffineClass,
    pub negative: Vec<NegativeTerm>,
    /// `P(t)^2` on this interval.
    pub volume: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayDecomposition {
    /// `0 = t_0 < t_1 < ... < t_k = T`.
    pub breakpoints: Vec<Scalar>,
    pub pieces: Vec<Piece>,
}

impl RayDecomposition {
    /// The pseudo-effective threshold `T`.
    pub fn threshold(&self) -> &Scalar {
        self.breakpoints.last().expect("at least one breakpoint")
    }

    fn piece_at(&self, t: &Scalar) -> Option<&Piece> {
        self.pieces.iter().find(|p| {
            compare(&p.start, t).is_ok_and(|o| o != Ordering::Greater)
                && compare(t, &p.end).is_ok_and(|o| o != Ordering::Greater)
        })
    }

    /// `P(t)`, for `t` in `[0, T]`.
    pub fn positive_at(&self, t: &Scalar) -> Option<DivisorClass> {
        self.piece_at(t).map(|p| p.positive.eval(t))
    }

    /// Coefficients of `N(t)` by curve name.
    pub fn negative_at(&self, t: &Scalar) -> Option<Vec<(String, Scalar)>> {
        self.piece_at(t).map(|p| p.negative.iter().map(|n| (n.curve.clone(), n.coefficient.eval(t))).collect())
    }

    /// `∫_0^T P(t)^2 dt`, exactly.
    pub fn volume_integral(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for p in &self.pieces {
            acc += p.volume.integrate(&p.start, &p.end);
        }
        acc
    }

    /// Names of the negative-part curves on each interval.
    pub fn signature(&self) -> Vec<Vec<String>> {
        self.pieces.iter().map(|p| p.negative.iter().map(|n| n.curve.clone()).collect()).collect()
    }
}

struct Solved {
    positive: AffineClass,
    coefficients: Vec<AffineScalar>,
}

/// Positive part on the support `support` (indices into the registry).
fn solve_support(model: &SurfaceModel, ray: &AffineClass, support: &[usize]) -> Result<Solved, ZariskiError> {
    if support.is_empty() {
        return Ok(Solved { positive: ray.clone(), coefficients: Vec::new() });
    }
    let curves: Vec<&DivisorClass> = support.iter().map(|&i| &model.negative_curves[i].class).collect();
    let mut gram = Vec::new();
    for a in &curves {
        let mut row = Vec::new();
        for b in &curves {
            row.push(intersect(model, a, b)?);
        }
        gram.push(row);
    }
    let rhs_c: Vec<Scalar> = curves.iter().map(|c| intersect(model, &ray.constant, c)).collect::<Result<_, _>>()?;
    let rhs_s: Vec<Scalar> = curves.iter().map(|c| intersect(model, &ray.slope, c)).collect::<Result<_, _>>()?;
    let n_c = solve_linear(&gram, &rhs_c)?;
    let n_s = solve_linear(&gram, &rhs_s)?;
    let mut positive = ray.clone();
    for (k, c) in curves.iter().enumerate() {
        positive.constant = positive.constant.sub(&c.scale(&n_c[k]));
        positive.slope = positive.slope.sub(&c.scale(&n_s[k]));
    }
    let coefficients = n_c.into_iter().zip(n_s).map(|(constant, slope)| AffineScalar { constant, slope }).collect();
    Ok(Solved { positive, coefficients })
}

fn support_gram_definite(model: &SurfaceModel, support: &[usize]) -> Result<bool, ZariskiError> {
    let mut gram = Vec::new();
    for &i in support {
        let mut row = Vec::new();
        for &j in support {
            let v = intersect(model, &model.negative_curves[i].class, &model.negative_curves[j].class)?;
            let r = v
                .as_rational()
                .cloned()
                .ok_or_else(|| ZariskiError::RegistryInsufficient(String::from("irrational curve intersection")))?;
            row.push(r);
        }
        gram.push(row);
    }
    Ok(is_negative_definite(&gram))
}

fn min_scalar(acc: &mut Option<Scalar>, v: Scalar) -> Result<(), ScalarError> {
    match acc {
        Some(a) if compare(&v, a)? != Ordering::Less => {}
        _ => *acc = Some(v),
    }
    Ok(())
}

/// Zariski decomposition of `start - t * direction` for `t` in `[0, T]`.
///
/// The negative part may only involve registered negative curves; when these do
/// not suffice the function reports it instead of returning a wrong answer.
pub fn decompose_ray(
    model: &SurfaceModel,
    start: &DivisorClass,
    direction: &DivisorClass,
) -> Result<RayDecomposition, ZariskiError> {
    model.check_class(start)?;
    model.check_class(direction)?;
    if direction.is_zero() {
        return Err(ZariskiError::RegistryInsufficient(String::from("zero direction")));
    }
    let ray = AffineClass { constant: start.clone(), slope: direction.neg() };
    let mut t0 = Scalar::zero();
    let mut support: Vec<usize> = Vec::new();
    let mut breakpoints = alloc::vec![Scalar::zero()];
    let mut pieces = Vec::new();

    loop {
        // saturate the support just to the right of t0
        let solved = loop {
            let solved = solve_support(model, &ray, &support)?;
            let mut added = false;
            for (i, c) in model.negative_curves.iter().enumerate() {
                if support.contains(&i) {
                    continue;
                }
                if solved.positive.dot(model, &c.class)?.sign_right(&t0) < 0 {
                    support.push(i);
                    added = true;
                    break;
                }
            }
            if !added {
                break solved;
            }
        };
        if !support_gram_definite(model, &support)? {
            return Err(ZariskiError::RegistryInsufficient(String::from(
                "negative-part support is not negative definite",
            )));
        }
        for (k, n) in solved.coefficients.iter().enumerate() {
            if n.sign_right(&t0) < 0 {
                return Err(ZariskiError::RegistryInsufficient(format!(
                    "negative coefficient on {}",
                    model.negative_curves[support[k]].name
                )));
            }
        }
        let volume = solved.positive.square(model)?;
        let mut psef_end: Option<Scalar> = None;
        for c in &model.nef_test_curves {
            let v = solved.positive.dot(model, &c.class)?;
            if v.sign_right(&t0) < 0 {
                return Err(ZariskiError::NotPseudoEffective);
            }
            if v.slope.is_negative() {
                min_scalar(&mut psef_end, v.root().expect("nonzero slope"))?;
            }
        }
        let v0 = volume.eval(&t0);
        if v0.is_negative() {
            return Err(ZariskiError::RegistryInsufficient(String::from("nef positive part with negative square")));
        }
        if v0.is_zero() {
            return Err(ZariskiError::NotBig);
        }
        let roots = quad_roots_scalar(&volume.coeff(2), &volume.coeff(1), &volume.coeff(0)).map_err(|e| match e {
            ScalarError::DegeneratePolynomial => {
                ZariskiError::RegistryInsufficient(String::from("vanishing positive part"))
            }
            other => other.into(),
        })?;
        for r in roots {
            if compare(&r, &t0)? == Ordering::Greater {
                min_scalar(&mut psef_end, r)?;
                break;
            }
        }
        let mut enter: Option<Scalar> = None;
        for (i, c) in model.negative_curves.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let v = solved.positive.dot(model, &c.class)?;
            if v.slope.is_negative() {
                min_scalar(&mut enter, v.root().expect("nonzero slope"))?;
            }
        }
        let mut shrink: Option<Scalar> = None;
        for n in &solved.coefficients {
            if n.slope.is_negative() {
                min_scalar(&mut shrink, n.root().expect("nonzero slope"))?;
            }
        }
        let Some(end_psef) = psef_end else {
            return Err(ZariskiError::RegistryInsufficient(String::from("ray never leaves the pseudo-effective cone")));
        };
        let (end, last) = match enter {
            Some(e) if compare(&e, &end_psef)? == Ordering::Less => (e, false),
            _ => (end_psef, true),
        };
        if let Some(s) = shrink {
            if compare(&s, &end)? == Ordering::Less {
                return Err(ZariskiError::RegistryInsufficient(String::from(
                    "negative-part support would shrink along the ray",
                )));
            }
        }
        let negative = support
            .iter()
            .zip(&solved.coefficients)
            .map(|(&i, n)| NegativeTerm { curve: model.negative_curves[i].name.clone(), coefficient: n.clone() })
            .collect();
        pieces.push(Piece { start: t0.clone(), end: end.clone(), positive: solved.positive, negative, volume });
        breakpoints.push(end.clone());
        if last {
            return Ok(RayDecomposition { breakpoints, pieces });
        }
        t0 = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{hirzebruch, p1xp1, pullback, weighted_blowup_p1xp1};
    use alloc::vec;

    #[test]
    fn blowup_ray_at_quarter() {
        let m = weighted_blowup_p1xp1(1, 4).unwrap();
        let c = Scalar::ratio(1, 4);
        let start = pullback(Scalar::int(2) - &c, Scalar::int(2) - &(&Scalar::int(4) * &c));
        let dir = DivisorClass::from_ints(&[0, 0, 1]);
        let d = decompose_ray(&m, &start, &dir).unwrap();
        let expect: Vec<Scalar> = [0, 1, 7, 8].iter().map(|&k| Scalar::int(k)).collect();
        assert_eq!(d.breakpoints, expect);
        // N = (t - 2 + 4c)/4 f1~ on the middle piece
        let mid = &d.pieces[1];
        assert_eq!(mid.negative.len(), 1);
        assert_eq!(mid.negative[0].curve, "f1~");
        assert_eq!(mid.negative[0].coefficient.slope, Scalar::ratio(1, 4));
        assert_eq!(mid.negative[0].coefficient.constant, Scalar::ratio(-1, 4));
    }

    #[test]
    fn p1xp1_subtract_ruling() {
        let m = p1xp1();
        let d = decompose_ray(&m, &m.anticanonical(), &DivisorClass::from_ints(&[0, 1])).unwrap();
        assert_eq!(d.breakpoints, vec![Scalar::zero(), Scalar::int(2)]);
        assert!(d.pieces[0].negative.is_empty());
    }

    #[test]
    fn not_pseudo_effective_start() {
        let m = p1xp1();
        let e = decompose_ray(&m, &DivisorClass::from_ints(&[-1, 1]), &DivisorClass::from_ints(&[0, 1]));
        assert_eq!(e, Err(ZariskiError::NotPseudoEffective));
    }

    #[test]
    fn registry_insufficient_without_curves() {
        // F_2 with its negative section removed from the registry
        let mut m = hirzebruch(2).unwrap();
        m.negative_curves.clear();
        let start = DivisorClass::from_ints(&[2, 1]);
        let e = decompose_ray(&m, &start, &DivisorClass::from_ints(&[0, 1]));
        assert!(matches!(e, Err(ZariskiError::RegistryInsufficient(_))), "{:?}", e);
    }
}
