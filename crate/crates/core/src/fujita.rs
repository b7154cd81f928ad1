//! Log discrepancies, S- and beta-invariants of divisors over log Fano
//! surface pairs, and walls in the boundary coefficient.
//!
//! For a pair `(X, cD)` and a divisor `F` over `X`,
//! `S(F) = (1/V) ∫_0^T vol(-K - cD - tF) dt` with `V = (-K - cD)^2`, and
//! `beta(F) = A(F) - S(F)`. The volume is `P(t)^2` for the positive part of the
//! Zariski decomposition, a quadratic polynomial on each interval, so the
//! integral is exact.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::lattice::{intersect, DivisorClass, LatticeError, SurfaceModel};
use crate::models::{hirzebruch, p1xp1, weighted_blowup_p1xp1};
use crate::poly::Poly;
use crate::scalar::{compare, quad_roots_scalar, Rational, Scalar, ScalarError};
use crate::zariski::{decompose_ray, RayDecomposition, ZariskiError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FujitaError {
    /// The boundary coefficient lies outside the allowed range.
    CoefficientOutOfRange(String),
    Zariski(ZariskiError),
    ChamberDetectionFailed(String),
    /// `beta * V` is not a polynomial of the declared degree on a chamber.
    DegreeBoundExceeded,
    UnknownDivisor(String),
}

impl fmt::Display for FujitaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FujitaError::CoefficientOutOfRange(why) => write!(f, "coefficient out of range: {}", why),
            FujitaError::Zariski(e) => write!(f, "{}", e),
            FujitaError::ChamberDetectionFailed(why) => write!(f, "chamber detection failed: {}", why),
            FujitaError::DegreeBoundExceeded => f.write_str("beta numerator exceeds the degree bound"),
            FujitaError::UnknownDivisor(name) => write!(f, "unknown divisor {}", name),
        }
    }
}

impl core::error::Error for FujitaError {}

impl From<ZariskiError> for FujitaError {
    fn from(e: ZariskiError) -> Self {
        FujitaError::Zariski(e)
    }
}

impl From<LatticeError> for FujitaError {
    fn from(e: LatticeError) -> Self {
        FujitaError::Zariski(ZariskiError::Lattice(e))
    }
}

impl From<ScalarError> for FujitaError {
    fn from(e: ScalarError) -> Self {
        FujitaError::Zariski(e.into())
    }
}

/// A divisor over the surface, as needed for the log discrepancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorSpec {
    /// A prime divisor on the surface appearing in `D` with `multiplicity`.
    PrimeOnSurface { class: DivisorClass, multiplicity: Rational },
    /// The exceptional divisor of a blow-up with `K_Y = pi^* K_X + k E`, where
    /// `D` vanishes to `order` along `E`.
    Exceptional { class: DivisorClass, discrepancy: Rational, order: Rational },
}

impl DivisorSpec {
    /// The class subtracted along the ray.
    pub fn class(&self) -> &DivisorClass {
        match self {
            DivisorSpec::PrimeOnSurface { class, .. } | DivisorSpec::Exceptional { class, .. } => class,
        }
    }
}

/// `A_{X, cD}(F)`: `1 - c m` for a prime divisor of multiplicity `m`,
/// `1 + k - c r` for an exceptional divisor.
pub fn log_discrepancy(spec: &DivisorSpec, c: &Scalar) -> Result<Scalar, FujitaError> {
    if c.is_negative() {
        return Err(FujitaError::CoefficientOutOfRange(String::from("c must be nonnegative")));
    }
    if compare(c, &Scalar::one())? != Ordering::Less {
        return Err(FujitaError::CoefficientOutOfRange(String::from("c must be below 1")));
    }
    Ok(match spec {
        DivisorSpec::PrimeOnSurface { multiplicity, .. } => Scalar::one() - c * &Scalar::from(multiplicity.clone()),
        DivisorSpec::Exceptional { discrepancy, order, .. } => {
            Scalar::one() + Scalar::from(discrepancy.clone()) - c * &Scalar::from(order.clone())
        }
    })
}

/// The family `L(c) = anti - c * boundary` of polarizations `-K - cD`,
/// written in the basis of the model the ray lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryFamily {
    pub anti: DivisorClass,
    pub boundary: DivisorClass,
}

impl BoundaryFamily {
    pub fn at(&self, c: &Scalar) -> DivisorClass {
        self.anti.sub(&self.boundary.scale(c))
    }

    /// `V(c) = L(c)^2` as a polynomial in `c`.
    pub fn volume_poly(&self, model: &SurfaceModel) -> Result<Poly, LatticeError> {
        let aa = intersect(model, &self.anti, &self.anti)?;
        let ab = intersect(model, &self.anti, &self.boundary)?;
        let bb = intersect(model, &self.boundary, &self.boundary)?;
        Ok(Poly::new(vec![aa, -(&ab + &ab), bb]))
    }
}

/// `S` together with the decomposition it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SReport {
    pub s: Scalar,
    pub volume: Scalar,
    pub decomposition: RayDecomposition,
}

pub fn s_invariant_report(
    model: &SurfaceModel,
    family: &BoundaryFamily,
    c: &Scalar,
    direction: &DivisorClass,
) -> Result<SReport, FujitaError> {
    if c.is_negative() {
        return Err(FujitaError::CoefficientOutOfRange(String::from("c must be nonnegative")));
    }
    let start = family.at(c);
    let volume = intersect(model, &start, &start)?;
    if !volume.is_positive() {
        return Err(ZariskiError::NotBig.into());
    }
    let decomposition = decompose_ray(model, &start, direction)?;
    let s = decomposition.volume_integral().checked_div(&volume)?;
    Ok(SReport { s, volume, decomposition })
}

/// `S_{X, cD}(F)` for `F` with class `direction`.
pub fn s_invariant(
    model: &SurfaceModel,
    family: &BoundaryFamily,
    c: &Scalar,
    direction: &DivisorClass,
) -> Result<Scalar, FujitaError> {
    Ok(s_invariant_report(model, family, c, direction)?.s)
}

/// `beta = A - S`.
pub fn beta(
    model: &SurfaceModel,
    family: &BoundaryFamily,
    c: &Scalar,
    spec: &DivisorSpec,
) -> Result<Scalar, FujitaError> {
    let a = log_discrepancy(spec, c)?;
    let s = s_invariant(model, family, c, spec.class())?;
    Ok(a.checked_sub(&s)?)
}

/// Refined S-invariant for the flag `x ∈ f2 ⊂ P^1 x P^1` with `D ~ f1 + 4 f2`
/// through `x`:
/// `(1/(2(2-c)(2-4c))) ∫_0^{2-4c} dt ∫_0^{2-c} (2-c-u) du`.
pub fn flag_s_invariant(c: &Scalar) -> Result<Scalar, FujitaError> {
    if !c.is_positive() || compare(c, &Scalar::ratio(1, 2))? != Ordering::Less {
        return Err(FujitaError::CoefficientOutOfRange(String::from("c must lie in (0, 1/2)")));
    }
    let two = Scalar::int(2);
    let a = &two - c;
    let t_end = &two - &(&Scalar::int(4) * c);
    // the inner integrand does not depend on t
    let inner = Poly::affine(a.clone(), -Scalar::one()).integrate(&Scalar::zero(), &a);
    let outer = Poly::constant(inner).integrate(&Scalar::zero(), &t_end);
    let norm = &(&two * &a) * &t_end;
    Ok(outer.checked_div(&norm)?)
}

/// A named test divisor of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDivisor {
    pub name: String,
    pub spec: DivisorSpec,
}

/// A surface with a one-parameter boundary `cD` and the divisors to test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub name: String,
    pub model: SurfaceModel,
    pub family: BoundaryFamily,
    pub divisors: Vec<NamedDivisor>,
    /// Open interval of `c` on which `-K - cD` is big.
    pub domain: (Rational, Rational),
}

impl Configuration {
    pub fn divisor(&self, name: &str) -> Result<&DivisorSpec, FujitaError> {
        self.divisors
            .iter()
            .find(|d| d.name == name)
            .map(|d| &d.spec)
            .ok_or_else(|| FujitaError::UnknownDivisor(name.to_string()))
    }

    pub fn s_invariant(&self, c: &Scalar, divisor: &str) -> Result<Scalar, FujitaError> {
        s_invariant(&self.model, &self.family, c, self.divisor(divisor)?.class())
    }

    pub fn beta(&self, c: &Scalar, divisor: &str) -> Result<Scalar, FujitaError> {
        beta(&self.model, &self.family, c, self.divisor(divisor)?)
    }

    pub fn wall_scan(&self, divisor: &str, degree_bound: usize) -> Result<WallScan, FujitaError> {
        wall_scan(&self.model, &self.family, self.divisor(divisor)?, &self.domain, degree_bound)
    }
}

fn prime(name: &str, class: DivisorClass, m: i64) -> NamedDivisor {
    NamedDivisor {
        name: name.to_string(),
        spec: DivisorSpec::PrimeOnSurface { class, multiplicity: Rational::from_integer(m) },
    }
}

/// `(1,4)`-blow-up of `P^1 x P^1` at a point of the `(1,4)`-curve
/// `C0 = V(x0 y0^4 - x1 y1^4)` where `C0` has order 4 along `E`.
pub fn blowup_config() -> Configuration {
    let model = weighted_blowup_p1xp1(1, 4).expect("valid weights");
    let data = model.exceptional.clone().expect("blow-up metadata");
    Configuration {
        name: "blowup-1-4".to_string(),
        family: BoundaryFamily { anti: data.base_canonical.neg(), boundary: DivisorClass::from_ints(&[1, 4, 0]) },
        divisors: vec![NamedDivisor {
            name: "E".to_string(),
            spec: DivisorSpec::Exceptional {
                class: data.class.clone(),
                discrepancy: data.discrepancy.clone(),
                order: Rational::from_integer(4),
            },
        }],
        model,
        domain: (Rational::zero(), Rational::new(1, 2)),
    }
}

/// `P^1 x P^1` with the `(1,4)`-curve `D ~ f1 + 4 f2`.
pub fn p1xp1_config() -> Configuration {
    Configuration {
        name: "p1xp1-1-4".to_string(),
        model: p1xp1(),
        family: BoundaryFamily { anti: DivisorClass::from_ints(&[2, 2]), boundary: DivisorClass::from_ints(&[1, 4]) },
        divisors: vec![
            prime("f1", DivisorClass::from_ints(&[1, 0]), 0),
            prime("f2", DivisorClass::from_ints(&[0, 1]), 0),
            prime("D", DivisorClass::from_ints(&[1, 4]), 1),
        ],
        domain: (Rational::zero(), Rational::new(1, 2)),
    }
}

/// `P^1 x P^1` with `C0 = 4Q + l1 + l2`, `Q ~ f1 + f2` and lines `l ~ f2`.
pub fn quartic_sextic_config() -> Configuration {
    Configuration {
        name: "p1xp1-4-6".to_string(),
        model: p1xp1(),
        family: BoundaryFamily { anti: DivisorClass::from_ints(&[2, 2]), boundary: DivisorClass::from_ints(&[4, 6]) },
        divisors: vec![
            prime("Q", DivisorClass::from_ints(&[1, 1]), 4),
            prime("l", DivisorClass::from_ints(&[0, 1]), 1),
            prime("f1", DivisorClass::from_ints(&[1, 0]), 0),
            prime("f2", DivisorClass::from_ints(&[0, 1]), 0),
        ],
        domain: (Rational::zero(), Rational::new(1, 3)),
    }
}

/// `F_2` with `D0 = 4 e_inf + 2 e_0 + f_1 + f_2`, of class `6e + 10f`.
pub fn f2_config() -> Configuration {
    Configuration {
        name: "f2-degeneration".to_string(),
        model: hirzebruch(2).expect("valid index"),
        family: BoundaryFamily { anti: DivisorClass::from_ints(&[2, 4]), boundary: DivisorClass::from_ints(&[6, 10]) },
        divisors: vec![
            prime("f1", DivisorClass::from_ints(&[0, 1]), 1),
            prime("e_inf", DivisorClass::from_ints(&[1, 2]), 4),
            prime("e0", DivisorClass::from_ints(&[1, 0]), 2),
        ],
        domain: (Rational::zero(), Rational::new(1, 3)),
    }
}

/// The built-in configurations by name.
pub fn builtin_config(name: &str) -> Option<Configuration> {
    match name {
        "blowup-1-4" => Some(blowup_config()),
        "p1xp1-1-4" => Some(p1xp1_config()),
        "p1xp1-4-6" => Some(quartic_sextic_config()),
        "f2-degeneration" => Some(f2_config()),
        _ => None,
    }
}

pub const BUILTIN_CONFIGS: [&str; 4] = ["blowup-1-4", "p1xp1-1-4", "p1xp1-4-6", "f2-degeneration"];

/// One interval of constant breakpoint pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Extreme sample points known to lie in the chamber.
    pub inner: (Rational, Rational),
    /// Nearest sample points known to lie outside (or the domain ends).
    pub outer: (Rational, Rational),
    pub signature: Vec<Vec<String>>,
    /// `beta * V` divided by its gcd with `V`.
    pub numerator: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallScan {
    pub chambers: Vec<Chamber>,
    /// Walls: roots of a chamber numerator inside that chamber at which beta
    /// changes sign.
    pub walls: Vec<Scalar>,
}

const GRID: i64 = 32;
const MAX_DEPTH: u32 = 40;

type Signature = Vec<Vec<String>>;

fn signature_at(
    model: &SurfaceModel,
    family: &BoundaryFamily,
    spec: &DivisorSpec,
    c: &Scalar,
) -> Result<Signature, FujitaError> {
    let start = family.at(c);
    Ok(decompose_ray(model, &start, spec.class())?.signature())
}

/// Walls of `beta(c)` on the open interval `domain`.
///
/// The interval is split into chambers on which the active negative curves of
/// the ray decomposition do not change. On a chamber `beta(c) * V(c)` is a
/// polynomial; it is recovered by exact interpolation at `degree_bound + 1`
/// nodes (and checked at one more), its common factor with `V` is removed, and
/// the remaining roots are solved exactly.
pub fn wall_scan(
    model: &SurfaceModel,
    family: &BoundaryFamily,
    spec: &DivisorSpec,
    domain: &(Rational, Rational),
    degree_bound: usize,
) -> Result<WallScan, FujitaError> {
    let (lo, hi) = domain;
    if compare(&lo.clone().into(), &hi.clone().into())? != Ordering::Less {
        return Err(FujitaError::CoefficientOutOfRange(String::from("empty domain")));
    }
    let width = hi - lo;
    // samples keyed by position; signatures attached
    let mut samples: BTreeMap<Rational, Signature> = BTreeMap::new();
    for k in 1..GRID {
        let c = lo + &(&width * &Rational::new(k, GRID));
        let sig = signature_at(model, family, spec, &c.clone().into())?;
        samples.insert(c, sig);
    }
    let tol = &width / &Rational::from_bigint(num_bigint::BigInt::from(2u32).pow(MAX_DEPTH));
    loop {
        let keys: Vec<(Rational, Signature)> = samples.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut refined = false;
        for w in keys.windows(2) {
            let ((a, sa), (b, sb)) = (&w[0], &w[1]);
            if sa != sb && (b - a) > tol {
                let mid = &(a + b) / &Rational::from_integer(2);
                let sig = signature_at(model, family, spec, &mid.clone().into())?;
                samples.insert(mid, sig);
                refined = true;
            }
        }
        if !refined {
            break;
        }
        if samples.len() > 4096 {
            return Err(FujitaError::ChamberDetectionFailed(String::from("too many pattern changes")));
        }
    }
    let pts: Vec<(Rational, Signature)> = samples.into_iter().collect();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut s = 0;
    for i in 1..=pts.len() {
        if i == pts.len() || pts[i].1 != pts[s].1 {
            runs.push((s, i - 1));
            s = i;
        }
    }
    let volume = family.volume_poly(model)?;
    let mut chambers = Vec::new();
    let mut walls = Vec::new();
    for &(s, e) in &runs {
        let (a, b) = (pts[s].0.clone(), pts[e].0.clone());
        let signature = pts[s].1.clone();
        if a == b {
            return Err(FujitaError::ChamberDetectionFailed(String::from("chamber too thin to interpolate")));
        }
        let outer_lo = if s == 0 { lo.clone() } else { pts[s - 1].0.clone() };
        let outer_hi = if e + 1 == pts.len() { hi.clone() } else { pts[e + 1].0.clone() };
        let n_nodes = degree_bound + 2;
        let mut nodes = Vec::new();
        for k in 0..n_nodes {
            let x = &a + &(&(&b - &a) * &Rational::new(k as i64, n_nodes as i64 - 1));
            let xs: Scalar = x.into();
            if signature_at(model, family, spec, &xs)? != signature {
                return Err(FujitaError::ChamberDetectionFailed(String::from("chamber is not an interval")));
            }
            let bv = beta(model, family, &xs, spec)?.checked_mul(&volume.eval(&xs))?;
            nodes.push((xs, bv));
        }
        let (check, fit) = nodes.split_last().expect("nodes");
        let poly = Poly::interpolate(fit);
        if poly.eval(&check.0) != check.1 {
            return Err(FujitaError::DegreeBoundExceeded);
        }
        let numerator = if poly.is_zero() { Poly::zero() } else { poly.div_rem(&poly.gcd(&volume))?.0 };
        if !numerator.is_zero() {
            for r in solve_numerator(&numerator)? {
                let rs = &r;
                let inside = compare(rs, &outer_lo.clone().into())? == Ordering::Greater
                    && compare(rs, &outer_hi.clone().into())? == Ordering::Less;
                if !inside || numerator.root_multiplicity(rs) % 2 == 0 {
                    continue;
                }
                if signature_at(model, family, spec, rs)? != signature {
                    continue;
                }
                if !walls.contains(&r) {
                    walls.push(r);
                }
            }
        }
        chambers.push(Chamber { inner: (a, b), outer: (outer_lo, outer_hi), signature, numerator });
    }
    walls.sort_by(|x, y| compare(x, y).unwrap_or(Ordering::Equal));
    Ok(WallScan { chambers, walls })
}

/// Real roots of a numerator: rational roots are split off first, the rest
/// must have degree at most 2.
fn solve_numerator(p: &Poly) -> Result<Vec<Scalar>, FujitaError> {
    let mut rest = p.clone();
    let mut roots: Vec<Scalar> = Vec::new();
    for r in p.rational_roots() {
        let rs: Scalar = r.into();
        let lin = Poly::affine(-rs.clone(), Scalar::one());
        while rest.eval(&rs).is_zero() {
            rest = rest.div_rem(&lin)?.0;
        }
        roots.push(rs);
    }
    match rest.degree() {
        None | Some(0) => {}
        Some(1) | Some(2) => {
            for r in quad_roots_scalar(&rest.coeff(2), &rest.coeff(1), &rest.coeff(0))? {
                roots.push(r);
            }
        }
        Some(_) => return Err(ScalarError::NotQuadratic.into()),
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn log_discrepancies() {
        let cfg = blowup_config();
        let e = cfg.divisor("E").unwrap();
        assert_eq!(log_discrepancy(e, &q(1, 4)).unwrap(), Scalar::int(4));
        let qd = quartic_sextic_config();
        assert_eq!(log_discrepancy(qd.divisor("Q").unwrap(), &q(1, 10)).unwrap(), q(3, 5));
        assert_eq!(log_discrepancy(qd.divisor("f1").unwrap(), &q(1, 3)).unwrap(), Scalar::one());
        assert!(log_discrepancy(e, &q(-1, 4)).is_err());
    }

    #[test]
    fn s_on_p1xp1() {
        let cfg = p1xp1_config();
        let c = q(1, 10);
        assert_eq!(cfg.s_invariant(&c, "f2").unwrap(), q(4, 5));
        // direct integration: (1-2c)(11-4c)/(24(2-c)) at c = 1/10
        assert_eq!(cfg.s_invariant(&c, "D").unwrap(), q(53, 285));
        assert_eq!(cfg.beta(&c, "f1").unwrap(), q(1, 20));
    }

    #[test]
    fn flag_values() {
        assert_eq!(flag_s_invariant(&q(1, 4)).unwrap(), q(7, 16));
        assert_eq!(flag_s_invariant(&q(2, 5)).unwrap(), q(2, 5));
        assert!(flag_s_invariant(&q(1, 2)).is_err());
        assert!(flag_s_invariant(&Scalar::zero()).is_err());
    }

    #[test]
    fn f2_second_piece_positive_part() {
        let cfg = f2_config();
        let c = q(1, 10);
        let spec = cfg.divisor("f1").unwrap();
        let d = decompose_ray(&cfg.model, &cfg.family.at(&c), spec.class()).unwrap();
        assert_eq!(d.pieces.len(), 2);
        // (2 - 6c - u/2)(e + 2f) on the second piece, u = t - 2c
        let t = q(1, 1);
        let u = &t - &(&Scalar::int(2) * &c);
        let p = d.positive_at(&t).unwrap();
        let k = &(&Scalar::int(2) - &(&Scalar::int(6) * &c)) - &(&u / &Scalar::int(2));
        assert_eq!(p, DivisorClass::from_ints(&[1, 2]).scale(&k));
        assert_eq!(d.threshold(), &(&Scalar::int(4) - &(&Scalar::int(10) * &c)));
    }

    #[test]
    fn unknown_divisor() {
        assert_eq!(p1xp1_config().beta(&q(1, 4), "nope"), Err(FujitaError::UnknownDivisor("nope".to_string())));
    }
}
