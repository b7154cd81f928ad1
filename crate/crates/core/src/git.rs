//! GIT stability of bidegree `(d1, d2)` forms on `P^1 x P^1` under
//! `SL2 x SL2`, via the Hilbert–Mumford criterion in coordinate frames.
//!
//! Index convention: the term `(i, j)` is `x0^i x1^(d1-i) y0^j y1^(d2-j)`, so
//! `i` is the exponent of `x0` and `j` the exponent of `y0`. In a fixed frame
//! the diagonal torus acts on `(i, j)` with weight `r(2i - d1) + s(2j - d2)`,
//! and the form is unstable (resp. not stable) for that torus exactly when the
//! barycenter `(d1/2, d2/2)` lies outside (resp. not in the interior of) the
//! Newton hull of its support.
//!
//! Every one-parameter subgroup is diagonal in some frame, so the remaining
//! work is to find the right frames. For pencils (`d2 = 1`, or `d1 = 1` by
//! symmetry) `f = y0 A(x) + y1 B(x)` destabilizing frames are centred at the
//! points `p` where `2 m_p + e_p >= d1`, with `m_p` the multiplicity of `p` in
//! `gcd(A, B)` and `e_p` the ramification index of `p -> [A : B]` after removing
//! the gcd. Those points are computed exactly. Other bidegrees use singular and
//! ruling-tangency points as candidates and are flagged heuristic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GitError {
    ZeroForm,
    /// A term index exceeds the bidegree.
    TermOutOfRange {
        i: u32,
        j: u32,
    },
    SingularFrame,
}

impl fmt::Display for GitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GitError::ZeroForm => f.write_str("zero form"),
            GitError::TermOutOfRange { i, j } => write!(f, "term ({}, {}) outside the bidegree", i, j),
            GitError::SingularFrame => f.write_str("frame matrix is singular"),
        }
    }
}

impl core::error::Error for GitError {}

/// A bihomogeneous form of bidegree `(d1, d2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiForm {
    pub d1: u32,
    pub d2: u32,
    /// Nonzero coefficients only.
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiForm {
    pub fn new(d1: u32, d2: u32, terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Result<Self, GitError> {
        let mut map = BTreeMap::new();
        for ((i, j), c) in terms {
            if i > d1 || j > d2 {
                return Err(GitError::TermOutOfRange { i, j });
            }
            let e = map.entry((i, j)).or_insert_with(Rational::zero);
            *e = &*e + &c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        if map.is_empty() {
            return Err(GitError::ZeroForm);
        }
        Ok(BiForm { d1, d2, terms: map })
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_ints(d1: u32, d2: u32, terms: &[(u32, u32, i64)]) -> Result<Self, GitError> {
        BiForm::new(d1, d2, terms.iter().map(|&(i, j, c)| ((i, j), Rational::from_integer(c))))
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().map(|&(i, j)| (i as i64, j as i64)).collect()
    }

    /// Exchange the two factors.
    pub fn transpose(&self) -> BiForm {
        BiForm { d1: self.d2, d2: self.d1, terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// `f(M x', N y')` for the frame `(M, N)`.
    pub fn transform(&self, frame: &Frame) -> Result<BiForm, GitError> {
        frame.check()?;
        let xs = linear_powers(&frame.x, self.d1);
        let ys = linear_powers(&frame.y, self.d2);
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let px = &xs[i as usize];
            let py = &ys[j as usize];
            for (a, ca) in px.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let cca = c * ca;
                for (b, cb) in py.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let e = out.entry((a as u32, b as u32)).or_insert_with(Rational::zero);
                    *e = &*e + &(&cca * cb);
                }
            }
        }
        BiForm::new(self.d1, self.d2, out)
    }

    /// Coefficients of `y0` (index 1) and `y1` (index 0) when `d2 = 1`.
    fn pencil(&self) -> (BinForm, BinForm) {
        let a = (0..=self.d1).map(|i| self.coeff(i, 1)).collect();
        let b = (0..=self.d1).map(|i| self.coeff(i, 0)).collect();
        (BinForm::new(a), BinForm::new(b))
    }

    /// `f(p, -)` as a form in `y`.
    fn restrict_x(&self, p: &ProjPoint) -> BinForm {
        let mut out = vec![Rational::zero(); self.d2 as usize + 1];
        for (&(i, j), c) in &self.terms {
            let v = &(c * &p.a.pow(i)) * &p.b.pow(self.d1 - i);
            out[j as usize] = &out[j as usize] + &v;
        }
        BinForm::new(out)
    }
}

/// `(m00 z0 + m01 z1)^k (m10 z0 + m11 z1)^(d-k)` for `k = 0..=d`, as
/// coefficient vectors indexed by the exponent of `z0`. This is the image of
/// `z0^k z1^(d-k)` under `z -> M z`.
fn linear_powers(m: &[[Rational; 2]; 2], d: u32) -> Vec<Vec<Rational>> {
    let l0 = vec![m[0][1].clone(), m[0][0].clone()];
    let l1 = vec![m[1][1].clone(), m[1][0].clone()];
    let pow = |l: &Vec<Rational>, k: u32| {
        let mut acc = vec![Rational::one()];
        for _ in 0..k {
            acc = convolve(&acc, l);
        }
        acc
    };
    (0..=d).map(|k| convolve(&pow(&l0, k), &pow(&l1, d - k))).collect()
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// A point `[a : b]` of `P^1`, normalized to `[t : 1]` or `[1 : 0]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    pub a: Rational,
    pub b: Rational,
}

impl ProjPoint {
    pub fn affine(t: Rational) -> Self {
        ProjPoint { a: t, b: Rational::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint { a: Rational::one(), b: Rational::zero() }
    }

    pub fn new(a: Rational, b: Rational) -> Self {
        if b.is_zero() {
            assert!(!a.is_zero(), "[0:0] is not a point");
            ProjPoint::infinity()
        } else {
            ProjPoint::affine(&a / &b)
        }
    }

    /// The image under `z -> M z`.
    pub fn map(&self, m: &[[Rational; 2]; 2]) -> ProjPoint {
        ProjPoint::new(&(&m[0][0] * &self.a) + &(&m[0][1] * &self.b), &(&m[1][0] * &self.a) + &(&m[1][1] * &self.b))
    }

    /// Some other point: `[1:0]`, or `[0:1]` if `self` is `[1:0]`.
    fn other(&self) -> ProjPoint {
        if *self == ProjPoint::infinity() {
            ProjPoint::affine(Rational::zero())
        } else {
            ProjPoint::infinity()
        }
    }
}

/// A binary form `sum c_i z0^i z1^(d-i)` of fixed degree `d = len - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BinForm {
    c: Vec<Rational>,
}

impl BinForm {
    fn new(c: Vec<Rational>) -> Self {
        BinForm { c }
    }

    fn degree(&self) -> usize {
        self.c.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    /// The polynomial in `t = z0 / z1`.
    fn dehom(&self) -> Poly {
        Poly::new(self.c.iter().cloned().map(Scalar::from).collect())
    }

    fn from_dehom(p: &Poly, d: usize) -> BinForm {
        let mut c = vec![Rational::zero(); d + 1];
        for (i, x) in p.coeffs().iter().enumerate() {
            c[i] = x.as_rational().expect("rational coefficients").clone();
        }
        BinForm { c }
    }

    fn mult_infinity(&self) -> usize {
        match self.dehom().degree() {
            None => usize::MAX,
            Some(k) => self.degree() - k,
        }
    }

    fn mul(&self, o: &BinForm) -> BinForm {
        BinForm { c: convolve(&self.c, &o.c) }
    }

    fn gcd(&self, o: &BinForm) -> BinForm {
        let g = self.dehom().gcd(&o.dehom());
        let inf = self.mult_infinity().min(o.mult_infinity());
        let deg = g.degree().unwrap_or(0) + inf;
        BinForm::from_dehom(&g, deg)
    }

    /// Exact quotient by a divisor.
    fn div_exact(&self, o: &BinForm) -> BinForm {
        let (q, r) = self.dehom().div_rem(&o.dehom()).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        BinForm::from_dehom(&q, self.degree() - o.degree())
    }

    fn d0(&self) -> BinForm {
        let d = self.degree();
        if d == 0 {
            return BinForm::new(vec![Rational::zero()]);
        }
        BinForm::new((1..=d).map(|i| &self.c[i] * &Rational::from_integer(i as i64)).collect())
    }

    fn d1(&self) -> BinForm {
        let d = self.degree();
        if d == 0 {
            return BinForm::new(vec![Rational::zero()]);
        }
        BinForm::new((0..d).map(|i| &self.c[i] * &Rational::from_integer((d - i) as i64)).collect())
    }

    fn sub(&self, o: &BinForm) -> BinForm {
        BinForm::new(self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect())
    }

    fn eval(&self, p: &ProjPoint) -> Rational {
        let d = self.degree() as u32;
        let mut acc = Rational::zero();
        for (i, c) in self.c.iter().enumerate() {
            acc = &acc + &(&(c * &p.a.pow(i as u32)) * &p.b.pow(d - i as u32));
        }
        acc
    }

    /// Points where the form vanishes to order at least `k >= 1`:
    /// the rational ones, and whether a non-rational one exists.
    fn points_of_multiplicity(&self, k: usize) -> (Vec<ProjPoint>, bool) {
        let mut rational = Vec::new();
        if self.is_zero() {
            return (rational, true);
        }
        if self.mult_infinity() >= k {
            rational.push(ProjPoint::infinity());
        }
        let p = self.dehom();
        let mut l = p.clone();
        let mut der = p.clone();
        for _ in 1..k {
            der = der.derivative();
            l = l.gcd(&der);
        }
        let roots = l.rational_roots();
        let accounted: usize = roots.iter().map(|r| l.root_multiplicity(&Scalar::from(r.clone()))).sum();
        let irrational = l.degree().unwrap_or(0) > accounted;
        for r in roots {
            rational.push(ProjPoint::affine(r));
        }
        (rational, irrational)
    }

    /// Distinct rational roots with multiplicity at least `k`.
    fn rational_roots_min(&self, k: usize) -> Vec<ProjPoint> {
        let mut out = Vec::new();
        if self.mult_infinity() >= k {
            out.push(ProjPoint::infinity());
        }
        let p = self.dehom();
        for r in p.rational_roots() {
            if p.root_multiplicity(&Scalar::from(r.clone())) >= k {
                out.push(ProjPoint::affine(r));
            }
        }
        out
    }
}

/// Homogeneous resultant of two binary forms by the Sylvester determinant.
fn resultant(f: &BinForm, g: &BinForm) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let (n, m) = (f.degree(), g.degree());
    let size = n + m;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::new();
    for k in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (i, c) in f.c.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (i, c) in g.c.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    crate::lattice::determinant(&rows)
}

/// Coordinate changes `x = M x'`, `y = N y'` on the two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub x: [[Rational; 2]; 2],
    pub y: [[Rational; 2]; 2],
}

fn identity2() -> [[Rational; 2]; 2] {
    [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]]
}

fn det2(m: &[[Rational; 2]; 2]) -> Rational {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

/// The matrix whose columns are `p` and `q`, sending `[1:0] -> p`,
/// `[0:1] -> q`.
fn columns(p: &ProjPoint, q: &ProjPoint) -> [[Rational; 2]; 2] {
    [[p.a.clone(), q.a.clone()], [p.b.clone(), q.b.clone()]]
}

impl Frame {
    pub fn identity() -> Self {
        Frame { x: identity2(), y: identity2() }
    }

    pub fn check(&self) -> Result<(), GitError> {
        if det2(&self.x).is_zero() || det2(&self.y).is_zero() {
            Err(GitError::SingularFrame)
        } else {
            Ok(())
        }
    }

    /// Frame whose coordinate points are `px` on the first factor and `py`
    /// on the second.
    pub fn from_points(px: (&ProjPoint, &ProjPoint), py: (&ProjPoint, &ProjPoint)) -> Self {
        Frame { x: columns(px.0, px.1), y: columns(py.0, py.1) }
    }
}

/// Convex hull of the support, counter-clockwise without collinear points;
/// one point or two endpoints in degenerate cases.
pub fn newton_hull(f: &BiForm) -> Vec<(i64, i64)> {
    convex_hull(&f.support())
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullPosition {
    Interior,
    Boundary,
    Outside,
}

/// Position of `(d1/2, d2/2)` relative to `hull`, decided in doubled integer
/// coordinates.
pub fn barycenter_position(hull: &[(i64, i64)], d1: u32, d2: u32) -> HullPosition {
    let b = (d1 as i64, d2 as i64);
    let h: Vec<(i64, i64)> = hull.iter().map(|&(i, j)| (2 * i, 2 * j)).collect();
    match h.len() {
        0 => HullPosition::Outside,
        1 => {
            if h[0] == b {
                HullPosition::Boundary
            } else {
                HullPosition::Outside
            }
        }
        2 => {
            let on_line = cross(h[0], h[1], b) == 0;
            let within = (b.0 - h[0].0) * (b.0 - h[1].0) <= 0 && (b.1 - h[0].1) * (b.1 - h[1].1) <= 0;
            if on_line && within {
                HullPosition::Boundary
            } else {
                HullPosition::Outside
            }
        }
        n => {
            let mut on_edge = false;
            for k in 0..n {
                let c = cross(h[k], h[(k + 1) % n], b);
                if c < 0 {
                    return HullPosition::Outside;
                }
                if c == 0 {
                    on_edge = true;
                }
            }
            if on_edge {
                HullPosition::Boundary
            } else {
                HullPosition::Interior
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GitStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Evidence for a verdict: the frame and the hull of the transformed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub frame: Frame,
    pub hull: Vec<(i64, i64)>,
    pub position: HullPosition,
    /// The hull is a segment through the barycenter, so the transformed
    /// form is fixed by a torus: a polystable representative.
    pub segment_through_barycenter: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GitReport {
    pub status: GitStatus,
    pub certificate: Certificate,
    /// The special locus has a point that is not rational, so a
    /// destabilizing frame might have been missed.
    pub irrational_special_point: bool,
    /// The bidegree is not a pencil; the candidate frames are not proven
    /// complete.
    pub heuristic: bool,
    pub frames_tested: usize,
}

struct Special {
    xs: Vec<ProjPoint>,
    ys: Vec<ProjPoint>,
    irrational: bool,
    heuristic: bool,
}

/// Special locus of a pencil `y0 A + y1 B` with `d1 >= 2`.
fn pencil_special(f: &BiForm) -> Special {
    let (a, b) = f.pencil();
    let d1 = f.d1 as usize;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut irrational = false;
    if a.is_zero() || b.is_zero() {
        // f = y0 A or y1 B: the y-coordinate frame already destabilizes
        return Special { xs, ys, irrational, heuristic: false };
    }
    let g = a.gcd(&b);
    let ar = a.div_exact(&g);
    let br = b.div_exact(&g);
    if ar.degree() == 0 {
        // f = G (y0 a + y1 b): a ruling-line factor
        ys.push(ProjPoint::new(-br.c[0].clone(), ar.c[0].clone()));
        return Special { xs, ys, irrational, heuristic: false };
    }
    let w = ar.d0().mul(&br.d1()).sub(&ar.d1().mul(&br.d0()));
    let h = g.mul(&g).mul(&w);
    let (pts, irr) = h.points_of_multiplicity(d1 - 1);
    irrational |= irr;
    for p in pts {
        let q = ProjPoint::new(-br.eval(&p), ar.eval(&p));
        if !ys.contains(&q) {
            ys.push(q);
        }
        xs.push(p);
    }
    Special { xs, ys, irrational, heuristic: false }
}

/// Rational candidate points for a general bidegree: fibres of the first
/// projection on which `f` has a multiple root, and the multiple roots.
fn tangency_points(f: &BiForm) -> (Vec<ProjPoint>, Vec<ProjPoint>, bool) {
    let (d1, d2) = (f.d1 as usize, f.d2 as usize);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut irrational = false;
    if d2 == 0 {
        return (xs, ys, irrational);
    }
    let disc_at = |p: &ProjPoint| {
        let g = f.restrict_x(p);
        if d2 == 1 {
            if g.is_zero() {
                Rational::zero()
            } else {
                Rational::one()
            }
        } else {
            resultant(&g.d0(), &g.d1())
        }
    };
    // the discriminant has degree at most 2 d1 (d2 - 1) in x
    let n = 2 * d1 * d2.saturating_sub(1).max(1);
    let samples: Vec<(Scalar, Scalar)> = (0..=n)
        .map(|k| {
            let p = ProjPoint::affine(Rational::from_integer(k as i64));
            (Scalar::from(p.a.clone()), Scalar::from(disc_at(&p)))
        })
        .collect();
    let disc = Poly::interpolate(&samples);
    let mut cand: Vec<ProjPoint> = Vec::new();
    if disc.is_zero() {
        irrational = true;
    } else {
        let roots = disc.rational_roots();
        let accounted: usize = roots.iter().map(|r| disc.root_multiplicity(&Scalar::from(r.clone()))).sum();
        // roots at infinity show up as a degree drop, not as missing roots
        let deg_form = disc.degree().unwrap_or(0);
        if deg_form > accounted {
            irrational = true;
        }
        cand.extend(roots.into_iter().map(ProjPoint::affine));
    }
    if disc_at(&ProjPoint::infinity()).is_zero() {
        cand.push(ProjPoint::infinity());
    }
    for p in cand {
        let g = f.restrict_x(&p);
        if g.is_zero() {
            xs.push(p);
            continue;
        }
        let qs = g.rational_roots_min(2);
        if qs.is_empty() {
            continue;
        }
        xs.push(p);
        for q in qs {
            if !ys.contains(&q) {
                ys.push(q);
            }
        }
    }
    (xs, ys, irrational)
}

fn general_special(f: &BiForm) -> Special {
    let (d1, d2) = (f.d1 as usize, f.d2 as usize);
    if d2 == 0 || d1 == 0 {
        // a binary form on one factor: points of multiplicity >= d/2
        let (form, on_x) = if d2 == 0 {
            (BinForm::new((0..=f.d1).map(|i| f.coeff(i, 0)).collect()), true)
        } else {
            (BinForm::new((0..=f.d2).map(|j| f.coeff(0, j)).collect()), false)
        };
        let d = form.degree();
        let (pts, irrational) = form.points_of_multiplicity(d.div_ceil(2).max(1));
        return if on_x {
            Special { xs: pts, ys: Vec::new(), irrational, heuristic: false }
        } else {
            Special { xs: Vec::new(), ys: pts, irrational, heuristic: false }
        };
    }
    let (mut xs, mut ys, mut irrational) = tangency_points(f);
    let (ys2, xs2, irr2) = tangency_points(&f.transpose());
    irrational |= irr2;
    for p in xs2 {
        if !xs.contains(&p) {
            xs.push(p);
        }
    }
    for q in ys2 {
        if !ys.contains(&q) {
            ys.push(q);
        }
    }
    Special { xs, ys, irrational, heuristic: true }
}

fn special_locus(f: &BiForm) -> Special {
    if f.d2 == 1 && f.d1 >= 2 {
        pencil_special(f)
    } else if f.d1 == 1 && f.d2 >= 2 {
        let s = pencil_special(&f.transpose());
        Special { xs: s.ys, ys: s.xs, irrational: s.irrational, heuristic: false }
    } else {
        general_special(f)
    }
}

const MAX_POINTS: usize = 8;

/// Unordered pairs of distinct points from `pts`, each point also paired
/// with a default partner.
fn point_pairs(pts: &[ProjPoint]) -> Vec<(ProjPoint, ProjPoint)> {
    let pts = &pts[..pts.len().min(MAX_POINTS)];
    let mut out: Vec<(ProjPoint, ProjPoint)> = Vec::new();
    let mut push = |a: &ProjPoint, b: &ProjPoint| {
        if a != b && !out.iter().any(|(x, y)| (x == a && y == b) || (x == b && y == a)) {
            out.push((a.clone(), b.clone()));
        }
    };
    for (k, p) in pts.iter().enumerate() {
        push(p, &p.other());
        for q in &pts[k + 1..] {
            push(p, q);
        }
    }
    if out.is_empty() {
        out.push((ProjPoint::infinity(), ProjPoint::affine(Rational::zero())));
    }
    out
}

/// Frames centred at the rational special points of `f`, plus the identity.
pub fn candidate_frames(f: &BiForm) -> Vec<Frame> {
    let special = special_locus(f);
    let mut frames = vec![Frame::identity()];
    for (x0, x1) in point_pairs(&special.xs) {
        for (y0, y1) in point_pairs(&special.ys) {
            let fr = Frame::from_points((&x0, &x1), (&y0, &y1));
            if !frames.contains(&fr) {
                frames.push(fr);
            }
        }
    }
    frames
}

fn certificate(f: &BiForm, frame: Frame) -> Result<Certificate, GitError> {
    let g = f.transform(&frame)?;
    let hull = newton_hull(&g);
    let position = barycenter_position(&hull, f.d1, f.d2);
    let segment_through_barycenter = hull.len() == 2 && position == HullPosition::Boundary;
    Ok(Certificate { frame, hull, position, segment_through_barycenter })
}

/// Hilbert–Mumford verdict over the candidate frames.
pub fn git_status(f: &BiForm) -> Result<GitReport, GitError> {
    let special = special_locus(f);
    let frames = candidate_frames(f);
    let frames_tested = frames.len();
    let mut boundary: Option<Certificate> = None;
    let mut identity: Option<Certificate> = None;
    for fr in frames {
        let cert = certificate(f, fr)?;
        match cert.position {
            HullPosition::Outside => {
                return Ok(GitReport {
                    status: GitStatus::Unstable,
                    certificate: cert,
                    irrational_special_point: special.irrational,
                    heuristic: special.heuristic,
                    frames_tested,
                });
            }
            HullPosition::Boundary => {
                let better = match &boundary {
                    None => true,
                    Some(b) => cert.segment_through_barycenter && !b.segment_through_barycenter,
                };
                if better {
                    boundary = Some(cert);
                }
            }
            HullPosition::Interior => {
                if identity.is_none() {
                    identity = Some(cert);
                }
            }
        }
    }
    let (status, certificate) = match boundary {
        Some(b) => (GitStatus::StrictlySemistable, b),
        None => (GitStatus::Stable, identity.expect("identity frame is always tested")),
    };
    Ok(GitReport {
        status,
        certificate,
        irrational_special_point: special.irrational,
        heuristic: special.heuristic,
        frames_tested,
    })
}

/// Smoothness of a pencil `y0 A + y1 B`: `A` and `B` have no common root.
///
/// For `d2 = 1` every partial derivative is a combination of `A`, `B` and
/// their derivatives, and the singular points are exactly the base points.
pub fn pencil_is_smooth(f: &BiForm) -> Option<bool> {
    if f.d2 != 1 {
        return None;
    }
    let (a, b) = f.pencil();
    Some(!resultant(&a, &b).is_zero())
}

/// `C0 = x0^4 y0 - x1^4 y1`.
pub fn c0() -> BiForm {
    BiForm::from_ints(4, 1, &[(4, 1, 1), (0, 0, -1)]).expect("nonzero")
}

/// `C1 = x0 x1 (x0^2 y0 - x1^2 y1)`.
pub fn c1() -> BiForm {
    BiForm::from_ints(4, 1, &[(3, 1, 1), (1, 0, -1)]).expect("nonzero")
}

/// The rational number `n` as a [`Rational`]; shorthand for fixtures.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hulls_of_fixtures() {
        assert_eq!(newton_hull(&c0()), vec![(0, 0), (4, 1)]);
        let mono = BiForm::from_ints(4, 1, &[(4, 1, 1)]).unwrap();
        assert_eq!(newton_hull(&mono), vec![(4, 1)]);
        let full: Vec<(u32, u32, i64)> = (0..=4).flat_map(|i| (0..=1).map(move |j| (i, j, 1))).collect();
        let f = BiForm::from_ints(4, 1, &full).unwrap();
        assert_eq!(newton_hull(&f), vec![(0, 0), (4, 0), (4, 1), (0, 1)]);
    }

    #[test]
    fn barycenter_positions() {
        assert_eq!(barycenter_position(&newton_hull(&c0()), 4, 1), HullPosition::Boundary);
        assert_eq!(barycenter_position(&[(0, 0), (4, 0), (4, 1), (0, 1)], 4, 1), HullPosition::Interior);
        assert_eq!(barycenter_position(&[(4, 1)], 4, 1), HullPosition::Outside);
        assert_eq!(barycenter_position(&[(2, 0), (2, 1)], 4, 1), HullPosition::Boundary);
    }

    #[test]
    fn fixtures_verdicts() {
        let r = git_status(&c0()).unwrap();
        assert_eq!(r.status, GitStatus::StrictlySemistable);
        assert!(r.certificate.segment_through_barycenter);
        let r = git_status(&c1()).unwrap();
        assert_eq!(r.status, GitStatus::StrictlySemistable);
        assert!(r.certificate.segment_through_barycenter);
        let mono = BiForm::from_ints(4, 1, &[(4, 1, 1)]).unwrap();
        assert_eq!(git_status(&mono).unwrap().status, GitStatus::Unstable);
    }

    #[test]
    fn c1_frames_at_its_special_points() {
        // the multiplicity-two points x0 = 0 and x1 = 0
        let s = special_locus(&c1());
        assert!(s.xs.contains(&ProjPoint::affine(Rational::zero())));
        assert!(s.xs.contains(&ProjPoint::infinity()));
        assert!(candidate_frames(&c1()).len() > 1);
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(BiForm::from_ints(4, 1, &[(1, 1, 0)]), Err(GitError::ZeroForm));
        assert_eq!(BiForm::from_ints(4, 1, &[(5, 1, 1)]), Err(GitError::TermOutOfRange { i: 5, j: 1 }));
    }

    #[test]
    fn transform_identity_and_swap() {
        let f = c0();
        assert_eq!(f.transform(&Frame::identity()).unwrap(), f);
        // swapping x0 and x1 sends x0^4 y0 - x1^4 y1 to x1^4 y0 - x0^4 y1
        let swap = [[rat(0), rat(1)], [rat(1), rat(0)]];
        let g = f.transform(&Frame { x: swap, y: identity2() }).unwrap();
        assert_eq!(g, BiForm::from_ints(4, 1, &[(0, 1, 1), (4, 0, -1)]).unwrap());
    }

    #[test]
    fn resultant_detects_common_roots() {
        let a = BinForm::new(vec![rat(-1), rat(0), rat(1)]); // x0^2 - x1^2
        let b = BinForm::new(vec![rat(-1), rat(1)]); // x0 - x1
        assert!(resultant(&a, &b).is_zero());
        let c = BinForm::new(vec![rat(2), rat(1)]);
        assert!(!resultant(&a, &c).is_zero());
    }
}
