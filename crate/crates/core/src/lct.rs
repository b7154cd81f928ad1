//! Log canonical thresholds of plane curve germs against a fibre line.
//!
//! For a germ `f = sum c_ab x^a y^b` at the origin, a boundary coefficient `a`
//! and a fibre `F = {g = 0}` with `g` a coordinate, the threshold is
//! `max { t : (A^2, a D + t F) is lc }`. When `f` is Newton-nondegenerate only
//! toric valuations matter, so
//!
//! `lct = min_w (w1 + w2 - a nu_w(f)) / nu_w(g)`, clamped at 1,
//!
//! over primitive weights `w` with `nu_w(g) > 0`. The ratio is linear
//! fractional on each cone where `nu_w(f)` is linear, so the minimum is
//! attained at an inner normal of a compact Newton edge or at an axis.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LctError {
    EmptySupport,
    /// `f(0, 0) != 0`: the germ does not pass through the origin.
    NotThroughOrigin,
    /// The fibre component of `a D` already has coefficient at least 1.
    FiberDivides {
        multiplicity: u32,
    },
    /// `(A^2, a D)` is not log canonical along the fibre direction.
    NotLogCanonical,
}

impl fmt::Display for LctError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LctError::EmptySupport => f.write_str("empty support"),
            LctError::NotThroughOrigin => f.write_str("germ has a nonzero constant term"),
            LctError::FiberDivides { multiplicity } => {
                write!(f, "fibre coordinate divides the germ to order {} and the pair is not lc", multiplicity)
            }
            LctError::NotLogCanonical => f.write_str("the pair (X, aD) is not log canonical"),
        }
    }
}

impl core::error::Error for LctError {}

/// Which coordinate cuts out the fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fiber {
    X,
    Y,
}

impl Fiber {
    fn weight(self, w: (i64, i64)) -> i64 {
        match self {
            Fiber::X => w.0,
            Fiber::Y => w.1,
        }
    }

    fn swap(self) -> Fiber {
        match self {
            Fiber::X => Fiber::Y,
            Fiber::Y => Fiber::X,
        }
    }
}

/// Sparse bivariate polynomial, keyed by `(alpha, beta)` for `x^alpha y^beta`.
pub type Germ = BTreeMap<(u32, u32), Rational>;

/// Product of sparse bivariate polynomials.
pub fn germ_mul(p: &Germ, q: &Germ) -> Germ {
    let mut out = Germ::new();
    for (&(a1, b1), c1) in p {
        for (&(a2, b2), c2) in q {
            let e = out.entry((a1 + a2, b1 + b2)).or_insert_with(Rational::zero);
            *e = &*e + &(c1 * c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Germ from integer terms `(alpha, beta, coefficient)`.
pub fn germ(terms: &[(u32, u32, i64)]) -> Germ {
    let mut out = Germ::new();
    for &(a, b, c) in terms {
        let e = out.entry((a, b)).or_insert_with(Rational::zero);
        *e = &*e + &Rational::from_integer(c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPair {
    pub germ: Germ,
    pub fiber: Fiber,
    /// Coefficient of `D`.
    pub a: Rational,
}

impl LocalPair {
    pub fn new(germ: Germ, fiber: Fiber, a: Rational) -> Result<Self, LctError> {
        let germ: Germ = germ.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if germ.is_empty() {
            return Err(LctError::EmptySupport);
        }
        if germ.contains_key(&(0, 0)) {
            return Err(LctError::NotThroughOrigin);
        }
        Ok(LocalPair { germ, fiber, a })
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.germ.keys().map(|&(a, b)| (a as i64, b as i64)).collect()
    }

    /// Exchange `x` and `y` together with the fibre axis.
    pub fn swapped(&self) -> LocalPair {
        LocalPair {
            germ: self.germ.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
            fiber: self.fiber.swap(),
            a: self.a.clone(),
        }
    }

    /// Largest power of the fibre coordinate dividing the germ.
    pub fn fiber_multiplicity(&self) -> u32 {
        self.germ
            .keys()
            .map(|&(a, b)| match self.fiber {
                Fiber::X => a,
                Fiber::Y => b,
            })
            .min()
            .unwrap_or(0)
    }

    /// The germ with the fibre-divisible part removed, as a support.
    fn residual_support(&self) -> Vec<(i64, i64)> {
        let k = self.fiber_multiplicity() as i64;
        self.support()
            .into_iter()
            .map(|(a, b)| match self.fiber {
                Fiber::X => (a - k, b),
                Fiber::Y => (a, b - k),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub lct: Rational,
    pub b: Rational,
    pub witness_weight: (i64, i64),
    /// Power of the fibre coordinate split off before thresholding.
    pub fiber_multiplicity: u32,
}

fn nu(support: &[(i64, i64)], w: (i64, i64)) -> i64 {
    support.iter().map(|&(a, b)| w.0 * a + w.1 * b).min().expect("nonempty support")
}

fn primitive(w: (i64, i64)) -> (i64, i64) {
    let g = w.0.gcd(&w.1);
    (w.0 / g, w.1 / g)
}

/// Vertices of the compact part of the Newton polyhedron, ordered by
/// increasing `alpha` (hence decreasing `beta`).
pub fn newton_vertices(support: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = support.to_vec();
    pts.sort();
    pts.dedup();
    // keep the lowest point on each column, then those below every point to the left
    let mut lowest: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if lowest.last().is_some_and(|q| q.0 == p.0) {
            continue;
        }
        if lowest.last().is_none_or(|q| p.1 < q.1) {
            lowest.push(p);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in lowest {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Primitive inner normals of the compact Newton edges.
pub fn edge_normals(support: &[(i64, i64)]) -> Vec<(i64, i64)> {
    newton_vertices(support).windows(2).map(|e| primitive((e[0].1 - e[1].1, e[1].0 - e[0].0))).collect()
}

fn candidate_weights(support: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = edge_normals(support);
    for v in newton_vertices(support) {
        if v.0 > 0 && v.1 > 0 {
            out.push(primitive(v));
        }
    }
    out.extend([(1, 1), (1, 0), (0, 1)]);
    let mut seen = Vec::new();
    out.retain(|w| {
        let fresh = !seen.contains(w);
        seen.push(*w);
        fresh
    });
    out
}

/// `(w1 + w2 - a nu_w(h)) / nu_w(g)`, or `None` when `nu_w(g) = 0`.
fn ratio(support: &[(i64, i64)], fiber: Fiber, a: &Rational, w: (i64, i64)) -> Option<Rational> {
    let den = fiber.weight(w);
    if den == 0 {
        return None;
    }
    let num = &Rational::from_integer(w.0 + w.1) - &(a * &Rational::from_integer(nu(support, w)));
    Some(&num / &Rational::from_integer(den))
}

fn threshold_over(p: &LocalPair, weights: impl IntoIterator<Item = (i64, i64)>) -> Result<ThresholdResult, LctError> {
    let k = p.fiber_multiplicity();
    let split = &p.a * &Rational::from_integer(k as i64);
    if split >= Rational::one() {
        return Err(LctError::FiberDivides { multiplicity: k });
    }
    let support = p.residual_support();
    let mut best: Option<(Rational, (i64, i64))> = None;
    for w in weights {
        match ratio(&support, p.fiber, &p.a, w) {
            Some(r) => {
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    best = Some((r, w));
                }
            }
            None => {
                // a divisor not meeting the fibre: (X, aD) must already be lc there
                let num = &Rational::from_integer(w.0 + w.1) - &(&p.a * &Rational::from_integer(nu(&support, w)));
                if num.signum() < 0 {
                    return Err(LctError::NotLogCanonical);
                }
            }
        }
    }
    let fiber_axis = match p.fiber {
        Fiber::X => (1, 0),
        Fiber::Y => (0, 1),
    };
    let (mut lct, mut witness) = best.unwrap_or((Rational::one(), fiber_axis));
    if lct > Rational::one() {
        lct = Rational::one();
        witness = fiber_axis;
    }
    let lct = &lct - &split;
    if lct.signum() <= 0 {
        return Err(LctError::NotLogCanonical);
    }
    let b = &Rational::one() - &lct;
    Ok(ThresholdResult { lct, b, witness_weight: witness, fiber_multiplicity: k })
}

/// Threshold by minimizing over the Newton-polygon candidate weights.
pub fn lct_along_fiber(p: &LocalPair) -> Result<ThresholdResult, LctError> {
    let support = p.residual_support();
    threshold_over(p, candidate_weights(&support))
}

/// Independent check: the same ratio minimized over every primitive weight
/// with entries at most `bound`.
pub fn lct_bruteforce_oracle(p: &LocalPair, bound: i64) -> Result<Rational, LctError> {
    let mut weights = Vec::new();
    for w1 in 0..=bound {
        for w2 in 0..=bound {
            if (w1, w2) != (0, 0) && w1.gcd(&w2) == 1 {
                weights.push((w1, w2));
            }
        }
    }
    threshold_over(p, weights).map(|r| r.lct)
}

/// Edge polynomial data for the nondegeneracy check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReport {
    pub from: (i64, i64),
    pub to: (i64, i64),
    /// The edge polynomial has no repeated root in the torus.
    pub square_free: bool,
}

/// Newton nondegeneracy of the fibre-free part: each compact edge
/// polynomial, written in the edge variable, must be square-free.
pub fn nondegeneracy(p: &LocalPair) -> Vec<EdgeReport> {
    let k = p.fiber_multiplicity();
    let germ: BTreeMap<(i64, i64), Rational> = p
        .germ
        .iter()
        .map(|(&(a, b), c)| {
            let (a, b) = (a as i64, b as i64);
            let key = match p.fiber {
                Fiber::X => (a - k as i64, b),
                Fiber::Y => (a, b - k as i64),
            };
            (key, c.clone())
        })
        .collect();
    let support: Vec<(i64, i64)> = germ.keys().copied().collect();
    newton_vertices(&support)
        .windows(2)
        .map(|e| {
            let (from, to) = (e[0], e[1]);
            let steps = (to.0 - from.0).gcd(&(from.1 - to.1));
            let step = ((to.0 - from.0) / steps, (from.1 - to.1) / steps);
            let coeffs: Vec<Scalar> = (0..=steps)
                .map(|s| {
                    let key = (from.0 + s * step.0, from.1 - s * step.1);
                    Scalar::from(germ.get(&key).cloned().unwrap_or_else(Rational::zero))
                })
                .collect();
            EdgeReport { from, to, square_free: Poly::new(coeffs).is_square_free() }
        })
        .collect()
}

/// One row of the threshold tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: &'static str,
    pub equation: String,
    pub expected: Rational,
    pub computed: Option<ThresholdResult>,
    pub oracle: Option<Rational>,
    pub nondegenerate: bool,
}

impl TableRow {
    pub fn passed(&self) -> bool {
        match (&self.computed, &self.oracle) {
            (Some(c), Some(o)) => c.lct == self.expected && *o == self.expected,
            _ => false,
        }
    }
}

/// The fixture germs with their tabulated thresholds, all against the fibre
/// `y = 0` with coefficient `1/2`. Generic parameters are instantiated at
/// `a = 1`, `b = -1`, `m = 3`.
pub fn table_fixtures() -> Vec<(&'static str, String, Germ, Rational)> {
    let (pa, pb, m) = (1i64, -1i64, 3u32);
    // parameters must keep the branches distinct
    assert!(pa != 0 && pb != 0 && pa != pb && m >= 3);
    let x = germ(&[(1, 0, 1)]);
    let lin = |cx: i64, cy: i64| germ(&[(1, 0, cx), (0, 1, cy)]);
    let r = Rational::new;
    let mut rows: Vec<(&'static str, String, Germ, Rational)> = vec![
        ("unibranched", "y-x^3".into(), germ(&[(0, 1, 1), (3, 0, -1)]), r(5, 6)),
        ("unibranched", "y^2-x^3".into(), germ(&[(0, 2, 1), (3, 0, -1)]), r(2, 3)),
        ("unibranched", "x^3-y^4".into(), germ(&[(3, 0, 1), (0, 4, -1)]), r(1, 3)),
        ("unibranched", "x^3-y^5".into(), germ(&[(3, 0, 1), (0, 5, -1)]), r(1, 6)),
        ("unibranched", "y-x^4".into(), germ(&[(0, 1, 1), (4, 0, -1)]), r(3, 4)),
        ("unibranched", "y^3-x^4".into(), germ(&[(0, 3, 1), (4, 0, -1)]), r(1, 4)),
    ];
    rows.extend([
        ("non-unibranched", "x(y-x^2)".into(), germ(&[(1, 1, 1), (3, 0, -1)]), r(3, 4)),
        ("non-unibranched", "x(x-ay)(x-by)".into(), germ_mul(&germ_mul(&x, &lin(1, -pa)), &lin(1, -pb)), r(1, 2)),
        ("non-unibranched", "x(x^2-y^3)".into(), germ(&[(3, 0, 1), (1, 3, -1)]), r(1, 4)),
        ("non-unibranched", "(x+ay)(x^2-y^m)".into(), germ_mul(&lin(1, pa), &germ(&[(2, 0, 1), (0, m, -1)])), r(1, 2)),
        ("non-unibranched", "x(y-x^3)".into(), germ(&[(1, 1, 1), (4, 0, -1)]), r(2, 3)),
        ("non-unibranched", "y^2-x^4".into(), germ(&[(0, 2, 1), (4, 0, -1)]), r(1, 2)),
        (
            "non-unibranched",
            "(y-x^2)(y-ax)(y-bx)".into(),
            germ_mul(&germ_mul(&germ(&[(0, 1, 1), (2, 0, -1)]), &lin(-pa, 1)), &lin(-pb, 1)),
            r(1, 2),
        ),
        ("non-unibranched", "x(y^2-x^3)".into(), germ(&[(1, 2, 1), (4, 0, -1)]), r(1, 3)),
    ]);
    rows.extend([
        ("fibre list", "y-x^3".into(), germ(&[(0, 1, 1), (3, 0, -1)]), r(5, 6)),
        ("fibre list", "y-x^4".into(), germ(&[(0, 1, 1), (4, 0, -1)]), r(3, 4)),
        ("fibre list", "x(y-x^3)".into(), germ(&[(1, 1, 1), (4, 0, -1)]), r(2, 3)),
        ("fibre list", "x(y-x^2)".into(), germ(&[(1, 1, 1), (3, 0, -1)]), r(3, 4)),
        ("fibre list", "x^2y".into(), germ(&[(2, 1, 1)]), r(1, 2)),
        ("fibre list", "x^2(y-x^2)".into(), germ(&[(2, 1, 1), (4, 0, -1)]), r(1, 2)),
    ]);
    rows
}

/// Evaluate every fixture with the LP and the oracle at bound 50.
pub fn table_regression() -> Vec<TableRow> {
    table_fixtures()
        .into_iter()
        .map(|(table, equation, g, expected)| {
            let pair = LocalPair::new(g, Fiber::Y, Rational::new(1, 2)).expect("valid fixture");
            TableRow {
                table,
                equation,
                expected,
                computed: lct_along_fiber(&pair).ok(),
                oracle: lct_bruteforce_oracle(&pair, 50).ok(),
                nondegenerate: nondegeneracy(&pair).iter().all(|e| e.square_free),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn cusp_against_fibre() {
        let p = LocalPair::new(germ(&[(0, 2, 1), (3, 0, -1)]), Fiber::Y, half()).unwrap();
        let r = lct_along_fiber(&p).unwrap();
        assert_eq!(r.lct, Rational::new(2, 3));
        assert_eq!(r.b, Rational::new(1, 3));
        assert_eq!(r.witness_weight, (2, 3));
    }

    #[test]
    fn transverse_line_clamps() {
        let p = LocalPair::new(germ(&[(0, 1, 1), (1, 0, -1)]), Fiber::Y, half()).unwrap();
        assert_eq!(lct_along_fiber(&p).unwrap().lct, Rational::one());
        let xy = LocalPair::new(germ(&[(1, 1, 1)]), Fiber::Y, half()).unwrap();
        assert_eq!(lct_along_fiber(&xy).unwrap().lct, Rational::new(1, 2));
    }

    #[test]
    fn fibre_split() {
        let p = LocalPair::new(germ(&[(2, 1, 1)]), Fiber::Y, half()).unwrap();
        let r = lct_along_fiber(&p).unwrap();
        assert_eq!(r.fiber_multiplicity, 1);
        assert_eq!(r.lct, half());
        let q = LocalPair::new(germ(&[(1, 2, 1)]), Fiber::Y, half()).unwrap();
        assert_eq!(lct_along_fiber(&q), Err(LctError::FiberDivides { multiplicity: 2 }));
    }

    #[test]
    fn invalid_pairs() {
        assert_eq!(LocalPair::new(Germ::new(), Fiber::Y, half()), Err(LctError::EmptySupport));
        assert_eq!(LocalPair::new(germ(&[(0, 0, 1), (1, 0, 1)]), Fiber::Y, half()), Err(LctError::NotThroughOrigin));
        // x^3 with coefficient 1/2 is not lc along x = 0
        let p = LocalPair::new(germ(&[(3, 0, 1)]), Fiber::Y, half()).unwrap();
        assert_eq!(lct_along_fiber(&p), Err(LctError::NotLogCanonical));
    }

    #[test]
    fn newton_data() {
        // (y - x^2)(y^2 - x^2) with the interior point (2, 2)
        let s = vec![(0, 3), (2, 1), (2, 2), (4, 0)];
        assert_eq!(newton_vertices(&s), vec![(0, 3), (2, 1), (4, 0)]);
        assert_eq!(edge_normals(&s), vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn all_fixture_rows_pass() {
        let rows = table_regression();
        assert_eq!(rows.len(), 20);
        for r in &rows {
            assert!(r.passed(), "{} {}: {:?}", r.table, r.equation, r.computed);
            assert!(r.nondegenerate, "{}", r.equation);
        }
    }
}
