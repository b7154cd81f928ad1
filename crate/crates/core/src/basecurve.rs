//! Nodal base curves: decorated dual graphs, the combinatorial types of
//! stable quasimaps to the stack of four points on `P^1`, and the tail
//! contraction MMP on the base.
//!
//! Quasimap rules on a tree of rational components, each of degree `d >= 0`
//! over the coarse line with special points `x2`, `x3`:
//!
//! - a node sits over `x3` with stabilizer `mu3`, or over `x2` with `mu2` or
//!   `mu4`; at each branch the coarse map has local ramification `e`, not
//!   divisible by 3 (resp. 2);
//! - on a component of degree `d > 0`, the branches over `x_i` have total
//!   ramification `S_i <= d` with `d - S_i` divisible by `i`, the rest being
//!   schematic points of ramification divisible by `i`;
//! - the two branches of a `mu_r` node satisfy `e_A + e_B = 0 (mod r)`;
//! - a contracted component meets at least three `mu3` nodes whose branch
//!   ramifications sum to `0 (mod 3)`, and there is at most one;
//! - leaves have positive degree, and a degree-1 component carries a `mu4`
//!   node.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseCurveError {
    NonPositiveDegree(i64),
    /// The exhaustive search is exponential; degrees above the cap are refused.
    DegreeTooLarge(i64),
    Disconnected,
    InvalidEdge {
        a: usize,
        b: usize,
    },
    InvalidComponent(String),
}

impl fmt::Display for BaseCurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCurveError::NonPositiveDegree(d) => write!(f, "total degree {} must be positive", d),
            BaseCurveError::DegreeTooLarge(d) => {
                write!(f, "total degree {} exceeds the enumeration cap {}", d, MAX_ENUMERATION_DEGREE)
            }
            BaseCurveError::Disconnected => f.write_str("dual graph is disconnected"),
            BaseCurveError::InvalidEdge { a, b } => write!(f, "edge ({}, {}) refers to a missing component", a, b),
            BaseCurveError::InvalidComponent(s) => f.write_str(s),
        }
    }
}

impl core::error::Error for BaseCurveError {}

pub const MAX_ENUMERATION_DEGREE: i64 = 9;

/// Degrees, edges and per-edge stabilizers of a type found by the search.
type TypeRecord = (Vec<i64>, Vec<(usize, usize)>, Vec<u32>);

/// Ramification class of a node: over `x3` or over `x2`.
fn residue_modulus(r: u32) -> i64 {
    if r == 3 {
        3
    } else {
        2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasimapEdge {
    pub a: usize,
    pub b: usize,
    /// Allowed stabilizer orders; more than one for an `x2` node that may
    /// carry either `mu2` or `mu4`.
    pub stabilizers: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasimapType {
    /// Degree of the coarse map on each component.
    pub degrees: Vec<i64>,
    pub edges: Vec<QuasimapEdge>,
}

impl QuasimapType {
    /// Component degrees, descending.
    pub fn degree_multiset(&self) -> Vec<i64> {
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn contracted(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 0).count()
    }

    /// Allowed stabilizer sets of the edges, sorted.
    pub fn edge_stabilizers(&self) -> Vec<Vec<u32>> {
        let mut s: Vec<Vec<u32>> = self.edges.iter().map(|e| e.stabilizers.clone()).collect();
        s.sort();
        s
    }

    /// Every choice of one stabilizer per edge.
    pub fn stabilizer_variants(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for e in &self.edges {
            let mut next = Vec::new();
            for prefix in &out {
                for &r in &e.stabilizers {
                    let mut p: Vec<u32> = prefix.clone();
                    p.push(r);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

fn prufer_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let len = n - 2;
    let total = n.pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n);
            c /= n;
        }
        let mut valence = vec![1usize; n];
        for &s in &seq {
            valence[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| valence[v] == 1).expect("a leaf exists");
            edges.push((leaf, s));
            valence[leaf] -= 1;
            valence[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| valence[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Partitions of `total` into exactly `parts` positive parts, descending.
fn partitions(total: i64, parts: usize, max: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Whether branch ramifications exist for this decorated tree.
fn ramification_feasible(degrees: &[i64], edges: &[(usize, usize)], stab: &[u32]) -> bool {
    for (v, &d) in degrees.iter().enumerate() {
        if d == 1 && !edges.iter().zip(stab).any(|(&(a, b), &r)| r == 4 && (a == v || b == v)) {
            return false;
        }
    }
    let mut sums = vec![[0i64; 2]; degrees.len()];
    search(degrees, edges, stab, 0, &mut sums)
}

fn branch_domain(d: i64, modulus: i64) -> Vec<i64> {
    let hi = if d == 0 { modulus - 1 } else { d };
    (1..=hi).filter(|e| e % modulus != 0).collect()
}

fn search(degrees: &[i64], edges: &[(usize, usize)], stab: &[u32], k: usize, sums: &mut Vec<[i64; 2]>) -> bool {
    if k == edges.len() {
        return degrees.iter().zip(sums.iter()).all(|(&d, s)| {
            if d == 0 {
                s[0] == 0 && s[1] % 3 == 0
            } else {
                (d - s[0]) % 2 == 0 && (d - s[1]) % 3 == 0
            }
        });
    }
    let (a, b) = edges[k];
    let r = stab[k];
    let m = residue_modulus(r);
    let slot = if m == 3 { 1 } else { 0 };
    for ea in branch_domain(degrees[a], m) {
        for eb in branch_domain(degrees[b], m) {
            if (ea + eb) % r as i64 != 0 {
                continue;
            }
            sums[a][slot] += ea;
            sums[b][slot] += eb;
            let within = |v: usize, s: &[i64; 2]| degrees[v] == 0 || s[slot] <= degrees[v];
            if within(a, &sums[a]) && within(b, &sums[b]) && search(degrees, edges, stab, k + 1, sums) {
                sums[a][slot] -= ea;
                sums[b][slot] -= eb;
                return true;
            }
            sums[a][slot] -= ea;
            sums[b][slot] -= eb;
        }
    }
    false
}

/// Canonical string of a decorated tree, minimized over roots.
fn canonical(degrees: &[i64], edges: &[(usize, usize)], label: &dyn Fn(u32) -> String, stab: &[u32]) -> String {
    let n = degrees.len();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (&(a, b), &r) in edges.iter().zip(stab) {
        adj[a].push((b, r));
        adj[b].push((a, r));
    }
    fn enc(
        v: usize,
        parent: Option<usize>,
        deg: &[i64],
        adj: &[Vec<(usize, u32)>],
        label: &dyn Fn(u32) -> String,
    ) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|(w, _)| Some(*w) != parent)
            .map(|&(w, r)| format!("{}:{}", label(r), enc(w, Some(v), deg, adj, label)))
            .collect();
        kids.sort();
        format!("{}[{}]", deg[v], kids.join(","))
    }
    (0..n).map(|v| enc(v, None, degrees, &adj, label)).min().unwrap_or_default()
}

fn tree_shape_ok(degrees: &[i64], edges: &[(usize, usize)]) -> bool {
    let mut valence = vec![0usize; degrees.len()];
    for &(a, b) in edges {
        valence[a] += 1;
        valence[b] += 1;
    }
    degrees.iter().zip(&valence).all(|(&d, &v)| match d {
        0 => v >= 3,
        1 => v >= 2,
        _ => v >= 1 && (v as i64) <= 2 * d,
    })
}

/// All combinatorial types of stable quasimaps of total degree `total`.
pub fn enumerate_quasimap_types(total: i64) -> Result<Vec<QuasimapType>, BaseCurveError> {
    if total <= 0 {
        return Err(BaseCurveError::NonPositiveDegree(total));
    }
    if total > MAX_ENUMERATION_DEGREE {
        return Err(BaseCurveError::DegreeTooLarge(total));
    }
    let mut found: BTreeMap<String, TypeRecord> = BTreeMap::new();
    let merged = |r: u32| if r == 3 { "x3".to_owned() } else { "x2".to_owned() };
    for parts in 2..=total as usize {
        for zeros in 0..=1usize {
            for mut degrees in partitions(total, parts, total) {
                degrees.extend(core::iter::repeat_n(0, zeros));
                let n = degrees.len();
                for edges in prufer_trees(n) {
                    if !tree_shape_ok(&degrees, &edges) {
                        continue;
                    }
                    let forced: Vec<bool> = edges.iter().map(|&(a, b)| degrees[a] == 0 || degrees[b] == 0).collect();
                    let combos = 3usize.pow(edges.len() as u32);
                    for code in 0..combos {
                        let mut c = code;
                        let stab: Vec<u32> = (0..edges.len())
                            .map(|_| {
                                let r = [2, 3, 4][c % 3];
                                c /= 3;
                                r
                            })
                            .collect();
                        if stab.iter().zip(&forced).any(|(&r, &f)| f && r != 3) {
                            continue;
                        }
                        let key = canonical(&degrees, &edges, &merged, &stab);
                        if found.contains_key(&key) {
                            continue;
                        }
                        if ramification_feasible(&degrees, &edges, &stab) {
                            found.insert(key, (degrees.clone(), edges.clone(), stab));
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![QuasimapType { degrees: vec![total], edges: Vec::new() }];
    for (_, (degrees, edges, stab)) in found {
        let mut qedges = Vec::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            let allowed: Vec<u32> = if stab[k] == 3 {
                vec![3]
            } else {
                [2u32, 4]
                    .into_iter()
                    .filter(|&r| {
                        let mut s = stab.clone();
                        s[k] = r;
                        ramification_feasible(&degrees, &edges, &s)
                    })
                    .collect()
            };
            qedges.push(QuasimapEdge { a, b, stabilizers: allowed });
        }
        out.push(QuasimapType { degrees, edges: qedges });
    }
    out.sort_by_key(|t| (t.degrees.len(), core::cmp::Reverse(t.degree_multiset())));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub coefficient: Rational,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub genus: u32,
    pub moduli_degree: Rational,
    pub boundary: Vec<BoundaryPoint>,
    pub markings: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub stabilizer: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedDualGraph {
    pub components: Vec<Component>,
    pub edges: Vec<Edge>,
}

impl DecoratedDualGraph {
    /// Validate and return warnings for moduli degrees whose denominator
    /// does not divide 12.
    pub fn new(components: Vec<Component>, edges: Vec<Edge>) -> Result<(Self, Vec<String>), BaseCurveError> {
        let g = DecoratedDualGraph { components, edges };
        let warnings = g.validate()?;
        Ok((g, warnings))
    }

    pub fn validate(&self) -> Result<Vec<String>, BaseCurveError> {
        let ids: BTreeSet<usize> = self.components.iter().map(|c| c.id).collect();
        if ids.len() != self.components.len() {
            return Err(BaseCurveError::InvalidComponent("duplicate component id".into()));
        }
        let mut warnings = Vec::new();
        for c in &self.components {
            if c.moduli_degree.signum() < 0 {
                return Err(BaseCurveError::InvalidComponent(format!("component {} has negative moduli degree", c.id)));
            }
            for b in &c.boundary {
                if b.coefficient.signum() <= 0 || b.coefficient > Rational::one() {
                    return Err(BaseCurveError::InvalidComponent(format!(
                        "component {} has boundary coefficient {} outside (0, 1]",
                        c.id, b.coefficient
                    )));
                }
            }
            let twelve = BigInt::from(12);
            if (&twelve % c.moduli_degree.denom()).to_i64() != Some(0) {
                warnings.push(format!(
                    "component {}: moduli degree {} has denominator not dividing 12",
                    c.id, c.moduli_degree
                ));
            }
        }
        for e in &self.edges {
            if !ids.contains(&e.a) || !ids.contains(&e.b) || e.a == e.b {
                return Err(BaseCurveError::InvalidEdge { a: e.a, b: e.b });
            }
        }
        if !self.is_connected() {
            return Err(BaseCurveError::Disconnected);
        }
        Ok(warnings)
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.components.first() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![first.id];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for e in &self.edges {
                if e.a == v {
                    stack.push(e.b);
                } else if e.b == v {
                    stack.push(e.a);
                }
            }
        }
        seen.len() == self.components.len()
    }

    pub fn valence(&self, id: usize) -> usize {
        self.edges.iter().filter(|e| e.a == id || e.b == id).count()
    }

    pub fn component(&self, id: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    /// `deg (K + B + M)` restricted to a component.
    pub fn component_degree(&self, id: usize) -> Option<Rational> {
        let c = self.component(id)?;
        let mut d = Rational::from_integer(2 * c.genus as i64 - 2 + self.valence(id) as i64);
        d = &d + &c.moduli_degree;
        for b in &c.boundary {
            d = &d + &b.coefficient;
        }
        Some(d)
    }

    /// Genus-0 leaves of a graph with at least two components.
    pub fn rational_tails(&self) -> Vec<usize> {
        if self.components.len() < 2 {
            return Vec::new();
        }
        self.components.iter().filter(|c| c.genus == 0 && self.valence(c.id) == 1).map(|c| c.id).collect()
    }
}

/// `sum (moduli + boundary) + sum (2g - 2 + valence)`, the quantity
/// preserved by tail contraction.
pub fn total_degree(g: &DecoratedDualGraph) -> Rational {
    g.components.iter().map(|c| g.component_degree(c.id).expect("own component")).fold(Rational::zero(), |a, b| &a + &b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MmpStep {
    Contracted { graph: DecoratedDualGraph, tail: usize },
    Minimal,
}

/// Contract the rational tail with the most negative `K + B + M` degree
/// (lowest id on ties), depositing its moduli and boundary mass as one
/// boundary point on the neighbour.
pub fn mmp_step(g: &DecoratedDualGraph) -> Result<MmpStep, BaseCurveError> {
    if !g.is_connected() {
        return Err(BaseCurveError::Disconnected);
    }
    let mut best: Option<(Rational, usize)> = None;
    for id in g.rational_tails() {
        let d = g.component_degree(id).expect("own component");
        if d.signum() < 0 && best.as_ref().is_none_or(|(b, bid)| d < *b || (d == *b && id < *bid)) {
            best = Some((d, id));
        }
    }
    let Some((_, tail)) = best else {
        return Ok(MmpStep::Minimal);
    };
    let t = g.component(tail).expect("own component");
    let edge = g.edges.iter().position(|e| e.a == tail || e.b == tail).expect("tail has an edge");
    let neighbour = if g.edges[edge].a == tail { g.edges[edge].b } else { g.edges[edge].a };
    let mass = t.boundary.iter().fold(t.moduli_degree.clone(), |a, b| &a + &b.coefficient);
    let mut out = g.clone();
    out.edges.remove(edge);
    out.components.retain(|c| c.id != tail);
    if mass.signum() > 0 {
        let n = out.components.iter_mut().find(|c| c.id == neighbour).expect("neighbour exists");
        n.boundary.push(BoundaryPoint { coefficient: mass, location: format!("tail-{}", tail) });
    }
    Ok(MmpStep::Contracted { graph: out, tail })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MmpEnd {
    /// `K + B + M` has nonnegative degree on every component.
    Minimal,
    /// A single rational component with negative degree remains.
    MoriFibreSpace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpRun {
    pub graph: DecoratedDualGraph,
    pub contracted: Vec<usize>,
    pub end: MmpEnd,
}

pub fn run_mmp(g: &DecoratedDualGraph) -> Result<MmpRun, BaseCurveError> {
    let mut cur = g.clone();
    let mut contracted = Vec::new();
    while let MmpStep::Contracted { graph, tail } = mmp_step(&cur)? {
        contracted.push(tail);
        cur = graph;
    }
    let negative = cur.components.iter().any(|c| cur.component_degree(c.id).expect("own").signum() < 0);
    let end = if negative { MmpEnd::MoriFibreSpace } else { MmpEnd::Minimal };
    Ok(MmpRun { graph: cur, contracted, end })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(id: usize, genus: u32, m: Rational) -> Component {
        Component { id, genus, moduli_degree: m, boundary: Vec::new(), markings: 0 }
    }

    fn edge(a: usize, b: usize) -> Edge {
        Edge { a, b, stabilizer: 1 }
    }

    #[test]
    fn degree_six_types() {
        let types = enumerate_quasimap_types(6).unwrap();
        let got: Vec<(Vec<i64>, Vec<Vec<u32>>)> =
            types.iter().map(|t| (t.degree_multiset(), t.edge_stabilizers())).collect();
        let expected: Vec<(Vec<i64>, Vec<Vec<u32>>)> = vec![
            (vec![6], vec![]),
            (vec![4, 2], vec![vec![3]]),
            (vec![3, 3], vec![vec![2, 4]]),
            (vec![3, 2, 1], vec![vec![3], vec![4]]),
            (vec![2, 2, 2], vec![vec![3], vec![3]]),
            (vec![2, 2, 2, 0], vec![vec![3], vec![3], vec![3]]),
        ];
        assert_eq!(got, expected);
        let star = types.iter().find(|t| t.contracted() == 1).unwrap();
        let centre = star.degrees.iter().position(|&d| d == 0).unwrap();
        assert!(star.edges.iter().all(|e| e.a == centre || e.b == centre));
        let three = types.iter().find(|t| t.degree_multiset() == vec![3, 3]).unwrap();
        assert_eq!(three.stabilizer_variants(), vec![vec![2], vec![4]]);
    }

    #[test]
    fn degree_one_is_irreducible() {
        let types = enumerate_quasimap_types(1).unwrap();
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].degrees, vec![1]);
        assert_eq!(enumerate_quasimap_types(0), Err(BaseCurveError::NonPositiveDegree(0)));
    }

    #[test]
    fn tail_contraction() {
        let (g, _) = DecoratedDualGraph::new(
            vec![comp(0, 1, Rational::zero()), comp(1, 0, Rational::new(1, 2))],
            vec![edge(0, 1)],
        )
        .unwrap();
        assert_eq!(g.component_degree(1), Some(Rational::new(-1, 2)));
        match mmp_step(&g).unwrap() {
            MmpStep::Contracted { graph, tail } => {
                assert_eq!(tail, 1);
                assert_eq!(graph.components[0].boundary[0].coefficient, Rational::new(1, 2));
                assert_eq!(total_degree(&graph), total_degree(&g));
            }
            MmpStep::Minimal => panic!("tail should contract"),
        }
    }

    #[test]
    fn degree_one_tails_stay() {
        let (g, _) = DecoratedDualGraph::new(
            vec![comp(0, 1, Rational::zero()), comp(1, 0, Rational::one()), comp(2, 0, Rational::one())],
            vec![edge(0, 1), edge(0, 2)],
        )
        .unwrap();
        assert_eq!(mmp_step(&g).unwrap(), MmpStep::Minimal);
        assert_eq!(run_mmp(&g).unwrap().graph, g);
    }

    #[test]
    fn two_tail_chain() {
        let third = Rational::new(1, 3);
        let (g, _) = DecoratedDualGraph::new(
            vec![comp(0, 0, third.clone()), comp(1, 1, Rational::zero()), comp(2, 0, third.clone())],
            vec![edge(0, 1), edge(1, 2)],
        )
        .unwrap();
        let run = run_mmp(&g).unwrap();
        assert_eq!(run.contracted, vec![0, 2]);
        assert_eq!(run.graph.components.len(), 1);
        let coeffs: Vec<Rational> = run.graph.components[0].boundary.iter().map(|b| b.coefficient.clone()).collect();
        assert_eq!(coeffs, vec![third.clone(), third]);
        assert_eq!(total_degree(&run.graph), total_degree(&g));
        assert_eq!(run.end, MmpEnd::Minimal);
    }

    #[test]
    fn single_component_and_validation() {
        let (g, w) = DecoratedDualGraph::new(vec![comp(0, 2, Rational::new(1, 5))], vec![]).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(total_degree(&g), &Rational::from_integer(2) + &Rational::new(1, 5));
        assert_eq!(run_mmp(&g).unwrap().graph, g);
        let bad = DecoratedDualGraph::new(vec![comp(0, 0, Rational::zero()), comp(1, 0, Rational::zero())], vec![]);
        assert_eq!(bad, Err(BaseCurveError::Disconnected));
        let lone = DecoratedDualGraph::new(vec![comp(0, 0, Rational::zero())], vec![]).unwrap().0;
        assert_eq!(run_mmp(&lone).unwrap().end, MmpEnd::MoriFibreSpace);
    }
}
