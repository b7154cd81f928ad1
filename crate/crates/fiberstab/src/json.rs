//! JSON schemas for everything the CLI reads or writes.
//!
//! Exact values travel as strings: `exact` uses the `p/q + r/s*sqrt(d)` sum
//! form, `symbolic` the combined `(a+b*sqrt(d))/q` form, and `decimal` is a
//! 12-digit truncation for display only. Readers accept either exact form.

use fiberstab_core::basecurve::{
    BoundaryPoint, Component, DecoratedDualGraph, Edge, MmpEnd, MmpRun, QuasimapEdge, QuasimapType,
};
use fiberstab_core::cbf::{BoundVerdict, HirzebruchCheck};
use fiberstab_core::fujita::{Chamber, WallScan};
use fiberstab_core::git::{BiForm, Certificate, Frame, GitReport, GitStatus, HullPosition};
use fiberstab_core::lattice::{Curve, DivisorClass, ExceptionalData, SurfaceModel};
use fiberstab_core::lct::{EdgeReport, Fiber, Germ, ThresholdResult};
use fiberstab_core::poly::Poly;
use fiberstab_core::zariski::{AffineClass, AffineScalar, NegativeTerm, Piece, RayDecomposition};
use fiberstab_core::{parse_scalar, Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::FormatError;

pub const DECIMAL_DIGITS: u32 = 12;

pub fn scalar_from_str(s: &str) -> Result<Scalar, FormatError> {
    parse_scalar(s).map_err(|e| FormatError::Scalar(format!("{:?}: {}", s, e)))
}

pub fn rational_from_str(s: &str) -> Result<Rational, FormatError> {
    match scalar_from_str(s)? {
        Scalar::Rational(r) => Ok(r),
        _ => Err(FormatError::Scalar(format!("{:?} is not rational", s))),
    }
}

fn rational_from_parts(num: i64, den: i64) -> Result<Rational, FormatError> {
    if den == 0 {
        return Err(FormatError::Schema("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub exact: String,
    pub symbolic: String,
    pub decimal: String,
}

impl ScalarJson {
    pub fn to_scalar(&self) -> Result<Scalar, FormatError> {
        let s = scalar_from_str(&self.exact)?;
        if scalar_from_str(&self.symbolic)? != s {
            return Err(FormatError::Schema(format!("{} and {} disagree", self.exact, self.symbolic)));
        }
        Ok(s)
    }
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson { exact: s.to_sum_form(), symbolic: s.to_string(), decimal: s.to_decimal(DECIMAL_DIGITS) }
    }
}

impl From<&Rational> for ScalarJson {
    fn from(r: &Rational) -> Self {
        ScalarJson::from(&Scalar::from(r.clone()))
    }
}

fn class_to_json(c: &DivisorClass) -> Vec<String> {
    c.coeffs.iter().map(Scalar::to_sum_form).collect()
}

pub fn class_from_json(v: &[String]) -> Result<DivisorClass, FormatError> {
    Ok(DivisorClass::new(v.iter().map(|s| scalar_from_str(s)).collect::<Result<_, _>>()?))
}

/// Comma-separated coefficients, as given on the command line.
pub fn class_from_arg(s: &str) -> Result<DivisorClass, FormatError> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    class_from_json(&parts)
}

// ---- surface models ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub name: String,
    pub class: Vec<String>,
    pub self_intersection: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalJson {
    pub class: Vec<String>,
    pub discrepancy: String,
    pub base_canonical: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(default)]
    pub name: String,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub canonical: Vec<String>,
    pub negative_curves: Vec<CurveJson>,
    #[serde(default)]
    pub nef_test_curves: Vec<CurveJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalJson>,
}

fn curve_to_json(c: &Curve) -> CurveJson {
    CurveJson {
        name: c.name.clone(),
        class: class_to_json(&c.class),
        self_intersection: c.self_intersection.to_string(),
    }
}

fn curve_from_json(c: &CurveJson) -> Result<Curve, FormatError> {
    Ok(Curve {
        name: c.name.clone(),
        class: class_from_json(&c.class)?,
        self_intersection: rational_from_str(&c.self_intersection)?,
    })
}

impl From<&SurfaceModel> for ModelJson {
    fn from(m: &SurfaceModel) -> Self {
        ModelJson {
            name: m.name.clone(),
            basis: m.basis_names.clone(),
            gram: m.gram.iter().map(|r| r.iter().map(Rational::to_string).collect()).collect(),
            canonical: class_to_json(&m.canonical),
            negative_curves: m.negative_curves.iter().map(curve_to_json).collect(),
            nef_test_curves: m.nef_test_curves.iter().map(curve_to_json).collect(),
            exceptional: m.exceptional.as_ref().map(|e| ExceptionalJson {
                class: class_to_json(&e.class),
                discrepancy: e.discrepancy.to_string(),
                base_canonical: class_to_json(&e.base_canonical),
            }),
        }
    }
}

impl ModelJson {
    pub fn to_model(&self) -> Result<SurfaceModel, FormatError> {
        let gram = self
            .gram
            .iter()
            .map(|r| r.iter().map(|s| rational_from_str(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut model = SurfaceModel::new(
            self.name.clone(),
            self.basis.clone(),
            gram,
            class_from_json(&self.canonical)?,
            self.negative_curves.iter().map(curve_from_json).collect::<Result<_, _>>()?,
            self.nef_test_curves.iter().map(curve_from_json).collect::<Result<_, _>>()?,
        )?;
        if let Some(e) = &self.exceptional {
            model = model.with_exceptional(ExceptionalData {
                class: class_from_json(&e.class)?,
                discrepancy: rational_from_str(&e.discrepancy)?,
                base_canonical: class_from_json(&e.base_canonical)?,
            })?;
        }
        Ok(model)
    }
}

// ---- Zariski decompositions ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineJson {
    pub constant: ScalarJson,
    pub slope: ScalarJson,
}

impl From<&AffineScalar> for AffineJson {
    fn from(a: &AffineScalar) -> Self {
        AffineJson { constant: (&a.constant).into(), slope: (&a.slope).into() }
    }
}

impl AffineJson {
    fn to_affine(&self) -> Result<AffineScalar, FormatError> {
        Ok(AffineScalar { constant: self.constant.to_scalar()?, slope: self.slope.to_scalar()? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeJson {
    pub curve: String,
    pub coefficient: AffineJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub start: ScalarJson,
    pub end: ScalarJson,
    /// One `(constant, slope)` pair per basis element.
    pub positive: Vec<AffineJson>,
    pub negative: Vec<NegativeJson>,
    /// Coefficients of `P(t)^2`, lowest degree first.
    pub volume: Vec<ScalarJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub breakpoints: Vec<ScalarJson>,
    pub threshold: ScalarJson,
    pub volume_integral: ScalarJson,
    pub pieces: Vec<PieceJson>,
}

fn poly_to_json(p: &Poly) -> Vec<ScalarJson> {
    p.coeffs().iter().map(ScalarJson::from).collect()
}

fn poly_from_json(v: &[ScalarJson]) -> Result<Poly, FormatError> {
    Ok(Poly::new(v.iter().map(ScalarJson::to_scalar).collect::<Result<_, _>>()?))
}

impl From<&RayDecomposition> for DecompositionJson {
    fn from(d: &RayDecomposition) -> Self {
        DecompositionJson {
            breakpoints: d.breakpoints.iter().map(ScalarJson::from).collect(),
            threshold: d.threshold().into(),
            volume_integral: (&d.volume_integral()).into(),
            pieces: d
                .pieces
                .iter()
                .map(|p| PieceJson {
                    start: (&p.start).into(),
                    end: (&p.end).into(),
                    positive: p
                        .positive
                        .constant
                        .coeffs
                        .iter()
                        .zip(&p.positive.slope.coeffs)
                        .map(|(c, s)| AffineJson { constant: c.into(), slope: s.into() })
                        .collect(),
                    negative: p
                        .negative
                        .iter()
                        .map(|n| NegativeJson { curve: n.curve.clone(), coefficient: (&n.coefficient).into() })
                        .collect(),
                    volume: poly_to_json(&p.volume),
                })
                .collect(),
        }
    }
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<RayDecomposition, FormatError> {
        let breakpoints = self.breakpoints.iter().map(ScalarJson::to_scalar).collect::<Result<Vec<_>, _>>()?;
        if breakpoints.is_empty() || self.threshold.to_scalar()? != *breakpoints.last().expect("nonempty") {
            return Err(FormatError::Schema("threshold must be the last breakpoint".into()));
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let pairs = p.positive.iter().map(AffineJson::to_affine).collect::<Result<Vec<_>, _>>()?;
            pieces.push(Piece {
                start: p.start.to_scalar()?,
                end: p.end.to_scalar()?,
                positive: AffineClass {
                    constant: DivisorClass::new(pairs.iter().map(|a| a.constant.clone()).collect()),
                    slope: DivisorClass::new(pairs.iter().map(|a| a.slope.clone()).collect()),
                },
                negative: p
                    .negative
                    .iter()
                    .map(|n| Ok(NegativeTerm { curve: n.curve.clone(), coefficient: n.coefficient.to_affine()? }))
                    .collect::<Result<_, FormatError>>()?,
                volume: poly_from_json(&p.volume)?,
            });
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(FormatError::Schema("one piece per interval between breakpoints".into()));
        }
        Ok(RayDecomposition { breakpoints, pieces })
    }
}

// ---- invariants of a configuration ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SInvariantJson {
    pub config: String,
    pub divisor: String,
    pub c: ScalarJson,
    pub volume: ScalarJson,
    pub s: ScalarJson,
    pub decomposition: DecompositionJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaJson {
    pub config: String,
    pub divisor: String,
    pub c: ScalarJson,
    pub log_discrepancy: ScalarJson,
    pub s: ScalarJson,
    pub beta: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberJson {
    pub inner: [String; 2],
    pub outer: [String; 2],
    pub signature: Vec<Vec<String>>,
    /// `beta * V` with its common factor with `V` removed, lowest degree first.
    pub numerator: Vec<ScalarJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallScanJson {
    pub config: String,
    pub divisor: String,
    pub walls: Vec<ScalarJson>,
    pub chambers: Vec<ChamberJson>,
}

impl WallScanJson {
    pub fn new(config: &str, divisor: &str, w: &WallScan) -> Self {
        WallScanJson {
            config: config.to_string(),
            divisor: divisor.to_string(),
            walls: w.walls.iter().map(ScalarJson::from).collect(),
            chambers: w
                .chambers
                .iter()
                .map(|c| ChamberJson {
                    inner: [c.inner.0.to_string(), c.inner.1.to_string()],
                    outer: [c.outer.0.to_string(), c.outer.1.to_string()],
                    signature: c.signature.clone(),
                    numerator: poly_to_json(&c.numerator),
                })
                .collect(),
        }
    }

    pub fn to_wall_scan(&self) -> Result<WallScan, FormatError> {
        let chambers = self
            .chambers
            .iter()
            .map(|c| {
                Ok(Chamber {
                    inner: (rational_from_str(&c.inner[0])?, rational_from_str(&c.inner[1])?),
                    outer: (rational_from_str(&c.outer[0])?, rational_from_str(&c.outer[1])?),
                    signature: c.signature.clone(),
                    numerator: poly_from_json(&c.numerator)?,
                })
            })
            .collect::<Result<_, FormatError>>()?;
        let walls = self.walls.iter().map(ScalarJson::to_scalar).collect::<Result<_, _>>()?;
        Ok(WallScan { chambers, walls })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub c: ScalarJson,
    pub s: ScalarJson,
}

// ---- GIT ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub i: u32,
    pub j: u32,
    pub num: i64,
    #[serde(default = "one")]
    pub den: i64,
}

fn one() -> i64 {
    1
}

pub fn form_from_json(d1: u32, d2: u32, terms: &[FormTermJson]) -> Result<BiForm, FormatError> {
    let mut acc: Vec<((u32, u32), Rational)> = Vec::new();
    for t in terms {
        acc.push(((t.i, t.j), rational_from_parts(t.num, t.den)?));
    }
    Ok(BiForm::new(d1, d2, acc)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub x: [[String; 2]; 2],
    pub y: [[String; 2]; 2],
}

fn matrix_to_json(m: &[[Rational; 2]; 2]) -> [[String; 2]; 2] {
    [[m[0][0].to_string(), m[0][1].to_string()], [m[1][0].to_string(), m[1][1].to_string()]]
}

fn matrix_from_json(m: &[[String; 2]; 2]) -> Result<[[Rational; 2]; 2], FormatError> {
    Ok([
        [rational_from_str(&m[0][0])?, rational_from_str(&m[0][1])?],
        [rational_from_str(&m[1][0])?, rational_from_str(&m[1][1])?],
    ])
}

impl FrameJson {
    pub fn to_frame(&self) -> Result<Frame, FormatError> {
        let f = Frame { x: matrix_from_json(&self.x)?, y: matrix_from_json(&self.y)? };
        f.check()?;
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub frame: FrameJson,
    pub hull: Vec<[i64; 2]>,
    pub position: String,
    pub segment_through_barycenter: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitJson {
    pub d1: u32,
    pub d2: u32,
    pub status: String,
    pub heuristic: bool,
    pub irrational_special_point: bool,
    pub frames_tested: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    pub certificate: CertificateJson,
}

pub fn status_name(s: GitStatus) -> &'static str {
    match s {
        GitStatus::Stable => "stable",
        GitStatus::StrictlySemistable => "strictly-semistable",
        GitStatus::Unstable => "unstable",
    }
}

fn position_name(p: HullPosition) -> &'static str {
    match p {
        HullPosition::Interior => "interior",
        HullPosition::Boundary => "boundary",
        HullPosition::Outside => "outside",
    }
}

impl GitJson {
    pub fn new(f: &BiForm, r: &GitReport, smooth: Option<bool>) -> Self {
        let c = &r.certificate;
        GitJson {
            d1: f.d1,
            d2: f.d2,
            status: status_name(r.status).into(),
            heuristic: r.heuristic,
            irrational_special_point: r.irrational_special_point,
            frames_tested: r.frames_tested,
            smooth,
            certificate: CertificateJson {
                frame: FrameJson { x: matrix_to_json(&c.frame.x), y: matrix_to_json(&c.frame.y) },
                hull: c.hull.iter().map(|&(i, j)| [i, j]).collect(),
                position: position_name(c.position).into(),
                segment_through_barycenter: c.segment_through_barycenter,
            },
        }
    }

    pub fn to_report(&self) -> Result<GitReport, FormatError> {
        let status = match self.status.as_str() {
            "stable" => GitStatus::Stable,
            "strictly-semistable" => GitStatus::StrictlySemistable,
            "unstable" => GitStatus::Unstable,
            s => return Err(FormatError::Schema(format!("unknown status {}", s))),
        };
        let position = match self.certificate.position.as_str() {
            "interior" => HullPosition::Interior,
            "boundary" => HullPosition::Boundary,
            "outside" => HullPosition::Outside,
            s => return Err(FormatError::Schema(format!("unknown hull position {}", s))),
        };
        Ok(GitReport {
            status,
            certificate: Certificate {
                frame: self.certificate.frame.to_frame()?,
                hull: self.certificate.hull.iter().map(|p| (p[0], p[1])).collect(),
                position,
                segment_through_barycenter: self.certificate.segment_through_barycenter,
            },
            irrational_special_point: self.irrational_special_point,
            heuristic: self.heuristic,
            frames_tested: self.frames_tested,
        })
    }
}

// ---- lct ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermTermJson {
    pub alpha: u32,
    pub beta: u32,
    pub num: i64,
    #[serde(default = "one")]
    pub den: i64,
}

pub fn germ_from_json(terms: &[GermTermJson]) -> Result<Germ, FormatError> {
    let mut g = Germ::new();
    for t in terms {
        let c = rational_from_parts(t.num, t.den)?;
        let e = g.entry((t.alpha, t.beta)).or_insert_with(Rational::zero);
        *e = &*e + &c;
    }
    g.retain(|_, c| !c.is_zero());
    Ok(g)
}

pub fn fiber_from_str(s: &str) -> Result<Fiber, FormatError> {
    match s {
        "x" => Ok(Fiber::X),
        "y" => Ok(Fiber::Y),
        _ => Err(FormatError::Schema(format!("fiber must be x or y, not {}", s))),
    }
}

pub fn fiber_name(f: Fiber) -> &'static str {
    match f {
        Fiber::X => "x",
        Fiber::Y => "y",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonEdgeJson {
    pub from: [i64; 2],
    pub to: [i64; 2],
    pub square_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctJson {
    pub fiber: String,
    pub a: String,
    pub lct: ScalarJson,
    pub b: ScalarJson,
    pub witness_weight: [i64; 2],
    pub fiber_multiplicity: u32,
    pub nondegenerate: bool,
    pub edges: Vec<NewtonEdgeJson>,
}

impl LctJson {
    pub fn new(fiber: Fiber, a: &Rational, r: &ThresholdResult, edges: &[EdgeReport]) -> Self {
        LctJson {
            fiber: fiber_name(fiber).into(),
            a: a.to_string(),
            lct: (&r.lct).into(),
            b: (&r.b).into(),
            witness_weight: [r.witness_weight.0, r.witness_weight.1],
            fiber_multiplicity: r.fiber_multiplicity,
            nondegenerate: edges.iter().all(|e| e.square_free),
            edges: edges
                .iter()
                .map(|e| NewtonEdgeJson {
                    from: [e.from.0, e.from.1],
                    to: [e.to.0, e.to.1],
                    square_free: e.square_free,
                })
                .collect(),
        }
    }

    pub fn to_result(&self) -> Result<ThresholdResult, FormatError> {
        let lct = rational_from_str(&self.lct.exact)?;
        let b = rational_from_str(&self.b.exact)?;
        if &lct + &b != Rational::one() {
            return Err(FormatError::Schema("lct and b must sum to 1".into()));
        }
        fiber_from_str(&self.fiber)?;
        rational_from_str(&self.a)?;
        Ok(ThresholdResult {
            lct,
            b,
            witness_weight: (self.witness_weight[0], self.witness_weight[1]),
            fiber_multiplicity: self.fiber_multiplicity,
        })
    }
}

// ---- base curves ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub coefficient: String,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub id: usize,
    #[serde(default)]
    pub genus: u32,
    pub moduli_degree: String,
    #[serde(default)]
    pub boundary: Vec<BoundaryJson>,
    #[serde(default)]
    pub markings: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdgeJson {
    pub a: usize,
    pub b: usize,
    #[serde(default = "one_u32")]
    pub stabilizer: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub components: Vec<ComponentJson>,
    pub edges: Vec<GraphEdgeJson>,
}

impl From<&DecoratedDualGraph> for GraphJson {
    fn from(g: &DecoratedDualGraph) -> Self {
        GraphJson {
            components: g
                .components
                .iter()
                .map(|c| ComponentJson {
                    id: c.id,
                    genus: c.genus,
                    moduli_degree: c.moduli_degree.to_string(),
                    boundary: c
                        .boundary
                        .iter()
                        .map(|b| BoundaryJson { coefficient: b.coefficient.to_string(), location: b.location.clone() })
                        .collect(),
                    markings: c.markings,
                })
                .collect(),
            edges: g.edges.iter().map(|e| GraphEdgeJson { a: e.a, b: e.b, stabilizer: e.stabilizer }).collect(),
        }
    }
}

impl GraphJson {
    /// The validated graph and any warnings raised by validation.
    pub fn to_graph(&self) -> Result<(DecoratedDualGraph, Vec<String>), FormatError> {
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(Component {
                    id: c.id,
                    genus: c.genus,
                    moduli_degree: rational_from_str(&c.moduli_degree)?,
                    boundary: c
                        .boundary
                        .iter()
                        .map(|b| {
                            Ok(BoundaryPoint {
                                coefficient: rational_from_str(&b.coefficient)?,
                                location: b.location.clone(),
                            })
                        })
                        .collect::<Result<_, FormatError>>()?,
                    markings: c.markings,
                })
            })
            .collect::<Result<_, FormatError>>()?;
        let edges = self.edges.iter().map(|e| Edge { a: e.a, b: e.b, stabilizer: e.stabilizer }).collect();
        Ok(DecoratedDualGraph::new(components, edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmpJson {
    pub end: String,
    pub contracted: Vec<usize>,
    pub total_degree: ScalarJson,
    pub component_degrees: Vec<(usize, ScalarJson)>,
    pub warnings: Vec<String>,
    pub graph: GraphJson,
}

impl MmpJson {
    pub fn new(run: &MmpRun, warnings: Vec<String>) -> Self {
        let g = &run.graph;
        MmpJson {
            end: match run.end {
                MmpEnd::Minimal => "minimal".into(),
                MmpEnd::MoriFibreSpace => "mori-fibre-space".into(),
            },
            contracted: run.contracted.clone(),
            total_degree: (&fiberstab_core::basecurve::total_degree(g)).into(),
            component_degrees: g
                .components
                .iter()
                .map(|c| (c.id, (&g.component_degree(c.id).expect("own component")).into()))
                .collect(),
            warnings,
            graph: g.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasimapEdgeJson {
    pub a: usize,
    pub b: usize,
    pub stabilizers: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasimapTypeJson {
    pub degrees: Vec<i64>,
    pub edges: Vec<QuasimapEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasimapsJson {
    pub degree: i64,
    pub count: usize,
    pub types: Vec<QuasimapTypeJson>,
}

impl QuasimapsJson {
    pub fn new(degree: i64, types: &[QuasimapType]) -> Self {
        QuasimapsJson {
            degree,
            count: types.len(),
            types: types
                .iter()
                .map(|t| QuasimapTypeJson {
                    degrees: t.degrees.clone(),
                    edges: t
                        .edges
                        .iter()
                        .map(|e| QuasimapEdgeJson { a: e.a, b: e.b, stabilizers: e.stabilizers.clone() })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_types(&self) -> Result<Vec<QuasimapType>, FormatError> {
        if self.count != self.types.len() {
            return Err(FormatError::Schema("count does not match the number of types".into()));
        }
        Ok(self
            .types
            .iter()
            .map(|t| QuasimapType {
                degrees: t.degrees.clone(),
                edges: t
                    .edges
                    .iter()
                    .map(|e| QuasimapEdge { a: e.a, b: e.b, stabilizers: e.stabilizers.clone() })
                    .collect(),
            })
            .collect())
    }
}

// ---- canonical bundle formula ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDegreeJson {
    pub deg_f: u64,
    pub moduli_degree: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDegreeJson {
    pub n: u64,
    pub map_degree: u64,
    pub moduli_degree: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirzebruchJson {
    pub n: u64,
    pub deg_f: u64,
    pub d_class: Vec<String>,
    pub d_dot_e: ScalarJson,
    pub d_minus_e_dot_e: ScalarJson,
    pub verdict: String,
}

impl From<&HirzebruchCheck> for HirzebruchJson {
    fn from(h: &HirzebruchCheck) -> Self {
        HirzebruchJson {
            n: h.n,
            deg_f: h.deg_f,
            d_class: class_to_json(&h.d_class),
            d_dot_e: (&h.d_dot_e).into(),
            d_minus_e_dot_e: (&h.d_minus_e_dot_e).into(),
            verdict: match h.verdict {
                BoundVerdict::Consistent => "consistent".into(),
                BoundVerdict::Contradiction => "contradiction".into(),
            },
        }
    }
}

// ---- errors and the suite table ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionJson {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub all_passed: bool,
    pub criteria: Vec<CriterionJson>,
}
