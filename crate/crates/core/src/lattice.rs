//! Néron–Severi lattices given by a basis and a rational Gram matrix.
//!
//! Positivity questions (nefness, which curves may enter a negative part) are
//! answered relative to an explicit list of registered curves. This is exact
//! for the rank 2 and 3 toric models used here but is not a cone-of-curves
//! computation.

// Elimination reads more clearly with explicit row and column indices.
#![allow(clippy::needless_range_loop)]

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotSymmetric,
    /// A registered curve's declared data disagrees with the Gram matrix.
    InconsistentCurve(String),
    /// A model constructor received an out-of-range parameter.
    InvalidParameter(String),
    Scalar(ScalarError),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
            LatticeError::NotSymmetric => f.write_str("gram matrix is not symmetric"),
            LatticeError::InconsistentCurve(name) => {
                write!(f, "registered curve {} is inconsistent with the gram matrix", name)
            }
            LatticeError::InvalidParameter(msg) => f.write_str(msg),
            LatticeError::Scalar(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for LatticeError {}

impl From<ScalarError> for LatticeError {
    fn from(e: ScalarError) -> Self {
        LatticeError::Scalar(e)
    }
}

/// Coefficients of a class over the model basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coeffs: Vec<Scalar>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivisorClass::new(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        DivisorClass::new(coeffs.iter().cloned().map(Scalar::from).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass::new(alloc::vec![Scalar::zero(); rank])
    }

    /// The `k`-th basis vector.
    pub fn basis(rank: usize, k: usize) -> Self {
        let mut c = DivisorClass::zero(rank);
        c.coeffs[k] = Scalar::one();
        c
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        DivisorClass::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        DivisorClass::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> DivisorClass {
        DivisorClass::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

/// A registered irreducible curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub class: DivisorClass,
    pub self_intersection: Rational,
}

/// Metadata of an exceptional divisor over a smooth base model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalData {
    /// Class of the exceptional curve.
    pub class: DivisorClass,
    /// Coefficient `k` in `K_Y = pi^* K_X + k E`.
    pub discrepancy: Rational,
    /// `pi^* K_X` in the basis of the blow-up.
    pub base_canonical: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub basis_names: Vec<String>,
    /// Symmetric, row-major.
    pub gram: Vec<Vec<Rational>>,
    pub canonical: DivisorClass,
    /// Curves of negative self-intersection allowed in negative parts.
    pub negative_curves: Vec<Curve>,
    /// Further curves (self-intersection >= 0) that nef classes must meet
    /// nonnegatively; together with `negative_curves` they generate the
    /// curve cone of the built-in models.
    pub nef_test_curves: Vec<Curve>,
    pub exceptional: Option<ExceptionalData>,
}

impl SurfaceModel {
    /// Validates shapes, symmetry and the declared self-intersections.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        gram: Vec<Vec<Rational>>,
        canonical: DivisorClass,
        negative_curves: Vec<Curve>,
        nef_test_curves: Vec<Curve>,
    ) -> Result<Self, LatticeError> {
        let n = basis_names.len();
        if gram.len() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, found: gram.len() });
        }
        for row in &gram {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        let model = SurfaceModel {
            name: name.into(),
            basis_names,
            gram,
            canonical,
            negative_curves,
            nef_test_curves,
            exceptional: None,
        };
        model.check_class(&model.canonical)?;
        for c in &model.negative_curves {
            model.check_class(&c.class)?;
            let sq = intersect(&model, &c.class, &c.class)?;
            if sq != Scalar::from(c.self_intersection.clone()) || c.self_intersection.signum() >= 0 {
                return Err(LatticeError::InconsistentCurve(c.name.clone()));
            }
        }
        for c in &model.nef_test_curves {
            model.check_class(&c.class)?;
            let sq = intersect(&model, &c.class, &c.class)?;
            if sq != Scalar::from(c.self_intersection.clone()) || c.self_intersection.signum() < 0 {
                return Err(LatticeError::InconsistentCurve(c.name.clone()));
            }
        }
        Ok(model)
    }

    pub fn with_exceptional(mut self, data: ExceptionalData) -> Result<Self, LatticeError> {
        self.check_class(&data.class)?;
        self.check_class(&data.base_canonical)?;
        self.exceptional = Some(data);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn check_class(&self, c: &DivisorClass) -> Result<(), LatticeError> {
        if c.rank() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), found: c.rank() });
        }
        Ok(())
    }

    /// Class of a registered curve (negative or test) by name.
    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.negative_curves.iter().chain(&self.nef_test_curves).find(|c| c.name == name)
    }

    pub fn basis_class(&self, name: &str) -> Option<DivisorClass> {
        let k = self.basis_names.iter().position(|b| b == name)?;
        Some(DivisorClass::basis(self.rank(), k))
    }

    pub fn anticanonical(&self) -> DivisorClass {
        self.canonical.neg()
    }
}

/// `a^T * gram * b`.
pub fn intersect(model: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> Result<Scalar, LatticeError> {
    model.check_class(a)?;
    model.check_class(b)?;
    let mut acc = Scalar::zero();
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            let g = &model.gram[i][j];
            if g.is_zero() || bj.is_zero() {
                continue;
            }
            let term = ai.checked_mul(bj)?.checked_mul(&Scalar::from(g.clone()))?;
            acc = acc.checked_add(&term)?;
        }
    }
    Ok(acc)
}

/// Outcome of [`is_nef_against`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCheck {
    pub nef: bool,
    /// The first registered curve meeting the class negatively, if any.
    pub witness: Option<String>,
}

/// Nef relative to the registered curves: `class · C >= 0` for each of them
/// and `class^2 >= 0`.
pub fn is_nef_against(model: &SurfaceModel, class: &DivisorClass) -> Result<NefCheck, LatticeError> {
    for c in model.negative_curves.iter().chain(&model.nef_test_curves) {
        let v = intersect(model, class, &c.class)?;
        if v.is_negative() {
            return Ok(NefCheck { nef: false, witness: Some(c.name.clone()) });
        }
    }
    let sq = intersect(model, class, class)?;
    Ok(NefCheck { nef: !sq.is_negative(), witness: None })
}

/// Sylvester's criterion on a rational symmetric matrix.
pub fn is_negative_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    for k in 1..=n {
        let minor: Vec<Vec<Rational>> = (0..k).map(|i| m[i][..k].to_vec()).collect();
        let det = determinant(&minor);
        // (-1)^k det > 0
        let s = if k % 2 == 0 { det.signum() } else { -det.signum() };
        if s <= 0 {
            return false;
        }
    }
    true
}

/// Exact determinant by fraction-free elimination over the rationals.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        for r in col + 1..n {
            let factor = &a[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

/// Solves `m x = rhs` for square invertible `m` with scalar entries.
pub fn solve_linear(m: &[Vec<Scalar>], rhs: &[Scalar]) -> Result<Vec<Scalar>, LatticeError> {
    let n = m.len();
    if rhs.len() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, found: rhs.len() });
    }
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(LatticeError::Scalar(ScalarError::DivisionByZero))?;
        a.swap(piv, col);
        let inv = a[col][col].recip()?;
        for c in col..=n {
            a[col][c] = a[col][c].checked_mul(&inv)?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let t = factor.checked_mul(&a[col][c])?;
                a[r][c] = a[r][c].checked_sub(&t)?;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p1p1() -> SurfaceModel {
        let r = |n| Rational::from_integer(n);
        SurfaceModel::new(
            "p1xp1",
            vec!["f1".to_string(), "f2".to_string()],
            vec![vec![r(0), r(1)], vec![r(1), r(0)]],
            DivisorClass::from_ints(&[-2, -2]),
            vec![],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn rejects_asymmetric_gram() {
        let r = |n| Rational::from_integer(n);
        let err = SurfaceModel::new(
            "bad",
            vec!["a".to_string(), "b".to_string()],
            vec![vec![r(0), r(1)], vec![r(2), r(0)]],
            DivisorClass::from_ints(&[0, 0]),
            vec![],
            vec![],
        );
        assert_eq!(err, Err(LatticeError::NotSymmetric));
    }

    #[test]
    fn dimension_mismatch() {
        let m = p1p1();
        let e = intersect(&m, &DivisorClass::from_ints(&[1]), &DivisorClass::from_ints(&[1, 0]));
        assert!(matches!(e, Err(LatticeError::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_class_is_nef() {
        let m = p1p1();
        assert!(is_nef_against(&m, &DivisorClass::zero(2)).unwrap().nef);
    }

    #[test]
    fn determinants_and_definiteness() {
        let r = |n: i64, d: i64| Rational::new(n, d);
        let m = vec![vec![r(-4, 1), r(1, 1)], vec![r(1, 1), r(-1, 4)]];
        // det = 1 - 1 = 0, not definite
        assert!(determinant(&m).is_zero());
        assert!(!is_negative_definite(&m));
        let m = vec![vec![r(-2, 1), r(1, 1)], vec![r(1, 1), r(-2, 1)]];
        assert!(is_negative_definite(&m));
    }

    #[test]
    fn linear_solve() {
        let s = |n| Scalar::int(n);
        let m = vec![vec![s(2), s(1)], vec![s(1), s(3)]];
        let x = solve_linear(&m, &[s(3), s(5)]).unwrap();
        assert_eq!(x, vec![Scalar::ratio(4, 5), Scalar::ratio(7, 5)]);
    }
}
