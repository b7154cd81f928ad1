//! Degree bookkeeping for the canonical bundle formula of fibrations in
//! four points on `P^1`.

use core::fmt;

use crate::lattice::{intersect, DivisorClass, LatticeError};
use crate::models;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CbfError {
    /// The classifying map degree must be a positive multiple of 6.
    NotDivisibleBySix(u64),
    NonPositive,
    Lattice(LatticeError),
}

impl fmt::Display for CbfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CbfError::NotDivisibleBySix(d) => {
                write!(f, "map degree {} is not divisible by 6, as every classifying map degree must be", d)
            }
            CbfError::NonPositive => f.write_str("degree must be positive"),
            CbfError::Lattice(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for CbfError {}

impl From<LatticeError> for CbfError {
    fn from(e: LatticeError) -> Self {
        CbfError::Lattice(e)
    }
}

fn check_degree(deg_f: u64) -> Result<(), CbfError> {
    if deg_f == 0 {
        Err(CbfError::NonPositive)
    } else if !deg_f.is_multiple_of(6) {
        Err(CbfError::NotDivisibleBySix(deg_f))
    } else {
        Ok(())
    }
}

/// Degree of the moduli part, `deg f / 12`.
pub fn moduli_degree_from_map(deg_f: u64) -> Result<Rational, CbfError> {
    check_degree(deg_f)?;
    Ok(Rational::new(deg_f as i64, 12))
}

/// Degree `6n` of the classifying map of an `(n, 4)`-curve.
pub fn n4_curve_map_degree(n: u64) -> Result<u64, CbfError> {
    if n == 0 {
        return Err(CbfError::NonPositive);
    }
    Ok(6 * n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVerdict {
    Consistent,
    /// `D . e < 0` and `(D - e) . e < 0`: the negative section would lie
    /// in `D` twice.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirzebruchCheck {
    pub n: u64,
    pub deg_f: u64,
    /// `4e + (2n + deg f / 6) f` on the basis `(e, f)`.
    pub d_class: DivisorClass,
    pub d_dot_e: Scalar,
    pub d_minus_e_dot_e: Scalar,
    pub verdict: BoundVerdict,
}

/// Replay the effectivity argument on `F_n`: with `D ~ 4e + (2n + deg/6) f`,
/// `n > deg/6` forces `2e` into `D`, impossible for a four-section.
pub fn hirzebruch_bound_check(n: u64, deg_f: u64) -> Result<HirzebruchCheck, CbfError> {
    check_degree(deg_f)?;
    let fib = 2 * n as i64 + (deg_f / 6) as i64;
    let d = DivisorClass::from_ints(&[4, fib]);
    let e = DivisorClass::from_ints(&[1, 0]);
    // F_0 has no negative section; its e has square 0
    let model = if n == 0 { models::p1xp1() } else { models::hirzebruch(n as i64)? };
    let d_dot_e = intersect(&model, &d, &e)?;
    let d_minus_e_dot_e = intersect(&model, &d.sub(&e), &e)?;
    let verdict = if n > 0 && d_dot_e.is_negative() && d_minus_e_dot_e.is_negative() {
        BoundVerdict::Contradiction
    } else {
        BoundVerdict::Consistent
    };
    Ok(HirzebruchCheck { n, deg_f, d_class: d, d_dot_e, d_minus_e_dot_e, verdict })
}
