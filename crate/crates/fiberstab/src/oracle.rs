//! Floating-point cross-check of exact S-integrals.
//!
//! The volume is computed by the classical iterative Zariski algorithm in
//! `f64`, independently of the exact ray walk, and integrated by Riemann
//! sums. Only `fiberstab_core` paths are used so that test targets of the core
//! crate can include this file directly.

use fiberstab_core::fujita::{Configuration, FujitaError};
use fiberstab_core::lattice::{DivisorClass, SurfaceModel};
use fiberstab_core::zariski::decompose_ray;
use fiberstab_core::{Rational, Scalar};

fn to_f64(c: &DivisorClass) -> Vec<f64> {
    c.coeffs.iter().map(Scalar::to_f64).collect()
}

fn dot(gram: &[Vec<f64>], a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            s += ai * gram[i][j] * bj;
        }
    }
    s
}

fn solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot_row = m[col].clone();
                for (x, p) in m[row].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                rhs[row] -= f * rhs[col];
            }
        }
    }
    (0..n).map(|i| rhs[i] / m[i][i]).collect()
}

/// Volume of a class by the classical iterative Zariski algorithm in
/// floating point: repeatedly add every curve meeting the positive part
/// negatively.
fn volume_f64(model: &SurfaceModel, gram: &[Vec<f64>], d: &[f64]) -> f64 {
    let curves: Vec<Vec<f64>> = model.negative_curves.iter().map(|c| to_f64(&c.class)).collect();
    let mut support: Vec<usize> = Vec::new();
    loop {
        let p = if support.is_empty() {
            d.to_vec()
        } else {
            let g: Vec<Vec<f64>> =
                support.iter().map(|&i| support.iter().map(|&j| dot(gram, &curves[i], &curves[j])).collect()).collect();
            let rhs: Vec<f64> = support.iter().map(|&i| dot(gram, d, &curves[i])).collect();
            let n = solve(g, rhs);
            let mut p = d.to_vec();
            for (k, &i) in support.iter().enumerate() {
                for (x, c) in p.iter_mut().zip(&curves[i]) {
                    *x -= n[k] * c;
                }
            }
            p
        };
        let new: Vec<usize> =
            (0..curves.len()).filter(|i| !support.contains(i) && dot(gram, &p, &curves[*i]) < -1e-12).collect();
        if new.is_empty() {
            return dot(gram, &p, &p).max(0.0);
        }
        support.extend(new);
    }
}

/// Panel count, overridable for slow test machines.
pub fn panels() -> usize {
    std::env::var("FIBERSTAB_ORACLE_PANELS").ok().and_then(|v| v.parse().ok()).unwrap_or(10_000)
}

/// Lower, upper and midpoint Riemann sums of `S`; the volume is
/// nonincreasing in `t`, so the exact value must lie between the first two.
/// Only the integration range `T` is taken from the exact decomposition.
pub fn riemann_oracle(
    cfg: &Configuration,
    c: &Scalar,
    divisor: &str,
    n: usize,
) -> Result<(f64, f64, f64), FujitaError> {
    let model = &cfg.model;
    let gram: Vec<Vec<f64>> = model.gram.iter().map(|r| r.iter().map(Rational::to_f64).collect()).collect();
    let start = cfg.family.at(c);
    let dir = cfg.divisor(divisor)?.class().clone();
    let big_t = decompose_ray(model, &start, &dir)?.threshold().to_f64();
    let (l, f) = (to_f64(&start), to_f64(&dir));
    let vol = |t: f64| {
        let d: Vec<f64> = l.iter().zip(&f).map(|(a, b)| a - t * b).collect();
        volume_f64(model, &gram, &d)
    };
    let v0 = vol(0.0);
    let h = big_t / n as f64;
    let (mut lo, mut hi, mut mid) = (0.0, 0.0, 0.0);
    let mut left = v0;
    for k in 0..n {
        let right = vol((k + 1) as f64 * h);
        lo += right * h;
        hi += left * h;
        mid += vol((k as f64 + 0.5) * h) * h;
        left = right;
    }
    Ok((lo / v0, hi / v0, mid / v0))
}
