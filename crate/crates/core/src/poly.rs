//! Dense univariate polynomials with exact scalar coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::{Rational, Scalar, ScalarError};

/// Positive divisors by trial division; fine for the small integers arising
/// from the built-in configurations.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if let Some(m) = n.to_u64() {
        let mut d = 1u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(BigUint::from(d));
                if d * d != m {
                    out.push(BigUint::from(m / d));
                }
            }
            d += 1;
        }
    } else {
        out.push(BigUint::one());
        out.push(n.clone());
    }
    out
}

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn affine(c0: Scalar, c1: Scalar) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `self(x + shift)`.
    pub fn shift(&self, shift: &Scalar) -> Poly {
        let lin = Poly::affine(shift.clone(), Scalar::one());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Scalar::int(k as i64)).collect())
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Poly {
        let mut out = vec![Scalar::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / &Scalar::int(k as i64 + 1));
        }
        Poly::new(out)
    }

    /// `∫_lo^hi self(x) dx`, exactly.
    pub fn integrate(&self, lo: &Scalar, hi: &Scalar) -> Scalar {
        let f = self.antiderivative();
        &f.eval(hi) - &f.eval(lo)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), ScalarError> {
        let dd = divisor.degree().ok_or(ScalarError::DivisionByZero)?;
        let lead_inv = divisor.leading().recip()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = &factor * c;
                rem[k + j] -= t;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_square_free(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Distinct rational roots of a polynomial with rational coefficients,
    /// ascending (rational root theorem).
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 || self.coeffs.iter().any(|c| !c.is_rational()) {
            return out;
        }
        // strip the factor x^k, then clear denominators
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if k > 0 {
            out.push(Rational::zero());
        }
        let rest: Vec<Rational> = self.coeffs[k..].iter().map(|c| c.as_rational().unwrap().clone()).collect();
        if rest.len() < 2 {
            return out;
        }
        let mut l = BigInt::one();
        for c in &rest {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = rest.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let p_divs = divisors(ints[0].magnitude());
        let q_divs = divisors(ints[ints.len() - 1].magnitude());
        for p in &p_divs {
            for q in &q_divs {
                for sign in [1i32, -1] {
                    let num = if sign > 0 { BigInt::from(p.clone()) } else { -BigInt::from(p.clone()) };
                    let cand = Rational::from_bigints(num, BigInt::from(q.clone()));
                    if !out.contains(&cand) && self.eval(&Scalar::from(cand.clone())).is_zero() {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Multiplicity of `x` as a root (0 if not a root).
    pub fn root_multiplicity(&self, x: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut p = self.clone();
        while !p.is_zero() && p.eval(x).is_zero() {
            k += 1;
            p = p.derivative();
        }
        k
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(Scalar, Scalar)]) -> Poly {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(Scalar::one());
            let mut denom = Scalar::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::affine(-xj.clone(), Scalar::one()));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / &denom)));
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})x", c)?,
                _ => write!(f, "({})x^{}", c, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = Poly::from_ints(&[2, -3, 1]);
        let b = Poly::from_ints(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        let (q, r) = a.mul(&b).div_rem(&a).unwrap();
        assert_eq!(q, b);
        assert!(r.is_zero());
    }

    #[test]
    fn integration_is_exact() {
        // ∫_0^3 x^2 = 9
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.integrate(&Scalar::zero(), &Scalar::int(3)), Scalar::int(9));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(&[11, -6, 4]);
        let pts: Vec<_> = (1..=5)
            .map(|k| {
                let x = Scalar::ratio(k, 7);
                (x.clone(), p.eval(&x))
            })
            .collect();
        assert_eq!(Poly::interpolate(&pts), p);
    }

    #[test]
    fn rational_roots_and_multiplicity() {
        // 6x^3 - 5x^2 + x = x(2x-1)(3x-1)
        let p = Poly::from_ints(&[0, 1, -5, 6]);
        assert_eq!(p.rational_roots(), vec![Rational::zero(), Rational::new(1, 3), Rational::new(1, 2)]);
        let sq = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(sq.root_multiplicity(&Scalar::int(1)), 2);
        assert!(Poly::from_ints(&[2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn shift_and_square_free() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift(&Scalar::int(1)), Poly::from_ints(&[1, 2, 1]));
        assert!(!p.is_square_free());
        assert!(Poly::from_ints(&[-1, 0, 1]).is_square_free());
    }
}
