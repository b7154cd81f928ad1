//! Exact numbers: rationals and elements of real quadratic fields `Q(sqrt d)`.
//!
//! Every invariant computed by this crate lives in `Q` or in a single real
//! quadratic extension of `Q`. Comparisons are decided by exact sign analysis,
//! never by floating point evaluation.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors raised by scalar arithmetic and root extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// All coefficients of a polynomial vanish.
    DegeneratePolynomial,
    /// Operands live in different quadratic fields.
    FieldMismatch {
        left: u64,
        right: u64,
    },
    DivisionByZero,
    /// A root would leave the current quadratic field.
    NotQuadratic,
    /// Malformed textual scalar.
    Parse(String),
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DegeneratePolynomial => f.write_str("degenerate polynomial"),
            ScalarError::FieldMismatch { left, right } => {
                write!(f, "field mismatch: Q(sqrt {}) vs Q(sqrt {})", left, right)
            }
            ScalarError::DivisionByZero => f.write_str("division by zero"),
            ScalarError::NotQuadratic => f.write_str("value is not expressible in a real quadratic field"),
            ScalarError::Parse(s) => write!(f, "cannot parse scalar: {}", s),
        }
    }
}

impl core::error::Error for ScalarError {}

/// Reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.signum() < 0 {
            return None;
        }
        let n = int_sqrt_exact(self.numer())?;
        let d = int_sqrt_exact(self.denom())?;
        Some(Rational::from_bigints(n, d))
    }

    /// Writes `self = s^2 * d` with `d` a positive square-free integer
    /// (requires `self > 0`).
    pub fn square_free_decomposition(&self) -> (Rational, u64) {
        assert!(self.signum() > 0, "square-free part of a nonpositive number");
        // n/m = n*m / m^2
        let prod = (self.numer() * self.denom()).magnitude().clone();
        let (square_root, free) = square_free_split(&prod);
        let d = free.to_u64().expect("square-free part does not fit in 64 bits");
        let s = Rational::from_bigints(BigInt::from(square_root), self.denom().clone());
        (s, d)
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Splits `n = r^2 * f` with `f` square-free.
///
/// Trial division runs up to the cube root; the cofactor then has at most two
/// prime factors and is either square-free or a perfect square.
fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let limit = n.cbrt() + BigUint::one();
    let mut p = BigUint::from(2u32);
    while p <= limit && rest > BigUint::one() {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            root *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigUint::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            root *= r;
        } else {
            free *= rest;
        }
    }
    (root, free)
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// `a + b*sqrt(d)` with `d > 1` square-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    d: u64,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    /// Panics unless `d > 1` is square-free.
    pub fn new(d: u64, a: Rational, b: Rational) -> Self {
        assert!(d > 1, "quadratic field needs d > 1");
        let (_, free) = square_free_split(&BigUint::from(d));
        assert!(free == BigUint::from(d), "d = {} is not square-free", d);
        QuadExt { d, a, b }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    fn d_rational(&self) -> Rational {
        Rational::from_bigint(BigInt::from(self.d))
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d_rational())
    }

    pub fn conjugate(&self) -> QuadExt {
        QuadExt { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// Exact sign of `a + b sqrt(d)`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: the larger square wins
        let a2 = &self.a * &self.a;
        let b2d = &(&self.b * &self.b) * &self.d_rational();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("d is not a square"),
        }
    }
}

/// An exact real number in `Q` or in one real quadratic field.
///
/// Values are kept canonical: a quadratic element with zero surd part is
/// stored as a rational, so structural equality is numeric equality.
///
/// Arithmetic operators panic when the operands belong to different quadratic
/// fields; use [`Scalar::checked_add`] and friends, or [`compare`], when mixed
/// fields are possible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadExt),
}

/// Alias matching the domain vocabulary.
pub type AlgebraicScalar = Scalar;

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(Rational::new(num, den))
    }

    /// `a + b*sqrt(d)`; collapses to a rational when `b = 0`.
    pub fn quad(d: u64, a: Rational, b: Rational) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quad(QuadExt::new(d, a, b))
        }
    }

    /// `sqrt(n)` for a nonnegative integer `n`, rational when `n` is a square.
    pub fn sqrt_of_int(n: u64) -> Self {
        let r = Rational::from_integer(n as i64);
        if let Some(s) = r.sqrt_exact() {
            return Scalar::Rational(s);
        }
        let (s, d) = r.square_free_decomposition();
        Scalar::quad(d, Rational::zero(), s)
    }

    /// The `d` of the ambient quadratic field, `None` for rationals.
    pub fn field(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quad(q) => Some(q.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    /// Rational and surd parts `(a, b)` of `a + b sqrt(d)`.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            Scalar::Rational(r) => (r.clone(), Rational::zero()),
            Scalar::Quad(q) => (q.a.clone(), q.b.clone()),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => r.signum(),
            Scalar::Quad(q) => q.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn common_field(&self, other: &Scalar) -> Result<Option<u64>, ScalarError> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(ScalarError::FieldMismatch { left: a, right: b }),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        let field = self.common_field(rhs)?;
        let ((a1, b1), (a2, b2)) = (self.parts(), rhs.parts());
        Ok(match field {
            None => Scalar::Rational(a1 + a2),
            Some(d) => Scalar::quad(d, a1 + a2, b1 + b2),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-rhs.clone())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        let field = self.common_field(rhs)?;
        let ((a1, b1), (a2, b2)) = (self.parts(), rhs.parts());
        Ok(match field {
            None => Scalar::Rational(a1 * a2),
            Some(d) => {
                let dr = Rational::from_integer(d as i64);
                let a = &(&a1 * &a2) + &(&(&b1 * &b2) * &dr);
                let b = &(&a1 * &b2) + &(&a2 * &b1);
                Scalar::quad(d, a, b)
            }
        })
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip()?)),
            Scalar::Quad(q) => {
                let n = q.norm();
                let inv = n.recip()?;
                Ok(Scalar::quad(q.d, &q.a * &inv, -&(&q.b * &inv)))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.common_field(rhs)?;
        self.checked_mul(&rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root inside the current field, or, for a rational
    /// argument, inside the quadratic field generated by it.
    pub fn sqrt_exact(&self) -> Result<Scalar, ScalarError> {
        if self.is_negative() {
            return Err(ScalarError::NotQuadratic);
        }
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    return Ok(Scalar::zero());
                }
                if let Some(s) = r.sqrt_exact() {
                    return Ok(Scalar::Rational(s));
                }
                let (s, d) = r.square_free_decomposition();
                Ok(Scalar::quad(d, Rational::zero(), s))
            }
            Scalar::Quad(q) => {
                // (x + y sqrt d)^2 = a + b sqrt d  =>  x^2 + d y^2 = a, 2xy = b
                let n = q.norm().sqrt_exact().ok_or(ScalarError::NotQuadratic)?;
                let two = Rational::from_integer(2);
                for cand in [&(&q.a + &n) / &two, &(&q.a - &n) / &two] {
                    if cand.signum() <= 0 {
                        continue;
                    }
                    if let Some(x) = cand.sqrt_exact() {
                        let y = &q.b / &(&two * &x);
                        return Ok(Scalar::quad(q.d, x, y).abs());
                    }
                }
                Err(ScalarError::NotQuadratic)
            }
        }
    }

    /// The `p/q + r/s*sqrt(d)` encoding; plain `p/q` for rationals.
    pub fn to_sum_form(&self) -> String {
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::Quad(q) => alloc::format!("{} + {}*sqrt({})", q.a, q.b, q.d),
        }
    }

    /// `floor(self * 10^k)`, exactly.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(k);
        let (a, b) = self.parts();
        let q = a.denom().lcm(b.denom());
        let p = a.numer() * (&q / a.denom()) * &scale;
        let r = b.numer() * (&q / b.denom());
        // self * 10^k * q = p + r sqrt(d) * 10^k
        let surd = match self.field() {
            None => BigInt::zero(),
            Some(d) => {
                let rad = (&r * &r) * BigInt::from(d) * (&scale * &scale);
                let s = rad.sqrt();
                if r.is_negative() {
                    if &s * &s == rad {
                        -s
                    } else {
                        -s - 1
                    }
                } else {
                    s
                }
            }
        };
        // floor((p + x)/q) with floor(x) = surd and x irrational unless d is absent
        (p + surd).div_floor(&q)
    }

    /// Lossy conversion for display and oracles.
    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.parts();
        match self.field() {
            None => a.to_f64(),
            Some(d) => a.to_f64() + b.to_f64() * libm_sqrt(d as f64),
        }
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits, computed exactly.
    pub fn to_decimal(&self, digits: u32) -> String {
        let negative = self.is_negative();
        let x = self.abs();
        let scale = BigInt::from(10u32).pow(digits);
        let (a, b) = x.parts();
        // common denominator q: x = (p + r sqrt d)/q
        let q = a.denom().lcm(b.denom());
        let p = a.numer() * (&q / a.denom());
        let r = b.numer() * (&q / b.denom());
        let mut num = &p * &scale;
        if let Some(d) = x.field() {
            let rad = (&r * &r) * BigInt::from(d) * (&scale * &scale);
            let s = rad.sqrt();
            if r.is_negative() {
                // floor(-sqrt(rad)) = -ceil(sqrt(rad))
                let ceil = if &s * &s == rad { s } else { s + 1 };
                num -= ceil;
            } else {
                num += s;
            }
        }
        let scaled = num.div_floor(&q);
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let mut out = String::new();
        if negative && !scaled.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            let frac = frac_part.to_string();
            for _ in frac.len()..digits as usize {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }
}

fn libm_sqrt(x: f64) -> f64 {
    // Newton iteration; only used for lossy display/oracle conversions.
    if x <= 0.0 {
        return 0.0;
    }
    let mut g = if x > 1.0 { x / 2.0 } else { 1.0 };
    for _ in 0..100 {
        let next = 0.5 * (g + x / g);
        if next == g {
            break;
        }
        g = next;
    }
    g
}

/// Exact total order on scalars of a common field.
pub fn compare(x: &Scalar, y: &Scalar) -> Result<Ordering, ScalarError> {
    let diff = x.checked_sub(y)?;
    Ok(diff.signum().cmp(&0))
}

/// A rational strictly between `lo < hi`.
pub fn rational_between(lo: &Scalar, hi: &Scalar) -> Result<Rational, ScalarError> {
    if compare(lo, hi)? != Ordering::Less {
        return Err(ScalarError::DegeneratePolynomial);
    }
    for k in 0u32.. {
        let scale = BigInt::from(10u32).pow(k);
        let q = Rational::from_bigints(lo.floor_scaled(k) + 1, scale);
        if compare(&Scalar::Rational(q.clone()), hi)? == Ordering::Less {
            return Ok(q);
        }
    }
    unreachable!()
}

/// Real roots of `p2 x^2 + p1 x + p0`, ascending, each root once.
pub fn quad_roots(p2: &Rational, p1: &Rational, p0: &Rational) -> Result<Vec<Scalar>, ScalarError> {
    quad_roots_scalar(&Scalar::Rational(p2.clone()), &Scalar::Rational(p1.clone()), &Scalar::Rational(p0.clone()))
}

/// [`quad_roots`] with coefficients in a quadratic field. Fails with
/// [`ScalarError::NotQuadratic`] when the roots leave that field.
pub fn quad_roots_scalar(p2: &Scalar, p1: &Scalar, p0: &Scalar) -> Result<Vec<Scalar>, ScalarError> {
    if p2.is_zero() {
        if p1.is_zero() {
            if p0.is_zero() {
                return Err(ScalarError::DegeneratePolynomial);
            }
            return Ok(Vec::new());
        }
        return Ok(vec![(-p0.clone()).checked_div(p1)?]);
    }
    let four = Scalar::int(4);
    let disc = p1.checked_mul(p1)?.checked_sub(&four.checked_mul(p2)?.checked_mul(p0)?)?;
    let two_a = Scalar::int(2).checked_mul(p2)?;
    let center = (-p1.clone()).checked_div(&two_a)?;
    match disc.signum() {
        s if s < 0 => Ok(Vec::new()),
        0 => Ok(vec![center]),
        _ => {
            let root = disc.sqrt_exact()?;
            let offset = root.checked_div(&two_a)?.abs();
            let lo = center.checked_sub(&offset)?;
            let hi = center.checked_add(&offset)?;
            Ok(vec![lo, hi])
        }
    }
}

impl PartialOrd for Scalar {
    /// `None` for elements of different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        compare(self, other).ok()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $checked:ident, $assign_tr:ident, $assign_m:ident) => {
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign_m(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
        impl<'b> $assign_tr<&'b Scalar> for Scalar {
            fn $assign_m(&mut self, rhs: &'b Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

scalar_binop!(Add, add, checked_add, AddAssign, add_assign);
scalar_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
scalar_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl<'b> Div<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        match self.checked_div(rhs) {
            Ok(v) => v,
            Err(e) => panic!("{}", e),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl<'b> Div<&'b Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        &self / rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::Quad(QuadExt { d: q.d, a: -q.a, b: -q.b }),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p/q` for rationals, `(P+R*sqrt(d))/Q` with integers `P, R, Q` otherwise,
/// e.g. `(9-sqrt(21))/30`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Quad(qe) => {
                let q = qe.a.denom().lcm(qe.b.denom());
                let p = qe.a.numer() * (&q / qe.a.denom());
                let r = qe.b.numer() * (&q / qe.b.denom());
                let mut body = String::new();
                if !p.is_zero() {
                    body.push_str(&p.to_string());
                }
                let mag = r.abs();
                if r.is_negative() {
                    body.push('-');
                } else if !p.is_zero() {
                    body.push('+');
                }
                if !mag.is_one() {
                    body.push_str(&mag.to_string());
                    body.push('*');
                }
                body.push_str("sqrt(");
                body.push_str(&qe.d.to_string());
                body.push(')');
                if q.is_one() {
                    f.write_str(&body)
                } else {
                    write!(f, "({})/{}", body, q)
                }
            }
        }
    }
}

/// Parses the textual encoding: integers, `p/q`, `sqrt(d)`, products with
/// `*`, sums, differences and parenthesised groups divided by integers.
/// Accepts both `(9-sqrt(21))/30` and `3/10 + -1/30*sqrt(21)`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(ScalarError::Parse(text.to_string()));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
    Sqrt,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ScalarError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'+' => {
                out.push(Token::Plus);
                i += 1
            }
            b'-' => {
                out.push(Token::Minus);
                i += 1
            }
            b'*' => {
                out.push(Token::Star);
                i += 1
            }
            b'/' => {
                out.push(Token::Slash);
                i += 1
            }
            b'(' => {
                out.push(Token::Open);
                i += 1
            }
            b')' => {
                out.push(Token::Close);
                i += 1
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().map_err(|_| ScalarError::Parse(text.to_string()))?;
                out.push(Token::Int(n));
            }
            _ if text[i..].starts_with("sqrt") => {
                out.push(Token::Sqrt);
                i += 4;
            }
            _ => return Err(ScalarError::Parse(text.to_string())),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self) -> ScalarError {
        ScalarError::Parse(alloc::format!("unexpected token at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = acc.checked_div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::Rational(Rational::from_bigint(n)))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Token::Sqrt) => {
                self.pos += 1;
                if self.peek() != Some(&Token::Open) {
                    return Err(self.err());
                }
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.err());
                }
                self.pos += 1;
                let r = inner.as_rational().ok_or_else(|| self.err())?;
                if !r.is_integer() || r.signum() < 0 {
                    return Err(self.err());
                }
                let n = r.numer().to_u64().ok_or_else(|| self.err())?;
                Ok(Scalar::sqrt_of_int(n))
            }
            _ => Err(self.err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c0() -> Scalar {
        Scalar::quad(21, Rational::new(3, 10), Rational::new(-1, 30))
    }

    #[test]
    fn wall_roots_of_fifteen_c_squared() {
        let roots = quad_roots(&Rational::from(15), &Rational::from(-9), &Rational::from(1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], c0());
        assert_eq!(roots[1], Scalar::quad(21, Rational::new(3, 10), Rational::new(1, 30)));
        assert_eq!(roots[0].to_string(), "(9-sqrt(21))/30");
    }

    #[test]
    fn double_and_rational_roots() {
        let r = quad_roots(&Rational::from(1), &Rational::zero(), &Rational::zero()).unwrap();
        assert_eq!(r, vec![Scalar::zero()]);
        let r = quad_roots(&Rational::from(1), &Rational::from(-3), &Rational::from(2)).unwrap();
        assert_eq!(r, vec![Scalar::int(1), Scalar::int(2)]);
        let r = quad_roots(&Rational::from(4), &Rational::from(-6), &Rational::from(11)).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn degenerate_polynomial_is_an_error() {
        let z = Rational::zero();
        assert_eq!(quad_roots(&z, &z, &z), Err(ScalarError::DegeneratePolynomial));
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare(&c0(), &Scalar::ratio(147, 1000)), Ok(Ordering::Greater));
        assert_eq!(compare(&Scalar::ratio(1, 2), &Scalar::ratio(1, 2)), Ok(Ordering::Equal));
        let s21 = Scalar::quad(21, Rational::zero(), Rational::one());
        assert_eq!(compare(&s21, &Scalar::int(5)), Ok(Ordering::Less));
        let s2 = Scalar::sqrt_of_int(2);
        assert!(matches!(compare(&s2, &s21), Err(ScalarError::FieldMismatch { .. })));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(c0().to_decimal(12), "0.147247476834");
        assert_eq!(Scalar::ratio(-1, 3).to_decimal(4), "-0.3333");
        assert_eq!(Scalar::int(7).to_decimal(2), "7.00");
        assert_eq!((-c0()).to_decimal(3), "-0.147");
    }

    #[test]
    fn parse_both_encodings() {
        assert_eq!(parse_scalar("(9-sqrt(21))/30").unwrap(), c0());
        assert_eq!(parse_scalar("3/10 + -1/30*sqrt(21)").unwrap(), c0());
        assert_eq!(c0().to_sum_form(), "3/10 + -1/30*sqrt(21)");
        assert_eq!(parse_scalar(&c0().to_sum_form()).unwrap(), c0());
        assert_eq!(parse_scalar("-7/4").unwrap(), Scalar::ratio(-7, 4));
        assert_eq!(parse_scalar("sqrt(12)").unwrap(), Scalar::quad(3, Rational::zero(), Rational::from(2)));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("sqrt(2)+sqrt(3)").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn sqrt_inside_quadratic_field() {
        // (1 + sqrt 21)^2 = 22 + 2 sqrt 21
        let x = Scalar::quad(21, Rational::from(22), Rational::from(2));
        let r = x.sqrt_exact().unwrap();
        assert_eq!(&r * &r, x);
        // (2 sqrt 3 + 1)^2 = 13 + 4 sqrt 3
        let y = Scalar::quad(3, Rational::from(13), Rational::from(4));
        let r = y.sqrt_exact().unwrap();
        assert_eq!(&r * &r, y);
        assert_eq!(Scalar::sqrt_of_int(21).sqrt_exact(), Err(ScalarError::NotQuadratic));
    }

    #[test]
    fn floors_and_separating_rationals() {
        assert_eq!(c0().floor_scaled(3), BigInt::from(147));
        assert_eq!((-c0()).floor_scaled(3), BigInt::from(-148));
        assert_eq!(Scalar::ratio(-3, 2).floor_scaled(0), BigInt::from(-2));
        let hi = Scalar::ratio(1473, 10000);
        let q = rational_between(&c0(), &hi).unwrap();
        assert!(Scalar::from(q.clone()) > c0() && Scalar::from(q) < hi);
    }

    #[test]
    fn square_free_parts() {
        let (s, d) = Rational::new(84, 1).square_free_decomposition();
        assert_eq!((s, d), (Rational::from(2), 21));
        let (s, d) = Rational::new(3, 8).square_free_decomposition();
        // 3/8 = 24/64 = (2/8)^2 * 6
        assert_eq!((s, d), (Rational::new(1, 4), 6));
    }
}
