//! Exact scalar types: rationals, Gaussian rationals, and checked
//! conversion to double precision.
//!
//! [`Rational`] wraps an arbitrary-precision reduced fraction: lowest terms,
//! positive denominator, so structural equality is value equality.
//! [`GaussianRational`] is `re + im*i` over [`Rational`] with `i*i = -1`.
//! Everything is eager and exact; the only lossy operation is
//! [`Rational::to_f64_nearest`], which rounds to the nearest double
//! (ties to even) and reports overflow instead of producing infinities.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{BigUint, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Finite complex double, used by the truncated Fock layer.
pub type ComplexF64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value overflows the double-precision range")]
    FloatOverflow,
    #[error("cannot convert a non-finite float to a rational")]
    NonFiniteFloat,
}

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, rejecting a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numer.into(), denom.into())))
    }

    /// Builds `numer/denom` from big integers, rejecting a zero denominator.
    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Shorthand for `new(n, d)` in test and table code where the
    /// denominator is a nonzero literal.
    ///
    /// # Panics
    /// Panics if `d == 0`.
    pub fn of(n: i64, d: i64) -> Self {
        Self::new(n, d).expect("nonzero denominator literal")
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(self.0.pow(exp as i32))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }

    /// Exact nonnegative square root, if this is the square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let root = |n: &BigInt| -> Option<BigInt> {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        let n = root(self.0.numer())?;
        let d = root(self.0.denom())?;
        Some(Self(BigRational::new(n, d)))
    }

    /// Parses an optionally signed decimal integer of any length.
    pub fn from_decimal_str(s: &str) -> Option<Self> {
        let n: BigInt = s.parse().ok()?;
        Some(Self(BigRational::from_integer(n)))
    }

    /// Exact conversion from a finite double (every finite double is a
    /// dyadic rational).
    pub fn from_f64(value: f64) -> Result<Self, ScalarError> {
        BigRational::from_float(value)
            .map(Self)
            .ok_or(ScalarError::NonFiniteFloat)
    }

    /// Nearest double, ties to even. Values whose magnitude rounds to or
    /// beyond `2^1024` report [`ScalarError::FloatOverflow`]; values below
    /// the subnormal range underflow to zero. On the normal range the
    /// result is correctly rounded (error at most half an ulp).
    pub fn to_f64_nearest(&self) -> Result<f64, ScalarError> {
        let numer = self.0.numer();
        if numer.is_zero() {
            return Ok(0.0);
        }
        let negative = numer.is_negative();
        let n = numer.magnitude();
        let d = self.0.denom().magnitude();

        // The value v = n/d satisfies 2^(e-1) < v < 2^(e+1), so scaling by
        // 2^(55-e) yields an integer part q with 55 or 56 significant bits:
        // 53 mantissa bits plus a round bit plus at least one sticky bit.
        let e = n.bits() as i64 - d.bits() as i64;
        let shift = 55 - e;
        let (q, r) = if shift >= 0 {
            (n << shift as u64).div_rem(d)
        } else {
            n.div_rem(&(d << (-shift) as u64))
        };

        let excess = q.bits() - 53; // 2 or 3
        let mut mant = &q >> excess;
        let round_bit = q.bit(excess - 1);
        let low_mask = (BigUint::one() << (excess - 1)) - BigUint::one();
        let sticky = !r.is_zero() || !(&q & &low_mask).is_zero();
        if round_bit && (sticky || mant.is_odd()) {
            mant += 1u32;
        }
        let mut exp2 = -shift + excess as i64;
        if mant.bits() == 54 {
            mant >>= 1;
            exp2 += 1;
        }

        // mant is in [2^52, 2^53); the result is mant * 2^exp2.
        if exp2 + 52 >= 1024 {
            return Err(ScalarError::FloatOverflow);
        }
        let m = mant.to_f64().expect("53-bit integer is exact in f64");
        let signed = if negative { -m } else { m };
        // Keep the intermediate normal so only the final step can round
        // (matters when the result is subnormal).
        let result = if exp2 >= -900 {
            signed * pow2(exp2)
        } else {
            (signed * pow2(-900)) * pow2(exp2 + 900)
        };
        Ok(result)
    }
}

/// `2^e` as a double; exact for the exponents used by `to_f64_nearest`.
fn pow2(e: i64) -> f64 {
    f64::powi(2.0, e as i32)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

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

/// Gaussian rational `re + im*i` with `i*i = -1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `re^2 + im^2`; zero iff the value is zero.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by `i` (a quarter turn).
    pub fn mul_i(&self) -> Self {
        Self { re: -&self.im, im: self.re.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { re: &self.re * c, im: &self.im * c }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(Self { re: num.re.checked_div(&n)?, im: num.im.checked_div(&n)? })
    }

    /// Nearest-double conversion of both parts; errors on overflow.
    pub fn to_complex_f64(&self) -> Result<ComplexF64, ScalarError> {
        Ok(Complex64::new(self.re.to_f64_nearest()?, self.im.to_f64_nearest()?))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &Rational, lead: bool| {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write_im(f, &self.im, true),
            _ => {
                write!(f, "{}", self.re)?;
                write_im(f, &self.im, false)
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! gaussian_ref_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

gaussian_ref_binop!(Add, add);
gaussian_ref_binop!(Sub, sub);
gaussian_ref_binop!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}
