//! Rational quaternions in scalar + vector form, and the plane geometry
//! they carry.
//!
//! A quaternion is `s*e + v` with `v` in an oriented Euclidean 3-space.
//! The product is the classical dot/cross form
//!
//! ```text
//! (s1*e + v1)(s2*e + v2) = (s1*s2 - <v1, v2>)*e + s1*v2 + s2*v1 + v1 x v2
//! ```
//!
//! with the right-handed cross product: `cross(E1, E2) = E3`, so the unit
//! vectors along the three axes multiply as the Hamilton units
//! (`i*j = k`, `i*j*k = -e`).
//!
//! The distinguished role of a unit pure quaternion `j` (by default the
//! third axis, [`Vector3::e3`]): left multiplication by `j` rotates its
//! orthogonal tangent plane a quarter turn ([`apply_j`]), which makes the
//! plane a symplectic plane. [`omega_on_tangent`] evaluates that symplectic
//! area form through both of its product expressions and insists they
//! agree.

use crate::scalars::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuaternionError {
    #[error("expected a pure unit vector (got squared norm {0})")]
    NotUnit(Rational),
    #[error("vector must be orthogonal to the distinguished unit j")]
    NotOrthogonal,
    #[error("quaternion is not invertible (zero norm)")]
    NotInvertible,
    #[error("expected a pure quaternion (zero scalar part)")]
    NotPure,
}

/// Vector part of a quaternion: a point of the Euclidean 3-space model.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Vector3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// First axis unit vector (the default `e_q`).
    pub fn e1() -> Self {
        Self::new(Rational::one(), Rational::zero(), Rational::zero())
    }

    /// Second axis unit vector (the default `e_p`).
    pub fn e2() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    /// Third axis unit vector (the default distinguished `j`).
    pub fn e3() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.x * c, &self.y * c, &self.z * c)
    }

    pub fn dot(&self, rhs: &Self) -> Rational {
        &self.x * &rhs.x + &self.y * &rhs.y + &self.z * &rhs.z
    }

    /// Right-handed cross product.
    pub fn cross(&self, rhs: &Self) -> Self {
        Self::new(
            &self.y * &rhs.z - &self.z * &rhs.y,
            &self.z * &rhs.x - &self.x * &rhs.z,
            &self.x * &rhs.y - &self.y * &rhs.x,
        )
    }

    pub fn norm_sqr(&self) -> Rational {
        self.dot(self)
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }
}

impl fmt::Display for Vector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for Vector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Vector3 {
    type Output = Vector3;
    fn add(self, rhs: &Vector3) -> Vector3 {
        Vector3::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: &Vector3) -> Vector3 {
        Vector3::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, rhs: Vector3) -> Vector3 {
        &self + &rhs
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: Vector3) -> Vector3 {
        &self - &rhs
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        -&self
    }
}

/// Quaternion `s*e + v` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub s: Rational,
    pub v: Vector3,
}

impl Quaternion {
    pub fn new(s: Rational, v: Vector3) -> Self {
        Self { s, v }
    }

    pub fn from_scalar(s: Rational) -> Self {
        Self { s, v: Vector3::zero() }
    }

    pub fn from_pure(v: Vector3) -> Self {
        Self { s: Rational::zero(), v }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `e`.
    pub fn e() -> Self {
        Self::from_scalar(Rational::one())
    }

    /// Hamilton unit `i` (first axis).
    pub fn i() -> Self {
        Self::from_pure(Vector3::e1())
    }

    /// Hamilton unit `j` (second axis).
    pub fn j() -> Self {
        Self::from_pure(Vector3::e2())
    }

    /// Hamilton unit `k` (third axis).
    pub fn k() -> Self {
        Self::from_pure(Vector3::e3())
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.v.is_zero()
    }

    pub fn is_pure(&self) -> bool {
        self.s.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.s * c, self.v.scale(c))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.s.clone(), -&self.v)
    }

    /// Squared norm `s^2 + <v, v>`; multiplicative and zero only at zero.
    pub fn norm_sqr(&self) -> Rational {
        &self.s * &self.s + self.v.norm_sqr()
    }

    pub fn inverse(&self) -> Result<Self, QuaternionError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(QuaternionError::NotInvertible);
        }
        let inv = n.recip().expect("nonzero norm");
        Ok(self.conj().scale(&inv))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut lead = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &Rational, unit: &str| -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let mag = c.abs();
            if lead {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            lead = false;
            if unit.is_empty() {
                write!(f, "{mag}")
            } else if mag.is_one() {
                write!(f, "{unit}")
            } else {
                write!(f, "{mag}{unit}")
            }
        };
        term(f, &self.s, "")?;
        term(f, &self.v.x, "i")?;
        term(f, &self.v.y, "j")?;
        term(f, &self.v.z, "k")
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.s + &rhs.s, &self.v + &rhs.v)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.s - &rhs.s, &self.v - &rhs.v)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.s, -&self.v)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    /// The dot/cross product form of the quaternion product.
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let s = &self.s * &rhs.s - self.v.dot(&rhs.v);
        let v = &(&rhs.v.scale(&self.s) + &self.v.scale(&rhs.s)) + &self.v.cross(&rhs.v);
        Quaternion::new(s, v)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        &self + &rhs
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        &self - &rhs
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

fn require_unit_pure(j: &Vector3) -> Result<(), QuaternionError> {
    let n = j.norm_sqr();
    if !n.is_one() {
        return Err(QuaternionError::NotUnit(n));
    }
    Ok(())
}

/// Quarter-turn of the tangent plane of `j`: sends `v` to `j x v`.
///
/// `j` must be a unit vector and `v` must lie in its tangent plane
/// (`<j, v> = 0`). Applying it twice gives `-v`.
pub fn apply_j(j: &Vector3, v: &Vector3) -> Result<Vector3, QuaternionError> {
    require_unit_pure(j)?;
    if !j.dot(v).is_zero() {
        return Err(QuaternionError::NotOrthogonal);
    }
    Ok(j.cross(v))
}

/// The area form of the tangent plane of `j`, evaluated on `v, w`.
///
/// Both product expressions are computed — the scalar part of `<j*v, w>`
/// and of `<j, v*w>` (quaternion products) — and must agree; the common
/// value is returned. `v` and `w` must lie in the tangent plane of the
/// unit vector `j`.
pub fn omega_on_tangent(j: &Vector3, v: &Vector3, w: &Vector3) -> Result<Rational, QuaternionError> {
    require_unit_pure(j)?;
    if !j.dot(v).is_zero() || !j.dot(w).is_zero() {
        return Err(QuaternionError::NotOrthogonal);
    }
    let jq = Quaternion::from_pure(j.clone());
    let vq = Quaternion::from_pure(v.clone());
    let wq = Quaternion::from_pure(w.clone());
    // <j*v, w>: scalar product of two pure quaternions is the negated
    // scalar part of their product.
    let jv = &jq * &vq;
    let first = jv.v.dot(w);
    let second = j.dot(&(&vq * &wq).v);
    assert_eq!(first, second, "the two area-form expressions must coincide");
    Ok(first)
}

/// Conjugation `g a g^-1` restricted to pure quaternions; a rotation of
/// the 3-space, so it preserves the scalar product and maps rational unit
/// vectors to rational unit vectors.
pub fn conjugate_pure(g: &Quaternion, a: &Vector3) -> Result<Vector3, QuaternionError> {
    let inv = g.inverse()?;
    let result = &(g * &Quaternion::from_pure(a.clone())) * &inv;
    debug_assert!(result.is_pure());
    if !result.is_pure() {
        return Err(QuaternionError::NotPure);
    }
    Ok(result.v)
}
