//! Endomorphisms of the standard plane, with the distinguished units
//! `id`, `J` (quarter turn), `A` (reflection across the first axis) and
//! `B` (reflection swapping the axes).
//!
//! These four matrices form an orthonormal basis of all plane
//! endomorphisms for the half-trace pairing [`trace_inner`]; the last
//! three span the traceless part. The span of the two reflections is a
//! plane `Sigma` on which the half-commutator paired against `J` induces
//! an area form ([`omega_sigma`]).
//!
//! Two different products live on this four-dimensional space:
//!
//! * ordinary composition ([`Mul`] on [`Endo2`]) — under which the
//!   reflections square to `+id`, so the unit table is *not* the
//!   quaternion table (see [`composition_table_differences`]);
//! * the transported quaternion product [`hsp_product`], which carries
//!   `id, J, A, B` to the quaternion units `e, i, j, k`; its cross part
//!   agrees with the half-commutator exactly on `Sigma`, but globally the
//!   half-commutator is *not* an admissible cross product (it makes the
//!   dot/cross formula non-associative — a fact the tests exhibit).

use crate::process::{ProcessKind, Sign, PROCESS_TABLE};
use crate::quaternion::{Quaternion, Vector3};
use crate::scalars::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndfError {
    #[error("argument lies outside the reflection plane (nonzero trace or skew part)")]
    NotInSigma,
}

/// Point of the standard plane (column vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn e1() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn e2() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, rhs: &Self) -> Rational {
        &self.x * &rhs.x + &self.y * &rhs.y
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.x * c, &self.y * c)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

/// Endomorphism of the plane: a 2x2 rational matrix acting on column
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Endo2 {
    /// Row-major entries `m[row][col]`.
    pub m: [[Rational; 2]; 2],
}

impl Endo2 {
    pub fn new(m11: Rational, m12: Rational, m21: Rational, m22: Rational) -> Self {
        Self { m: [[m11, m12], [m21, m22]] }
    }

    /// Convenience constructor from integer entries, row-major.
    pub fn from_ints(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Self::new(
            Rational::from_int(m11),
            Rational::from_int(m12),
            Rational::from_int(m21),
            Rational::from_int(m22),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    /// The quarter-turn `J`: sends `e1 -> -e2` and `e2 -> e1` (squares to
    /// `-id`).
    pub fn unit_j() -> Self {
        Self::from_ints(0, 1, -1, 0)
    }

    /// The reflection `A` across the first axis.
    pub fn unit_a() -> Self {
        Self::from_ints(1, 0, 0, -1)
    }

    /// The reflection `B` swapping the two axes.
    pub fn unit_b() -> Self {
        Self::from_ints(0, 1, 1, 0)
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(
            &self.m[0][0] * &v.x + &self.m[0][1] * &v.y,
            &self.m[1][0] * &v.x + &self.m[1][1] * &v.y,
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            self.m[0][0].clone(),
            self.m[1][0].clone(),
            self.m[0][1].clone(),
            self.m[1][1].clone(),
        )
    }

    pub fn det(&self) -> Rational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn trace(&self) -> Rational {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            &self.m[0][0] * c,
            &self.m[0][1] * c,
            &self.m[1][0] * c,
            &self.m[1][1] * c,
        )
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let inv = d.recip().expect("nonzero determinant");
        Some(Self::new(
            &self.m[1][1] * &inv,
            -&(&self.m[0][1] * &inv),
            -&(&self.m[1][0] * &inv),
            &self.m[0][0] * &inv,
        ))
    }

    pub fn is_symmetric(&self) -> bool {
        self.m[0][1] == self.m[1][0]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.m[0][1] == -&self.m[1][0] && self.m[0][0].is_zero() && self.m[1][1].is_zero()
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Rational::is_zero)
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn half_commutator(&self, rhs: &Self) -> Self {
        self.commutator(rhs).scale(&Rational::of(1, 2))
    }
}

impl fmt::Display for Endo2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl fmt::Debug for Endo2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Endo2 {
    type Output = Endo2;
    fn add(self, rhs: &Endo2) -> Endo2 {
        Endo2::new(
            &self.m[0][0] + &rhs.m[0][0],
            &self.m[0][1] + &rhs.m[0][1],
            &self.m[1][0] + &rhs.m[1][0],
            &self.m[1][1] + &rhs.m[1][1],
        )
    }
}

impl Sub for &Endo2 {
    type Output = Endo2;
    fn sub(self, rhs: &Endo2) -> Endo2 {
        self + &(-rhs)
    }
}

impl Neg for &Endo2 {
    type Output = Endo2;
    fn neg(self) -> Endo2 {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &Endo2 {
    type Output = Endo2;
    /// Composition (matrix product).
    fn mul(self, rhs: &Endo2) -> Endo2 {
        let mut out = Endo2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] =
                    &self.m[r][0] * &rhs.m[0][c] + &self.m[r][1] * &rhs.m[1][c];
            }
        }
        out
    }
}

impl Add for Endo2 {
    type Output = Endo2;
    fn add(self, rhs: Endo2) -> Endo2 {
        &self + &rhs
    }
}

impl Sub for Endo2 {
    type Output = Endo2;
    fn sub(self, rhs: Endo2) -> Endo2 {
        &self - &rhs
    }
}

impl Neg for Endo2 {
    type Output = Endo2;
    fn neg(self) -> Endo2 {
        -&self
    }
}

impl Mul for Endo2 {
    type Output = Endo2;
    fn mul(self, rhs: Endo2) -> Endo2 {
        &self * &rhs
    }
}

/// Half-trace pairing `<X, Y> = tr(X Y^T) / 2`, under which
/// `id, J, A, B` are orthonormal.
pub fn trace_inner(x: &Endo2, y: &Endo2) -> Rational {
    (x * &y.transpose()).trace() * Rational::of(1, 2)
}

/// The four distinguished unit endomorphisms, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndfUnit {
    Id,
    J,
    A,
    B,
}

impl EndfUnit {
    pub const ALL: [EndfUnit; 4] = [EndfUnit::Id, EndfUnit::J, EndfUnit::A, EndfUnit::B];

    pub fn matrix(self) -> Endo2 {
        match self {
            EndfUnit::Id => Endo2::identity(),
            EndfUnit::J => Endo2::unit_j(),
            EndfUnit::A => Endo2::unit_a(),
            EndfUnit::B => Endo2::unit_b(),
        }
    }

    pub fn index(self) -> usize {
        match self {
            EndfUnit::Id => 0,
            EndfUnit::J => 1,
            EndfUnit::A => 2,
            EndfUnit::B => 3,
        }
    }
}

impl fmt::Display for EndfUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndfUnit::Id => write!(f, "id"),
            EndfUnit::J => write!(f, "J"),
            EndfUnit::A => write!(f, "A"),
            EndfUnit::B => write!(f, "B"),
        }
    }
}

/// Recognize a matrix as `+u` or `-u` for a distinguished unit `u`.
pub fn identify_unit(m: &Endo2) -> Option<(Sign, EndfUnit)> {
    for unit in EndfUnit::ALL {
        let mat = unit.matrix();
        if *m == mat {
            return Some((Sign::Plus, unit));
        }
        if *m == -&mat {
            return Some((Sign::Minus, unit));
        }
    }
    None
}

/// Compose two distinguished units as matrices and name the result.
pub fn compose_units(x: EndfUnit, y: EndfUnit) -> (Sign, EndfUnit) {
    identify_unit(&(&x.matrix() * &y.matrix()))
        .expect("products of distinguished units are signed distinguished units")
}

/// The composition table of `id, J, A, B`, stored literally.
///
/// `ENDF_TABLE[row][col]` is `row . col` (matrix product). Tests confirm
/// every entry against actual matrix composition.
pub const ENDF_TABLE: [[(Sign, EndfUnit); 4]; 4] = {
    use EndfUnit::{A, B, Id, J};
    use Sign::{Minus, Plus};
    [
        [(Plus, Id), (Plus, J), (Plus, A), (Plus, B)],
        [(Plus, J), (Minus, Id), (Minus, B), (Plus, A)],
        [(Plus, A), (Plus, B), (Plus, Id), (Plus, J)],
        [(Plus, B), (Minus, A), (Minus, J), (Plus, Id)],
    ]
};

/// A cell where the endomorphism composition table and the process
/// composition table disagree (under the correspondence
/// `e, [P0P1], [P0P2], [P1P2] <-> id, J, A, B` in table order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableDifference {
    pub row: usize,
    pub col: usize,
    /// Whether the two entries name corresponding units (and so differ
    /// only in sign).
    pub same_kind: bool,
}

fn process_kind_index(k: ProcessKind) -> usize {
    ProcessKind::ALL
        .iter()
        .position(|&x| x == k)
        .expect("every kind appears in the canonical order")
}

/// Compare the two stored composition tables cell by cell.
///
/// The four-element structures have the same multiplication almost
/// everywhere; the exceptions are exactly the four cells where both
/// factors are reflections (`A` or `B`), and there the entries differ in
/// sign only: reflections square to `+id` as matrices but the
/// corresponding exchanges square to `-e`.
pub fn composition_table_differences() -> Vec<TableDifference> {
    let mut out = Vec::new();
    for row in 0..4 {
        for col in 0..4 {
            let (ps, pk) = PROCESS_TABLE[row][col];
            let (es, ek) = ENDF_TABLE[row][col];
            let same_kind = process_kind_index(pk) == ek.index();
            if ps != es || !same_kind {
                out.push(TableDifference { row, col, same_kind });
            }
        }
    }
    out
}

/// Decomposition of a plane endomorphism over the orthonormal basis
/// `id, J, A, B`: `M = t*id + j*J + a*A + b*B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndfDecomposition {
    pub t: Rational,
    pub j: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl EndfDecomposition {
    pub fn recompose(&self) -> Endo2 {
        &(&Endo2::identity().scale(&self.t) + &Endo2::unit_j().scale(&self.j))
            + &(&Endo2::unit_a().scale(&self.a) + &Endo2::unit_b().scale(&self.b))
    }
}

impl fmt::Display for EndfDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: [(&Rational, &str); 4] =
            [(&self.t, ""), (&self.j, "J"), (&self.a, "A"), (&self.b, "B")];
        let mut lead = true;
        for (c, name) in parts {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if lead {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                lead = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        if lead {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Coordinates of `M` over the orthonormal basis `id, J, A, B`
/// (computable either by the explicit entry formulas or by pairing with
/// [`trace_inner`]; both give the same answer).
pub fn decompose_endf(m: &Endo2) -> EndfDecomposition {
    let half = Rational::of(1, 2);
    EndfDecomposition {
        t: (&m.m[0][0] + &m.m[1][1]) * &half,
        j: (&m.m[0][1] - &m.m[1][0]) * &half,
        a: (&m.m[0][0] - &m.m[1][1]) * &half,
        b: (&m.m[0][1] + &m.m[1][0]) * &half,
    }
}

/// The element `a*A + b*B` of the reflection plane `Sigma`.
pub fn sigma(a: &Rational, b: &Rational) -> Endo2 {
    &Endo2::unit_a().scale(a) + &Endo2::unit_b().scale(b)
}

/// Whether a matrix lies in the reflection plane `Sigma` (symmetric and
/// traceless: no `id` and no `J` component).
pub fn is_in_sigma(m: &Endo2) -> bool {
    m.is_traceless() && m.is_symmetric()
}

/// Area form of the reflection plane `Sigma`, induced by the
/// half-commutator paired against the quarter-turn:
/// `omega(X, Y) = <[X, Y]/2, J>`.
///
/// Both arguments must lie in `Sigma`; there the form is the standard
/// area form in `A, B` coordinates:
/// `omega(sigma(a,b), sigma(a',b')) = a b' - b a'`, so in particular
/// `omega(A, B) = 1`.
pub fn omega_sigma(x: &Endo2, y: &Endo2) -> Result<Rational, EndfError> {
    if !is_in_sigma(x) || !is_in_sigma(y) {
        return Err(EndfError::NotInSigma);
    }
    Ok(trace_inner(&x.half_commutator(y), &Endo2::unit_j()))
}

/// View an endomorphism as a quaternion through the orthonormal basis:
/// `t*id + j*J + a*A + b*B -> t*e + j*i + a*j + b*k`.
pub fn endf_to_quaternion(m: &Endo2) -> Quaternion {
    let d = decompose_endf(m);
    Quaternion::new(d.t, Vector3::new(d.j, d.a, d.b))
}

/// Inverse of [`endf_to_quaternion`].
pub fn quaternion_to_endf(q: &Quaternion) -> Endo2 {
    EndfDecomposition {
        t: q.s.clone(),
        j: q.v.x.clone(),
        a: q.v.y.clone(),
        b: q.v.z.clone(),
    }
    .recompose()
}

/// The quaternion product transported onto plane endomorphisms through
/// `id, J, A, B <-> e, i, j, k`.
///
/// This is the dot/cross product formula over the traceless part with the
/// half-trace metric and the cross product of the *oriented orthonormal
/// frame* `(J, A, B)`; the half-commutator agrees with that cross product
/// on the reflection plane `Sigma` but not globally (it fails on pairs
/// involving `J`), which is why the half-commutator itself cannot serve
/// as the cross product here.
pub fn hsp_product(x: &Endo2, y: &Endo2) -> Endo2 {
    quaternion_to_endf(&(&endf_to_quaternion(x) * &endf_to_quaternion(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::SignedProcess;

    #[test]
    fn unit_matrices_and_actions() {
        let j = Endo2::unit_j();
        assert_eq!(j.apply(&Vec2::e1()), -&Vec2::e2());
        assert_eq!(j.apply(&Vec2::e2()), Vec2::e1());
        assert_eq!(&j * &j, -&Endo2::identity());
        assert!(Endo2::unit_a().is_traceless());
        assert!(Endo2::unit_b().is_traceless());
        assert!(j.is_traceless() && j.is_skew_symmetric());
        assert!(Endo2::unit_a().is_symmetric() && Endo2::unit_b().is_symmetric());
    }

    #[test]
    fn stored_table_matches_matrix_composition() {
        for x in EndfUnit::ALL {
            for y in EndfUnit::ALL {
                assert_eq!(
                    ENDF_TABLE[x.index()][y.index()],
                    compose_units(x, y),
                    "table and composition disagree at {x} . {y}"
                );
            }
        }
    }

    #[test]
    fn frozen_composition_facts() {
        use EndfUnit::{A, B, J};
        assert_eq!(compose_units(J, A), (Sign::Minus, B));
        assert_eq!(compose_units(A, J), (Sign::Plus, B));
        assert_eq!(compose_units(A, B), (Sign::Plus, J));
        assert_eq!(compose_units(B, A), (Sign::Minus, J));
        assert_eq!(compose_units(A, A), (Sign::Plus, EndfUnit::Id));
        assert_eq!(compose_units(B, B), (Sign::Plus, EndfUnit::Id));
        assert_eq!(compose_units(J, J), (Sign::Minus, EndfUnit::Id));
    }

    #[test]
    fn tables_differ_exactly_on_reflection_square() {
        let diffs = composition_table_differences();
        let cells: Vec<(usize, usize)> = diffs.iter().map(|d| (d.row, d.col)).collect();
        assert_eq!(cells, vec![(2, 2), (2, 3), (3, 2), (3, 3)]);
        assert!(
            diffs.iter().all(|d| d.same_kind),
            "all differences are sign-only"
        );
        // Spot-check the head-to-head entries behind the corner cells.
        use EndfUnit::A;
        use ProcessKind::P02;
        let p = SignedProcess::new(Sign::Plus, P02);
        assert_eq!(crate::process::compose(p, p).sign, Sign::Minus);
        assert_eq!(compose_units(A, A).0, Sign::Plus);
    }

    #[test]
    fn basis_is_orthonormal_for_half_trace() {
        for x in EndfUnit::ALL {
            for y in EndfUnit::ALL {
                let expected = if x == y { Rational::one() } else { Rational::zero() };
                assert_eq!(trace_inner(&x.matrix(), &y.matrix()), expected);
            }
        }
    }

    #[test]
    fn decomposition_roundtrip_and_frozen_example() {
        let m = Endo2::from_ints(2, 3, -1, 2);
        let d = decompose_endf(&m);
        assert_eq!(d.t, Rational::from_int(2));
        assert_eq!(d.j, Rational::from_int(2));
        assert_eq!(d.a, Rational::zero());
        assert_eq!(d.b, Rational::one());
        assert_eq!(d.recompose(), m);
        assert_eq!(d.to_string(), "2 + 2*J + B");
        // Decomposition agrees with pairing against the basis.
        for unit in EndfUnit::ALL {
            let coeff = trace_inner(&m, &unit.matrix());
            let by_formula = match unit {
                EndfUnit::Id => &d.t,
                EndfUnit::J => &d.j,
                EndfUnit::A => &d.a,
                EndfUnit::B => &d.b,
            };
            assert_eq!(&coeff, by_formula);
        }
    }

    #[test]
    fn traceless_part_is_not_closed_under_composition() {
        let a = Endo2::unit_a();
        assert!(a.is_traceless());
        assert!(!(&a * &a).is_traceless(), "a reflection squares to the identity");
        // It is closed under the half-commutator (a Lie subalgebra).
        for x in [Endo2::unit_j(), Endo2::unit_a(), Endo2::unit_b()] {
            for y in [Endo2::unit_j(), Endo2::unit_a(), Endo2::unit_b()] {
                assert!(x.half_commutator(&y).is_traceless());
            }
        }
    }

    #[test]
    fn area_form_on_reflection_plane() {
        let a = Endo2::unit_a();
        let b = Endo2::unit_b();
        assert_eq!(omega_sigma(&a, &b).unwrap(), Rational::one());
        assert_eq!(omega_sigma(&b, &a).unwrap(), Rational::from_int(-1));
        assert_eq!(omega_sigma(&a, &a).unwrap(), Rational::zero());
        // omega(2A + B, A - B) = 2*(-1) - 1*1 = -3.
        let x = sigma(&Rational::from_int(2), &Rational::one());
        let y = sigma(&Rational::one(), &Rational::from_int(-1));
        assert_eq!(omega_sigma(&x, &y).unwrap(), Rational::from_int(-3));
        // General coordinates.
        let x = sigma(&Rational::from_int(2), &Rational::from_int(5));
        let y = sigma(&Rational::from_int(-1), &Rational::of(1, 2));
        assert_eq!(omega_sigma(&x, &y).unwrap(), Rational::from_int(6));
        // On Sigma the half-commutator IS the cross part: [X, Y]/2 = omega * J.
        assert_eq!(
            x.half_commutator(&y),
            Endo2::unit_j().scale(&Rational::from_int(6))
        );
        // Arguments outside Sigma are rejected.
        assert_eq!(
            omega_sigma(&Endo2::unit_j(), &a),
            Err(EndfError::NotInSigma)
        );
        assert_eq!(
            omega_sigma(&a, &Endo2::identity()),
            Err(EndfError::NotInSigma)
        );
        assert!(is_in_sigma(&x) && !is_in_sigma(&Endo2::unit_j()));
    }

    #[test]
    fn transported_cross_is_negated_transposed_half_commutator() {
        // Global law on the traceless part: the cross part of the
        // transported quaternion product equals -([X, Y]/2)^T. On Sigma
        // the half-commutator is skew (a multiple of J), so the transpose
        // twist disappears there — which is exactly why the two candidate
        // cross products agree on Sigma and nowhere else.
        let samples = [
            Endo2::unit_j(),
            Endo2::unit_a(),
            Endo2::unit_b(),
            Endo2::from_ints(1, 2, 3, -1),
            Endo2::from_ints(0, 5, -2, 0),
            Endo2::new(
                Rational::of(1, 2),
                Rational::of(-3, 4),
                Rational::from_int(2),
                Rational::of(-1, 2),
            ),
        ];
        for x in &samples {
            for y in &samples {
                assert!(x.is_traceless() && y.is_traceless());
                // Cross part = product minus the scalar (identity) part.
                let prod = hsp_product(x, y);
                let cross = &prod - &Endo2::identity().scale(&-trace_inner(x, y));
                assert_eq!(cross, -&x.half_commutator(y).transpose());
            }
        }
    }

    #[test]
    fn half_commutator_cross_breaks_associativity() {
        // Using the half-commutator as the cross product in the dot/cross
        // product formula fails associativity on (J, A, B).
        let naive_mul = |x: &Endo2, y: &Endo2| -> Endo2 {
            let (dx, dy) = (decompose_endf(x), decompose_endf(y));
            let xt = Endo2::identity().scale(&dx.t);
            let yt = Endo2::identity().scale(&dy.t);
            let xu = x - &xt;
            let yu = y - &yt;
            let scalar = &dx.t * &dy.t - trace_inner(&xu, &yu);
            &(&Endo2::identity().scale(&scalar)
                + &(&yu.scale(&dx.t) + &xu.scale(&dy.t)))
                + &xu.half_commutator(&yu)
        };
        let (j, a, b) = (Endo2::unit_j(), Endo2::unit_a(), Endo2::unit_b());
        let left = naive_mul(&naive_mul(&j, &a), &b);
        let right = naive_mul(&j, &naive_mul(&a, &b));
        assert_eq!(left, Endo2::identity());
        assert_eq!(right, -&Endo2::identity());
        assert_ne!(left, right);
    }

    #[test]
    fn transported_product_is_quaternionic() {
        // Units map as claimed, and the product is associative and unital.
        assert_eq!(endf_to_quaternion(&Endo2::identity()), Quaternion::e());
        assert_eq!(endf_to_quaternion(&Endo2::unit_j()), Quaternion::i());
        assert_eq!(endf_to_quaternion(&Endo2::unit_a()), Quaternion::j());
        assert_eq!(endf_to_quaternion(&Endo2::unit_b()), Quaternion::k());
        // i * j = k transports to J * A = B under hsp (contrast J . A = -B).
        assert_eq!(
            hsp_product(&Endo2::unit_j(), &Endo2::unit_a()),
            Endo2::unit_b()
        );
        assert_eq!(&Endo2::unit_j() * &Endo2::unit_a(), -&Endo2::unit_b());
        // Reflections square to -id under hsp but +id under composition.
        let a = Endo2::unit_a();
        assert_eq!(hsp_product(&a, &a), -&Endo2::identity());
        assert_eq!(&a * &a, Endo2::identity());
        // Associativity + multiplicativity on a grid of elements.
        let grid: Vec<Endo2> = (-1..=1)
            .flat_map(|t| {
                (-1..=1).map(move |j| {
                    &Endo2::identity().scale(&Rational::from_int(t))
                        + &Endo2::unit_j().scale(&Rational::from_int(j))
                })
            })
            .chain([Endo2::unit_a(), Endo2::unit_b(), Endo2::from_ints(1, 2, 3, 4)])
            .collect();
        for x in &grid {
            assert_eq!(hsp_product(&Endo2::identity(), x), *x);
            assert_eq!(hsp_product(x, &Endo2::identity()), *x);
            assert_eq!(quaternion_to_endf(&endf_to_quaternion(x)), *x);
            for y in &grid {
                // Transport is multiplicative by construction; check the
                // roundtrip is faithful.
                assert_eq!(
                    endf_to_quaternion(&hsp_product(x, y)),
                    &endf_to_quaternion(x) * &endf_to_quaternion(y)
                );
                for z in &grid {
                    assert_eq!(
                        hsp_product(&hsp_product(x, y), z),
                        hsp_product(x, &hsp_product(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn transported_product_clifford_relation_on_sigma() {
        let x = sigma(&Rational::from_int(3), &Rational::of(-1, 2));
        let y = sigma(&Rational::from_int(1), &Rational::from_int(4));
        let anticommutator = &hsp_product(&x, &y) + &hsp_product(&y, &x);
        let expected = Endo2::identity().scale(&(trace_inner(&x, &y) * Rational::from_int(-2)));
        assert_eq!(anticommutator, expected);
        // Cross part on Sigma agrees with the half-commutator.
        let cross = &hsp_product(&x, &y) - &Endo2::identity().scale(&-trace_inner(&x, &y));
        assert_eq!(cross, x.half_commutator(&y));
    }

    #[test]
    fn matrix_utilities() {
        let m = Endo2::from_ints(1, 2, 3, 4);
        assert_eq!(m.det(), Rational::from_int(-2));
        assert_eq!(m.trace(), Rational::from_int(5));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Endo2::identity());
        assert_eq!(&inv * &m, Endo2::identity());
        assert_eq!(Endo2::from_ints(1, 2, 2, 4).inverse(), None);
        assert_eq!(m.transpose(), Endo2::from_ints(1, 3, 2, 4));
        assert_eq!(
            m.apply(&Vec2::new(Rational::from_int(5), Rational::from_int(-1))),
            Vec2::new(Rational::from_int(3), Rational::from_int(11))
        );
        assert_eq!(m.to_string(), "[[1, 2], [3, 4]]");
    }
}
