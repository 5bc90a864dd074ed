//! Symplectic planes over the rationals: area forms, scalar products, and
//! the compatible quarter-turn relating them.
//!
//! A symplectic plane carries a nondegenerate alternating form `omega`
//! (an area form) and a positive scalar product `g`, both given by
//! matrices acting on column vectors: `omega(v, w) = v^T O w` and
//! `g(v, w) = v^T G w`. The two are mediated by an endomorphism `S`
//! defined by `omega(v, w) = g(v, S w)`, i.e. `S = G^{-1} O`. `S` is
//! automatically traceless with positive determinant, so `S^2 = -det(S) id`;
//! after dividing by the normalization `kappa = sqrt(det S)` — which must
//! be rational here, or [`j_from_form`] reports an error — the quotient
//! `J = S / kappa` is a compatible complex-structure quarter-turn:
//! `J^2 = -id` and `omega(Jv, Jw) = omega(v, w)`.
//!
//! In the reverse direction [`scalar_from_form`] builds the scalar
//! product `g(v, w) = omega(J v, w)` from a quarter-turn and the form;
//! chaining the two constructions reproduces the original scalar product
//! scaled by `kappa` (exactly, when `kappa = 1`).
//!
//! [`SymplecticSpace`] is a direct sum of such planes with blockwise
//! operations; [`particle_phase_space`] builds the standard three planes
//! per particle.

use crate::endf::{Endo2, Vec2};
use crate::scalars::Rational;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("an area form must be skew-symmetric")]
    NotSkew,
    #[error("the form is degenerate")]
    Degenerate,
    #[error("a scalar product must be symmetric")]
    NotSymmetric,
    #[error("a scalar product must be positive definite")]
    NotPositiveDefinite,
    #[error("normalization sqrt({0}) is not rational; no rational quarter-turn exists")]
    NonRationalNormalization(Rational),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Nondegenerate alternating form on the plane: `[[0, c], [-c, 0]]` with
/// `c != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm2 {
    matrix: Endo2,
}

impl SymplecticForm2 {
    pub fn new(matrix: Endo2) -> Result<Self, SymplecticError> {
        if !matrix.is_skew_symmetric() {
            return Err(SymplecticError::NotSkew);
        }
        if matrix.det().is_zero() {
            return Err(SymplecticError::Degenerate);
        }
        Ok(Self { matrix })
    }

    /// The form with `omega(e1, e2) = c`.
    pub fn from_coefficient(c: Rational) -> Result<Self, SymplecticError> {
        Self::new(Endo2::new(
            Rational::zero(),
            c.clone(),
            -&c,
            Rational::zero(),
        ))
    }

    /// The standard area form, `omega(e1, e2) = 1`.
    pub fn standard() -> Self {
        Self::from_coefficient(Rational::one()).expect("standard form is admissible")
    }

    pub fn matrix(&self) -> &Endo2 {
        &self.matrix
    }

    /// The value `omega(e1, e2)`.
    pub fn coefficient(&self) -> Rational {
        self.matrix.m[0][1].clone()
    }

    pub fn eval(&self, v: &Vec2, w: &Vec2) -> Rational {
        v.dot(&self.matrix.apply(w))
    }
}

impl fmt::Display for SymplecticForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Positive-definite symmetric bilinear form on the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarProduct2 {
    matrix: Endo2,
}

impl ScalarProduct2 {
    pub fn new(matrix: Endo2) -> Result<Self, SymplecticError> {
        if !matrix.is_symmetric() {
            return Err(SymplecticError::NotSymmetric);
        }
        // Sylvester's criterion for a 2x2 symmetric matrix.
        if !matrix.m[0][0].is_positive() || !matrix.det().is_positive() {
            return Err(SymplecticError::NotPositiveDefinite);
        }
        Ok(Self { matrix })
    }

    /// The standard (identity) scalar product.
    pub fn standard() -> Self {
        Self::new(Endo2::identity()).expect("identity is positive definite")
    }

    pub fn matrix(&self) -> &Endo2 {
        &self.matrix
    }

    pub fn eval(&self, v: &Vec2, w: &Vec2) -> Rational {
        v.dot(&self.matrix.apply(w))
    }
}

impl fmt::Display for ScalarProduct2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// The compatible quarter-turn of a (form, scalar product) pair, together
/// with the normalization it required.
///
/// Solves `omega(v, w) = g(v, S w)` for `S = G^{-1} O`, extracts
/// `kappa = sqrt(det S)` (always positive; rationality is checked), and
/// returns `(J, kappa)` with `J = S / kappa`, so that `J^2 = -id` and
/// `g(v, w) = omega(J v, w) / kappa` — in particular `J` is exactly the
/// quarter-turn reproducing `g` from `omega` when `kappa = 1`.
pub fn j_from_form(
    omega: &SymplecticForm2,
    g: &ScalarProduct2,
) -> Result<(Endo2, Rational), SymplecticError> {
    let g_inv = g
        .matrix()
        .inverse()
        .expect("positive-definite matrices are invertible");
    let s = &g_inv * omega.matrix();
    debug_assert!(s.is_traceless());
    let det = s.det();
    debug_assert!(det.is_positive());
    let kappa = det
        .clone()
        .sqrt()
        .ok_or(SymplecticError::NonRationalNormalization(det))?;
    let j = s.scale(&kappa.recip().expect("kappa is positive"));
    Ok((j, kappa))
}

/// The scalar product `g(v, w) = omega(J v, w)` induced by a quarter-turn
/// compatible with the form; as a matrix, `G = J^T O`.
///
/// Fails if the candidate `j` is not actually compatible (the result must
/// come out symmetric positive definite).
pub fn scalar_from_form(
    j: &Endo2,
    omega: &SymplecticForm2,
) -> Result<ScalarProduct2, SymplecticError> {
    ScalarProduct2::new(&j.transpose() * omega.matrix())
}

/// One plane of a phase space: the admissible pair together with its
/// derived quarter-turn and normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePlane {
    pub omega: SymplecticForm2,
    pub g: ScalarProduct2,
    pub j: Endo2,
    pub kappa: Rational,
}

/// Assembles a plane from an admissible pair, computing its quarter-turn.
pub fn make_phase_plane(
    omega: SymplecticForm2,
    g: ScalarProduct2,
) -> Result<PhasePlane, SymplecticError> {
    let (j, kappa) = j_from_form(&omega, &g)?;
    Ok(PhasePlane { omega, g, j, kappa })
}

/// The standard plane: standard form, standard scalar product.
pub fn standard_plane() -> PhasePlane {
    make_phase_plane(SymplecticForm2::standard(), ScalarProduct2::standard())
        .expect("the standard pair is admissible")
}

/// Conjugates the standard plane by an invertible frame `p`, scaling the
/// form by `kappa`: `G = (P P^T)^{-1}` and `O = kappa P^{-T} J0 P^{-1}`.
///
/// Returns `None` when `p` is singular or `kappa` is not positive. The
/// resulting pair is always admissible, with quarter-turn `P J0 P^{-1}`
/// and normalization exactly `kappa` — a convenient generator of
/// nontrivial test cases.
pub fn admissible_pair_from_frame(
    p: &Endo2,
    kappa: &Rational,
) -> Option<(SymplecticForm2, ScalarProduct2, Endo2)> {
    if !kappa.is_positive() {
        return None;
    }
    let p_inv = p.inverse()?;
    let j0 = Endo2::unit_j();
    let g = (p * &p.transpose()).inverse().expect("p is invertible");
    let omega_matrix = (&(&p_inv.transpose() * &j0) * &p_inv).scale(kappa);
    let omega = SymplecticForm2::new(omega_matrix).expect("conjugated form is admissible");
    let g = ScalarProduct2::new(g).expect("Gram matrices are positive definite");
    let expected_j = &(p * &j0) * &p_inv;
    Some((omega, g, expected_j))
}

/// Direct sum of symplectic planes. Vectors are flat coordinate slices,
/// two consecutive coordinates per plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    pub planes: Vec<PhasePlane>,
}

impl SymplecticSpace {
    pub fn new(planes: Vec<PhasePlane>) -> Self {
        Self { planes }
    }

    /// Total dimension `2n`.
    pub fn dimension(&self) -> usize {
        2 * self.planes.len()
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), SymplecticError> {
        if v.len() != self.dimension() {
            return Err(SymplecticError::DimensionMismatch {
                expected: self.dimension(),
                got: v.len(),
            });
        }
        Ok(())
    }

    fn block(v: &[Rational], i: usize) -> Vec2 {
        Vec2::new(v[2 * i].clone(), v[2 * i + 1].clone())
    }

    /// The direct-sum form: the sum of the blockwise plane forms.
    pub fn omega(&self, v: &[Rational], w: &[Rational]) -> Result<Rational, SymplecticError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut total = Rational::zero();
        for (i, plane) in self.planes.iter().enumerate() {
            total = total + plane.omega.eval(&Self::block(v, i), &Self::block(w, i));
        }
        Ok(total)
    }

    /// The direct-sum scalar product.
    pub fn scalar(&self, v: &[Rational], w: &[Rational]) -> Result<Rational, SymplecticError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut total = Rational::zero();
        for (i, plane) in self.planes.iter().enumerate() {
            total = total + plane.g.eval(&Self::block(v, i), &Self::block(w, i));
        }
        Ok(total)
    }

    /// The blockwise quarter-turn (block diagonal, squares to `-id`).
    pub fn apply_j(&self, v: &[Rational]) -> Result<Vec<Rational>, SymplecticError> {
        self.check_len(v)?;
        let mut out = Vec::with_capacity(v.len());
        for (i, plane) in self.planes.iter().enumerate() {
            let image = plane.j.apply(&Self::block(v, i));
            out.push(image.x);
            out.push(image.y);
        }
        Ok(out)
    }
}

/// Phase space of `particles` point particles in three-dimensional space:
/// one standard plane per spatial degree of freedom, `3 * particles` in
/// all.
pub fn particle_phase_space(particles: usize) -> SymplecticSpace {
    SymplecticSpace::new((0..3 * particles).map(|_| standard_plane()).collect())
}
