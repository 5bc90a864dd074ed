//! Quantization of quadratic polynomials: an exact symbolic Weyl algebra
//! with the relation `p*q = q*p - i`, the quantization map sending a
//! quadratic `f` to the anti-skew generator `-i` times its symmetrically
//! ordered operator, and a finite Fock (oscillator number basis)
//! realization for numeric spectra.
//!
//! Conventions, all at `hbar = 1`:
//! - `Q(q^2/2) = -i*qhat^2/2`, `Q(p^2/2) = -i*phat^2/2`,
//!   `Q(q*p) = -i*(qhat*phat + phat*qhat)/2`, extended linearly.
//! - `Q(f)` is anti-Hermitian under the formal adjoint (reverse factor
//!   order, conjugate coefficients); the Hermitian observable is
//!   `i*Q(f)`, exposed as [`hermitian_part`] and realized numerically by
//!   [`fock_observable`]. Writing the image of `Q` itself as Hermitian
//!   is incompatible with the exact commutator identity
//!   `Q({f,g}) = [Q(f), Q(g)]` (a commutator of Hermitian operators is
//!   anti-Hermitian); this library keeps the identity exact and
//!   documents the convention.
//! - Truncation to `N` oscillator levels leaves `[qhat_N, phat_N]` equal
//!   to `i` times the identity except in the last diagonal entry, so all
//!   numeric commutator checks restrict to the top-left
//!   `(N-2) x (N-2)` block.

use crate::poisson::{pbracket, QuadPoly};
use crate::scalars::{ComplexF64, GaussianRational, Rational};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Cap on the total matrix dimension `N^n` of a tensor realization.
pub const FOCK_SIZE_CAP: usize = 4096;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_NORM: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantizeError {
    #[error("Fock dimension {got} is too small (need at least 3 levels)")]
    DimensionTooSmall { got: usize },
    #[error("tensor realization of size {size} exceeds the cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("at least one tensor slot is required")]
    ZeroSlots,
    #[error("eigenvalue input is not Hermitian (max |M - M'| = {defect})")]
    NotHermitian { defect: String },
    #[error("Jacobi eigenvalue iteration did not converge in {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
}

// ---------------------------------------------------------------------------
// Symbolic Weyl algebra
// ---------------------------------------------------------------------------

/// Element of the Weyl algebra with Gaussian-rational coefficients, kept
/// in normal order: a finite sum of terms `c * qhat^m * phat^n` indexed
/// by the exponent pair `(m, n)`. Zero coefficients are never stored, so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity operator `1`.
    pub fn one() -> Self {
        Self::from_term(0, 0, GaussianRational::one())
    }

    /// The position operator `qhat`.
    pub fn q_hat() -> Self {
        Self::from_term(1, 0, GaussianRational::one())
    }

    /// The momentum operator `phat`.
    pub fn p_hat() -> Self {
        Self::from_term(0, 1, GaussianRational::one())
    }

    /// The single normal-ordered term `c * qhat^m * phat^n`.
    pub fn from_term(m: u32, n: u32, c: GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, n, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), GaussianRational> {
        &self.terms
    }

    /// Adds `c * qhat^m * phat^n` in place.
    pub fn add_term(&mut self, m: u32, n: u32, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((m, n)).or_insert_with(GaussianRational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), c) in &rhs.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Left-multiplies by `qhat^m` (trivial in normal order).
    fn shift_q(&self, m: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + m, b), c.clone())).collect(),
        }
    }

    /// Right-multiplies by `phat^n` (trivial in normal order).
    fn shift_p(&self, n: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a, b + n), c.clone())).collect(),
        }
    }

    /// The formal adjoint: reverses factor order and conjugates
    /// coefficients, then renormal-orders. A term `c * qhat^m * phat^n`
    /// becomes `conj(c) * phat^n * qhat^m`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            out = out.add(&reorder(n, m).scale(&c.conj()));
        }
        out
    }
}

/// Normal-ordered form of `phat^n * qhat^m`, by the recurrence
/// `phat^n qhat^m = (phat^(n-1) qhat^m) phat - i*m*(phat^(n-1) qhat^(m-1))`
/// coming from one application of `phat qhat = qhat phat - i`.
fn reorder(n: u32, m: u32) -> WeylElement {
    if n == 0 || m == 0 {
        return WeylElement::from_term(m, n, GaussianRational::one());
    }
    let head = reorder(n - 1, m).shift_p(1);
    let tail = reorder(n - 1, m - 1)
        .scale(&GaussianRational::new(Rational::zero(), -Rational::from_int(i64::from(m))));
    head.add(&tail)
}

/// The associative Weyl product: concatenates monomials and rewrites
/// `phat^a qhat^b` blocks into normal order via `phat qhat = qhat phat - i`.
pub fn weyl_mul(x: &WeylElement, y: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero();
    for (&(m1, n1), c1) in x.terms() {
        for (&(m2, n2), c2) in y.terms() {
            // qhat^m1 phat^n1 qhat^m2 phat^n2
            //   = qhat^m1 * reorder(n1, m2) * phat^n2.
            let middle = reorder(n1, m2).shift_q(m1).shift_p(n2);
            out = out.add(&middle.scale(&(c1 * c2)));
        }
    }
    out
}

/// `x*y - y*x` in the Weyl algebra.
pub fn weyl_commutator(x: &WeylElement, y: &WeylElement) -> WeylElement {
    weyl_mul(x, y).sub(&weyl_mul(y, x))
}

/// The quantization map on quadratics: `-i` times the symmetrically
/// ordered operator of `f`. On generators,
/// `q^2 -> -i*qhat^2`, `p^2 -> -i*phat^2`,
/// `q*p -> -i*(qhat*phat + phat*qhat)/2 = -i*qhat*phat - 1/2`,
/// extended linearly. The output is anti-Hermitian and satisfies the
/// exact commutator identity checked by [`verify_poisson_commutator`].
pub fn weyl_quantize(f: &QuadPoly) -> WeylElement {
    let minus_i = GaussianRational::new(Rational::zero(), Rational::from_int(-1));
    let mut out = WeylElement::zero();
    out.add_term(2, 0, minus_i.scale(&f.cqq));
    out.add_term(0, 2, minus_i.scale(&f.cpp));
    // (qhat*phat + phat*qhat)/2 = qhat*phat - i/2 in normal order.
    out.add_term(1, 1, minus_i.scale(&f.cqp));
    out.add_term(0, 0, GaussianRational::from_rational(-&(&f.cqp * &Rational::of(1, 2))));
    out
}

/// The Hermitian observable `i * Q(f)` attached to a quadratic: the
/// symmetrically ordered operator of `f` itself (formally self-adjoint).
pub fn hermitian_part(f: &QuadPoly) -> WeylElement {
    weyl_quantize(f).scale(&GaussianRational::i())
}

/// Exact witness for the commutator identity: computes
/// `Q({f,g}) - [Q(f), Q(g)]` in the Weyl algebra and returns whether it
/// vanishes together with the difference element.
pub fn verify_poisson_commutator(f: &QuadPoly, g: &QuadPoly) -> (bool, WeylElement) {
    let lhs = weyl_quantize(&pbracket(f, g));
    let rhs = weyl_commutator(&weyl_quantize(f), &weyl_quantize(g));
    let diff = rhs.sub(&lhs);
    (diff.is_zero(), diff)
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut lead = true;
        for (&(m, n), c) in &self.terms {
            let mut factors = Vec::new();
            match m {
                0 => {}
                1 => factors.push("q".to_string()),
                _ => factors.push(format!("q^{m}")),
            }
            match n {
                0 => {}
                1 => factors.push("p".to_string()),
                _ => factors.push(format!("p^{n}")),
            }
            // Render the coefficient, pulling a leading sign out when it
            // is purely real or purely imaginary.
            let (sign_minus, coeff_text) = if c.im.is_zero() {
                (c.re.is_negative(), {
                    let mag = c.re.abs();
                    if mag.is_one() && !factors.is_empty() {
                        String::new()
                    } else {
                        mag.to_string()
                    }
                })
            } else if c.re.is_zero() {
                (c.im.is_negative(), {
                    let mag = c.im.abs();
                    if mag.is_one() { "i".to_string() } else { format!("{mag}*i") }
                })
            } else {
                (false, format!("({c})"))
            };
            if lead {
                if sign_minus {
                    write!(f, "-")?;
                }
                lead = false;
            } else if sign_minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces = Vec::new();
            if !coeff_text.is_empty() {
                pieces.push(coeff_text);
            }
            pieces.extend(factors);
            if pieces.is_empty() {
                pieces.push("1".to_string());
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Fock (oscillator number basis) realization
// ---------------------------------------------------------------------------

/// Dense square complex matrix over the truncated oscillator basis
/// `|0>, ..., |N-1>`.
#[derive(Clone, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    entries: Vec<ComplexF64>,
}

impl FockMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![ComplexF64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 0..dim {
            out.set(i, i, ComplexF64::new(1.0, 0.0));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexF64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ComplexF64) {
        self.entries[row * self.dim + col] = value;
    }

    /// The truncated position operator `qhat = (a + a')/sqrt(2)` with
    /// `a|n> = sqrt(n)|n-1>`: real symmetric, couples adjacent levels.
    pub fn position_op(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for n in 1..dim {
            let v = (n as f64).sqrt() / std::f64::consts::SQRT_2;
            out.set(n - 1, n, ComplexF64::new(v, 0.0));
            out.set(n, n - 1, ComplexF64::new(v, 0.0));
        }
        out
    }

    /// The truncated momentum operator `phat = i(a' - a)/sqrt(2)`:
    /// purely imaginary, Hermitian.
    pub fn momentum_op(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for n in 1..dim {
            let v = (n as f64).sqrt() / std::f64::consts::SQRT_2;
            out.set(n - 1, n, ComplexF64::new(0.0, -v));
            out.set(n, n - 1, ComplexF64::new(0.0, v));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let mut out = self.clone();
        for (e, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *e += r;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let mut out = self.clone();
        for (e, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *e -= r;
        }
        out
    }

    pub fn scale(&self, c: ComplexF64) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Largest entry magnitude (max norm) over the whole matrix.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude over the top-left `block x block` block.
    pub fn max_abs_block(&self, block: usize) -> f64 {
        let b = block.min(self.dim);
        let mut m: f64 = 0.0;
        for i in 0..b {
            for j in 0..b {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    /// Largest deviation `|M - M'|` from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Kronecker product; the left factor indexes the coarse blocks.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (na, nb) = (self.dim, rhs.dim);
        let mut out = Self::zero(na * nb);
        for i in 0..na {
            for j in 0..na {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..nb {
                    for l in 0..nb {
                        out.set(i * nb + k, j * nb + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for FockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FockMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let e = self.get(i, j);
                    format!("{:+.4}{:+.4}i", e.re, e.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<(), QuantizeError> {
    if dim < 3 {
        return Err(QuantizeError::DimensionTooSmall { got: dim });
    }
    Ok(())
}

/// Realizes a normal-ordered Weyl element on `dim` oscillator levels by
/// substituting the truncated `qhat`, `phat` matrices term by term.
pub fn fock_realize(w: &WeylElement, dim: usize) -> Result<FockMatrix, QuantizeError> {
    check_dim(dim)?;
    let max_m = w.terms().keys().map(|&(m, _)| m).max().unwrap_or(0) as usize;
    let max_n = w.terms().keys().map(|&(_, n)| n).max().unwrap_or(0) as usize;
    // Power tables q^0..q^max_m and p^0..p^max_n.
    let mut q_pows = vec![FockMatrix::identity(dim)];
    for _ in 0..max_m {
        let next = q_pows.last().unwrap().mul(&FockMatrix::position_op(dim));
        q_pows.push(next);
    }
    let mut p_pows = vec![FockMatrix::identity(dim)];
    for _ in 0..max_n {
        let next = p_pows.last().unwrap().mul(&FockMatrix::momentum_op(dim));
        p_pows.push(next);
    }
    let mut out = FockMatrix::zero(dim);
    for (&(m, n), c) in w.terms() {
        let c64 = c
            .to_complex_f64()
            .expect("bounded rational coefficients convert to finite doubles");
        out = out.add(&q_pows[m as usize].mul(&p_pows[n as usize]).scale(c64));
    }
    Ok(out)
}

/// The Hermitian observable `i * Q(f)` realized on `dim` levels with the
/// symmetric ordering applied directly to the truncated matrices:
/// `alpha*qhat^2 + beta*phat^2 + gamma*(qhat*phat + phat*qhat)/2`.
///
/// Substituting truncated matrices into the *normal-ordered* form
/// `qhat*phat - i/2` instead would leave an anti-Hermitian defect in the
/// last diagonal entry (the two forms agree as operators but not after
/// truncation), so spectra are always computed from this realization.
pub fn fock_observable(f: &QuadPoly, dim: usize) -> Result<FockMatrix, QuantizeError> {
    check_dim(dim)?;
    let q = FockMatrix::position_op(dim);
    let p = FockMatrix::momentum_op(dim);
    let to_c = |r: &Rational| -> ComplexF64 {
        ComplexF64::new(
            r.to_f64_nearest().expect("bounded rational coefficients convert to finite doubles"),
            0.0,
        )
    };
    let sym = q.mul(&p).add(&p.mul(&q)).scale(ComplexF64::new(0.5, 0.0));
    Ok(q
        .mul(&q)
        .scale(to_c(&f.cqq))
        .add(&p.mul(&p).scale(to_c(&f.cpp)))
        .add(&sym.scale(to_c(&f.cqp))))
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations,
/// ascending. Errors if the input fails the Hermitian pre-check or the
/// sweep budget is exhausted (the off-diagonal Frobenius norm must fall
/// below 1e-12).
pub fn jacobi_eigenvalues(m: &FockMatrix) -> Result<Vec<f64>, QuantizeError> {
    let defect = m.hermitian_defect();
    if defect > 1e-9 {
        return Err(QuantizeError::NotHermitian { defect: format!("{defect:e}") });
    }
    let n = m.dim;
    // Work on the symmetrized copy to erase rounding-level asymmetry.
    let mut a = m.add(&m.dagger()).scale(ComplexF64::new(0.5, 0.0));

    let off_norm = |a: &FockMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) >= JACOBI_OFF_NORM {
        sweeps += 1;
        if sweeps > JACOBI_MAX_SWEEPS {
            return Err(QuantizeError::NonConvergence { sweeps: JACOBI_MAX_SWEEPS });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Phase factor making the pivot real, then a real Jacobi
                // rotation on the (p, q) plane.
                let u = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update: A <- A * U with U e_p = c e_p + s conj(u) e_q,
                // U e_q = -s e_p + c conj(u) e_q.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c + akq * u.conj() * s);
                    a.set(k, q, akp * (-s) + akq * u.conj() * c);
                }
                // Row update: A <- U† * A.
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c + aqk * u * s);
                    a.set(q, k, apk * (-s) + aqk * u * c);
                }
                // Pin the analytically known pivot results to kill
                // rounding residue off the diagonal.
                a.set(p, p, ComplexF64::new(app - t * mag, 0.0));
                a.set(q, q, ComplexF64::new(aqq + t * mag, 0.0));
                a.set(p, q, ComplexF64::new(0.0, 0.0));
                a.set(q, p, ComplexF64::new(0.0, 0.0));
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(eigs)
}

/// Sorted eigenvalues of the Hermitian observable `i * Q(f)` on `dim`
/// oscillator levels.
pub fn spectrum(f: &QuadPoly, dim: usize) -> Result<Vec<f64>, QuantizeError> {
    jacobi_eigenvalues(&fock_observable(f, dim)?)
}

/// Kronecker-product realization over `slots.len()` tensor factors of
/// `dim` levels each: slot `s` contributes the realization of `Q(f_s)`
/// for `Some(f_s)` and the identity for `None` (the unit of the factor
/// algebra maps to the identity operator). A single `Some` slot reduces
/// to `fock_realize(weyl_quantize(f), dim)`.
pub fn tensor_quantize(
    slots: &[Option<QuadPoly>],
    dim: usize,
) -> Result<FockMatrix, QuantizeError> {
    if slots.is_empty() {
        return Err(QuantizeError::ZeroSlots);
    }
    check_dim(dim)?;
    let mut size: usize = 1;
    for _ in slots {
        size = size.saturating_mul(dim);
        if size > FOCK_SIZE_CAP {
            return Err(QuantizeError::SizeCapExceeded { size, cap: FOCK_SIZE_CAP });
        }
    }
    let mut out: Option<FockMatrix> = None;
    for slot in slots {
        let factor = match slot {
            Some(f) => fock_realize(&weyl_quantize(f), dim)?,
            None => FockMatrix::identity(dim),
        };
        out = Some(match out {
            None => factor,
            Some(acc) => acc.kron(&factor),
        });
    }
    Ok(out.expect("at least one slot"))
}
