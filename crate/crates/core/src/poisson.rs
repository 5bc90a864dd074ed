//! The Poisson algebra of quadratic polynomials on the phase plane, its
//! matrix realization, and the Clifford-type product it induces.
//!
//! Homogeneous quadratics `a*q^2 + b*p^2 + c*q*p` close under the Poisson
//! bracket `{f, g} = df/dq dg/dp - df/dp dg/dq`. The map [`ham`] sends a
//! quadratic to the (traceless) matrix of its Hamiltonian vector field on
//! column vectors `(q, p)`; it is a Lie-algebra isomorphism:
//! `ham({f, g}) = [ham f, ham g]`.
//!
//! Hamiltonian fields, viewed inside the oriented 3-space that has the
//! phase plane as the tangent plane of the unit `j`, satisfy a cross
//! product identity: *plus* the bracket times `j`,
//!
//! ```text
//! a_f x a_g = {f, g} * j
//! ```
//!
//! pointwise ([`hamfield_cross_at`], and [`hamfield_cross_linear`] for the
//! constant fields of linear polynomials). The sign is part of the
//! verified surface because it is easy to get wrong.
//!
//! Finally, pairs `(scalar, quadratic)` form a four-dimensional algebra
//! under the product pulled back from the transported quaternion product
//! on plane endomorphisms ([`pclifford_mul`]); its cross part is `-1/2`
//! times the Poisson bracket, and the harmonic oscillator squares to the
//! negated unit.

use crate::endf::{decompose_endf, hsp_product, trace_inner, Endo2, Vec2};
use crate::quaternion::Vector3;
use crate::scalars::Rational;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoissonError {
    #[error("only traceless matrices are Hamiltonian field matrices of quadratics")]
    NotTraceless,
}

/// Homogeneous quadratic `cqq*q^2 + cpp*p^2 + cqp*q*p`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    pub cqq: Rational,
    pub cpp: Rational,
    pub cqp: Rational,
}

impl QuadPoly {
    pub fn new(cqq: Rational, cpp: Rational, cqp: Rational) -> Self {
        Self { cqq, cpp, cqp }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `q^2`.
    pub fn q_squared() -> Self {
        Self::new(Rational::one(), Rational::zero(), Rational::zero())
    }

    /// `p^2`.
    pub fn p_squared() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `q*p`.
    pub fn q_times_p() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one())
    }

    /// The harmonic oscillator `(q^2 + p^2) / 2`.
    pub fn harmonic_oscillator() -> Self {
        Self::new(Rational::of(1, 2), Rational::of(1, 2), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cqq.is_zero() && self.cpp.is_zero() && self.cqp.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.cqq * c, &self.cpp * c, &self.cqp * c)
    }

    pub fn eval(&self, at: &Vec2) -> Rational {
        &(&self.cqq * &at.x) * &at.x
            + &(&self.cpp * &at.y) * &at.y
            + &(&self.cqp * &at.x) * &at.y
    }

    /// The polynomial `h -> f(M h)` (precomposition with a linear map).
    pub fn precompose(&self, m: &Endo2) -> Self {
        let (a, b) = (&m.m[0][0], &m.m[0][1]);
        let (c, d) = (&m.m[1][0], &m.m[1][1]);
        let two = Rational::from_int(2);
        Self::new(
            &(&self.cqq * &(a * a)) + &(&self.cpp * &(c * c)) + &self.cqp * &(a * c),
            &(&self.cqq * &(b * b)) + &(&self.cpp * &(d * d)) + &self.cqp * &(b * d),
            &(&self.cqq * &(&two * &(a * b)))
                + &(&self.cpp * &(&two * &(c * d)))
                + &self.cqp * &(&(a * d) + &(b * c)),
        )
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    parts: &[(&Rational, &str)],
) -> fmt::Result {
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

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &[(&self.cqq, "q^2"), (&self.cqp, "q*p"), (&self.cpp, "p^2")])
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: &QuadPoly) -> QuadPoly {
        QuadPoly::new(
            &self.cqq + &rhs.cqq,
            &self.cpp + &rhs.cpp,
            &self.cqp + &rhs.cqp,
        )
    }
}

impl Sub for &QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: &QuadPoly) -> QuadPoly {
        self + &(-rhs)
    }
}

impl Neg for &QuadPoly {
    type Output = QuadPoly;
    fn neg(self) -> QuadPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: QuadPoly) -> QuadPoly {
        &self + &rhs
    }
}

impl Sub for QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: QuadPoly) -> QuadPoly {
        &self - &rhs
    }
}

impl Neg for QuadPoly {
    type Output = QuadPoly;
    fn neg(self) -> QuadPoly {
        -&self
    }
}

/// Linear polynomial `cq*q + cp*p`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearPoly {
    pub cq: Rational,
    pub cp: Rational,
}

impl LinearPoly {
    pub fn new(cq: Rational, cp: Rational) -> Self {
        Self { cq, cp }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate function `q`.
    pub fn q() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// The coordinate function `p`.
    pub fn p() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.cq.is_zero() && self.cp.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.cq * c, &self.cp * c)
    }

    pub fn eval(&self, at: &Vec2) -> Rational {
        &self.cq * &at.x + &self.cp * &at.y
    }
}

impl fmt::Display for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &[(&self.cq, "q"), (&self.cp, "p")])
    }
}

impl fmt::Debug for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LinearPoly {
    type Output = LinearPoly;
    fn add(self, rhs: &LinearPoly) -> LinearPoly {
        LinearPoly::new(&self.cq + &rhs.cq, &self.cp + &rhs.cp)
    }
}

impl Sub for &LinearPoly {
    type Output = LinearPoly;
    fn sub(self, rhs: &LinearPoly) -> LinearPoly {
        self + &(-rhs)
    }
}

impl Neg for &LinearPoly {
    type Output = LinearPoly;
    fn neg(self) -> LinearPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Add for LinearPoly {
    type Output = LinearPoly;
    fn add(self, rhs: LinearPoly) -> LinearPoly {
        &self + &rhs
    }
}

impl Sub for LinearPoly {
    type Output = LinearPoly;
    fn sub(self, rhs: LinearPoly) -> LinearPoly {
        &self - &rhs
    }
}

impl Neg for LinearPoly {
    type Output = LinearPoly;
    fn neg(self) -> LinearPoly {
        -&self
    }
}

/// Matrix of the Hamiltonian vector field of a quadratic on column
/// vectors `(q, p)`: the flow `dq/dt = df/dp`, `dp/dt = -df/dq` is linear,
/// with matrix `[[c, 2b], [-2a, -c]]` for `f = a*q^2 + b*p^2 + c*q*p`.
/// Always traceless.
pub fn ham(f: &QuadPoly) -> Endo2 {
    let two = Rational::from_int(2);
    Endo2::new(
        f.cqp.clone(),
        &f.cpp * &two,
        -&(&f.cqq * &two),
        -&f.cqp,
    )
}

/// Inverse of [`ham`]: recovers the quadratic from a traceless matrix.
pub fn ham_inverse(m: &Endo2) -> Result<QuadPoly, PoissonError> {
    if !m.is_traceless() {
        return Err(PoissonError::NotTraceless);
    }
    let half = Rational::of(1, 2);
    Ok(QuadPoly::new(
        -&(&m.m[1][0] * &half),
        &m.m[0][1] * &half,
        m.m[0][0].clone(),
    ))
}

/// Poisson bracket of two quadratics (again a quadratic).
pub fn pbracket(f: &QuadPoly, g: &QuadPoly) -> QuadPoly {
    let two = Rational::from_int(2);
    let four = Rational::from_int(4);
    QuadPoly::new(
        (&f.cqq * &g.cqp - &f.cqp * &g.cqq) * &two,
        (&f.cqp * &g.cpp - &f.cpp * &g.cqp) * &two,
        (&f.cqq * &g.cpp - &f.cpp * &g.cqq) * &four,
    )
}

/// Poisson bracket of a quadratic with a linear polynomial (a linear
/// polynomial).
pub fn pbracket_quad_linear(f: &QuadPoly, l: &LinearPoly) -> LinearPoly {
    let two = Rational::from_int(2);
    LinearPoly::new(
        &(&f.cqq * &two) * &l.cp - &f.cqp * &l.cq,
        &f.cqp * &l.cp - &(&f.cpp * &two) * &l.cq,
    )
}

/// Poisson bracket of two linear polynomials (a constant).
pub fn pbracket_linear(f: &LinearPoly, g: &LinearPoly) -> Rational {
    &f.cq * &g.cp - &f.cp * &g.cq
}

/// Embeds the phase plane into the oriented 3-space as the tangent plane
/// of the unit `j` (third axis).
pub fn plane_to_space(v: &Vec2) -> Vector3 {
    Vector3::new(v.x.clone(), v.y.clone(), Rational::zero())
}

/// The Hamiltonian field of a quadratic, evaluated at a point.
pub fn hamfield_at(f: &QuadPoly, at: &Vec2) -> Vec2 {
    ham(f).apply(at)
}

/// The (constant) Hamiltonian field of a linear polynomial:
/// `(dl/dp, -dl/dq)`; in particular the field of `q` is `-e_p`.
pub fn hamfield_linear(l: &LinearPoly) -> Vec2 {
    Vec2::new(l.cp.clone(), -&l.cq)
}

/// Cross product identity for constant Hamiltonian fields: computes
/// `a_f x a_g` in the ambient 3-space and returns the coefficient `c`
/// with `a_f x a_g = c * j`. The verified identity is `c = +{f, g}`.
pub fn hamfield_cross_linear(f: &LinearPoly, g: &LinearPoly) -> Rational {
    let cross = plane_to_space(&hamfield_linear(f)).cross(&plane_to_space(&hamfield_linear(g)));
    assert!(
        cross.x.is_zero() && cross.y.is_zero(),
        "a cross product of tangent vectors points along j"
    );
    cross.z
}

/// Pointwise cross product identity for quadratic Hamiltonian fields:
/// the coefficient `c(at)` with `a_f(at) x a_g(at) = c(at) * j`. The
/// verified identity is `c(at) = +{f, g}(at)`.
pub fn hamfield_cross_at(f: &QuadPoly, g: &QuadPoly, at: &Vec2) -> Rational {
    let cross =
        plane_to_space(&hamfield_at(f, at)).cross(&plane_to_space(&hamfield_at(g, at)));
    assert!(
        cross.x.is_zero() && cross.y.is_zero(),
        "a cross product of tangent vectors points along j"
    );
    cross.z
}

/// The `j`-coefficient field of `a_f x a_g`, as a quadratic polynomial in
/// the evaluation point (the cross product of two linear fields is a
/// quadratic multiple of `j`).
pub fn hamfield_cross_field(f: &QuadPoly, g: &QuadPoly) -> QuadPoly {
    // det[ M h | N h ] expanded symbolically for M = ham(f), N = ham(g):
    // rows of M h are (M11 q + M12 p), (M21 q + M22 p), and the j-part is
    // (M h)_x (N h)_y - (M h)_y (N h)_x.
    let (m, n) = (ham(f), ham(g));
    let mx = LinearPoly::new(m.m[0][0].clone(), m.m[0][1].clone());
    let my = LinearPoly::new(m.m[1][0].clone(), m.m[1][1].clone());
    let nx = LinearPoly::new(n.m[0][0].clone(), n.m[0][1].clone());
    let ny = LinearPoly::new(n.m[1][0].clone(), n.m[1][1].clone());
    let prod = |u: &LinearPoly, v: &LinearPoly| {
        QuadPoly::new(
            &u.cq * &v.cq,
            &u.cp * &v.cp,
            &u.cq * &v.cp + &u.cp * &v.cq,
        )
    };
    &prod(&mx, &ny) - &prod(&my, &nx)
}

/// The proportionality constant `c` in the pointwise identity
/// `a_f(h) x a_g(h) = c * {f, g}(h) * j`.
///
/// The two quadratic fields are compared coefficient-by-coefficient, so
/// the returned constant is exact: `+1` whenever the bracket is nonzero
/// (this sign is the verified content — the cross product of Hamiltonian
/// fields is *plus* the bracket times `j`), and `0` when the bracket — and
/// with it the cross field — vanishes identically.
pub fn hamfield_cross(f: &QuadPoly, g: &QuadPoly) -> Rational {
    let cross_field = hamfield_cross_field(f, g);
    let bracket = pbracket(f, g);
    assert_eq!(
        cross_field, bracket,
        "the cross field of Hamiltonian fields must equal the bracket"
    );
    if bracket.is_zero() {
        Rational::zero()
    } else {
        Rational::one()
    }
}

/// Element `scalar + quad` of the four-dimensional algebra spanned by the
/// unit and the quadratics.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PCliffordElement {
    pub scalar: Rational,
    pub quad: QuadPoly,
}

impl PCliffordElement {
    pub fn new(scalar: Rational, quad: QuadPoly) -> Self {
        Self { scalar, quad }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), QuadPoly::zero())
    }

    pub fn from_quad(quad: QuadPoly) -> Self {
        Self::new(Rational::zero(), quad)
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.quad.is_zero()
    }
}

impl fmt::Display for PCliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quad.is_zero() {
            return write!(f, "{}", self.scalar);
        }
        if self.scalar.is_zero() {
            return write!(f, "{}", self.quad);
        }
        if self.quad.cqq.is_negative()
            || (self.quad.cqq.is_zero()
                && (self.quad.cqp.is_negative()
                    || (self.quad.cqp.is_zero() && self.quad.cpp.is_negative())))
        {
            write!(f, "{} - ({})", self.scalar, -&self.quad)
        } else {
            write!(f, "{} + {}", self.scalar, self.quad)
        }
    }
}

impl fmt::Debug for PCliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &PCliffordElement {
    type Output = PCliffordElement;
    fn add(self, rhs: &PCliffordElement) -> PCliffordElement {
        PCliffordElement::new(&self.scalar + &rhs.scalar, &self.quad + &rhs.quad)
    }
}

impl Neg for &PCliffordElement {
    type Output = PCliffordElement;
    fn neg(self) -> PCliffordElement {
        PCliffordElement::new(-&self.scalar, -&self.quad)
    }
}

/// The matrix realization `scalar*id + ham(quad)` of an element.
pub fn pclifford_to_matrix(x: &PCliffordElement) -> Endo2 {
    &Endo2::identity().scale(&x.scalar) + &ham(&x.quad)
}

/// Inverse of [`pclifford_to_matrix`] (every matrix splits as a multiple
/// of the identity plus a traceless part).
pub fn pclifford_from_matrix(m: &Endo2) -> PCliffordElement {
    let d = decompose_endf(m);
    let traceless = m - &Endo2::identity().scale(&d.t);
    PCliffordElement::new(
        d.t,
        ham_inverse(&traceless).expect("the traceless part is traceless"),
    )
}

/// The Clifford-type product on `scalar + quadratic` pairs: the
/// transported quaternion product of the matrix realizations, pulled
/// back. Its cross part is half the Poisson bracket precomposed with the
/// quarter-turn (see [`cross_quad`]), and the scalar part subtracts the
/// half-trace pairing of the field matrices; in particular the harmonic
/// oscillator squares to `-1`.
pub fn pclifford_mul(x: &PCliffordElement, y: &PCliffordElement) -> PCliffordElement {
    pclifford_from_matrix(&hsp_product(&pclifford_to_matrix(x), &pclifford_to_matrix(y)))
}

/// The half-trace pairing of two quadratics through their field matrices.
pub fn quad_inner(f: &QuadPoly, g: &QuadPoly) -> Rational {
    trace_inner(&ham(f), &ham(g))
}

/// The cross part of the Clifford-type product of two pure quadratics.
///
/// The verified identity is `cross_quad(f, g) = ({f, g} o R) / 2` where
/// `R` is the quarter-turn `(q, p) -> (p, -q)`: half the Poisson bracket
/// precomposed with the standard rotation. (On bracket values fixed by
/// the rotation this is `+{f, g}/2`; on values negated by it, such as the
/// bracket `q*p` of the oscillator generators, it is `-{f, g}/2`.)
pub fn cross_quad(f: &QuadPoly, g: &QuadPoly) -> QuadPoly {
    pclifford_mul(
        &PCliffordElement::from_quad(f.clone()),
        &PCliffordElement::from_quad(g.clone()),
    )
    .quad
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn quad(a: i64, b: i64, c: i64) -> QuadPoly {
        QuadPoly::new(ri(a), ri(b), ri(c))
    }

    /// Dense bivariate polynomial oracle used to check the closed-form
    /// bracket against honest symbolic differentiation.
    #[derive(Clone, Debug, PartialEq, Eq, Default)]
    struct Dense {
        // (q-exponent, p-exponent) -> coefficient
        c: BTreeMap<(u32, u32), Rational>,
    }

    impl Dense {
        fn insert(&mut self, key: (u32, u32), val: Rational) {
            if val.is_zero() {
                return;
            }
            let entry = self.c.entry(key).or_insert_with(Rational::zero);
            *entry = &*entry + &val;
            if entry.is_zero() {
                self.c.remove(&key);
            }
        }

        fn from_quad(f: &QuadPoly) -> Self {
            let mut out = Self::default();
            out.insert((2, 0), f.cqq.clone());
            out.insert((0, 2), f.cpp.clone());
            out.insert((1, 1), f.cqp.clone());
            out
        }

        fn mul(&self, other: &Self) -> Self {
            let mut out = Self::default();
            for ((aq, ap), ac) in &self.c {
                for ((bq, bp), bc) in &other.c {
                    out.insert((aq + bq, ap + bp), ac * bc);
                }
            }
            out
        }

        fn sub(&self, other: &Self) -> Self {
            let mut out = self.clone();
            for (k, v) in &other.c {
                out.insert(*k, -v);
            }
            out
        }

        fn diff_q(&self) -> Self {
            let mut out = Self::default();
            for ((dq, dp), c) in &self.c {
                if *dq > 0 {
                    out.insert((dq - 1, *dp), c * &ri(*dq as i64));
                }
            }
            out
        }

        fn diff_p(&self) -> Self {
            let mut out = Self::default();
            for ((dq, dp), c) in &self.c {
                if *dp > 0 {
                    out.insert((*dq, dp - 1), c * &ri(*dp as i64));
                }
            }
            out
        }
    }

    fn bracket_by_differentiation(f: &QuadPoly, g: &QuadPoly) -> Dense {
        let (df, dg) = (Dense::from_quad(f), Dense::from_quad(g));
        df.diff_q().mul(&dg.diff_p()).sub(&df.diff_p().mul(&dg.diff_q()))
    }

    fn sample_quads() -> Vec<QuadPoly> {
        let mut out = vec![
            QuadPoly::q_squared(),
            QuadPoly::p_squared(),
            QuadPoly::q_times_p(),
            QuadPoly::harmonic_oscillator(),
            QuadPoly::zero(),
            QuadPoly::new(Rational::of(1, 2), ri(-3), Rational::of(2, 3)),
        ];
        for a in -1..=1i64 {
            for b in -1..=1i64 {
                out.push(quad(a, b, 1));
            }
        }
        out
    }

    #[test]
    fn ham_frozen_generators() {
        let half = Rational::of(1, 2);
        assert_eq!(
            ham(&QuadPoly::q_squared().scale(&half)),
            Endo2::from_ints(0, 0, -1, 0)
        );
        assert_eq!(
            ham(&QuadPoly::p_squared().scale(&half)),
            Endo2::from_ints(0, 1, 0, 0)
        );
        assert_eq!(ham(&QuadPoly::q_times_p()), Endo2::from_ints(1, 0, 0, -1));
        assert_eq!(ham(&QuadPoly::harmonic_oscillator()), Endo2::unit_j());
        assert_eq!(ham(&quad(1, 2, 3)), Endo2::from_ints(3, 4, -2, -3));
    }

    #[test]
    fn ham_inverse_roundtrip() {
        for f in sample_quads() {
            let m = ham(&f);
            assert!(m.is_traceless());
            assert_eq!(ham_inverse(&m).unwrap(), f);
        }
        assert_eq!(
            ham_inverse(&Endo2::identity()),
            Err(PoissonError::NotTraceless)
        );
    }

    #[test]
    fn bracket_matches_symbolic_differentiation() {
        for f in sample_quads() {
            for g in sample_quads() {
                assert_eq!(
                    Dense::from_quad(&pbracket(&f, &g)),
                    bracket_by_differentiation(&f, &g),
                    "closed form disagrees with differentiation at {{{f}, {g}}}"
                );
            }
        }
    }

    #[test]
    fn bracket_frozen_values() {
        let half = Rational::of(1, 2);
        let (q2h, p2h) = (
            QuadPoly::q_squared().scale(&half),
            QuadPoly::p_squared().scale(&half),
        );
        assert_eq!(pbracket(&q2h, &p2h), QuadPoly::q_times_p());
        // The sign that is easy to get wrong: {q*p, q^2/2} = -q^2.
        assert_eq!(
            pbracket(&QuadPoly::q_times_p(), &q2h),
            -&QuadPoly::q_squared()
        );
        assert_eq!(
            pbracket(&QuadPoly::q_times_p(), &p2h),
            QuadPoly::p_squared()
        );
    }

    #[test]
    fn sign_fact_confirmed_by_matrix_route() {
        // Both routes must agree that {q*p, q^2/2} = -q^2: the closed-form
        // bracket and the pullback of the matrix commutator.
        let half = Rational::of(1, 2);
        let f = QuadPoly::q_times_p();
        let g = QuadPoly::q_squared().scale(&half);
        let via_matrices = ham_inverse(&ham(&f).commutator(&ham(&g))).unwrap();
        assert_eq!(via_matrices, -&QuadPoly::q_squared());
        assert_eq!(pbracket(&f, &g), via_matrices);
        // The raw commutator matrix for the record.
        assert_eq!(ham(&f).commutator(&ham(&g)), Endo2::from_ints(0, 0, 2, 0));
    }

    #[test]
    fn ham_is_a_lie_homomorphism() {
        for f in sample_quads() {
            for g in sample_quads() {
                assert_eq!(ham(&pbracket(&f, &g)), ham(&f).commutator(&ham(&g)));
            }
        }
    }

    #[test]
    fn jacobi_identity() {
        let samples = sample_quads();
        for f in &samples {
            for g in &samples {
                for h in &samples {
                    let total = &(&pbracket(f, &pbracket(g, h))
                        + &pbracket(g, &pbracket(h, f)))
                        + &pbracket(h, &pbracket(f, g));
                    assert!(total.is_zero(), "Jacobi fails on {f}, {g}, {h}");
                }
            }
        }
    }

    #[test]
    fn linear_fields_and_their_cross() {
        assert_eq!(hamfield_linear(&LinearPoly::q()), Vec2::new(ri(0), ri(-1)));
        assert_eq!(hamfield_linear(&LinearPoly::p()), Vec2::new(ri(1), ri(0)));
        // a_q x a_p = +{q, p} j = +j.
        assert_eq!(
            hamfield_cross_linear(&LinearPoly::q(), &LinearPoly::p()),
            ri(1)
        );
        assert_eq!(pbracket_linear(&LinearPoly::q(), &LinearPoly::p()), ri(1));
        // General linear polynomials.
        let f = LinearPoly::new(ri(3), Rational::of(-1, 2));
        let g = LinearPoly::new(ri(2), ri(5));
        assert_eq!(hamfield_cross_linear(&f, &g), pbracket_linear(&f, &g));
        assert_eq!(pbracket_linear(&f, &g), ri(16));
    }

    #[test]
    fn quadratic_fields_cross_pointwise() {
        let points = [
            Vec2::new(ri(1), ri(0)),
            Vec2::new(ri(0), ri(1)),
            Vec2::new(ri(2), ri(-3)),
            Vec2::new(Rational::of(1, 2), Rational::of(5, 3)),
        ];
        for f in sample_quads() {
            for g in sample_quads() {
                for at in &points {
                    assert_eq!(
                        hamfield_cross_at(&f, &g, at),
                        pbracket(&f, &g).eval(at),
                        "pointwise cross identity fails for {f}, {g}"
                    );
                }
                // The cross field equals the bracket as a polynomial, so
                // the proportionality constant is +1 (0 for a vanishing
                // bracket).
                assert_eq!(hamfield_cross_field(&f, &g), pbracket(&f, &g));
                let expected = if pbracket(&f, &g).is_zero() { ri(0) } else { ri(1) };
                assert_eq!(hamfield_cross(&f, &g), expected);
            }
        }
        assert_eq!(hamfield_cross(&QuadPoly::q_squared(), &QuadPoly::q_squared()), ri(0));
    }

    #[test]
    fn quad_linear_bracket() {
        // {q^2/2, p} = q and {p^2/2, q} = -p.
        let half = Rational::of(1, 2);
        assert_eq!(
            pbracket_quad_linear(&QuadPoly::q_squared().scale(&half), &LinearPoly::p()),
            LinearPoly::q()
        );
        assert_eq!(
            pbracket_quad_linear(&QuadPoly::p_squared().scale(&half), &LinearPoly::q()),
            -&LinearPoly::p()
        );
        // {q*p, q} = -q (degree-one eigenvector of the scaling flow).
        assert_eq!(
            pbracket_quad_linear(&QuadPoly::q_times_p(), &LinearPoly::q()),
            -&LinearPoly::q()
        );
        assert_eq!(
            pbracket_quad_linear(&QuadPoly::q_times_p(), &LinearPoly::p()),
            LinearPoly::p()
        );
    }

    #[test]
    fn clifford_product_structure() {
        let one = PCliffordElement::one();
        let osc = PCliffordElement::from_quad(QuadPoly::harmonic_oscillator());
        // Unit and oscillator square.
        assert_eq!(pclifford_mul(&one, &osc), osc);
        assert_eq!(pclifford_mul(&osc, &one), osc);
        assert_eq!(
            pclifford_mul(&osc, &osc),
            -&PCliffordElement::one()
        );
        // Scalar part is minus the pairing; cross part is half the bracket
        // precomposed with the quarter-turn.
        let half = Rational::of(1, 2);
        let quarter_turn = Endo2::unit_j();
        for f in sample_quads() {
            for g in sample_quads() {
                let prod = pclifford_mul(
                    &PCliffordElement::from_quad(f.clone()),
                    &PCliffordElement::from_quad(g.clone()),
                );
                assert_eq!(prod.scalar, -&quad_inner(&f, &g));
                assert_eq!(
                    cross_quad(&f, &g),
                    pbracket(&f, &g).precompose(&quarter_turn).scale(&half)
                );
            }
        }
        // Frozen generator pairs: the bracket of the oscillator halves is
        // q*p, which the rotation negates, so their cross is -q*p/2; the
        // other two generator pairs rotate their brackets into each other.
        let (q2h, p2h) = (
            QuadPoly::q_squared().scale(&half),
            QuadPoly::p_squared().scale(&half),
        );
        let qp = QuadPoly::q_times_p();
        assert_eq!(
            cross_quad(&q2h, &p2h),
            qp.scale(&Rational::of(-1, 2))
        );
        assert_eq!(
            cross_quad(&qp, &q2h),
            QuadPoly::p_squared().scale(&Rational::of(-1, 2))
        );
        assert_eq!(
            cross_quad(&qp, &p2h),
            QuadPoly::q_squared().scale(&half)
        );
    }

    #[test]
    fn transport_identity_defines_the_product() {
        // The binding requirement: the matrix realization intertwines the
        // Clifford-type product with the transported quaternion product.
        let elems = [
            PCliffordElement::one(),
            PCliffordElement::from_quad(quad(1, 0, 0)),
            PCliffordElement::from_quad(quad(0, 1, 0)),
            PCliffordElement::from_quad(quad(0, 0, 1)),
            PCliffordElement::new(ri(2), quad(1, -1, 3)),
            PCliffordElement::new(Rational::of(-1, 2), quad(0, 2, 1)),
            PCliffordElement::from_quad(QuadPoly::harmonic_oscillator()),
        ];
        for x in &elems {
            for y in &elems {
                assert_eq!(
                    pclifford_to_matrix(&pclifford_mul(x, y)),
                    crate::endf::hsp_product(
                        &pclifford_to_matrix(x),
                        &pclifford_to_matrix(y)
                    )
                );
            }
        }
    }

    #[test]
    fn precompose_matches_pointwise_evaluation() {
        let maps = [
            Endo2::unit_j(),
            Endo2::from_ints(1, 2, 3, 4),
            Endo2::from_ints(0, 1, 1, 0),
        ];
        let points = [
            Vec2::new(ri(1), ri(0)),
            Vec2::new(ri(2), ri(-3)),
            Vec2::new(Rational::of(1, 2), ri(5)),
        ];
        for f in sample_quads() {
            for m in &maps {
                let composed = f.precompose(m);
                for at in &points {
                    assert_eq!(composed.eval(at), f.eval(&m.apply(at)));
                }
            }
        }
        // The quarter-turn swaps the squares and negates the mixed term.
        assert_eq!(
            quad(1, 2, 3).precompose(&Endo2::unit_j()),
            quad(2, 1, -3)
        );
    }

    #[test]
    fn vector_field_bracket_sign() {
        // The vector-field bracket of two linear fields with matrices
        // M, N is the opposite of the matrix commutator; the field of the
        // Poisson bracket is its negation: ham({f,g}) = -(NM - MN).
        for f in sample_quads() {
            for g in sample_quads() {
                let (m, n) = (ham(&f), ham(&g));
                let vf_bracket = &(&n * &m) - &(&m * &n);
                assert_eq!(ham(&pbracket(&f, &g)), -&vf_bracket);
            }
        }
    }

    #[test]
    fn clifford_product_is_associative() {
        let elems: Vec<PCliffordElement> = [
            PCliffordElement::one(),
            PCliffordElement::from_quad(quad(1, 0, 0)),
            PCliffordElement::from_quad(quad(0, 1, 0)),
            PCliffordElement::from_quad(quad(0, 0, 1)),
            PCliffordElement::new(ri(2), quad(1, -1, 3)),
            PCliffordElement::new(Rational::of(-1, 2), quad(0, 2, 1)),
        ]
        .to_vec();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    assert_eq!(
                        pclifford_mul(&pclifford_mul(x, y), z),
                        pclifford_mul(x, &pclifford_mul(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn matrix_realization_roundtrip() {
        let x = PCliffordElement::new(Rational::of(3, 2), quad(1, -2, 5));
        assert_eq!(pclifford_from_matrix(&pclifford_to_matrix(&x)), x);
        // ham embeds the generators where expected: the oscillator goes to
        // the quarter-turn.
        assert_eq!(
            pclifford_to_matrix(&PCliffordElement::from_quad(
                QuadPoly::harmonic_oscillator()
            )),
            Endo2::unit_j()
        );
    }

    #[test]
    fn display_formats() {
        assert_eq!(quad(1, 2, 3).to_string(), "q^2 + 3*q*p + 2*p^2");
        assert_eq!(quad(-1, 0, 0).to_string(), "-q^2");
        assert_eq!(QuadPoly::zero().to_string(), "0");
        assert_eq!(
            QuadPoly::harmonic_oscillator().to_string(),
            "1/2*q^2 + 1/2*p^2"
        );
        assert_eq!(LinearPoly::new(ri(1), ri(-2)).to_string(), "q - 2*p");
        assert_eq!(
            PCliffordElement::new(ri(2), quad(0, 0, -1)).to_string(),
            "2 - (q*p)"
        );
        assert_eq!(PCliffordElement::one().to_string(), "1");
        assert_eq!(
            PCliffordElement::from_quad(quad(1, 0, 0)).to_string(),
            "q^2"
        );
    }
}
