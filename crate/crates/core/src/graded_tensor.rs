//! Graded (anticommutative) tensor products of copies of the quaternion
//! algebra, one copy per plane of a phase space.
//!
//! Each factor carries the Z2-grading with even part spanned by
//! `e, j` and odd part spanned by `e_q, e_p`. On basis tensors the
//! product follows the Koszul sign rule
//!
//! ```text
//! (a_1 (x) ... (x) a_n) * (b_1 (x) ... (x) b_n)
//!     = (-1)^sigma (a_1 b_1) (x) ... (x) (a_n b_n),
//! sigma = sum over s > r of |a_s| * |b_r|,
//! ```
//!
//! with slotwise products taken in the quaternion algebra (`e_q, e_p, j`
//! acting as the three Hamilton units). Under this product the `2n`
//! embedded odd generators pairwise anticommute and square to minus the
//! unit tensor: the defining relations of the Clifford algebra of a
//! `2n`-dimensional space with negated scalar product, built here out of
//! `n` plane factors.
//!
//! The same engine serves the quadratic-polynomial version: each slot
//! symbol is relabeled to a quadratic via the per-slot isomorphism
//! ([`slot_to_quadratic`]), and [`monomial_projection`] gives the partial
//! basis-indexed surjection onto two-plane monomials `q_s * p_r`.

use crate::poisson::{PCliffordElement, QuadPoly};
use crate::process::Sign;
use crate::quaternion::Quaternion;
use crate::scalars::Rational;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Hard cap on the number of tensor factors (the dense basis has size
/// `4^n`).
pub const MAX_FACTORS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("factor counts differ: {left} vs {right}")]
    FactorCountMismatch { left: usize, right: usize },
    #[error("slot {slot} out of range 1..={n}")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("factor count {n} exceeds the supported maximum {max}")]
    TooManyFactors { n: usize, max: usize },
    #[error("at least one tensor factor is required")]
    ZeroFactors,
    #[error("a term has {got} slots, expected {expected}")]
    TermLengthMismatch { expected: usize, got: usize },
    #[error("expected an embedded odd generator (+1 times a single odd slot)")]
    NotAGenerator,
    #[error("only the odd units e_q and e_p embed as generators")]
    NotAnOddUnit,
}

/// Basis symbol occupying one tensor slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotSymbol {
    /// The unit `e` (even).
    E,
    /// The odd unit `e_q`.
    Eq,
    /// The odd unit `e_p`.
    Ep,
    /// The even unit `j`.
    J,
}

impl SlotSymbol {
    pub const ALL: [SlotSymbol; 4] =
        [SlotSymbol::E, SlotSymbol::Eq, SlotSymbol::Ep, SlotSymbol::J];

    /// Z2-parity: `e, j` are even, `e_q, e_p` odd.
    pub fn parity(self) -> u8 {
        match self {
            SlotSymbol::E | SlotSymbol::J => 0,
            SlotSymbol::Eq | SlotSymbol::Ep => 1,
        }
    }

    /// The quaternion unit realizing the symbol inside one factor.
    pub fn to_quaternion_unit(self) -> Quaternion {
        match self {
            SlotSymbol::E => Quaternion::e(),
            SlotSymbol::Eq => Quaternion::i(),
            SlotSymbol::Ep => Quaternion::j(),
            SlotSymbol::J => Quaternion::k(),
        }
    }
}

impl fmt::Display for SlotSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotSymbol::E => write!(f, "e"),
            SlotSymbol::Eq => write!(f, "e_q"),
            SlotSymbol::Ep => write!(f, "e_p"),
            SlotSymbol::J => write!(f, "j"),
        }
    }
}

/// Product of two slot symbols inside one quaternion factor, as a signed
/// symbol.
pub fn slot_mul(a: SlotSymbol, b: SlotSymbol) -> (Sign, SlotSymbol) {
    let prod = &a.to_quaternion_unit() * &b.to_quaternion_unit();
    for sym in SlotSymbol::ALL {
        if prod == sym.to_quaternion_unit() {
            return (Sign::Plus, sym);
        }
        if prod == -&sym.to_quaternion_unit() {
            return (Sign::Minus, sym);
        }
    }
    unreachable!("products of quaternion units are signed quaternion units")
}

/// Element of the n-fold graded tensor product: a finite rational
/// combination of basis tensors (length-n symbol words). Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTensorElement {
    n: usize,
    terms: BTreeMap<Vec<SlotSymbol>, Rational>,
}

fn check_factor_count(n: usize) -> Result<(), GradedError> {
    if n == 0 {
        return Err(GradedError::ZeroFactors);
    }
    if n > MAX_FACTORS {
        return Err(GradedError::TooManyFactors { n, max: MAX_FACTORS });
    }
    Ok(())
}

impl GradedTensorElement {
    /// The zero element with `n` factors.
    pub fn zero(n: usize) -> Result<Self, GradedError> {
        check_factor_count(n)?;
        Ok(Self { n, terms: BTreeMap::new() })
    }

    /// The unit tensor `e (x) ... (x) e`.
    pub fn unit(n: usize) -> Result<Self, GradedError> {
        let mut out = Self::zero(n)?;
        out.add_term(vec![SlotSymbol::E; n], Rational::one())?;
        Ok(out)
    }

    /// A single basis tensor with coefficient 1.
    pub fn basis(slots: Vec<SlotSymbol>) -> Result<Self, GradedError> {
        let mut out = Self::zero(slots.len())?;
        out.add_term(slots, Rational::one())?;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<SlotSymbol>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` times the basis tensor `slots` in place.
    pub fn add_term(&mut self, slots: Vec<SlotSymbol>, coeff: Rational) -> Result<(), GradedError> {
        if slots.len() != self.n {
            return Err(GradedError::TermLengthMismatch { expected: self.n, got: slots.len() });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(slots).or_insert_with(Rational::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            // Re-borrow immutably to find and drop the zeroed key.
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("a zero entry was just created");
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self { n: self.n, terms: BTreeMap::new() };
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GradedError> {
        if self.n != rhs.n {
            return Err(GradedError::FactorCountMismatch { left: self.n, right: rhs.n });
        }
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, GradedError> {
        self.add(&rhs.neg())
    }

    /// The set of slot positions (1-based) carrying a non-unit symbol in
    /// some term.
    pub fn support_slots(&self) -> Vec<usize> {
        let mut out = vec![false; self.n];
        for slots in self.terms.keys() {
            for (i, s) in slots.iter().enumerate() {
                if *s != SlotSymbol::E {
                    out[i] = true;
                }
            }
        }
        out.iter()
            .enumerate()
            .filter_map(|(i, used)| used.then_some(i + 1))
            .collect()
    }
}

/// Koszul sign exponent for a product of basis tensors: the number of
/// odd-odd transpositions, `sum over s > r of |a_s| * |b_r|`.
fn koszul_exponent(a: &[SlotSymbol], b: &[SlotSymbol]) -> u32 {
    let mut sigma = 0u32;
    for (s, a_s) in a.iter().enumerate() {
        if a_s.parity() == 0 {
            continue;
        }
        for b_r in b.iter().take(s) {
            sigma += u32::from(b_r.parity());
        }
    }
    sigma
}

/// The graded product, extended bilinearly from the Koszul rule on basis
/// tensors.
pub fn graded_mul(
    x: &GradedTensorElement,
    y: &GradedTensorElement,
) -> Result<GradedTensorElement, GradedError> {
    if x.n != y.n {
        return Err(GradedError::FactorCountMismatch { left: x.n, right: y.n });
    }
    let mut out = GradedTensorElement::zero(x.n)?;
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let mut sign =
                if koszul_exponent(a, b).is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
            let mut slots = Vec::with_capacity(x.n);
            for (a_s, b_s) in a.iter().zip(b.iter()) {
                let (s, c) = slot_mul(*a_s, *b_s);
                sign = sign * s;
                slots.push(c);
            }
            let mut coeff = ca * cb;
            if sign == Sign::Minus {
                coeff = -&coeff;
            }
            out.add_term(slots, coeff)?;
        }
    }
    Ok(out)
}

/// The generator `e (x) ... (x) v (x) ... (x) e` with the odd unit `v`
/// (`e_q` or `e_p`) in slot `slot` (slots are numbered `1..=n`).
pub fn embed_generator(
    slot: usize,
    v: SlotSymbol,
    n: usize,
) -> Result<GradedTensorElement, GradedError> {
    check_factor_count(n)?;
    if v.parity() != 1 {
        return Err(GradedError::NotAnOddUnit);
    }
    if slot == 0 || slot > n {
        return Err(GradedError::SlotOutOfRange { slot, n });
    }
    let mut slots = vec![SlotSymbol::E; n];
    slots[slot - 1] = v;
    GradedTensorElement::basis(slots)
}

/// Recognizes an embedded generator, returning its slot word.
fn as_generator(x: &GradedTensorElement) -> Result<&Vec<SlotSymbol>, GradedError> {
    let mut iter = x.terms.iter();
    let (slots, coeff) = iter.next().ok_or(GradedError::NotAGenerator)?;
    if iter.next().is_some() || !coeff.is_one() {
        return Err(GradedError::NotAGenerator);
    }
    let odd_count = slots.iter().filter(|s| s.parity() == 1).count();
    let non_unit_count = slots.iter().filter(|&&s| s != SlotSymbol::E).count();
    if odd_count != 1 || non_unit_count != 1 {
        return Err(GradedError::NotAGenerator);
    }
    Ok(slots)
}

/// The Clifford-relation coefficient of two embedded generators: the
/// rational `c` with `u v + v u = c * unit`. The verified contract is
/// `c = -2` for equal generators and `0` otherwise (distinct slots
/// anticommute by the Koszul sign; the two odd units of one slot
/// anticommute inside the quaternion factor).
pub fn clifford_relation_check(
    u: &GradedTensorElement,
    v: &GradedTensorElement,
) -> Result<Rational, GradedError> {
    as_generator(u)?;
    as_generator(v)?;
    let anti = graded_mul(u, v)?.add(&graded_mul(v, u)?)?;
    if anti.is_zero() {
        return Ok(Rational::zero());
    }
    let unit_key = vec![SlotSymbol::E; u.n];
    assert!(
        anti.terms.len() == 1 && anti.terms.contains_key(&unit_key),
        "the anticommutator of generators is a multiple of the unit tensor"
    );
    Ok(anti.terms[&unit_key].clone())
}

/// Relabels one slot symbol as a scalar-plus-quadratic element through
/// the per-slot isomorphism (unit to 1, `e_q` to the harmonic oscillator,
/// `e_p` to `q*p`, `j` to `(p^2 - q^2)/2`).
pub fn slot_to_quadratic(sym: SlotSymbol) -> PCliffordElement {
    let half = Rational::of(1, 2);
    match sym {
        SlotSymbol::E => PCliffordElement::one(),
        SlotSymbol::Eq => PCliffordElement::from_quad(QuadPoly::harmonic_oscillator()),
        SlotSymbol::Ep => PCliffordElement::from_quad(QuadPoly::q_times_p()),
        SlotSymbol::J => PCliffordElement::from_quad(QuadPoly::new(
            -&half,
            half.clone(),
            Rational::zero(),
        )),
    }
}

/// Partial basis-indexed projection onto two-plane monomials: the basis
/// tensor with `e_q` in slot `s`, `e_p` in slot `r` (`s != r`) and the
/// unit everywhere else names the monomial `q_s * p_r`; every other basis
/// tensor has no monomial name.
pub fn monomial_projection(slots: &[SlotSymbol]) -> Option<(usize, usize)> {
    let mut q_slot = None;
    let mut p_slot = None;
    for (i, s) in slots.iter().enumerate() {
        match s {
            SlotSymbol::E => {}
            SlotSymbol::Eq if q_slot.is_none() => q_slot = Some(i + 1),
            SlotSymbol::Ep if p_slot.is_none() => p_slot = Some(i + 1),
            _ => return None,
        }
    }
    match (q_slot, p_slot) {
        (Some(s), Some(r)) => Some((s, r)),
        _ => None,
    }
}

impl fmt::Display for GradedTensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut lead = true;
        for (slots, coeff) in &self.terms {
            let mag = coeff.abs();
            if lead {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                lead = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let word: Vec<String> = slots.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", word.join("(x)"))?;
        }
        Ok(())
    }
}
