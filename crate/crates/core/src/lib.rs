//! Exact algebra kernel for quaternionic phase-plane models.
//!
//! The crate builds one chain of structures, each layer machine-checked
//! against the one below it:
//!
//! * [`scalars`] — arbitrary-precision rationals, Gaussian rationals, and
//!   checked conversion to floating point.
//! * [`process`] — the eight-element signed composition algebra generated by
//!   three poles, and its identification with the quaternion units.
//! * [`quaternion`] — rational quaternions with the geometric product
//!   (dot/cross form), used as the model of an oriented Euclidean 3-space
//!   together with a distinguished plane.
//! * [`endf`] — 2x2 rational matrices split as scalar + symplectic parts,
//!   the unit table of the matrix algebra, and the quaternion structure
//!   carried by the symplectic part.
//! * [`symplectic`] — symplectic forms on the plane, the compatible complex
//!   structure and scalar product, and direct sums of phase planes.
//! * [`poisson`] — quadratic polynomials in (q, p) under the Poisson
//!   bracket, the Hamiltonian-matrix isomorphism, and the Clifford-style
//!   product pulled back from the matrix side.
//! * [`graded_tensor`] — graded (sign-commuting) tensor powers of the
//!   quaternion model with generators indexed per factor.
//! * [`quantize`] — exact normal-ordered Weyl operators, truncated Fock
//!   matrices, and a dependency-free Jacobi eigensolver.
//! * [`dsl`] — a small expression language (tokenizer, parser, printer,
//!   evaluator) exposing the algebras above.
//! * [`verify`] — the named-check verification suite and its canonical
//!   JSON report.
//!
//! All structural results are exact (no floating point); floats appear only
//! in the truncated Fock layer and the eigensolver, with explicit tolerances.

pub mod dsl;
pub mod endf;
pub mod graded_tensor;
pub mod poisson;
pub mod process;
pub mod quantize;
pub mod quaternion;
pub mod scalars;
pub mod symplectic;
pub mod verify;

pub use endf::Endo2;
pub use poisson::{LinearPoly, QuadPoly};
pub use quantize::{FockMatrix, WeylElement};
pub use quaternion::{Quaternion, Vector3};
pub use scalars::{ComplexF64, GaussianRational, Rational};
