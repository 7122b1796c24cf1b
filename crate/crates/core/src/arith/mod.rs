//! Exact arithmetic: rationals, polynomials, root isolation and real algebraic numbers.

pub mod algebraic;
pub mod multipoly;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod unipoly;

pub use algebraic::{alg_op, alg_sign, AlgOp, NumberField, RealAlgebraic};
pub use multipoly::MultiPoly;
pub use rational::{Exponent, Rational};
pub use roots::{isolate_real_roots, RootInterval};
pub use scalar::Scalar;
pub use unipoly::UniPoly;
