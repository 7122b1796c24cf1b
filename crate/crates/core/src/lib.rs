//! Exact substitution of rational functions along real Puiseux arcs.

pub mod arith;
pub mod error;
pub mod geometry;
pub mod puiseux;
pub mod substitution;

pub use arith::{
    alg_op, alg_sign, isolate_real_roots, AlgOp, Exponent, MultiPoly, Rational, RealAlgebraic,
    UniPoly,
};
pub use error::{Error, Result};
pub use geometry::{Arc, RationalFn, SliceSpec, Variety};
pub use puiseux::{
    newton_puiseux, Branch, BranchSet, NewtonOptions, Order, PuiseuxSeries, Residual, SeriesOp,
};
pub use substitution::{
    LiftingReport, Limit, LojBound, LojReport, Relation, WitnessOptions, WitnessOutcome,
    WitnessReport,
};
