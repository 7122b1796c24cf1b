//! Puiseux series and the Newton-Puiseux branch expansion.

pub mod bivariate;
pub mod newton;
pub mod series;

pub use newton::{
    bivariate_branches, newton_puiseux, newton_puiseux_with, series_branches, Branch, BranchSet,
    NewtonOptions, Residual,
};
pub use series::{
    exponent_denominators, ps_arith, ps_eval_numeric, ps_invert, ps_ord, ps_ramify, Order,
    PuiseuxSeries, SeriesOp,
};
