//! Shared inputs for the benchmarks.

use arcsub_core::arith::rational::{exp, int};
use arcsub_core::{Arc, MultiPoly, PuiseuxSeries, RationalFn, RealAlgebraic, Relation, Variety};

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

/// `x^8 = (z1^2 + z2^2) y^8`.
pub fn octic() -> Variety {
    let v = |i| MultiPoly::var(4, i);
    let p = v(0)
        .pow(8)
        .sub(&v(2).pow(2).add(&v(3).pow(2)).mul(&v(1).pow(8)));
    Variety::new(names(&["x", "y", "z1", "z2"]), vec![p]).expect("valid variety")
}

/// `x^k / y^k` on the octic.
pub fn octic_quotient(k: u32) -> RationalFn {
    RationalFn::new(MultiPoly::var(4, 0).pow(k), MultiPoly::var(4, 1).pow(k))
        .expect("nonzero denominator")
}

/// `(0, 0, 1, 0)`.
pub fn octic_point() -> Vec<RealAlgebraic> {
    [0, 0, 1, 0]
        .iter()
        .map(|&c| RealAlgebraic::from_int(c))
        .collect()
}

/// `(0, 0, 0, t)`.
pub fn stick() -> Arc {
    let z = PuiseuxSeries::zero();
    Arc::new(vec![z.clone(), z.clone(), z, PuiseuxSeries::t()]).expect("bounded components")
}

/// `T^4 - (z1^2 + z2^2)` over the octic.
pub fn fourth_root_relation() -> Relation {
    let v = |i| MultiPoly::var(5, i);
    Relation::from_poly(&v(4).pow(4).sub(&v(2).pow(2).add(&v(3).pow(2))), 4)
        .expect("valid relation")
}

/// `Y^d - (1 + t)` in the variables `(t, Y)`.
pub fn radical_curve(d: u32) -> MultiPoly {
    let (t, y) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    y.pow(d).sub(&MultiPoly::one(2).add(&t))
}

/// A dense series `sum_{k < n} (k + 1) t^(k/2)`.
pub fn dense_series(n: i64) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(
        (0..n)
            .map(|k| (exp(k, 2), RealAlgebraic::from_rational(int(k + 1))))
            .collect(),
        None,
    )
}
