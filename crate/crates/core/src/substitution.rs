//! Rational functions along arcs: limits, liftings, discontinuity witnesses,
//! zero-set containment and the Lojasiewicz exponent probe.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::algebraic::{detach_all, extend_by_root, unify_all};
use crate::arith::rational::{ceil_exponent, exp, Exponent, Rational};
use crate::arith::{isolate_real_roots, MultiPoly, RealAlgebraic, UniPoly};
use crate::error::{Error, Result};
use crate::geometry::{
    eval_alg, poly_along_arc, slice_branches, slice_planes, verify_arc_on_variety, Arc, RationalFn,
    SliceSpec, Variety,
};
use crate::puiseux::newton::{bivariate_branches, series_branches, Branch, NewtonOptions};
use crate::puiseux::{Order, PuiseuxSeries};

/// Doublings of the target order tried before giving up on a truncated input.
const ORDER_DOUBLINGS: u32 = 3;

/// A polynomial in a new variable `T` with coefficients in the ambient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    /// `coeffs[k]` multiplies `T^k`.
    pub coeffs: Vec<MultiPoly>,
}

impl Relation {
    /// Split a polynomial in `arity + 1` variables, `T` being the last one.
    pub fn from_poly(p: &MultiPoly, arity: usize) -> Result<Self> {
        if p.arity() != arity + 1 {
            return Err(Error::ArityMismatch {
                expected: arity + 1,
                found: p.arity(),
            });
        }
        let d = p.degree_in(arity) as usize;
        let mut rows: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); d + 1];
        for (e, c) in p.terms() {
            rows[e[arity] as usize].push((e[..arity].to_vec(), c.clone()));
        }
        let coeffs = rows
            .into_iter()
            .map(|r| MultiPoly::from_terms(arity, r))
            .collect::<Result<_>>()?;
        Ok(Relation { coeffs })
    }

    pub fn arity(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.arity())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `f(gamma(t))`, or the marker for arcs inside the denominator's zero set.
#[derive(Clone, Debug)]
pub enum AlongArc {
    Series(PuiseuxSeries),
    PoleArc,
}

/// `p(gamma) / q(gamma)`; inverse expansions that do not terminate are cut at `order`.
pub fn rational_along_arc(f: &RationalFn, arc: &Arc, order: Exponent) -> Result<AlongArc> {
    let p = poly_along_arc(&f.p, arc)?;
    let q = poly_along_arc(&f.q, arc)?;
    if q.is_exact_zero() {
        return Ok(AlongArc::PoleArc);
    }
    if q.has_no_terms() {
        return Err(Error::OrderIndeterminate(
            "denominator along the arc is lost to truncation".into(),
        ));
    }
    let qv = q.leading().unwrap().0;
    let inv = q.invert(order - p.ord().lower().unwrap_or(qv).min(qv) + qv)?;
    Ok(AlongArc::Series(p.mul(&inv)))
}

/// Limit of `f(gamma(t))` as `t -> 0+`.
#[derive(Clone, Debug)]
pub enum Limit {
    Finite(RealAlgebraic),
    /// Sign of the leading coefficient of a series of negative order.
    Diverges(i8),
    PoleArc,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(c) => write!(f, "FINITE({c})"),
            Limit::Diverges(s) => write!(f, "DIVERGES({})", if *s > 0 { "+" } else { "-" }),
            Limit::PoleArc => write!(f, "POLE-ARC"),
        }
    }
}

/// Limit of a series at `0+`.
pub fn series_limit(s: &PuiseuxSeries) -> Result<Limit> {
    match s.ord() {
        Order::Infinite => Ok(Limit::Finite(RealAlgebraic::from_int(0))),
        Order::AtLeast(th) if th.is_positive() => Ok(Limit::Finite(RealAlgebraic::from_int(0))),
        Order::AtLeast(_) => Err(Error::OrderIndeterminate(
            "leading term lost to truncation".into(),
        )),
        Order::Finite(e) if e.is_negative() => Ok(Limit::Diverges(s.leading().unwrap().1.sign())),
        Order::Finite(_) => Ok(Limit::Finite(s.constant_term())),
    }
}

pub fn arc_limit(f: &RationalFn, arc: &Arc, order: Exponent) -> Result<Limit> {
    match rational_along_arc(f, arc, order)? {
        AlongArc::PoleArc => Ok(Limit::PoleArc),
        AlongArc::Series(s) => series_limit(&s),
    }
}

/// Real roots of the relation composed with an arc, split by valuation-ring membership.
#[derive(Clone, Debug)]
pub struct LiftingReport {
    pub relation: Relation,
    pub arc: Arc,
    /// Branches of order `>= 0`.
    pub liftings: Vec<Branch>,
    /// Branches of negative order.
    pub non_liftings: Vec<Branch>,
    pub order: Exponent,
    pub squarefree_reduced: bool,
}

/// Liftings of the arc morphism to the ring generated by a root of `rel`.
pub fn lift_arc(rel: &Relation, arc: &Arc, opts: NewtonOptions) -> Result<LiftingReport> {
    if rel.arity() != arc.arity() {
        return Err(Error::ArityMismatch {
            expected: rel.arity(),
            found: arc.arity(),
        });
    }
    let coeffs: Vec<PuiseuxSeries> = rel
        .coeffs
        .iter()
        .map(|c| poly_along_arc(c, arc))
        .collect::<Result<_>>()?;
    if coeffs.iter().all(|c| c.is_exact_zero()) {
        return Err(Error::Degenerate(
            "the relation vanishes identically along the arc".into(),
        ));
    }
    if coeffs.iter().skip(1).all(|c| c.is_exact_zero()) {
        return Err(Error::Degenerate(
            "the relation has no T-dependence along the arc".into(),
        ));
    }
    let mut attempt = opts;
    let mut last_err = None;
    for _ in 0..=ORDER_DOUBLINGS {
        match lift_once(&coeffs, attempt) {
            Ok((branches, reduced)) => {
                let (liftings, non_liftings) = branches.into_iter().partition(|b| b.is_bounded());
                return Ok(LiftingReport {
                    relation: rel.clone(),
                    arc: arc.clone(),
                    liftings,
                    non_liftings,
                    order: opts.order,
                    squarefree_reduced: reduced,
                });
            }
            Err(Error::OrderIndeterminate(msg)) => {
                last_err = Some(Error::OrderIndeterminate(msg));
                attempt.order *= exp(2, 1);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

fn lift_once(coeffs: &[PuiseuxSeries], opts: NewtonOptions) -> Result<(Vec<Branch>, bool)> {
    if let Some((biv, e)) = as_ramified_polynomials(coeffs) {
        // t -> t^e makes the coefficients rational polynomials; expand there and map back
        let ramified = NewtonOptions {
            order: opts.order * exp(e as i64, 1),
            ..opts
        };
        let set = bivariate_branches(&biv, ramified)?;
        let branches = set
            .branches
            .into_iter()
            .map(|b| Branch {
                series: b.series.unramify(e),
                residual: match b.residual {
                    r @ crate::puiseux::Residual::ExactZero => r,
                    crate::puiseux::Residual::Order(o) => {
                        crate::puiseux::Residual::Order(o / exp(e as i64, 1))
                    }
                    crate::puiseux::Residual::AtLeast(o) => {
                        crate::puiseux::Residual::AtLeast(o / exp(e as i64, 1))
                    }
                },
            })
            .collect();
        return Ok((branches, set.squarefree_reduced));
    }
    let set = series_branches(coeffs, opts, false)?;
    Ok((set.branches, set.squarefree_reduced))
}

/// Exact coefficients with rational values and nonnegative exponents become
/// polynomials in `t` after `t -> t^e`.
fn as_ramified_polynomials(coeffs: &[PuiseuxSeries]) -> Option<(Vec<UniPoly>, u32)> {
    if !coeffs.iter().all(|c| c.is_exact()) {
        return None;
    }
    let e = coeffs
        .iter()
        .fold(1i64, |acc, c| num_integer::lcm(acc, c.ramification_index()));
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let mut row: Vec<Rational> = Vec::new();
        for (x, v) in c.terms() {
            let k = x * exp(e, 1);
            if k.is_negative() {
                return None;
            }
            let k = *k.numer() as usize;
            if row.len() <= k {
                row.resize(k + 1, Rational::zero());
            }
            row[k] = v.as_rational()?;
        }
        out.push(UniPoly::new(row));
    }
    Some((out, e as u32))
}

/// Real roots of `P(x0, T)`, each listed once, in increasing order.
pub fn point_lift(rel: &Relation, point: &[RealAlgebraic]) -> Result<Vec<RealAlgebraic>> {
    if rel.arity() != point.len() {
        return Err(Error::ArityMismatch {
            expected: rel.arity(),
            found: point.len(),
        });
    }
    let values: Vec<RealAlgebraic> = rel
        .coeffs
        .iter()
        .map(|c| eval_alg(c, point))
        .collect::<Result<_>>()?;
    let values = unify_all(&values)?;
    let spec = UniPoly::new(values);
    if spec.is_zero() {
        return Err(Error::Degenerate(
            "the relation vanishes identically at the point".into(),
        ));
    }
    let field = spec.coeffs().iter().find_map(|c| c.field().cloned());
    let sq = spec.squarefree_part();
    let mut out = Vec::new();
    for iv in isolate_real_roots(&sq) {
        out.push(extend_by_root(field.as_ref(), &sq, &iv)?.root);
    }
    Ok(out)
}

/// One side of a limit comparison: an arc, or the value of `f` at the point.
#[derive(Clone, Debug)]
pub enum Side {
    Arc(Arc),
    Point,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Arc(a) => write!(f, "{a}"),
            Side::Point => write!(f, "value at the point"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    TwoLimits {
        first: Side,
        second: Side,
        l1: RealAlgebraic,
        l2: RealAlgebraic,
    },
    Diverges {
        arc: Arc,
        sign: i8,
    },
    /// Every arc found lies in the zero set of the denominator.
    PoleArc {
        arc: Arc,
    },
    /// No contradiction; evidence only, not a proof of continuity.
    NoneFound {
        limits: Vec<RealAlgebraic>,
    },
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub outcome: WitnessOutcome,
    /// Planes examined, counting up to and including the one that produced the witness.
    pub planes: usize,
    pub arcs: usize,
    pub pole_arcs: usize,
    pub planes_in_variety: usize,
    /// Arcs skipped because their limit could not be decided at this order.
    pub undecided: usize,
    pub value_at_point: Option<RealAlgebraic>,
}

#[derive(Clone, Copy, Debug)]
pub struct WitnessOptions {
    pub newton: NewtonOptions,
    pub budget: usize,
    /// Worker threads; `0` uses the global pool.
    pub workers: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            newton: NewtonOptions::default(),
            budget: 20,
            workers: 0,
        }
    }
}

struct PlaneResult {
    arcs: Vec<(Arc, Result<Limit>)>,
    in_variety: bool,
}

fn examine_plane(
    f: &RationalFn,
    v: &Variety,
    spec: &SliceSpec,
    opts: NewtonOptions,
) -> PlaneResult {
    let mut arcs = Vec::new();
    let mut in_variety = false;
    for s in [spec.clone(), spec.reversed()] {
        match slice_branches(v, &s, opts) {
            Ok(out) => {
                in_variety |= out.plane_in_variety;
                for a in out.arcs {
                    let lim = arc_limit(f, &a, opts.order);
                    arcs.push((a, lim));
                }
            }
            Err(e) => arcs.push((Arc::new(vec![]).unwrap(), Err(e))),
        }
    }
    PlaneResult { arcs, in_variety }
}

/// Search slice planes through `x0` for arcs along which `f` has different limits.
///
/// Planes are examined in a fixed order, possibly by several workers, and
/// merged in that order, so the first witness in enumeration order is
/// reported regardless of scheduling.
pub fn discontinuity_witness(
    f: &RationalFn,
    v: &Variety,
    x0: &[RealAlgebraic],
    opts: WitnessOptions,
) -> Result<WitnessReport> {
    if f.arity() != v.arity() || x0.len() != v.arity() {
        return Err(Error::ArityMismatch {
            expected: v.arity(),
            found: x0.len(),
        });
    }
    if !v.contains(x0)? {
        return Err(Error::Invalid("the point is not on the variety".into()));
    }
    let value = f.value_at(x0)?;
    let planes = slice_planes(v.arity(), opts.budget);
    let specs: Vec<SliceSpec> = planes
        .iter()
        .map(|(d1, d2)| SliceSpec::from_integers(detach_all(x0), d1, d2))
        .collect::<Result<_>>()?;
    let chunk = opts.workers.max(1) * 2;
    let pool = if opts.workers > 0 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?,
        )
    } else {
        None
    };
    let mut report = WitnessReport {
        outcome: WitnessOutcome::NoneFound { limits: Vec::new() },
        planes: 0,
        arcs: 0,
        pole_arcs: 0,
        planes_in_variety: 0,
        undecided: 0,
        value_at_point: value.clone(),
    };
    let mut reference: Option<(Side, RealAlgebraic)> = value.clone().map(|c| (Side::Point, c));
    let mut limits: Vec<RealAlgebraic> = Vec::new();
    let mut first_pole: Option<Arc> = None;
    for batch in specs.chunks(chunk) {
        let run = || -> Vec<PlaneResult> {
            batch
                .par_iter()
                .map(|s| examine_plane(f, v, s, opts.newton))
                .collect()
        };
        let results = match &pool {
            Some(p) => p.install(run),
            None => run(),
        };
        for res in results {
            report.planes += 1;
            report.planes_in_variety += res.in_variety as usize;
            for (arc, lim) in res.arcs {
                match lim {
                    Err(_) => report.undecided += 1,
                    Ok(Limit::PoleArc) => {
                        report.pole_arcs += 1;
                        first_pole.get_or_insert(arc);
                    }
                    Ok(Limit::Diverges(sign)) => {
                        report.arcs += 1;
                        report.outcome = WitnessOutcome::Diverges { arc, sign };
                        return Ok(report);
                    }
                    Ok(Limit::Finite(l)) => {
                        report.arcs += 1;
                        match &reference {
                            Some((side, l0)) if *l0 != l => {
                                report.outcome = WitnessOutcome::TwoLimits {
                                    first: side.clone(),
                                    second: Side::Arc(arc),
                                    l1: l0.clone(),
                                    l2: l,
                                };
                                return Ok(report);
                            }
                            Some(_) => {}
                            None => reference = Some((Side::Arc(arc), l.clone())),
                        }
                        if !limits.contains(&l) {
                            limits.push(l);
                        }
                    }
                }
            }
        }
    }
    report.outcome = match (report.arcs, first_pole) {
        (0, Some(arc)) => WitnessOutcome::PoleArc { arc },
        _ => WitnessOutcome::NoneFound { limits },
    };
    Ok(report)
}

#[derive(Clone, Debug)]
pub enum Containment {
    Pass {
        checked: usize,
    },
    /// Index of the first arc with `ord q > 0` but `ord p = 0`.
    Violation {
        index: usize,
    },
}

fn positive_order(s: &PuiseuxSeries) -> Result<bool> {
    match s.ord() {
        Order::Infinite => Ok(true),
        Order::Finite(e) => Ok(e.is_positive()),
        Order::AtLeast(e) if e.is_positive() => Ok(true),
        Order::AtLeast(_) => Err(Error::OrderIndeterminate("order lost to truncation".into())),
    }
}

/// Arc evidence for `Z(q) ⊂ Z(p)` on `V`.
pub fn zero_containment_evidence(
    p: &MultiPoly,
    q: &MultiPoly,
    v: &Variety,
    arcs: &[Arc],
    n: Exponent,
) -> Result<Containment> {
    for (i, a) in arcs.iter().enumerate() {
        let mut a = a.clone();
        if !verify_arc_on_variety(&mut a, v, n)?.pass {
            return Err(Error::Invalid(format!(
                "arc {} is not on the variety",
                i + 1
            )));
        }
        let qa = poly_along_arc(q, &a)?;
        if positive_order(&qa)? && !positive_order(&poly_along_arc(p, &a)?)? {
            return Ok(Containment::Violation { index: i });
        }
    }
    Ok(Containment::Pass {
        checked: arcs.len(),
    })
}

/// Per-arc data of the Lojasiewicz probe.
#[derive(Clone, Debug)]
pub struct LojEntry {
    pub arc: usize,
    /// `f(gamma)` itself, or a lifting when the arc is a pole arc.
    pub value: PuiseuxSeries,
    pub via_lifting: bool,
    /// `ord (f(gamma) - f0)`; `None` when the difference vanishes identically.
    pub ord_f: Option<Exponent>,
    /// `ord rho(gamma)`; `None` when `rho(gamma) = 0`.
    pub ord_rho: Option<Exponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LojBound {
    Exponent(i64),
    Unbounded,
    /// No arc constrains the exponent.
    Unconstrained,
}

impl fmt::Display for LojBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LojBound::Exponent(n) => write!(f, "{n}"),
            LojBound::Unbounded => write!(f, "UNBOUNDED"),
            LojBound::Unconstrained => write!(f, "UNCONSTRAINED"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LojReport {
    pub center: Vec<RealAlgebraic>,
    pub f0: RealAlgebraic,
    pub entries: Vec<LojEntry>,
    pub bound: LojBound,
}

/// Smallest `N` with `N ord (f - f(x0))(gamma) >= ord rho(gamma)` over the arcs,
/// `rho = sum (x_i - x0_i)^2`.
///
/// Pole arcs carry no value of `f`; when a relation `via` satisfied by `f` is
/// given, its liftings along such arcs stand in for `f(gamma)`.
pub fn lojasiewicz_probe(
    f: &RationalFn,
    x0: &[RealAlgebraic],
    arcs: &[Arc],
    via: Option<&Relation>,
    opts: NewtonOptions,
) -> Result<LojReport> {
    let n = x0.len();
    if f.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: f.arity(),
        });
    }
    let mut values: Vec<(usize, PuiseuxSeries, bool)> = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        if a.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: a.arity(),
            });
        }
        if !a.starts_at(x0) {
            return Err(Error::Invalid(format!(
                "arc {} does not start at the center",
                i + 1
            )));
        }
        match rational_along_arc(f, a, opts.order)? {
            AlongArc::Series(s) => values.push((i, s, false)),
            AlongArc::PoleArc => {
                let rel = via.ok_or_else(|| {
                    Error::Invalid(format!(
                        "arc {} lies in the pole set; give a relation with `via`",
                        i + 1
                    ))
                })?;
                let report = lift_arc(rel, a, opts)?;
                if report.liftings.is_empty() {
                    return Err(Error::Invalid(format!(
                        "the relation has no bounded lifting along arc {}",
                        i + 1
                    )));
                }
                for b in report.liftings {
                    values.push((i, b.series, true));
                }
            }
        }
    }
    for (i, s, _) in &values {
        if let Limit::Diverges(_) = series_limit(s)? {
            return Err(Error::Invalid(format!(
                "the function diverges along arc {}",
                i + 1
            )));
        }
    }
    let f0 = match f.value_at(x0)? {
        Some(v) => v,
        None => {
            let mut common: Option<RealAlgebraic> = None;
            for (i, s, _) in &values {
                let l = match series_limit(s)? {
                    Limit::Finite(l) => l,
                    _ => unreachable!("divergence excluded above"),
                };
                match &common {
                    Some(c) if *c != l => {
                        return Err(Error::Invalid(format!(
                            "arc {} has a different limit: no continuous value",
                            i + 1
                        )))
                    }
                    Some(_) => {}
                    None => common = Some(l),
                }
            }
            common
                .ok_or_else(|| Error::Invalid("no arc determines the value at the center".into()))?
        }
    };
    let mut entries = Vec::new();
    let mut bound = LojBound::Unconstrained;
    for (i, s, via_lifting) in values {
        let a = &arcs[i];
        let diff = if a.is_exact() && !via_lifting {
            // exact numerator: (p - f0 q)(gamma) / q(gamma)
            let pa = poly_along_arc(&f.p, a)?;
            let qa = poly_along_arc(&f.q, a)?;
            let num = pa.sub(&qa.scale(&f0));
            match (num.ord(), qa.ord()) {
                (Order::Infinite, _) => None,
                (Order::Finite(o1), Order::Finite(o2)) => Some(o1 - o2),
                _ => return Err(Error::OrderIndeterminate("order lost to truncation".into())),
            }
        } else {
            match s.sub(&PuiseuxSeries::constant(f0.clone())).ord() {
                Order::Infinite => None,
                Order::Finite(o) => Some(o),
                Order::AtLeast(_) => {
                    return Err(Error::OrderIndeterminate("order lost to truncation".into()))
                }
            }
        };
        let mut rho = PuiseuxSeries::zero();
        for (c, x) in a.components().iter().zip(x0) {
            let d = c.sub(&PuiseuxSeries::constant(x.clone()));
            rho = rho.add(&d.mul(&d));
        }
        let ord_rho = match rho.ord() {
            Order::Infinite => None,
            Order::Finite(o) => Some(o),
            Order::AtLeast(_) => {
                return Err(Error::OrderIndeterminate("order lost to truncation".into()))
            }
        };
        if let (Some(of), Some(or)) = (diff, ord_rho) {
            let need = if of.is_zero() {
                LojBound::Unbounded
            } else {
                LojBound::Exponent(ceil_exponent(&(or / of)))
            };
            bound = match (bound, need) {
                (LojBound::Unbounded, _) | (_, LojBound::Unbounded) => LojBound::Unbounded,
                (LojBound::Exponent(a), LojBound::Exponent(b)) => LojBound::Exponent(a.max(b)),
                (LojBound::Unconstrained, b) => b,
                (a, LojBound::Unconstrained) => a,
            };
        }
        entries.push(LojEntry {
            arc: i,
            value: s,
            via_lifting,
            ord_f: diff,
            ord_rho,
        });
    }
    Ok(LojReport {
        center: x0.to_vec(),
        f0,
        entries,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn var(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn series(terms: &[(i64, i64, i64, i64)]) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(
            terms
                .iter()
                .map(|&(en, ed, cn, cd)| (exp(en, ed), RealAlgebraic::from_rational(rat(cn, cd))))
                .collect(),
            None,
        )
    }

    fn pt(xs: &[i64]) -> Vec<RealAlgebraic> {
        xs.iter().map(|&x| RealAlgebraic::from_int(x)).collect()
    }

    fn t() -> PuiseuxSeries {
        PuiseuxSeries::t()
    }

    fn zero() -> PuiseuxSeries {
        PuiseuxSeries::zero()
    }

    fn octic() -> Variety {
        let (x, y, z1, z2) = (var(4, 0), var(4, 1), var(4, 2), var(4, 3));
        Variety::new(
            names(&["x", "y", "z1", "z2"]),
            vec![x.pow(8).sub(&z1.pow(2).add(&z2.pow(2)).mul(&y.pow(8)))],
        )
        .unwrap()
    }

    fn n16() -> Exponent {
        exp(16, 1)
    }

    #[test]
    fn cartan_along_arcs() {
        let (x, y) = (var(3, 0), var(3, 1));
        let f = RationalFn::new(x.pow(3), x.pow(2).add(&y.pow(2))).unwrap();
        let arc = Arc::new(vec![t(), t(), series(&[(1, 1, 1, 2)])]).unwrap();
        match rational_along_arc(&f, &arc, n16()).unwrap() {
            AlongArc::Series(s) => assert!(s.same_as(&series(&[(1, 1, 1, 2)])), "{s}"),
            AlongArc::PoleArc => panic!(),
        }
        assert!(matches!(arc_limit(&f, &arc, n16()).unwrap(), Limit::Finite(l) if l.is_zero()));
        let stick = Arc::new(vec![zero(), zero(), t()]).unwrap();
        assert!(matches!(
            rational_along_arc(&f, &stick, n16()).unwrap(),
            AlongArc::PoleArc
        ));
    }

    #[test]
    fn divergence_and_octic_limit() {
        let (x, y) = (var(2, 0), var(2, 1));
        let f = RationalFn::new(x.clone(), x.pow(2).add(&y.pow(2))).unwrap();
        let arc = Arc::new(vec![t(), zero()]).unwrap();
        match rational_along_arc(&f, &arc, n16()).unwrap() {
            AlongArc::Series(s) => assert!(s.same_as(&series(&[(-1, 1, 1, 1)]))),
            AlongArc::PoleArc => panic!(),
        }
        assert!(matches!(
            arc_limit(&f, &arc, n16()).unwrap(),
            Limit::Diverges(1)
        ));
        let g = RationalFn::new(var(4, 0), var(4, 1)).unwrap();
        let arc = Arc::new(vec![
            t(),
            t(),
            PuiseuxSeries::from_rational(rat(1, 1)),
            zero(),
        ])
        .unwrap();
        assert!(
            matches!(arc_limit(&g, &arc, n16()).unwrap(), Limit::Finite(l) if l == RealAlgebraic::from_int(1))
        );
    }

    fn rel(p: MultiPoly, arity: usize) -> Relation {
        Relation::from_poly(&p, arity).unwrap()
    }

    fn shown(bs: &[Branch]) -> Vec<String> {
        bs.iter().map(|b| b.series.to_string()).collect()
    }

    #[test]
    fn liftings() {
        let opts = NewtonOptions::default();
        // T^2 - x^2 along (t)
        let (x, tt) = (var(2, 0), var(2, 1));
        let r = lift_arc(
            &rel(tt.pow(2).sub(&x.pow(2)), 1),
            &Arc::new(vec![t()]).unwrap(),
            opts,
        )
        .unwrap();
        assert_eq!(shown(&r.liftings), vec!["-t", "t"]);
        // T^4 - (z1^2 + z2^2) along the octic's (0,0,0,t)
        let (z1, z2, tt) = (var(5, 2), var(5, 3), var(5, 4));
        let stick = Arc::new(vec![zero(), zero(), zero(), t()]).unwrap();
        let r = lift_arc(
            &rel(tt.pow(4).sub(&z1.pow(2).add(&z2.pow(2))), 4),
            &stick,
            opts,
        )
        .unwrap();
        assert_eq!(shown(&r.liftings), vec!["-t^(1/2)", "t^(1/2)"]);
        assert!(r.non_liftings.is_empty());
        // T^3 - z^2 along (0,0,t)
        let (z, tt) = (var(4, 2), var(4, 3));
        let r = lift_arc(
            &rel(tt.pow(3).sub(&z.pow(2)), 3),
            &Arc::new(vec![zero(), zero(), t()]).unwrap(),
            opts,
        )
        .unwrap();
        assert_eq!(shown(&r.liftings), vec!["t^(2/3)"]);
        // T^3 - (1 + z^2) along z = t
        let r = lift_arc(
            &rel(tt.pow(3).sub(&MultiPoly::one(4).add(&z.pow(2))), 3),
            &Arc::new(vec![t(), t(), t()]).unwrap(),
            NewtonOptions::with_order(6),
        )
        .unwrap();
        assert_eq!(shown(&r.liftings), vec!["1 + 1/3*t^2 - 1/9*t^4 + O(t^6)"]);
        // negative-order roots are not liftings: t T - 1 along (t)
        let (x, tt) = (var(2, 0), var(2, 1));
        let r = lift_arc(
            &rel(x.mul(&tt).sub(&MultiPoly::one(2)), 1),
            &Arc::new(vec![t()]).unwrap(),
            opts,
        )
        .unwrap();
        assert!(r.liftings.is_empty() && r.non_liftings.len() == 1);
    }

    #[test]
    fn point_liftings() {
        let (x, tt) = (var(2, 0), var(2, 1));
        let one = MultiPoly::one(2);
        let r = point_lift(&rel(tt.pow(2).sub(&one.add(&x.pow(2))), 1), &pt(&[0])).unwrap();
        assert_eq!(
            r,
            vec![RealAlgebraic::from_int(-1), RealAlgebraic::from_int(1)]
        );
        let r = point_lift(&rel(tt.pow(2).sub(&x.pow(2)), 1), &pt(&[0])).unwrap();
        assert_eq!(r, vec![RealAlgebraic::from_int(0)]);
        let r = point_lift(&rel(tt.pow(3).sub(&one.add(&x.pow(2))), 1), &pt(&[0])).unwrap();
        assert_eq!(r, vec![RealAlgebraic::from_int(1)]);
        assert!(point_lift(&rel(x.mul(&tt), 1), &pt(&[0])).is_err());
    }

    #[test]
    fn octic_witnesses() {
        let v = octic();
        let (x, y) = (var(4, 0), var(4, 1));
        let x0 = pt(&[0, 0, 1, 0]);
        let opts = WitnessOptions::default();
        let r = discontinuity_witness(
            &RationalFn::new(x.clone(), y.clone()).unwrap(),
            &v,
            &x0,
            opts,
        )
        .unwrap();
        match &r.outcome {
            WitnessOutcome::TwoLimits { l1, l2, .. } => {
                let mut ls = [l1.clone(), l2.clone()];
                ls.sort_by(|a, b| a.compare(b));
                assert_eq!(
                    ls,
                    [RealAlgebraic::from_int(-1), RealAlgebraic::from_int(1)]
                );
            }
            o => panic!("{o:?}"),
        }
        let r = discontinuity_witness(&RationalFn::new(x.pow(2), y.pow(2)).unwrap(), &v, &x0, opts)
            .unwrap();
        match &r.outcome {
            WitnessOutcome::NoneFound { limits } => {
                assert_eq!(limits, &vec![RealAlgebraic::from_int(1)])
            }
            o => panic!("{o:?}"),
        }
        assert_eq!(r.planes, 20);
    }

    #[test]
    fn plane_witnesses() {
        let v = Variety::affine(names(&["x", "y"]));
        let (x, y) = (var(2, 0), var(2, 1));
        let f = RationalFn::new(x.clone(), x.pow(2).add(&y.pow(2))).unwrap();
        let r = discontinuity_witness(&f, &v, &pt(&[0, 0]), WitnessOptions::default()).unwrap();
        assert!(
            matches!(r.outcome, WitnessOutcome::Diverges { .. }),
            "{:?}",
            r.outcome
        );
        let g = RationalFn::new(x.clone(), y.clone()).unwrap();
        let r = discontinuity_witness(&g, &v, &pt(&[1, 0]), WitnessOptions::default()).unwrap();
        assert!(
            matches!(r.outcome, WitnessOutcome::Diverges { .. }),
            "{:?}",
            r.outcome
        );
        let h = RationalFn::new(x.mul(&y), x.pow(2).add(&y.pow(2))).unwrap();
        let r = discontinuity_witness(&h, &v, &pt(&[0, 0]), WitnessOptions::default()).unwrap();
        assert!(
            matches!(r.outcome, WitnessOutcome::TwoLimits { .. }),
            "{:?}",
            r.outcome
        );
    }

    #[test]
    fn containment() {
        let (x, y) = (var(2, 0), var(2, 1));
        let plane = Variety::affine(names(&["x", "y"]));
        let arcs = vec![
            Arc::new(vec![t(), zero()]).unwrap(),
            Arc::new(vec![t(), t()]).unwrap(),
        ];
        let r =
            zero_containment_evidence(&x, &x.pow(2).add(&y.pow(2)), &plane, &arcs, n16()).unwrap();
        assert!(matches!(r, Containment::Pass { checked: 2 }));
        let line = Variety::affine(names(&["x"]));
        let r = zero_containment_evidence(
            &MultiPoly::one(1),
            &var(1, 0),
            &line,
            &[Arc::new(vec![t()]).unwrap()],
            n16(),
        );
        assert!(matches!(r.unwrap(), Containment::Violation { index: 0 }));
    }

    #[test]
    fn lojasiewicz() {
        let opts = NewtonOptions::default();
        let (x, y) = (var(3, 0), var(3, 1));
        let f = RationalFn::new(x.pow(3), x.pow(2).add(&y.pow(2))).unwrap();
        let arc = Arc::new(vec![t(), t(), series(&[(1, 1, 1, 2)])]).unwrap();
        let r = lojasiewicz_probe(&f, &pt(&[0, 0, 0]), &[arc], None, opts).unwrap();
        assert_eq!(r.bound, LojBound::Exponent(2));
        let r = lojasiewicz_probe(
            &RationalFn::polynomial(var(1, 0)),
            &pt(&[0]),
            &[Arc::new(vec![t()]).unwrap()],
            None,
            opts,
        )
        .unwrap();
        assert_eq!(r.bound, LojBound::Exponent(2));
        let (x4, y4, z1, z2, tt) = (var(4, 0), var(4, 1), var(5, 2), var(5, 3), var(5, 4));
        let g = RationalFn::new(x4.pow(2), y4.pow(2)).unwrap();
        let stick = Arc::new(vec![zero(), zero(), zero(), t()]).unwrap();
        let via = rel(tt.pow(4).sub(&z1.pow(2).add(&z2.pow(2))), 4);
        assert!(lojasiewicz_probe(&g, &pt(&[0, 0, 0, 0]), std::slice::from_ref(&stick), None, opts).is_err());
        let r = lojasiewicz_probe(&g, &pt(&[0, 0, 0, 0]), &[stick], Some(&via), opts).unwrap();
        assert_eq!(r.bound, LojBound::Exponent(4));
    }
}
