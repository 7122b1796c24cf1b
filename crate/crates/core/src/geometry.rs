//! Varieties, rational functions, arcs, and slicing a hypersurface by planes.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::rational::{exp, Exponent, Rational};
use crate::arith::{MultiPoly, RealAlgebraic, UniPoly};
use crate::error::{Error, Result};
use crate::puiseux::newton::{bivariate_branches, series_branches, NewtonOptions, Residual};
use crate::puiseux::{Order, PuiseuxSeries};

/// Common zero set of polynomials in `names.len()` variables; no polynomials
/// means the whole affine space.
#[derive(Clone, Debug, PartialEq)]
pub struct Variety {
    names: Vec<String>,
    polys: Vec<MultiPoly>,
}

impl Variety {
    pub fn new(names: Vec<String>, polys: Vec<MultiPoly>) -> Result<Self> {
        for p in &polys {
            if p.arity() != names.len() {
                return Err(Error::ArityMismatch {
                    expected: names.len(),
                    found: p.arity(),
                });
            }
        }
        Ok(Variety { names, polys })
    }

    pub fn affine(names: Vec<String>) -> Self {
        Variety {
            names,
            polys: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// The single defining polynomial of a hypersurface.
    pub fn hypersurface(&self) -> Option<&MultiPoly> {
        match self.polys.as_slice() {
            [h] => Some(h),
            _ => None,
        }
    }

    /// One polynomial with the same real zero set: `h` itself, the sum of
    /// squares of several equations, or `0` for the whole space.
    pub fn real_hypersurface(&self) -> MultiPoly {
        match self.polys.as_slice() {
            [h] => h.clone(),
            ps => ps
                .iter()
                .fold(MultiPoly::zero(self.arity()), |acc, p| acc.add(&p.mul(p))),
        }
    }

    pub fn contains(&self, point: &[RealAlgebraic]) -> Result<bool> {
        for p in &self.polys {
            if !eval_alg(p, point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `p / q` with `q` not the zero polynomial; coprimality is not required.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub p: MultiPoly,
    pub q: MultiPoly,
}

impl RationalFn {
    pub fn new(p: MultiPoly, q: MultiPoly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if p.arity() != q.arity() {
            return Err(Error::ArityMismatch {
                expected: p.arity(),
                found: q.arity(),
            });
        }
        Ok(RationalFn { p, q })
    }

    pub fn polynomial(p: MultiPoly) -> Self {
        let q = MultiPoly::one(p.arity());
        RationalFn { p, q }
    }

    pub fn arity(&self) -> usize {
        self.p.arity()
    }

    /// `p(x) / q(x)`, or `None` when `q(x) = 0`.
    pub fn value_at(&self, point: &[RealAlgebraic]) -> Result<Option<RealAlgebraic>> {
        let q = eval_alg(&self.q, point)?;
        if q.is_zero() {
            return Ok(None);
        }
        Ok(Some(eval_alg(&self.p, point)?.div(&q)?))
    }
}

/// Evaluate a rational polynomial at a real algebraic point.
pub fn eval_alg(p: &MultiPoly, point: &[RealAlgebraic]) -> Result<RealAlgebraic> {
    if point.len() != p.arity() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            found: point.len(),
        });
    }
    let mut acc = RealAlgebraic::from_int(0);
    for (e, c) in p.terms() {
        let mut term = RealAlgebraic::from_rational(c.clone());
        for (x, &k) in point.iter().zip(e) {
            if k > 0 {
                term = term.mul(&x.pow(k));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// A tuple of Puiseux series of nonnegative order, approaching `origin` as `t -> 0+`.
#[derive(Clone, Debug)]
pub struct Arc {
    components: Vec<PuiseuxSeries>,
    origin: Vec<RealAlgebraic>,
    verified: Option<Vec<Residual>>,
}

impl Arc {
    pub fn new(components: Vec<PuiseuxSeries>) -> Result<Self> {
        for c in &components {
            let ok = match c.ord() {
                Order::Finite(e) | Order::AtLeast(e) => !e.is_negative(),
                Order::Infinite => true,
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "arc component {c} has negative order"
                )));
            }
        }
        let origin = components.iter().map(|c| c.constant_term()).collect();
        Ok(Arc {
            components,
            origin,
            verified: None,
        })
    }

    pub fn components(&self) -> &[PuiseuxSeries] {
        &self.components
    }

    pub fn origin(&self) -> &[RealAlgebraic] {
        &self.origin
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(|c| c.is_exact())
    }

    /// Residuals recorded by the last successful [`verify_arc_on_variety`].
    pub fn verified(&self) -> Option<&[Residual]> {
        self.verified.as_deref()
    }

    /// The stored terms read as an exact arc.
    pub fn known_part(&self) -> Arc {
        let components = self
            .components
            .iter()
            .map(|c| PuiseuxSeries::from_terms(c.terms().to_vec(), None))
            .collect();
        Arc {
            components,
            origin: self.origin.clone(),
            verified: None,
        }
    }

    pub fn starts_at(&self, point: &[RealAlgebraic]) -> bool {
        point.len() == self.origin.len() && self.origin.iter().zip(point).all(|(a, b)| a == b)
    }

    /// Substitute `t -> t^m`.
    pub fn ramify(&self, m: u32) -> Arc {
        Arc {
            components: self.components.iter().map(|c| c.ramify(m)).collect(),
            origin: self.origin.clone(),
            verified: self.verified.clone(),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `p(gamma(t))`: exact when the arc is exact, otherwise truncated soundly.
pub fn poly_along_arc(p: &MultiPoly, arc: &Arc) -> Result<PuiseuxSeries> {
    compose(p, arc.components(), None)
}

/// `p(gamma(t))` known below `theta` only; valid because arc components have order `>= 0`.
pub fn poly_along_arc_to(p: &MultiPoly, arc: &Arc, theta: Exponent) -> Result<PuiseuxSeries> {
    compose(p, arc.components(), Some(theta))
}

fn compose(
    p: &MultiPoly,
    comps: &[PuiseuxSeries],
    theta: Option<Exponent>,
) -> Result<PuiseuxSeries> {
    if p.arity() != comps.len() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            found: comps.len(),
        });
    }
    let cut = |s: PuiseuxSeries| match theta {
        Some(th) => s.truncate(th),
        None => s,
    };
    let mut powers: Vec<Vec<PuiseuxSeries>> = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let mut row = vec![PuiseuxSeries::from_rational(Rational::from_integer(
            1.into(),
        ))];
        for _ in 0..p.degree_in(i) {
            let next = cut(row.last().unwrap().mul(c));
            row.push(next);
        }
        powers.push(row);
    }
    let mut acc = match theta {
        Some(th) => PuiseuxSeries::big_o(th),
        None => PuiseuxSeries::zero(),
    };
    for (e, c) in p.terms() {
        let mut term = PuiseuxSeries::from_rational(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = cut(term.mul(&powers[i][k as usize]));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Outcome of checking an arc against the defining polynomials.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub residuals: Vec<Residual>,
    pub order: Exponent,
    pub pass: bool,
}

/// Residual of every defining polynomial along the arc.
///
/// Exact arcs are composed exactly. A truncated arc is checked through its
/// stored terms, which are known exactly, to order `n`.
pub fn verify_arc_on_variety(arc: &mut Arc, v: &Variety, n: Exponent) -> Result<VerifyReport> {
    if arc.arity() != v.arity() {
        return Err(Error::ArityMismatch {
            expected: v.arity(),
            found: arc.arity(),
        });
    }
    let exact = arc.is_exact();
    let known = arc.known_part();
    let mut residuals = Vec::new();
    for p in v.polys() {
        let r = if exact {
            poly_along_arc(p, &known)?
        } else {
            poly_along_arc_to(p, &known, n)?
        };
        residuals.push(match r.ord() {
            Order::Infinite => Residual::ExactZero,
            Order::Finite(o) => Residual::Order(o),
            Order::AtLeast(o) => Residual::AtLeast(o),
        });
    }
    let pass = residuals.iter().all(|r| r.reaches(n));
    arc.verified = Some(residuals.clone());
    Ok(VerifyReport {
        residuals,
        order: n,
        pass,
    })
}

/// A plane `x0 + s d1 + u d2` through a base point.
#[derive(Clone, Debug)]
pub struct SliceSpec {
    pub base: Vec<RealAlgebraic>,
    pub d1: Vec<Rational>,
    pub d2: Vec<Rational>,
}

impl SliceSpec {
    pub fn new(base: Vec<RealAlgebraic>, d1: Vec<Rational>, d2: Vec<Rational>) -> Result<Self> {
        let n = base.len();
        if d1.len() != n || d2.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: d1.len().max(d2.len()),
            });
        }
        let independent =
            (0..n).any(|i| (0..i).any(|j| !(&d1[i] * &d2[j] - &d1[j] * &d2[i]).is_zero()));
        if !independent {
            return Err(Error::Invalid(
                "slice directions are linearly dependent".into(),
            ));
        }
        Ok(SliceSpec { base, d1, d2 })
    }

    pub fn from_integers(base: Vec<RealAlgebraic>, d1: &[i64], d2: &[i64]) -> Result<Self> {
        let conv = |d: &[i64]| {
            d.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        };
        Self::new(base, conv(d1), conv(d2))
    }

    /// The same plane traversed with `-d1`.
    pub fn reversed(&self) -> Self {
        SliceSpec {
            base: self.base.clone(),
            d1: self.d1.iter().map(|x| -x).collect(),
            d2: self.d2.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SliceOutcome {
    pub arcs: Vec<Arc>,
    /// The restriction of `h` to the plane vanishes identically.
    pub plane_in_variety: bool,
    /// Real branches not passing through the base point (nonzero constant term or negative order).
    pub skipped: usize,
    pub squarefree_reduced: bool,
}

/// Arcs `x0 + t d1 + u(t) d2` on the hypersurface through `x0`, one per real
/// branch `u(t)` of the restricted equation with `u(0) = 0`.
pub fn slice_branches(v: &Variety, spec: &SliceSpec, opts: NewtonOptions) -> Result<SliceOutcome> {
    if spec.base.len() != v.arity() {
        return Err(Error::ArityMismatch {
            expected: v.arity(),
            found: spec.base.len(),
        });
    }
    if !v.contains(&spec.base)? {
        return Err(Error::Invalid("base point is not on the variety".into()));
    }
    let h = v.real_hypersurface();
    let f = restrict_to_plane(&h, spec);
    if f.is_empty() {
        // the whole plane lies in V: the straight line through the base point is an arc
        let comps = (0..v.arity())
            .map(|i| {
                PuiseuxSeries::constant(spec.base[i].clone()).add(
                    &PuiseuxSeries::t().scale(&RealAlgebraic::from_rational(spec.d1[i].clone())),
                )
            })
            .collect();
        let arcs = vec![Arc::new(comps)?];
        return Ok(SliceOutcome {
            arcs,
            plane_in_variety: true,
            skipped: 0,
            squarefree_reduced: false,
        });
    }
    let dy = f.keys().map(|&(_, k)| k).max().unwrap_or(0) as usize;
    let rational: Option<Vec<Vec<Rational>>> = {
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dy + 1];
        let mut ok = true;
        for (&(i, k), c) in &f {
            match c.as_rational() {
                Some(r) => {
                    let row = &mut rows[k as usize];
                    if row.len() <= i as usize {
                        row.resize(i as usize + 1, Rational::zero());
                    }
                    row[i as usize] = r;
                }
                None => ok = false,
            }
        }
        ok.then_some(rows)
    };
    let set = match rational {
        Some(rows) => bivariate_branches(
            &rows.into_iter().map(UniPoly::new).collect::<Vec<_>>(),
            opts,
        )?,
        None => {
            let mut coeffs: Vec<Vec<(Exponent, RealAlgebraic)>> = vec![Vec::new(); dy + 1];
            for (&(i, k), c) in &f {
                coeffs[k as usize].push((exp(i as i64, 1), c.clone()));
            }
            let coeffs: Vec<PuiseuxSeries> = coeffs
                .into_iter()
                .map(|t| PuiseuxSeries::from_terms(t, None))
                .collect();
            series_branches(&coeffs, opts, false)?
        }
    };
    let mut arcs = Vec::new();
    let mut skipped = 0;
    let t = PuiseuxSeries::t();
    for b in &set.branches {
        let through = match b.series.ord() {
            Order::Infinite => true,
            Order::Finite(e) | Order::AtLeast(e) => e.is_positive(),
        };
        if !through {
            skipped += 1;
            continue;
        }
        let comps = (0..v.arity())
            .map(|i| {
                PuiseuxSeries::constant(spec.base[i].clone())
                    .add(&t.scale(&RealAlgebraic::from_rational(spec.d1[i].clone())))
                    .add(
                        &b.series
                            .scale(&RealAlgebraic::from_rational(spec.d2[i].clone())),
                    )
            })
            .collect();
        let mut arc = Arc::new(comps)?;
        let report = verify_arc_on_variety(&mut arc, v, opts.order)?;
        debug_assert!(report.pass, "slice arc {arc} fails verification");
        arcs.push(arc);
    }
    Ok(SliceOutcome {
        arcs,
        plane_in_variety: false,
        skipped,
        squarefree_reduced: set.squarefree_reduced,
    })
}

type Bivariate = BTreeMap<(u32, u32), RealAlgebraic>;

fn biv_mul(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let mut out: Bivariate = BTreeMap::new();
    for (&(i1, k1), c1) in a {
        for (&(i2, k2), c2) in b {
            let key = (i1 + i2, k1 + k2);
            let p = c1.mul(c2);
            match out.get_mut(&key) {
                Some(slot) => *slot = slot.add(&p),
                None => {
                    out.insert(key, p);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `h(x0 + s d1 + u d2)` as a map from `(deg_s, deg_u)` to coefficients.
fn restrict_to_plane(h: &MultiPoly, spec: &SliceSpec) -> Bivariate {
    let n = spec.base.len();
    let mut powers: Vec<Vec<Bivariate>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lin: Bivariate = BTreeMap::new();
        for (key, c) in [
            ((0, 0), spec.base[i].clone()),
            ((1, 0), RealAlgebraic::from_rational(spec.d1[i].clone())),
            ((0, 1), RealAlgebraic::from_rational(spec.d2[i].clone())),
        ] {
            if !c.is_zero() {
                lin.insert(key, c);
            }
        }
        let mut row: Vec<Bivariate> = vec![BTreeMap::from([((0, 0), RealAlgebraic::from_int(1))])];
        for _ in 0..h.degree_in(i) {
            let next = biv_mul(row.last().unwrap(), &lin);
            row.push(next);
        }
        powers.push(row);
    }
    let mut acc: Bivariate = BTreeMap::new();
    for (e, c) in h.terms() {
        let mut term: Bivariate =
            BTreeMap::from([((0, 0), RealAlgebraic::from_rational(c.clone()))]);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = biv_mul(&term, &powers[i][k as usize]);
            }
        }
        for (key, c) in term {
            match acc.get_mut(&key) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    acc.insert(key, c);
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// `h` followed by its partial derivatives; their common zeros are the singular points.
pub fn singular_points_hint(v: &Variety) -> Result<Vec<MultiPoly>> {
    let h = v
        .hypersurface()
        .ok_or_else(|| Error::Invalid("singular locus hint needs a hypersurface".into()))?;
    let mut out = vec![h.clone()];
    out.extend((0..v.arity()).map(|i| h.partial(i)));
    Ok(out)
}

/// Whether `point` is a singular point of the hypersurface.
pub fn is_singular_at(v: &Variety, point: &[RealAlgebraic]) -> Result<bool> {
    for g in singular_points_hint(v)? {
        if !eval_alg(&g, point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primitive integer directions up to sign, by increasing height, then support size.
pub fn directions(n: usize, count: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut height = 1i64;
    while out.len() < count && n > 0 {
        let side = (2 * height + 1) as usize;
        let mut level = Vec::new();
        for code in 0..side.pow(n as u32) {
            let mut rest = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let digit = (rest % side) as i64 - height;
                    rest /= side;
                    digit
                })
                .collect();
            let h = v.iter().map(|x| x.abs()).max().unwrap();
            let first = v.iter().find(|x| **x != 0).copied().unwrap_or(0);
            let g = v.iter().fold(0i64, |g, x| g.gcd(x));
            if h == height && first > 0 && g == 1 {
                level.push(v);
            }
        }
        level.sort_by_key(|v| {
            let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
            let shape: Vec<(i64, bool)> = v.iter().map(|x| (x.abs(), *x < 0)).collect();
            (support.len(), support, shape)
        });
        out.extend(level);
        height += 1;
    }
    out
}

/// The first `count` ordered direction pairs: pairs among the first `r + 1`
/// directions come before any pair involving direction `r + 1`.
pub fn slice_planes(n: usize, count: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    if n < 2 {
        return Vec::new();
    }
    let mut need = 2;
    while need * (need - 1) < count {
        need += 1;
    }
    let dirs = directions(n, need);
    let mut pairs = Vec::new();
    for r in 1..dirs.len() {
        for i in 0..r {
            pairs.push((dirs[i].clone(), dirs[r].clone()));
        }
        for j in 0..r {
            pairs.push((dirs[r].clone(), dirs[j].clone()));
        }
    }
    pairs.truncate(count);
    pairs
}
