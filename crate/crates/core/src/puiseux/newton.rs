//! Newton-Puiseux expansion of the real branches of `F(t, Y) = 0` for `t > 0`.
//!
//! Exponents stay rational throughout, so no explicit ramification is needed.
//! While several roots share a prefix the shifted polynomial `G(Z) = F(y + Z)`
//! is kept exact; once a root is simple the expansion continues with linear
//! steps on coefficients truncated just far enough to decide the residual.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::bivariate::{from_multipoly, squarefree_y, Bivariate};
use super::series::{Order, PuiseuxSeries};
use crate::arith::algebraic::{extend_by_root, unify_all};
use crate::arith::rational::{exp, fmt_exponent, Exponent};
use crate::arith::{isolate_real_roots, MultiPoly, NumberField, RealAlgebraic, UniPoly};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: i64 = 16;
pub const DEFAULT_TOWER_DEPTH: usize = 3;

/// Exact prefixes this short are substituted back exactly to detect exact roots;
/// the smaller cap applies once coefficients leave `Q`.
const EXACT_CHECK_TERMS: usize = 12;
const EXACT_CHECK_TERMS_ALGEBRAIC: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NewtonOptions {
    /// Target residual order `N`.
    pub order: Exponent,
    /// Maximal number of proper coefficient field extensions along one branch.
    pub tower_depth: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            order: exp(DEFAULT_ORDER, 1),
            tower_depth: DEFAULT_TOWER_DEPTH,
        }
    }
}

impl NewtonOptions {
    pub fn with_order(n: i64) -> Self {
        NewtonOptions {
            order: exp(n, 1),
            ..Self::default()
        }
    }
}

/// Order of `F(t, y(t))` for a computed branch `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    ExactZero,
    Order(Exponent),
    AtLeast(Exponent),
}

impl Residual {
    /// Whether the residual is known to reach order `n`.
    pub fn reaches(&self, n: Exponent) -> bool {
        match self {
            Residual::ExactZero => true,
            Residual::Order(o) | Residual::AtLeast(o) => *o >= n,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::ExactZero => write!(f, "exact"),
            Residual::Order(o) => write!(f, "{}", fmt_exponent(o)),
            Residual::AtLeast(o) => write!(f, ">= {}", fmt_exponent(o)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub series: PuiseuxSeries,
    pub residual: Residual,
}

impl Branch {
    pub fn order(&self) -> Order {
        self.series.ord()
    }

    /// Nonnegative order: the branch lies in the valuation ring.
    pub fn is_bounded(&self) -> bool {
        match self.series.ord() {
            Order::Finite(e) => !e.is_negative(),
            Order::Infinite => true,
            Order::AtLeast(e) => !e.is_negative(),
        }
    }

    /// All stored exponents are integers (the only thing a truncation can tell
    /// about membership in `R[[t]]`).
    pub fn integral_up_to_order(&self) -> bool {
        self.series.ramification_index() == 1
    }
}

#[derive(Clone, Debug)]
pub struct BranchSet {
    pub branches: Vec<Branch>,
    pub order: Exponent,
    /// `Y`-degree of the polynomial actually expanded.
    pub degree: usize,
    /// A repeated factor was removed before expanding.
    pub squarefree_reduced: bool,
}

impl BranchSet {
    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }
}

/// Real branches of `f(t, Y)`, `f` in two variables with `t` first.
pub fn newton_puiseux(f: &MultiPoly, n: i64) -> Result<BranchSet> {
    newton_puiseux_with(f, 0, 1, NewtonOptions::with_order(n))
}

pub fn newton_puiseux_with(
    f: &MultiPoly,
    t_var: usize,
    y_var: usize,
    opts: NewtonOptions,
) -> Result<BranchSet> {
    let biv = from_multipoly(f, t_var, y_var)?;
    bivariate_branches(&biv, opts)
}

/// Real branches of a polynomial in `Y` with coefficients in `Q[t]`.
pub fn bivariate_branches(f: &Bivariate, opts: NewtonOptions) -> Result<BranchSet> {
    if f.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let (sq, reduced) = squarefree_y(f);
    let coeffs: Vec<PuiseuxSeries> = sq.iter().map(poly_to_series).collect();
    let mut set = series_branches(&coeffs, opts, true)?;
    set.squarefree_reduced = reduced;
    Ok(set)
}

pub fn poly_to_series(p: &UniPoly) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (exp(i as i64, 1), RealAlgebraic::from_rational(c.clone())))
            .collect(),
        None,
    )
}

/// Real branches of `sum_k coeffs[k] Y^k` with Puiseux series coefficients.
///
/// With `squarefree` unset, roots that still coincide once both the residual
/// and the next exponents pass `N` are reported once, truncated before the
/// point where they would split.
pub fn series_branches(
    coeffs: &[PuiseuxSeries],
    opts: NewtonOptions,
    squarefree: bool,
) -> Result<BranchSet> {
    let mut coeffs: Vec<PuiseuxSeries> = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = unify_coefficients(&coeffs)?;
    let field = coeffs
        .iter()
        .flat_map(|c| c.terms().iter())
        .find_map(|(_, c)| c.field().cloned());
    let degree = coeffs.len() - 1;
    let mut ctx = Ctx {
        source: coeffs.clone(),
        opts,
        squarefree,
        out: Vec::new(),
        steps: 0,
    };
    let field = field.as_ref();
    ctx.descend(
        coeffs,
        PuiseuxSeries::zero(),
        None,
        field.cloned(),
        0,
        exp(0, 1),
    )?;
    let mut branches = ctx.out;
    branches.sort_by(|a, b| a.series.branch_cmp(&b.series));
    Ok(BranchSet {
        branches,
        order: opts.order,
        degree,
        squarefree_reduced: false,
    })
}

/// Move every coefficient into one number field.
fn unify_coefficients(coeffs: &[PuiseuxSeries]) -> Result<Vec<PuiseuxSeries>> {
    let flat: Vec<RealAlgebraic> = coeffs
        .iter()
        .flat_map(|c| c.terms().iter().map(|(_, x)| x.clone()))
        .collect();
    if flat.iter().all(|x| x.field().is_none()) {
        return Ok(coeffs.to_vec());
    }
    let unified = unify_all(&flat)?;
    let mut it = unified.into_iter();
    Ok(coeffs
        .iter()
        .map(|c| {
            let terms = c
                .terms()
                .iter()
                .map(|(e, _)| (*e, it.next().unwrap()))
                .collect();
            PuiseuxSeries::from_terms(terms, c.truncation())
        })
        .collect())
}

struct Edge {
    i: usize,
    j: usize,
    mu: Exponent,
    level: Exponent,
}

/// Lower convex hull edges of points sorted by abscissa, left to right.
fn lower_hull(points: &[(usize, Exponent)]) -> Vec<Edge> {
    let mut hull: Vec<(usize, Exponent)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (ox, oy) = hull[hull.len() - 2];
            let (ax, ay) = hull[hull.len() - 1];
            let cross =
                exp((ax - ox) as i64, 1) * (p.1 - oy) - (ay - oy) * exp((p.0 - ox) as i64, 1);
            if cross <= exp(0, 1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| {
            let ((i, oi), (j, oj)) = (w[0], w[1]);
            let mu = (oi - oj) / exp((j - i) as i64, 1);
            Edge {
                i,
                j,
                mu,
                level: oi + mu * exp(i as i64, 1),
            }
        })
        .collect()
}

/// `G(Z + s)`.
fn taylor_shift(g: &[PuiseuxSeries], s: &PuiseuxSeries) -> Vec<PuiseuxSeries> {
    let mut a = g.to_vec();
    let n = a.len().saturating_sub(1);
    for i in 0..n {
        for j in (i..n).rev() {
            let add = a[j + 1].mul(s);
            a[j] = a[j].add(&add);
        }
    }
    a
}

/// Yun's squarefree decomposition: `(multiplicity, factor)` pairs.
fn squarefree_decomposition(f: &UniPoly<RealAlgebraic>) -> Vec<(usize, UniPoly<RealAlgebraic>)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut d = df.exact_div(&a0).expect("gcd divides").sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        if a.deg() > 0 {
            out.push((i, a));
        }
        d = c.sub(&nb.derivative());
        b = nb;
        i += 1;
    }
    out
}

struct Ctx {
    source: Vec<PuiseuxSeries>,
    opts: NewtonOptions,
    squarefree: bool,
    out: Vec<Branch>,
    steps: usize,
}

impl Ctx {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > 4096 {
            return Err(Error::Degenerate(
                "Newton-Puiseux expansion does not separate".into(),
            ));
        }
        Ok(())
    }

    /// Branches `prefix + Z` with `G(Z) = 0` and `ord Z > lambda`. `deficit` is
    /// the order of the factors `F(prefix + Z) / G(Z)` divided out so far.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        &mut self,
        mut g: Vec<PuiseuxSeries>,
        prefix: PuiseuxSeries,
        lambda: Option<Exponent>,
        field: Option<Arc<NumberField>>,
        depth: usize,
        deficit: Exponent,
    ) -> Result<()> {
        self.tick()?;
        let mut removed = 0i64;
        if g[0].is_exact_zero() {
            self.out.push(Branch {
                series: prefix.clone(),
                residual: Residual::ExactZero,
            });
            while g.len() > 1 && g[0].is_exact_zero() {
                g.remove(0);
                removed += 1;
            }
        }
        if g.len() <= 1 {
            return Ok(());
        }
        let mut visible = Vec::new();
        let mut hidden = Vec::new();
        for (k, c) in g.iter().enumerate() {
            match c.ord() {
                Order::Finite(o) => visible.push((k, o)),
                Order::AtLeast(th) => hidden.push((k, th)),
                Order::Infinite => {}
            }
        }
        let o0 = match g[0].ord() {
            Order::Finite(o) => o,
            _ => {
                return Err(Error::OrderIndeterminate(
                    "constant coefficient lost to truncation".into(),
                ))
            }
        };
        let edges: Vec<Edge> = lower_hull(&visible)
            .into_iter()
            .filter(|e| lambda.is_none_or(|l| e.mu > l))
            .collect();
        for &(k, th) in &hidden {
            let kk = exp(k as i64, 1);
            if edges.iter().any(|e| th <= e.level - e.mu * kk) {
                return Err(Error::OrderIndeterminate(
                    "Newton polygon hidden by truncation".into(),
                ));
            }
        }
        if edges.is_empty() {
            return Ok(());
        }
        let n = self.opts.order;
        if !self.squarefree && lambda.is_some() && o0 >= n && edges.iter().all(|e| e.mu >= n) {
            if removed > 0 {
                // the remaining roots agree with the exact root just reported
                return Ok(());
            }
            let theta = edges.iter().map(|e| e.mu).min().unwrap();
            self.out.push(Branch {
                series: prefix.truncate(theta),
                residual: Residual::Order(o0 + deficit),
            });
            return Ok(());
        }
        for e in &edges {
            // Z = Y - prefix has order mu on this edge
            let deficit = deficit + e.mu * exp(removed, 1);
            let mut phi = Vec::with_capacity(e.j - e.i + 1);
            for (k, gk) in g.iter().enumerate().take(e.j + 1).skip(e.i) {
                let at = e.level - e.mu * exp(k as i64, 1);
                if gk.truncation().is_some_and(|th| at >= th) {
                    return Err(Error::OrderIndeterminate(
                        "edge coefficient lost to truncation".into(),
                    ));
                }
                phi.push(gk.coeff(&at));
            }
            let phi = UniPoly::new(phi);
            for (mult, factor) in squarefree_decomposition(&phi) {
                for iv in isolate_real_roots(&factor) {
                    let ext = extend_by_root(field.as_ref(), &factor, &iv)?;
                    let proper = ext.is_proper(field.as_ref());
                    let new_depth = depth + proper as usize;
                    if new_depth > self.opts.tower_depth {
                        return Err(Error::TowerDepthExceeded {
                            depth: new_depth,
                            cap: self.opts.tower_depth,
                        });
                    }
                    let (g2, prefix2) = if proper {
                        (
                            g.iter().map(|c| c.map_coeffs(|x| ext.embed(x))).collect(),
                            prefix.map_coeffs(|x| ext.embed(x)),
                        )
                    } else {
                        (g.clone(), prefix.clone())
                    };
                    let s = PuiseuxSeries::monomial(ext.root.clone(), e.mu);
                    let shifted = taylor_shift(&g2, &s);
                    let prefix2 = prefix2.add(&s);
                    if mult == 1 {
                        self.separated(shifted, prefix2, e.mu, deficit)?;
                    } else {
                        self.descend(
                            shifted,
                            prefix2,
                            Some(e.mu),
                            ext.field.clone(),
                            new_depth,
                            deficit,
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// The unique root `prefix + Z` with `ord Z > lambda`, by linear steps.
    fn separated(
        &mut self,
        mut g: Vec<PuiseuxSeries>,
        mut prefix: PuiseuxSeries,
        mut lambda: Exponent,
        deficit: Exponent,
    ) -> Result<()> {
        if g[0].is_exact_zero() {
            self.out.push(Branch {
                series: prefix,
                residual: Residual::ExactZero,
            });
            return Ok(());
        }
        let o1 = match g[1].ord() {
            Order::Finite(o) => o,
            _ => {
                return Err(Error::OrderIndeterminate(
                    "derivative order lost to truncation".into(),
                ))
            }
        };
        // aim past lambda so the reported truncation exceeds every computed exponent
        let target = (self.opts.order - deficit).max(o1 + lambda + exp(1, 1));
        loop {
            self.tick()?;
            g = g
                .iter()
                .enumerate()
                .map(|(k, c)| c.truncate(target - lambda * exp(k as i64, 1)))
                .collect();
            let (e0, c0) = match g[0].leading() {
                None => break,
                Some(t) => t.clone(),
            };
            let (e1, c1) = match g[1].leading() {
                Some(t) if t.0 == o1 => t.clone(),
                _ => {
                    return Err(Error::OrderIndeterminate(
                        "derivative order lost to truncation".into(),
                    ))
                }
            };
            let mu = e0 - e1;
            if mu <= lambda {
                return Err(Error::Degenerate(
                    "linear Newton step did not increase the order".into(),
                ));
            }
            let c = c0.neg().div(&c1)?;
            let s = PuiseuxSeries::monomial(c, mu);
            g = taylor_shift(&g, &s);
            prefix = prefix.add(&s);
            lambda = mu;
        }
        let theta0 = g[0].truncation().expect("truncated above");
        let residual = self.exact_residual(&prefix);
        let branch = match residual {
            Some(Residual::ExactZero) => Branch {
                series: prefix,
                residual: Residual::ExactZero,
            },
            Some(r) => Branch {
                series: prefix.truncate(theta0 - o1),
                residual: r,
            },
            None => Branch {
                series: prefix.truncate(theta0 - o1),
                residual: Residual::AtLeast(theta0 + deficit),
            },
        };
        self.out.push(branch);
        Ok(())
    }

    /// `F(y)` computed exactly, when cheap and meaningful.
    fn exact_residual(&self, y: &PuiseuxSeries) -> Option<Residual> {
        let cap = if y.terms().iter().all(|(_, c)| c.is_rational()) {
            EXACT_CHECK_TERMS
        } else {
            EXACT_CHECK_TERMS_ALGEBRAIC
        };
        if y.terms().len() > cap || !self.source.iter().all(|c| c.is_exact()) {
            return None;
        }
        let mut acc = PuiseuxSeries::zero();
        for c in self.source.iter().rev() {
            acc = acc.mul(y).add(c);
        }
        Some(match acc.ord() {
            Order::Infinite => Residual::ExactZero,
            Order::Finite(o) => Residual::Order(o),
            Order::AtLeast(o) => Residual::AtLeast(o),
        })
    }
}

/// `F(t, y(t))` for a bivariate `F` given by its `Y`-coefficients.
pub fn substitute(coeffs: &[PuiseuxSeries], y: &PuiseuxSeries) -> PuiseuxSeries {
    let mut acc = PuiseuxSeries::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(y).add(c);
    }
    acc
}

/// `F(t, y(t))` known below `theta` only, for an exact `y`; much cheaper than
/// [`substitute`] when `y` has many terms.
pub fn substitute_to(
    coeffs: &[PuiseuxSeries],
    y: &PuiseuxSeries,
    theta: Exponent,
) -> PuiseuxSeries {
    let drop = y.ord().lower().map_or(exp(0, 1), |o| o.min(exp(0, 1)));
    let mut acc = PuiseuxSeries::zero();
    for (k, c) in coeffs.iter().enumerate().rev() {
        acc = acc.mul(y).add(c).truncate(theta - drop * exp(k as i64, 1));
    }
    acc
}

/// Deterministic order used to list branches.
pub fn compare_branches(a: &Branch, b: &Branch) -> Ordering {
    a.series.branch_cmp(&b.series)
}
