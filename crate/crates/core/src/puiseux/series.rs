//! Truncated Puiseux series with real algebraic coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{
    exp, fmt_exponent, lcm_denoms, nth_root_enclosure, pow_i, rat, Exponent, Rational,
};
use crate::arith::RealAlgebraic;
use crate::error::{Error, Result};

/// Order of a series: a known exponent, `+inf` for the exact zero series, or
/// only a lower bound when every stored term vanished below the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(Exponent),
    Infinite,
    AtLeast(Exponent),
}

impl Order {
    /// Lower bound usable in precision bookkeeping; `None` stands for `+inf`.
    pub fn lower(&self) -> Option<Exponent> {
        match self {
            Order::Finite(e) | Order::AtLeast(e) => Some(*e),
            Order::Infinite => None,
        }
    }

    pub fn known(&self) -> Option<Exponent> {
        match self {
            Order::Finite(e) => Some(*e),
            _ => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(e) => write!(f, "{}", fmt_exponent(e)),
            Order::Infinite => write!(f, "inf"),
            Order::AtLeast(e) => write!(f, ">= {}", fmt_exponent(e)),
        }
    }
}

fn min_opt(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_opt(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

/// `sum c_i t^{e_i}` with strictly increasing exponents and nonzero
/// coefficients. `trunc = Some(theta)` means every term with exponent
/// `>= theta` is unknown; `None` means the finite sum is exact.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    terms: Vec<(Exponent, RealAlgebraic)>,
    trunc: Option<Exponent>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries {
            terms: Vec::new(),
            trunc: None,
        }
    }

    /// `O(t^theta)`.
    pub fn big_o(theta: Exponent) -> Self {
        PuiseuxSeries {
            terms: Vec::new(),
            trunc: Some(theta),
        }
    }

    pub fn constant(c: RealAlgebraic) -> Self {
        Self::monomial(c, exp(0, 1))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::constant(RealAlgebraic::from_rational(c))
    }

    pub fn monomial(c: RealAlgebraic, e: Exponent) -> Self {
        Self::from_terms(vec![(e, c)], None)
    }

    /// The series `t`.
    pub fn t() -> Self {
        Self::monomial(RealAlgebraic::from_int(1), exp(1, 1))
    }

    /// Build from arbitrary terms: sorts, merges equal exponents and drops
    /// zero coefficients and terms at or beyond the truncation.
    pub fn from_terms(terms: Vec<(Exponent, RealAlgebraic)>, trunc: Option<Exponent>) -> Self {
        let mut map: BTreeMap<Exponent, RealAlgebraic> = BTreeMap::new();
        for (e, c) in terms {
            if trunc.is_some_and(|th| e >= th) {
                continue;
            }
            match map.get_mut(&e) {
                Some(slot) => *slot = slot.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::from_map(map, trunc)
    }

    fn from_map(map: BTreeMap<Exponent, RealAlgebraic>, trunc: Option<Exponent>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PuiseuxSeries { terms, trunc }
    }

    pub fn terms(&self) -> &[(Exponent, RealAlgebraic)] {
        &self.terms
    }

    pub fn truncation(&self) -> Option<Exponent> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc.is_none()
    }

    /// No known nonzero term (exact zero or `O(t^theta)`).
    pub fn has_no_terms(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ord(&self) -> Order {
        match (self.terms.first(), self.trunc) {
            (Some((e, _)), _) => Order::Finite(*e),
            (None, None) => Order::Infinite,
            (None, Some(th)) => Order::AtLeast(th),
        }
    }

    pub fn leading(&self) -> Option<&(Exponent, RealAlgebraic)> {
        self.terms.first()
    }

    pub fn coeff(&self, e: &Exponent) -> RealAlgebraic {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| RealAlgebraic::from_int(0))
    }

    /// Coefficient of `t^0`; only meaningful for series of order `>= 0`.
    pub fn constant_term(&self) -> RealAlgebraic {
        self.coeff(&exp(0, 1))
    }

    /// Least common multiple of the exponent denominators.
    pub fn ramification_index(&self) -> i64 {
        lcm_denoms(self.terms.iter().map(|(e, _)| e))
    }

    /// Reduced denominators of the stored exponents.
    pub fn exponent_denominators(&self) -> std::collections::BTreeSet<i64> {
        self.terms.iter().map(|(e, _)| *e.denom()).collect()
    }

    pub fn truncate(&self, theta: Exponent) -> Self {
        let trunc = min_opt(self.trunc, Some(theta));
        Self::from_terms(self.terms.clone(), trunc)
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = min_opt(self.trunc, other.trunc);
        let mut map: BTreeMap<Exponent, RealAlgebraic> = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if trunc.is_some_and(|th| *e >= th) {
                continue;
            }
            match map.get_mut(e) {
                Some(slot) => *slot = slot.add(c),
                None => {
                    map.insert(*e, c.clone());
                }
            }
        }
        Self::from_map(map, trunc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let trunc = min_opt(
            add_opt(self.trunc, other.ord().lower()),
            add_opt(other.trunc, self.ord().lower()),
        );
        let mut map: BTreeMap<Exponent, RealAlgebraic> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if trunc.is_some_and(|th| e >= th) {
                    break;
                }
                let p = c1.mul(c2);
                match map.get_mut(&e) {
                    Some(slot) => *slot = slot.add(&p),
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        Self::from_map(map, trunc)
    }

    pub fn scale(&self, c: &RealAlgebraic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
            trunc: self.trunc.map(|th| th + e),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(RealAlgebraic::from_int(1));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse. An exact input whose expansion does not
    /// terminate is cut at the absolute order `order`.
    pub fn invert(&self, order: Exponent) -> Result<Self> {
        let (v, c) = match self.terms.first() {
            Some((v, c)) => (*v, c.clone()),
            None if self.is_exact_zero() => return Err(Error::DivisionByZero),
            None => {
                return Err(Error::OrderIndeterminate(
                    "inverse of a series with unknown leading term".into(),
                ))
            }
        };
        let c_inv = c.inv()?;
        // self = c t^v (1 + u)
        let u = self
            .shift(-v)
            .scale(&c_inv)
            .sub(&Self::constant(RealAlgebraic::from_int(1)));
        if u.is_exact_zero() {
            return Ok(Self::monomial(c_inv, -v));
        }
        let theta = match self.trunc {
            Some(th) => (th - v - v).min(order),
            None => order,
        };
        let rel = theta + v;
        let mut result = Self::constant(RealAlgebraic::from_int(1)).truncate(rel);
        if rel > exp(0, 1) {
            let neg_u = u.neg().truncate(rel);
            let step = match neg_u.ord().lower() {
                Some(o) if o > exp(0, 1) => o,
                _ => {
                    return Err(Error::OrderIndeterminate(
                        "inverse needs more precision".into(),
                    ))
                }
            };
            let kmax = (rel / step).ceil().to_integer().max(0);
            let mut power = Self::constant(RealAlgebraic::from_int(1));
            for _ in 0..kmax {
                power = power.mul(&neg_u).truncate(rel);
                result = result.add(&power);
            }
        }
        Ok(result.shift(-v).scale(&c_inv).truncate(theta))
    }

    /// Substitute `t -> t^m`.
    pub fn ramify(&self, m: u32) -> Self {
        let mm = exp(m as i64, 1);
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * mm, c.clone()))
                .collect(),
            trunc: self.trunc.map(|th| th * mm),
        }
    }

    /// Substitute `t -> t^{1/m}`; inverse of [`ramify`](Self::ramify).
    pub fn unramify(&self, m: u32) -> Self {
        let mm = exp(m as i64, 1);
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e / mm, c.clone()))
                .collect(),
            trunc: self.trunc.map(|th| th / mm),
        }
    }

    /// Enclosure of the stored finite sum at `t = u > 0`, of width at most `precision`.
    /// Says nothing about the truncated tail.
    pub fn eval_numeric(&self, u: &Rational, precision: &Rational) -> Result<(Rational, Rational)> {
        if !u.is_positive() {
            return Err(Error::Invalid("series are evaluated at t > 0 only".into()));
        }
        if !precision.is_positive() {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        if self.terms.is_empty() {
            return Ok((Rational::zero(), Rational::zero()));
        }
        let n = Rational::from_integer((self.terms.len() as i64).into());
        let mut w = precision / (n * rat(4, 1));
        loop {
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (e, c) in &self.terms {
                let base = pow_i(u, *e.numer());
                let (pl, ph) = nth_root_enclosure(&base, *e.denom() as u32, &w);
                let (cl, ch) = c.enclose(&w);
                let prods = [&cl * &pl, &cl * &ph, &ch * &pl, &ch * &ph];
                lo += prods.iter().min().unwrap();
                hi += prods.iter().max().unwrap();
            }
            if &(&hi - &lo) <= precision {
                return Ok((lo, hi));
            }
            w /= rat(16, 1);
        }
    }

    /// Compare germs at `0+`: the sign of the leading coefficient of `self - other`.
    /// Differences hidden by truncation count as equal.
    pub fn germ_cmp(&self, other: &Self) -> Ordering {
        let th = min_opt(self.trunc, other.trunc);
        let below = |e: &Exponent| th.is_none_or(|th| *e < th);
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let ord = match (
                a.peek().filter(|t| below(&t.0)),
                b.peek().filter(|t| below(&t.0)),
            ) {
                (None, None) => return Ordering::Equal,
                (Some((_, c)), None) => c.sign().cmp(&0),
                (None, Some((_, c))) => 0.cmp(&c.sign()),
                (Some((e1, c1)), Some((e2, c2))) => match e1.cmp(e2) {
                    Ordering::Less => c1.sign().cmp(&0),
                    Ordering::Greater => 0.cmp(&c2.sign()),
                    Ordering::Equal => {
                        let o = c1.compare(c2);
                        a.next();
                        b.next();
                        o
                    }
                },
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
    }

    /// Sort key used for deterministic branch listings: order first, then germ.
    pub fn branch_cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Self| match s.ord() {
            Order::Finite(e) => (0, e),
            Order::AtLeast(e) => (1, e),
            Order::Infinite => (2, exp(0, 1)),
        };
        key(self)
            .cmp(&key(other))
            .then_with(|| self.germ_cmp(other))
    }

    /// Structural equality: same exponents, equal coefficients, same truncation.
    pub fn same_as(&self, other: &Self) -> bool {
        self.trunc == other.trunc
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((e1, c1), (e2, c2))| e1 == e2 && c1 == c2)
    }

    /// Equality of the known parts up to the common truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).terms.is_empty()
    }

    /// Map coefficients (e.g. into a larger number field).
    pub fn map_coeffs(&self, f: impl Fn(&RealAlgebraic) -> RealAlgebraic) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (*e, f(c))).collect(),
            self.trunc,
        )
    }
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

fn fmt_power(e: &Exponent) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "t".into()
    } else if *e.denom() == 1 && e.is_positive() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({})", fmt_exponent(e))
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let shown = c.to_string();
            let (neg, body) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, c.neg().to_string()),
                _ => (false, shown),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let pw = fmt_power(e);
            if pw.is_empty() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&pw);
            } else {
                out.push_str(&format!("{body}*{pw}"));
            }
        }
        match (self.trunc, out.is_empty()) {
            (None, true) => write!(f, "0"),
            (None, false) => write!(f, "{out}"),
            (Some(th), true) => write!(f, "O({})", big_o_power(&th)),
            (Some(th), false) => write!(f, "{out} + O({})", big_o_power(&th)),
        }
    }
}

fn big_o_power(e: &Exponent) -> String {
    let p = fmt_power(e);
    if p.is_empty() {
        "1".into()
    } else {
        p
    }
}

/// Ring operations on series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

pub fn ps_arith(a: &PuiseuxSeries, b: &PuiseuxSeries, op: SeriesOp) -> PuiseuxSeries {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
    }
}

pub fn ps_ord(a: &PuiseuxSeries) -> Order {
    a.ord()
}

pub fn ps_invert(a: &PuiseuxSeries, order: Exponent) -> Result<PuiseuxSeries> {
    a.invert(order)
}

pub fn ps_ramify(a: &PuiseuxSeries, m: u32) -> PuiseuxSeries {
    a.ramify(m)
}

pub fn ps_eval_numeric(
    a: &PuiseuxSeries,
    u: &Rational,
    precision: &Rational,
) -> Result<(Rational, Rational)> {
    a.eval_numeric(u, precision)
}

pub fn exponent_denominators(a: &PuiseuxSeries) -> std::collections::BTreeSet<i64> {
    a.exponent_denominators()
}

/// Least common multiple of two ramification indices.
pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn q(n: i64, d: i64) -> RealAlgebraic {
        RealAlgebraic::from_rational(rat(n, d))
    }

    fn s(terms: &[(i64, i64, i64, i64)], trunc: Option<Exponent>) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(
            terms
                .iter()
                .map(|&(en, ed, cn, cd)| (exp(en, ed), q(cn, cd)))
                .collect(),
            trunc,
        )
    }

    #[test]
    fn half_powers_multiply() {
        let r = s(&[(1, 2, 1, 1)], None);
        let p = ps_arith(&r, &r, SeriesOp::Mul);
        assert!(p.same_as(&PuiseuxSeries::t()));
    }

    #[test]
    fn difference_of_squares() {
        let a = s(&[(0, 1, 1, 1), (1, 1, 1, 1)], None);
        let b = s(&[(0, 1, 1, 1), (1, 1, -1, 1)], None);
        assert!(a.mul(&b).same_as(&s(&[(0, 1, 1, 1), (2, 1, -1, 1)], None)));
    }

    #[test]
    fn binomial_square() {
        // (1 + t^2/2 - t^4/8 + O(t^6))^2 = 1 + t^2 + O(t^6)
        let a = s(
            &[(0, 1, 1, 1), (2, 1, 1, 2), (4, 1, -1, 8)],
            Some(exp(6, 1)),
        );
        let sq = a.mul(&a);
        assert!(sq.same_as(&s(&[(0, 1, 1, 1), (2, 1, 1, 1)], Some(exp(6, 1)))));
    }

    #[test]
    fn orders() {
        assert_eq!(
            ps_ord(&s(&[(1, 2, 1, 1), (1, 1, 1, 1)], None)),
            Order::Finite(exp(1, 2))
        );
        assert_eq!(ps_ord(&PuiseuxSeries::zero()), Order::Infinite);
        assert_eq!(
            ps_ord(&s(&[(0, 1, 3, 1), (1, 1, -1, 1)], None)),
            Order::Finite(exp(0, 1))
        );
        assert_eq!(
            ps_ord(&PuiseuxSeries::big_o(exp(3, 1))),
            Order::AtLeast(exp(3, 1))
        );
    }

    #[test]
    fn geometric_inverse() {
        let a = s(&[(0, 1, 1, 1), (1, 1, -1, 1)], None);
        let inv = ps_invert(&a, exp(5, 1)).unwrap();
        let expected = s(
            &[
                (0, 1, 1, 1),
                (1, 1, 1, 1),
                (2, 1, 1, 1),
                (3, 1, 1, 1),
                (4, 1, 1, 1),
            ],
            Some(exp(5, 1)),
        );
        assert!(inv.same_as(&expected), "{inv}");
        assert!(ps_invert(&PuiseuxSeries::t(), exp(5, 1))
            .unwrap()
            .same_as(&s(&[(-1, 1, 1, 1)], None)));
        assert!(ps_invert(&PuiseuxSeries::zero(), exp(5, 1)).is_err());
        assert!(ps_invert(&PuiseuxSeries::big_o(exp(1, 1)), exp(5, 1)).is_err());
    }

    #[test]
    fn inverse_multiplies_back() {
        // 1 / (t^{1/2} (1 + t))
        let a = s(&[(1, 2, 1, 1), (3, 2, 1, 1)], None);
        let inv = ps_invert(&a, exp(4, 1)).unwrap();
        assert_eq!(inv.ord(), Order::Finite(exp(-1, 2)));
        let back = a.mul(&inv);
        let one = PuiseuxSeries::constant(q(1, 1)).truncate(back.truncation().unwrap());
        assert!(back.same_as(&one), "{back}");
        assert_eq!(inv.terms()[1], (exp(1, 2), q(-1, 1)));
    }

    #[test]
    fn ramify_examples() {
        assert!(ps_ramify(&s(&[(1, 4, 1, 1)], None), 4).same_as(&PuiseuxSeries::t()));
        assert!(ps_ramify(&s(&[(0, 1, 1, 1), (1, 1, 1, 1)], None), 2)
            .same_as(&s(&[(0, 1, 1, 1), (2, 1, 1, 1)], None)));
        assert!(ps_ramify(&PuiseuxSeries::zero(), 3).is_exact_zero());
    }

    #[test]
    fn numeric_evaluation() {
        let r = s(&[(1, 2, 1, 1)], None);
        let (lo, hi) = ps_eval_numeric(&r, &rat(1, 4), &rat(1, 1000)).unwrap();
        assert!(lo <= rat(1, 2) && rat(1, 2) <= hi && &hi - &lo <= rat(1, 1000));
        let b = s(&[(0, 1, 1, 1), (2, 1, 1, 2), (4, 1, -1, 8)], None);
        let exact = int(1) + rat(1, 20000) - rat(1, 800000000);
        let (lo, hi) = ps_eval_numeric(&b, &rat(1, 100), &rat(1, 1_000_000_000_000)).unwrap();
        assert!(lo <= exact && exact <= hi);
        assert_eq!(
            ps_eval_numeric(&PuiseuxSeries::zero(), &rat(1, 3), &rat(1, 10)).unwrap(),
            (int(0), int(0))
        );
        assert!(ps_eval_numeric(&r, &int(0), &rat(1, 10)).is_err());
    }

    #[test]
    fn denominators() {
        assert_eq!(
            exponent_denominators(&s(&[(1, 2, 1, 1)], None))
                .into_iter()
                .collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(
            exponent_denominators(&s(&[(2, 3, 1, 1)], None))
                .into_iter()
                .collect::<Vec<_>>(),
            vec![3]
        );
        assert_eq!(
            exponent_denominators(&s(&[(0, 1, 1, 1), (1, 1, 1, 1)], None))
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1]
        );
    }

    #[test]
    fn display() {
        assert_eq!(s(&[(1, 2, -1, 1)], None).to_string(), "-t^(1/2)");
        assert_eq!(
            s(
                &[(0, 1, 1, 1), (2, 1, 1, 2), (4, 1, -1, 8)],
                Some(exp(6, 1))
            )
            .to_string(),
            "1 + 1/2*t^2 - 1/8*t^4 + O(t^6)"
        );
        assert_eq!(s(&[(-1, 1, 1, 1)], None).to_string(), "t^(-1)");
        assert_eq!(s(&[(2, 3, 1, 1)], None).to_string(), "t^(2/3)");
    }
}
