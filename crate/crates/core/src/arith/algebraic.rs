//! Real algebraic numbers.
//!
//! A number is either an exact rational or an element `v(theta)` of a real
//! number field `Q(theta)`, where `theta` is pinned by a squarefree (not
//! necessarily irreducible) rational polynomial and an isolating interval.
//! Elements of one field combine by polynomial arithmetic modulo the defining
//! polynomial; elements of different fields are first moved into a common
//! field generated by a primitive element built from resultants.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, int, midpoint, sign, Rational};
use super::resultant::{image_poly, resultant_eliminate, shifted_specialization};
use super::roots::{
    bisect_root, isolate_real_roots, rational_root_in, Bisect, RootInterval, SturmChain,
};
use super::scalar::Scalar;
use super::unipoly::{fmt_rational_poly, UniPoly};
use crate::error::{Error, Result};

struct FieldState {
    modulus: Arc<UniPoly>,
    lo: Rational,
    hi: Rational,
}

/// `Q(theta)` for a real root `theta` of a squarefree rational polynomial.
///
/// The isolating interval and the defining polynomial may shrink over time
/// (bisection, and splitting off factors that do not vanish at `theta`); both
/// updates keep the represented root fixed, so the state sits behind a mutex
/// and every reader works on a consistent snapshot.
pub struct NumberField {
    state: Mutex<FieldState>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, lo, hi) = self.snapshot();
        write!(
            f,
            "Q[{}; ({}, {})]",
            fmt_rational_poly(&m, "T"),
            fmt_rational(&lo),
            fmt_rational(&hi)
        )
    }
}

impl NumberField {
    fn new(modulus: UniPoly, lo: Rational, hi: Rational) -> Arc<Self> {
        Arc::new(NumberField {
            state: Mutex::new(FieldState {
                modulus: Arc::new(modulus),
                lo,
                hi,
            }),
        })
    }

    fn snapshot(&self) -> (Arc<UniPoly>, Rational, Rational) {
        let s = self.state.lock().unwrap();
        (s.modulus.clone(), s.lo.clone(), s.hi.clone())
    }

    pub fn modulus(&self) -> UniPoly {
        (*self.snapshot().0).clone()
    }

    pub fn degree(&self) -> usize {
        self.snapshot().0.deg()
    }

    /// Current isolating interval of the generator.
    pub fn bounds(&self) -> (Rational, Rational) {
        let (_, lo, hi) = self.snapshot();
        (lo, hi)
    }

    /// Halve the isolating interval.
    fn refine(&self) {
        let (m, lo, hi) = self.snapshot();
        let iv = RootInterval { lo, hi };
        let next = match bisect_root(&*m, &iv) {
            Bisect::Interval(next) => next,
            // the generator is irrational by construction, so this only
            // happens after a split left a linear modulus
            Bisect::Exact(r) => RootInterval {
                lo: r.clone(),
                hi: r,
            },
        };
        let mut s = self.state.lock().unwrap();
        if &next.hi - &next.lo < &s.hi - &s.lo {
            s.lo = next.lo;
            s.hi = next.hi;
        }
    }

    /// Replace the modulus by a proper factor that still vanishes at the generator.
    fn split(&self, factor: UniPoly) {
        let mut s = self.state.lock().unwrap();
        if factor.deg() >= 1 && factor.deg() < s.modulus.deg() {
            s.modulus = Arc::new(factor.primitive());
        }
    }

    fn reduce(&self, v: &UniPoly) -> UniPoly {
        let (m, _, _) = self.snapshot();
        if v.deg() < m.deg() {
            v.clone()
        } else {
            v.rem(&m)
        }
    }

    /// Exact sign of `v(theta)`.
    fn sign_of(&self, v: &UniPoly) -> i8 {
        let mut zero_checked = false;
        loop {
            let (m, lo, hi) = self.snapshot();
            let v = if v.deg() < m.deg() {
                v.clone()
            } else {
                v.rem(&m)
            };
            if v.deg() == 0 {
                return sign(&v.coeff(0));
            }
            let (a, b) = v.eval_interval(&lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            if !zero_checked {
                zero_checked = true;
                let d = v.gcd(&m);
                if d.deg() >= 1 {
                    let vanishes = sign(&d.eval(&lo)) != sign(&d.eval(&hi));
                    if vanishes {
                        self.split(d);
                        return 0;
                    }
                    self.split(m.exact_div(&d).expect("gcd divides"));
                }
            }
            self.refine();
        }
    }

    /// Rational enclosure of `v(theta)` of width at most `width`.
    fn enclose(&self, v: &UniPoly, width: &Rational) -> (Rational, Rational) {
        loop {
            let (m, lo, hi) = self.snapshot();
            let v = if v.deg() < m.deg() {
                v.clone()
            } else {
                v.rem(&m)
            };
            let (a, b) = v.eval_interval(&lo, &hi);
            if &(&b - &a) <= width {
                return (a, b);
            }
            self.refine();
        }
    }

    /// `v^{-1}` as a polynomial in the generator; `v(theta)` must be nonzero.
    fn invert(&self, v: &UniPoly) -> UniPoly {
        let (m, _, _) = self.snapshot();
        let (g, s) = v.rem(&m).gcd_with_cofactor(&m);
        if g.deg() == 0 {
            return s;
        }
        // theta is not a root of g because v(theta) != 0
        let m2 = m.exact_div(&g).expect("gcd divides");
        self.split(m2.clone());
        let (g2, s2) = v.rem(&m2).gcd_with_cofactor(&m2);
        debug_assert_eq!(g2.deg(), 0);
        s2
    }

    /// True when both fields are generated by the same real number.
    fn same_generator(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        let (m1, lo1, hi1) = self.snapshot();
        let (m2, lo2, hi2) = other.snapshot();
        if m1.primitive() != m2.primitive() {
            return false;
        }
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        if lo >= hi {
            return false;
        }
        SturmChain::new(&*m1).count_between(&lo, &hi) == 1
            && !m1.eval(&lo).is_zero()
            && !m1.eval(&hi).is_zero()
    }
}

#[derive(Clone)]
enum Repr {
    Rat(Rational),
    Alg {
        field: Arc<NumberField>,
        value: UniPoly,
    },
}

/// An exact real algebraic number.
#[derive(Clone)]
pub struct RealAlgebraic(Repr);

impl RealAlgebraic {
    pub fn from_rational(r: Rational) -> Self {
        RealAlgebraic(Repr::Rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The unique root of `poly` inside `(lo, hi)`.
    pub fn from_root(poly: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sq = poly.squarefree_part().primitive();
        let bad = || Error::NotIsolating {
            poly: fmt_rational_poly(poly, "T"),
            lo: fmt_rational(lo),
            hi: fmt_rational(hi),
        };
        if lo >= hi || sq.deg() == 0 {
            return Err(bad());
        }
        if sq.eval(lo).is_zero() || sq.eval(hi).is_zero() {
            return Err(bad());
        }
        if SturmChain::new(&sq).count_between(lo, hi) != 1 {
            return Err(bad());
        }
        let iv = RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        };
        Ok(Self::from_isolated(sq, iv))
    }

    /// `iv` must isolate a root of the squarefree `sq`.
    fn from_isolated(sq: UniPoly, iv: RootInterval) -> Self {
        if let Some(r) = rational_root_in(&sq, &iv) {
            return Self::from_rational(r);
        }
        let field = NumberField::new(sq, iv.lo, iv.hi);
        RealAlgebraic(Repr::Alg {
            field,
            value: UniPoly::x(),
        })
    }

    /// All real roots of `poly` in increasing order.
    pub fn roots_of(poly: &UniPoly) -> Result<Vec<Self>> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sq = poly.squarefree_part().primitive();
        Ok(isolate_real_roots(&sq)
            .into_iter()
            .map(|iv| Self::from_isolated(sq.clone(), iv))
            .collect())
    }

    /// Positive `k`-th root of a positive rational.
    pub fn positive_root(r: &Rational, k: usize) -> Result<Self> {
        if !r.is_positive() || k == 0 {
            return Err(Error::Invalid(format!(
                "no positive {k}-th root of {}",
                fmt_rational(r)
            )));
        }
        let mut cs = vec![Rational::zero(); k + 1];
        cs[0] = -r.clone();
        cs[k] = Rational::one();
        let roots = Self::roots_of(&UniPoly::new(cs))?;
        Ok(roots.into_iter().last().expect("a positive root exists"))
    }

    fn in_field(field: &Arc<NumberField>, value: UniPoly) -> Self {
        let value = field.reduce(&value);
        if value.deg() == 0 {
            RealAlgebraic(Repr::Rat(value.coeff(0)))
        } else {
            RealAlgebraic(Repr::Alg {
                field: field.clone(),
                value,
            })
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Alg { field, .. } => Some(field),
        }
    }

    /// The representing polynomial in the field generator (a constant for rationals).
    pub fn value_poly(&self) -> UniPoly {
        match &self.0 {
            Repr::Rat(r) => UniPoly::constant(r.clone()),
            Repr::Alg { value, .. } => value.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Rat(r) => Some(r.clone()),
            Repr::Alg { field, value } => {
                let v = field.reduce(value);
                (v.deg() == 0).then(|| v.coeff(0))
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn sign(&self) -> i8 {
        match &self.0 {
            Repr::Rat(r) => sign(r),
            Repr::Alg { field, value } => field.sign_of(value),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Rat(r) => Self::from_rational(-r),
            Repr::Alg { field, value } => RealAlgebraic(Repr::Alg {
                field: field.clone(),
                value: value.neg(),
            }),
        }
    }

    fn combine(
        &self,
        other: &Self,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        poly: impl Fn(&UniPoly, &UniPoly) -> UniPoly,
    ) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Self::from_rational(rat(a, b)),
            (Repr::Rat(a), Repr::Alg { field, value }) => {
                Self::in_field(field, poly(&UniPoly::constant(a.clone()), value))
            }
            (Repr::Alg { field, value }, Repr::Rat(b)) => {
                Self::in_field(field, poly(value, &UniPoly::constant(b.clone())))
            }
            (
                Repr::Alg {
                    field: f1,
                    value: v1,
                },
                Repr::Alg {
                    field: f2,
                    value: v2,
                },
            ) => {
                if f1.same_generator(f2) {
                    Self::in_field(f1, poly(v1, v2))
                } else {
                    let (a, b) = unify_pair(self, other).expect("real number fields always merge");
                    a.combine(&b, rat, poly)
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Repr::Rat(r) => Ok(Self::from_rational(r.recip())),
            Repr::Alg { field, value } => {
                if field.sign_of(value) == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Self::in_field(field, field.invert(value)))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        self.separate(other)
            .unwrap_or_else(|| self.sub(other).sign().cmp(&0))
    }

    /// Order of two numbers from different fields decided by enclosures
    /// alone, which avoids building a common field when they differ.
    fn separate(&self, other: &Self) -> Option<Ordering> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if !Arc::ptr_eq(a, b) => {}
            _ => return None,
        }
        let step = Rational::from_integer(256.into());
        let mut w = Rational::one();
        for _ in 0..6 {
            let (a, b) = self.enclose(&w);
            let (c, d) = other.enclose(&w);
            if b < c {
                return Some(Ordering::Less);
            }
            if d < a {
                return Some(Ordering::Greater);
            }
            w /= &step;
        }
        None
    }

    /// Rational enclosure `[lo, hi]` with `hi - lo <= width`.
    pub fn enclose(&self, width: &Rational) -> (Rational, Rational) {
        match &self.0 {
            Repr::Rat(r) => (r.clone(), r.clone()),
            Repr::Alg { field, value } => field.enclose(value, width),
        }
    }

    /// A squarefree primitive rational polynomial vanishing at `self`, with an
    /// isolating interval drawn from the deterministic root isolation of that
    /// polynomial. Rationals yield a linear polynomial.
    pub fn defining_poly(&self) -> (UniPoly, RootInterval) {
        match &self.0 {
            Repr::Rat(r) => {
                let p = UniPoly::from_rationals(&[-r.clone(), Rational::one()]).primitive();
                let iv = RootInterval {
                    lo: r - Rational::one(),
                    hi: r + Rational::one(),
                };
                (p, iv)
            }
            Repr::Alg { field, value } => {
                let m = field.modulus();
                let p = image_poly(&m, &field.reduce(value))
                    .squarefree_part()
                    .primitive();
                let iv = isolate_real_roots(&p)
                    .into_iter()
                    .find(|iv| {
                        self.compare(&Self::from_rational(iv.lo.clone())) == Ordering::Greater
                            && self.compare(&Self::from_rational(iv.hi.clone())) == Ordering::Less
                    })
                    .expect("the value is a real root of its image polynomial");
                (p, iv)
            }
        }
    }

    /// `defining_poly` reduced to a linear polynomial whenever the value is rational.
    pub fn minimal_poly(&self) -> (UniPoly, RootInterval) {
        let (p, iv) = self.defining_poly();
        if p.deg() > 1 {
            if let Some(r) = rational_root_in(&p, &iv) {
                return Self::from_rational(r).defining_poly();
            }
        }
        (p, iv)
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Repr::Rat(r) = &self.0 {
            return write!(f, "{}", fmt_rational(r));
        }
        let (p, iv) = self.minimal_poly();
        if p.deg() == 1 {
            return write!(f, "{}", fmt_rational(&(-p.coeff(0) / p.coeff(1))));
        }
        write!(
            f,
            "root({}, [{}, {}])",
            fmt_rational_poly(&p, "T"),
            fmt_rational(&iv.lo),
            fmt_rational(&iv.hi)
        )
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Repr::Alg { field, value } => {
                write!(f, "{} in {:?}", fmt_rational_poly(value, "θ"), field)
            }
        }
    }
}

impl Zero for RealAlgebraic {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }
}

impl One for RealAlgebraic {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl std::ops::Add for RealAlgebraic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RealAlgebraic::add(&self, &rhs)
    }
}

impl std::ops::Sub for RealAlgebraic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RealAlgebraic::sub(&self, &rhs)
    }
}

impl std::ops::Mul for RealAlgebraic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RealAlgebraic::mul(&self, &rhs)
    }
}

impl std::ops::Neg for RealAlgebraic {
    type Output = Self;
    fn neg(self) -> Self {
        RealAlgebraic::neg(&self)
    }
}

impl Scalar for RealAlgebraic {
    fn from_rational(r: &Rational) -> Self {
        RealAlgebraic::from_rational(r.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn try_recip(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn sgn(&self) -> i8 {
        self.sign()
    }
    fn abs_upper(&self) -> Rational {
        let (lo, hi) = self.enclose(&Rational::one());
        lo.abs().max(hi.abs())
    }
    fn abs_lower(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut w = Rational::one();
        loop {
            let (lo, hi) = self.enclose(&w);
            if lo.is_positive() {
                return lo;
            }
            if hi.is_negative() {
                return -hi;
            }
            w /= int(4);
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        RealAlgebraic::as_rational(self)
    }
}

/// Binary operations named after their algebraic role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgOp {
    Add,
    Mul,
}

/// Exact sum or product of two real algebraic numbers.
pub fn alg_op(a: &RealAlgebraic, b: &RealAlgebraic, op: AlgOp) -> RealAlgebraic {
    match op {
        AlgOp::Add => a.add(b),
        AlgOp::Mul => a.mul(b),
    }
}

/// Sign of a real algebraic number as -1, 0 or +1.
pub fn alg_sign(a: &RealAlgebraic) -> i8 {
    a.sign()
}

/// Result of adjoining a real root to a base field.
pub struct Extension {
    /// The enlarged field, `None` when everything stays rational.
    pub field: Option<Arc<NumberField>>,
    /// Image of the base field generator (meaningless when the base is `Q`).
    pub base_generator: RealAlgebraic,
    /// The adjoined root, expressed in the enlarged field.
    pub root: RealAlgebraic,
}

impl Extension {
    /// Move an element of the base field into the enlarged field.
    pub fn embed(&self, x: &RealAlgebraic) -> RealAlgebraic {
        match &x.0 {
            Repr::Rat(_) => x.clone(),
            Repr::Alg { value, .. } => {
                let mut acc = RealAlgebraic::from_int(0);
                for c in value.coeffs().iter().rev() {
                    acc = acc
                        .mul(&self.base_generator)
                        .add(&RealAlgebraic::from_rational(c.clone()));
                }
                acc
            }
        }
    }

    /// Whether a genuinely new field was created.
    pub fn is_proper(&self, base: Option<&Arc<NumberField>>) -> bool {
        match (&self.field, base) {
            (None, _) => false,
            (Some(f), Some(b)) => !Arc::ptr_eq(f, b),
            (Some(_), None) => true,
        }
    }
}

/// Adjoin the real root of `phi` isolated by `iv` to `base`.
///
/// Every coefficient of `phi` must be rational or live in `base`; `phi` must be
/// squarefree over `base` so that the isolated root is simple.
pub fn extend_by_root(
    base: Option<&Arc<NumberField>>,
    phi: &UniPoly<RealAlgebraic>,
    iv: &RootInterval,
) -> Result<Extension> {
    let trivial = |root: RealAlgebraic| Extension {
        field: base.cloned(),
        base_generator: base
            .map(|f| {
                RealAlgebraic(Repr::Alg {
                    field: f.clone(),
                    value: UniPoly::x(),
                })
            })
            .unwrap_or_else(|| RealAlgebraic::from_int(0)),
        root,
    };
    if phi.deg() == 1 {
        let root = phi.coeff(0).neg().div(&phi.coeff(1))?;
        return Ok(trivial(root));
    }
    let all_rational: Option<Vec<Rational>> =
        phi.coeffs().iter().map(|c| c.as_rational()).collect();
    let base = match base {
        None => {
            let q = UniPoly::new(all_rational.ok_or(Error::PrimitiveElement)?);
            let root = RealAlgebraic::from_isolated(q.squarefree_part().primitive(), iv.clone());
            return Ok(Extension {
                field: root.field().cloned(),
                base_generator: RealAlgebraic::from_int(0),
                root,
            });
        }
        Some(b) => b,
    };
    if let Some(qs) = all_rational {
        let q = UniPoly::new(qs).squarefree_part().primitive();
        if let Some(r) = rational_root_in(&q, iv) {
            return Ok(trivial(RealAlgebraic::from_rational(r)));
        }
    }
    let g: Vec<UniPoly> = phi
        .coeffs()
        .iter()
        .map(|c| match &c.0 {
            Repr::Rat(r) => Ok(UniPoly::constant(r.clone())),
            Repr::Alg { field, value } if field.same_generator(base) => Ok(base.reduce(value)),
            Repr::Alg { .. } => Err(Error::PrimitiveElement),
        })
        .collect::<Result<_>>()?;
    let phi_deg = phi.deg();
    for k in [1i64, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -11] {
        let m = base.modulus();
        let kq = int(k);
        let formal = g
            .iter()
            .enumerate()
            .map(|(i, gi)| gi.deg() + i)
            .max()
            .unwrap_or(0);
        let big = resultant_eliminate(
            &m,
            |x| shifted_specialization(&g, &kq, x),
            formal,
            m.deg() * phi_deg,
        );
        if big.is_zero() {
            continue;
        }
        let big = big.squarefree_part().primitive();
        let sturm = SturmChain::new(&big);
        // locate gamma = root + k * theta among the roots of `big`
        let mut cur = iv.clone();
        let gamma_iv = loop {
            let (tlo, thi) = base.bounds();
            let (lo, hi) = if k > 0 {
                (&cur.lo + &kq * &tlo, &cur.hi + &kq * &thi)
            } else {
                (&cur.lo + &kq * &thi, &cur.hi + &kq * &tlo)
            };
            if !big.eval(&lo).is_zero()
                && !big.eval(&hi).is_zero()
                && sturm.count_between(&lo, &hi) == 1
            {
                break RootInterval { lo, hi };
            }
            match bisect_root(phi, &cur) {
                Bisect::Exact(r) => return Ok(trivial(RealAlgebraic::from_rational(r))),
                Bisect::Interval(next) => cur = next,
            }
            base.refine();
        };
        let gamma = RealAlgebraic::from_isolated(big, gamma_iv);
        let theta_base = RealAlgebraic(Repr::Alg {
            field: base.clone(),
            value: UniPoly::x(),
        });
        let field = match gamma.field() {
            // gamma rational: the root already lies in the base field
            None => {
                return Ok(trivial(
                    gamma.sub(&theta_base.mul(&RealAlgebraic::from_int(k))),
                ))
            }
            Some(f) => f.clone(),
        };
        // theta is the common root of m(z) and phi(gamma - k z) over the new field
        let lin = UniPoly::<RealAlgebraic>::new(vec![gamma.clone(), RealAlgebraic::from_int(-k)]);
        let mut spec = UniPoly::<RealAlgebraic>::zero();
        for gi in g.iter().rev() {
            spec = spec
                .mul(&lin)
                .add(&gi.map(|c| RealAlgebraic::from_rational(c.clone())));
        }
        let mz = m.map(|c| RealAlgebraic::from_rational(c.clone()));
        let h = mz.gcd(&spec);
        if h.deg() != 1 {
            continue;
        }
        let theta = h.coeff(0).neg().div(&h.coeff(1))?;
        let root = gamma.sub(&theta.mul(&RealAlgebraic::from_int(k)));
        return Ok(Extension {
            field: Some(field),
            base_generator: theta,
            root,
        });
    }
    Err(Error::PrimitiveElement)
}

/// Express two numbers in one common field.
pub fn unify_pair(a: &RealAlgebraic, b: &RealAlgebraic) -> Result<(RealAlgebraic, RealAlgebraic)> {
    let (fa, fb) = match (a.field(), b.field()) {
        (Some(fa), Some(fb)) if !fa.same_generator(fb) => (fa.clone(), fb.clone()),
        _ => return Ok((a.clone(), b.clone())),
    };
    let (m, lo, hi) = fb.snapshot();
    let phi = m.map(|c| RealAlgebraic::from_rational(c.clone()));
    let ext = extend_by_root(Some(&fa), &phi, &RootInterval { lo, hi })?;
    let b_gen = ext.root.clone();
    let mut b_new = RealAlgebraic::from_int(0);
    for c in b.value_poly().coeffs().iter().rev() {
        b_new = b_new
            .mul(&b_gen)
            .add(&RealAlgebraic::from_rational(c.clone()));
    }
    Ok((ext.embed(a), b_new))
}

/// Copies of `values` whose fields are private to the caller, so that later
/// refinement or splitting elsewhere cannot change how they print.
pub fn detach_all(values: &[RealAlgebraic]) -> Vec<RealAlgebraic> {
    let mut fresh: Vec<(Arc<NumberField>, Arc<NumberField>)> = Vec::new();
    values
        .iter()
        .map(|v| match &v.0 {
            Repr::Rat(_) => v.clone(),
            Repr::Alg { field, value } => {
                let copy = match fresh.iter().find(|(old, _)| Arc::ptr_eq(old, field)) {
                    Some((_, c)) => c.clone(),
                    None => {
                        let (m, lo, hi) = field.snapshot();
                        let c = NumberField::new((*m).clone(), lo, hi);
                        fresh.push((field.clone(), c.clone()));
                        c
                    }
                };
                RealAlgebraic(Repr::Alg {
                    field: copy,
                    value: value.clone(),
                })
            }
        })
        .collect()
}

/// Move a family of numbers into one common field.
pub fn unify_all(values: &[RealAlgebraic]) -> Result<Vec<RealAlgebraic>> {
    let mut out: Vec<RealAlgebraic> = values.to_vec();
    let mut anchor: Option<RealAlgebraic> = None;
    for i in 0..out.len() {
        if out[i].field().is_none() {
            continue;
        }
        match &anchor {
            None => anchor = Some(out[i].clone()),
            Some(a) => {
                let fa = a.field().unwrap();
                let fi = out[i].field().unwrap();
                if fa.same_generator(fi) {
                    continue;
                }
                let (fa, fb) = (fa.clone(), fi.clone());
                let (m, lo, hi) = fb.snapshot();
                let phi = m.map(|c| RealAlgebraic::from_rational(c.clone()));
                let ext = extend_by_root(Some(&fa), &phi, &RootInterval { lo, hi })?;
                for v in out.iter_mut().take(i) {
                    *v = ext.embed(v);
                }
                for v in out.iter_mut().skip(i) {
                    if v.field().is_some_and(|f| f.same_generator(&fb)) {
                        let mut acc = RealAlgebraic::from_int(0);
                        for c in v.value_poly().coeffs().iter().rev() {
                            acc = acc
                                .mul(&ext.root)
                                .add(&RealAlgebraic::from_rational(c.clone()));
                        }
                        *v = acc;
                    }
                }
                anchor = out[..=i].iter().find(|v| v.field().is_some()).cloned();
            }
        }
    }
    Ok(out)
}

/// Midpoint of the current enclosure, for diagnostics.
pub fn approx(a: &RealAlgebraic) -> f64 {
    let (lo, hi) = a.enclose(&Rational::new(1.into(), (1u64 << 40).into()));
    super::rational::approx_f64(&midpoint(&lo, &hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::from_root(&p(&[-2, 0, 1]), &int(1), &int(2)).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(alg_sign(&sqrt2()), 1);
        let neg = RealAlgebraic::from_root(&p(&[-2, 0, 1]), &int(-2), &int(-1)).unwrap();
        assert_eq!(alg_sign(&neg), -1);
        assert_eq!(alg_sign(&RealAlgebraic::from_int(0)), 0);
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt2();
        let sq = alg_op(&s, &s, AlgOp::Mul);
        assert_eq!(sq.as_rational(), Some(int(2)));
    }

    #[test]
    fn sqrt2_plus_zero() {
        let s = sqrt2();
        assert!(alg_op(&s, &RealAlgebraic::from_int(0), AlgOp::Add) == s);
    }

    #[test]
    fn sqrt2_doubled_defining_poly() {
        // two separately constructed copies still land in one field
        let d = alg_op(&sqrt2(), &sqrt2(), AlgOp::Add);
        let (poly, iv) = d.minimal_poly();
        assert_eq!(poly, p(&[-8, 0, 1]));
        assert!(!iv.lo.is_negative());
    }

    #[test]
    fn rejects_non_isolating_interval() {
        assert!(RealAlgebraic::from_root(&p(&[-2, 0, 1]), &int(-2), &int(2)).is_err());
        assert!(RealAlgebraic::from_root(&p(&[-2, 0, 1]), &int(2), &int(3)).is_err());
    }

    #[test]
    fn rational_roots_collapse() {
        let r = RealAlgebraic::from_root(&p(&[-1, 0, 0, 1]), &rat(1, 2), &int(2)).unwrap();
        assert_eq!(r.as_rational(), Some(int(1)));
        assert_eq!(r.to_string(), "1");
    }

    #[test]
    fn mixed_fields_merge() {
        let s2 = sqrt2();
        let s3 = RealAlgebraic::from_root(&p(&[-3, 0, 1]), &int(1), &int(2)).unwrap();
        let prod = s2.mul(&s3);
        let s6 = RealAlgebraic::from_root(&p(&[-6, 0, 1]), &int(2), &int(3)).unwrap();
        assert!(prod == s6);
        let sum = s2.add(&s3);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
        let lhs = sum.mul(&sum);
        let rhs = RealAlgebraic::from_int(5).add(&s6.add(&s6));
        assert!(lhs == rhs);
    }

    #[test]
    fn inverse_and_division() {
        let s = sqrt2();
        let inv = s.inv().unwrap();
        assert_eq!(inv.mul(&s).as_rational(), Some(int(1)));
        assert!(RealAlgebraic::from_int(0).inv().is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(RealAlgebraic::from_rational(rat(-3, 4)).to_string(), "-3/4");
        let s = sqrt2();
        let shown = s.to_string();
        assert!(shown.starts_with("root(T^2 - 2, ["), "{shown}");
        assert_eq!(s.add(&RealAlgebraic::from_int(0)).to_string(), shown);
    }

    #[test]
    fn reducible_modulus_is_handled() {
        // theta = sqrt2 described by (T^2 - 2)(T^2 - 3)
        let m = p(&[-2, 0, 1]).mul(&p(&[-3, 0, 1]));
        let t = RealAlgebraic::from_root(&m, &rat(13, 10), &rat(3, 2)).unwrap();
        let sq = t.mul(&t);
        assert!(sq == RealAlgebraic::from_int(2));
        assert_eq!(sq.minimal_poly().0, p(&[-2, 1]));
        assert_eq!(t.minimal_poly().0, p(&[-2, 0, 1]));
    }
}
