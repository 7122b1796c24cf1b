//! Sturm sequences and real root isolation with exact rational endpoints.

use num_traits::{One, Signed, Zero};

use super::rational::{int, midpoint, Rational};
use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// Open interval `(lo, hi)` holding exactly one real root of the polynomial it
/// was computed for; neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

pub struct SturmChain<C: Scalar> {
    chain: Vec<UniPoly<C>>,
}

impl<C: Scalar> SturmChain<C> {
    pub fn new(p: &UniPoly<C>) -> Self {
        let mut chain = vec![p.clone()];
        if p.deg() > 0 {
            chain.push(p.derivative());
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg());
            }
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        let cx = C::from_rational(x);
        Self::variations(self.chain.iter().map(|p| p.eval(&cx).sgn()))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.lc().sgn();
            if !positive && p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count_between(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

/// A rational `B` with every real root strictly inside `(-B, B)` (Cauchy bound).
pub fn root_bound<C: Scalar>(p: &UniPoly<C>) -> Rational {
    let lc = p.lc().abs_lower();
    let mut m = Rational::zero();
    for c in &p.coeffs()[..p.deg()] {
        let r = c.abs_upper() / &lc;
        if r > m {
            m = r;
        }
    }
    m + Rational::one()
}

/// Pick a split point of `(lo, hi)` that is not a root of `p`.
fn split_point<C: Scalar>(p: &UniPoly<C>, lo: &Rational, hi: &Rational) -> Rational {
    let mid = midpoint(lo, hi);
    if !p.eval_rational(&mid).is_zero() {
        return mid;
    }
    let w = hi - lo;
    let mut k = 3i64;
    loop {
        let cand = lo + &w * Rational::new(1.into(), k.into());
        if !p.eval_rational(&cand).is_zero() {
            return cand;
        }
        k += 1;
    }
}

/// Isolating intervals for the distinct real roots of `p`, in increasing order.
/// `p` must be nonzero.
pub fn isolate_real_roots<C: Scalar>(p: &UniPoly<C>) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "isolating roots of the zero polynomial");
    if p.deg() == 0 {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let sturm = SturmChain::new(&sq);
    let b = root_bound(&sq);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_between(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let m = split_point(&sq, &lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Outcome of one bisection step on a simple root.
pub enum Bisect {
    Interval(RootInterval),
    Exact(Rational),
}

/// Halve an interval that holds exactly one simple root of the squarefree `p`.
pub fn bisect_root<C: Scalar>(p: &UniPoly<C>, iv: &RootInterval) -> Bisect {
    let mid = midpoint(&iv.lo, &iv.hi);
    let sm = p.eval_rational(&mid).sgn();
    if sm == 0 {
        return Bisect::Exact(mid);
    }
    let slo = p.eval_rational(&iv.lo).sgn();
    if sm == slo {
        Bisect::Interval(RootInterval {
            lo: mid,
            hi: iv.hi.clone(),
        })
    } else {
        Bisect::Interval(RootInterval {
            lo: iv.lo.clone(),
            hi: mid,
        })
    }
}

/// Shrink an isolating interval of the squarefree `p` to width `<= width`.
pub fn refine_root<C: Scalar>(p: &UniPoly<C>, iv: &RootInterval, width: &Rational) -> Bisect {
    let mut cur = iv.clone();
    while &cur.width() > width {
        match bisect_root(p, &cur) {
            Bisect::Exact(r) => return Bisect::Exact(r),
            Bisect::Interval(next) => cur = next,
        }
    }
    Bisect::Interval(cur)
}

/// If the root of the squarefree rational `p` isolated by `iv` is rational, return it.
pub fn rational_root_in(p: &UniPoly<Rational>, iv: &RootInterval) -> Option<Rational> {
    let prim = p.primitive();
    if prim.deg() == 1 {
        let r = -prim.coeff(0) / prim.coeff(1);
        return iv.contains(&r).then_some(r);
    }
    let lc = prim.lc().abs().to_integer();
    let scale = Rational::from_integer(lc.clone());
    // candidates have the form k / lc; an interval narrower than 1 / lc holds at most two
    let target = Rational::one() / (&scale * int(2));
    let cur = match refine_root(&prim, iv, &target) {
        Bisect::Exact(r) => return Some(r),
        Bisect::Interval(cur) => cur,
    };
    let k_lo = (&cur.lo * &scale).floor().to_integer();
    let k_hi = (&cur.hi * &scale).ceil().to_integer();
    let mut k = k_lo;
    while k <= k_hi {
        let cand = Rational::new(k.clone(), lc.clone());
        if cur.contains(&cand) && Zero::is_zero(&prim.eval(&cand)) {
            return Some(cand);
        }
        k += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn sqrt_two_brackets() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi <= int(0) && roots[1].lo >= int(0));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn unique_cube_root() {
        let roots = isolate_real_roots(&p(&[-1, 0, 0, 1]));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&int(1)));
        assert_eq!(
            rational_root_in(&p(&[-1, 0, 0, 1]), &roots[0]),
            Some(int(1))
        );
    }

    #[test]
    fn rational_roots_found_exactly() {
        let q = p(&[-1, 2]).mul(&p(&[-2, 0, 1]));
        let roots = isolate_real_roots(&q);
        let rs: Vec<_> = roots
            .iter()
            .filter_map(|iv| rational_root_in(&q, iv))
            .collect();
        assert_eq!(rs, vec![rat(1, 2)]);
    }

    #[test]
    fn counts_are_consistent() {
        let q = p(&[0, -6, 1, 1, 0, 0, 1]);
        let sq = q.squarefree_part();
        let chain = SturmChain::new(&sq);
        let roots = isolate_real_roots(&q);
        assert_eq!(roots.len(), chain.count_all());
        for iv in &roots {
            assert_eq!(chain.count_between(&iv.lo, &iv.hi), 1);
        }
    }
}
