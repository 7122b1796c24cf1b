use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::rational::{sign, Rational};

/// Exact real field element. Implemented by [`Rational`] and
/// [`RealAlgebraic`](super::RealAlgebraic).
///
/// `is_zero` (from [`Zero`]) is an exact test and may refine cached enclosures.
pub trait Scalar: Clone + Debug + Send + Sync + Zero + One + 'static {
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `None` for zero.
    fn try_recip(&self) -> Option<Self>;
    fn sgn(&self) -> i8;
    /// A rational upper bound for the absolute value.
    fn abs_upper(&self) -> Rational;
    /// A rational lower bound for the absolute value, positive when `self != 0`.
    fn abs_lower(&self) -> Rational;
    /// `Some` when the value is known to be rational.
    fn as_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(Rational::recip(self))
        }
    }
    fn sgn(&self) -> i8 {
        sign(self)
    }
    fn abs_upper(&self) -> Rational {
        self.abs()
    }
    fn abs_lower(&self) -> Rational {
        self.abs()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
