//! Rational helpers shared by the exact layer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Exponents of Puiseux series. Denominators stay tiny so machine words suffice.
pub type Exponent = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

pub fn exponent_to_rational(e: &Exponent) -> Rational {
    rat(*e.numer(), *e.denom())
}

/// Sign as -1, 0 or +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// `base^e` for a possibly negative machine exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Approximate a rational by an f64 for diagnostics only.
pub fn approx_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of exponent denominators.
pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Exponent>) -> i64 {
    it.into_iter().fold(1i64, |acc, e| acc.lcm(e.denom()))
}

/// Smallest integer `>= e`.
pub fn ceil_exponent(e: &Exponent) -> i64 {
    e.ceil().to_integer()
}

/// An enclosure `[lo, hi]` of the positive `q`-th root of `x > 0` with `hi - lo <= width`.
pub fn nth_root_enclosure(x: &Rational, q: u32, width: &Rational) -> (Rational, Rational) {
    debug_assert!(x.is_positive());
    if q == 1 {
        return (x.clone(), x.clone());
    }
    let mut lo = Rational::zero();
    let mut hi = if x > &Rational::one() {
        x.clone()
    } else {
        Rational::one()
    };
    while &(&hi - &lo) > width {
        let mid = midpoint(&lo, &hi);
        let p = pow_i(&mid, q as i64);
        match p.cmp(x) {
            std::cmp::Ordering::Equal => return (mid.clone(), mid),
            std::cmp::Ordering::Less => lo = mid,
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    (lo, hi)
}

/// Parse `a`, `-a`, `a/b` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Rational printed as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_exponent(e: &Exponent) -> String {
    if *e.denom() == 1 {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}
