//! Resultants over the rationals, including the bivariate eliminations used
//! to build defining polynomials of sums, products and primitive elements.

use num_traits::{One, Zero};

use super::rational::{int, pow_i, Rational};
use super::unipoly::UniPoly;

/// `Res(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r)`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let (m, n) = (a.deg(), b.deg());
    if n == 0 {
        return pow_i(&b.lc(), m as i64);
    }
    if m == 0 {
        return pow_i(&a.lc(), n as i64);
    }
    // Res(a, b) = (-1)^{mn} Res(b, a) and Res(b, a) = lc(b)^{m - deg r} Res(b, r), r = a mod b
    let r = a.rem(b);
    if r.is_zero() {
        return Rational::zero();
    }
    let sgn = if (m * n) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    sgn * pow_i(&b.lc(), (m - r.deg()) as i64) * resultant(b, &r)
}

/// Resultant where `b` is read with formal degree `n >= deg(b)`.
fn resultant_formal(a: &UniPoly, b: &UniPoly, n: usize) -> Rational {
    if b.is_zero() {
        return Rational::zero();
    }
    let drop = n - b.deg();
    pow_i(&a.lc(), drop as i64) * resultant(a, b)
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = acc
            .mul(&UniPoly::from_rationals(&[-xs[i].clone(), Rational::one()]))
            .add(&UniPoly::constant(dd[i].clone()));
    }
    acc
}

/// `Res_z(a(z), b(z, x))` as a polynomial in `x`.
///
/// `b_at(x0)` must return `b(z, x0)`; `formal_deg` bounds `deg_z b` and
/// `x_deg` bounds the degree of the result.
pub fn resultant_eliminate(
    a: &UniPoly,
    b_at: impl Fn(&Rational) -> UniPoly,
    formal_deg: usize,
    x_deg: usize,
) -> UniPoly {
    let xs: Vec<Rational> = (0..=x_deg as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| resultant_formal(a, &b_at(x), formal_deg))
        .collect();
    interpolate(&xs, &ys)
}

/// Coefficients of `b(z, x) = sum_i g_i(z) (x - k z)^i` specialised at `x = x0`.
pub fn shifted_specialization(g: &[UniPoly], k: &Rational, x0: &Rational) -> UniPoly {
    // x0 - k z
    let lin = UniPoly::from_rationals(&[x0.clone(), -k.clone()]);
    let mut acc = UniPoly::zero();
    for gi in g.iter().rev() {
        acc = acc.mul(&lin).add(gi);
    }
    acc
}

/// Defining polynomial (not necessarily squarefree) for `alpha + beta` where
/// `pa(alpha) = 0` and `pb(beta) = 0`.
pub fn sum_poly(pa: &UniPoly, pb: &UniPoly) -> UniPoly {
    // Res_y(pa(y), pb(x - y))
    let g: Vec<UniPoly> = pb
        .coeffs()
        .iter()
        .map(|c| UniPoly::constant(c.clone()))
        .collect();
    resultant_eliminate(
        pa,
        |x| shifted_specialization(&g, &Rational::one(), x),
        pb.deg(),
        pa.deg() * pb.deg(),
    )
}

/// Defining polynomial for `alpha * beta`.
pub fn product_poly(pa: &UniPoly, pb: &UniPoly) -> UniPoly {
    // Res_y(pa(y), y^n pb(x / y))
    let n = pb.deg();
    resultant_eliminate(
        pa,
        |x| {
            let mut acc = UniPoly::zero();
            for (i, c) in pb.coeffs().iter().enumerate() {
                // c x^i y^{n-i}
                acc = acc.add(&UniPoly::monomial(c * pow_i(x, i as i64), n - i));
            }
            acc
        },
        n,
        pa.deg() * n,
    )
}

/// Defining polynomial of `g(theta)` where `m(theta) = 0`: `Res_z(m(z), x - g(z))`.
pub fn image_poly(m: &UniPoly, g: &UniPoly) -> UniPoly {
    resultant_eliminate(m, |x| UniPoly::constant(x.clone()).sub(g), g.deg(), m.deg())
}
