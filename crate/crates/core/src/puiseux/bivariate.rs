//! Polynomials in `Y` with coefficients in `Q[t]`, for squarefree preprocessing.

use num_traits::Zero;

use crate::arith::rational::Rational;
use crate::arith::{MultiPoly, UniPoly};
use crate::error::{Error, Result};

/// `coeffs[k]` is the coefficient of `Y^k`; trailing zeros are trimmed.
pub type Bivariate = Vec<UniPoly>;

pub fn trim(mut f: Bivariate) -> Bivariate {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

/// Split a two-variable polynomial into `Y`-coefficients, with `t` at index `t_var`.
pub fn from_multipoly(f: &MultiPoly, t_var: usize, y_var: usize) -> Result<Bivariate> {
    if f.arity() != 2 || t_var == y_var || t_var > 1 || y_var > 1 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.arity(),
        });
    }
    let dy = f.degree_in(y_var) as usize;
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dy + 1];
    for (e, c) in f.terms() {
        let (i, k) = (e[t_var] as usize, e[y_var] as usize);
        let row = &mut rows[k];
        if row.len() <= i {
            row.resize(i + 1, Rational::zero());
        }
        row[i] += c;
    }
    Ok(trim(rows.into_iter().map(UniPoly::new).collect()))
}

pub fn degree_y(f: &Bivariate) -> usize {
    f.len().saturating_sub(1)
}

fn derivative_y(f: &Bivariate) -> Bivariate {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect(),
    )
}

/// Gcd of all coefficients (monic), the `t`-content.
fn content(f: &Bivariate) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in f {
        g = g.gcd(c);
        if g.deg() == 0 && !g.is_zero() {
            break;
        }
    }
    g
}

fn primitive_part(f: &Bivariate) -> Bivariate {
    let c = content(f);
    if c.is_zero() {
        return f.clone();
    }
    let mut out: Bivariate = f
        .iter()
        .map(|x| x.exact_div(&c).expect("content divides"))
        .collect();
    // normalise the rational scale so results are reproducible
    if let Some(lc) = out.last().map(|p| p.lc()) {
        let s = Rational::from_integer(1.into()) / lc;
        out = out.iter().map(|p| p.scale(&s)).collect();
    }
    trim(out)
}

/// Pseudo-remainder of `a` by `b` in `Y`.
fn prem(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let db = degree_y(b);
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = a.clone();
    while !r.is_empty() && degree_y(&r) >= db {
        let dr = degree_y(&r);
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        let mut next: Bivariate = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, c) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&c.mul(&lr));
        }
        r = trim(next);
    }
    r
}

/// Primitive gcd over `Q[t][Y]` (content ignored).
fn gcd_y(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if degree_y(&a) < degree_y(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive_part(&r) };
    }
    a
}

/// `a / b` when `b` divides `a` in `Q[t][Y]`.
fn exact_div_y(a: &Bivariate, b: &Bivariate) -> Option<Bivariate> {
    let db = degree_y(b);
    let lb = b.last()?.clone();
    let mut r = a.clone();
    if r.is_empty() {
        return Some(Vec::new());
    }
    if degree_y(&r) < db {
        return None;
    }
    let mut q = vec![UniPoly::zero(); degree_y(&r) - db + 1];
    while !r.is_empty() && degree_y(&r) >= db {
        let dr = degree_y(&r);
        let c = r.last().unwrap().exact_div(&lb)?;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&bc.mul(&c));
        }
        q[shift] = c;
        r = trim(r);
    }
    r.is_empty().then(|| trim(q))
}

/// Squarefree part in `Y` with the `t`-content removed; the flag reports whether
/// a repeated factor was dropped.
pub fn squarefree_y(f: &Bivariate) -> (Bivariate, bool) {
    let f = trim(f.clone());
    let pp = primitive_part(&f);
    if degree_y(&pp) == 0 {
        return (pp, false);
    }
    let g = gcd_y(&pp, &derivative_y(&pp));
    if degree_y(&g) == 0 {
        return (pp, false);
    }
    let q = exact_div_y(&pp, &g).expect("gcd divides");
    (primitive_part(&q), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn squarefree_drops_repeated_factor() {
        // (Y - t)^2 (Y + 1) = Y^3 + (1 - 2t) Y^2 + (t^2 - 2t) Y + t^2
        let f = vec![up(&[0, 0, 1]), up(&[0, -2, 1]), up(&[1, -2]), up(&[1])];
        let (s, reduced) = squarefree_y(&f);
        assert!(reduced);
        // (Y - t)(Y + 1) = Y^2 + (1 - t) Y - t
        assert_eq!(s, vec![up(&[0, -1]), up(&[1, -1]), up(&[1])]);
    }

    #[test]
    fn squarefree_keeps_squarefree_input() {
        let f = vec![up(&[0, 0, -1]), up(&[]), up(&[]), up(&[1])];
        let (s, reduced) = squarefree_y(&f);
        assert!(!reduced);
        assert_eq!(s, f);
    }

    #[test]
    fn content_is_stripped() {
        // t * (Y^2 - t)
        let f = vec![up(&[0, 0, -1]), up(&[]), up(&[0, 1])];
        let (s, _) = squarefree_y(&f);
        assert_eq!(s, vec![up(&[0, -1]), up(&[]), up(&[1])]);
    }
}
