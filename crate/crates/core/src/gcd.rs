//! Multivariate polynomial gcd over `Q(i)` by recursive primitive
//! pseudo-remainder sequences.

use alloc::vec::Vec;

use crate::number::Number;
use crate::poly::{Monomial, Poly};

pub type NPoly = Poly<Number>;

/// Monic gcd (leading coefficient one in lex order). `gcd(0, 0) = 0`.
pub fn gcd(a: &NPoly, b: &NPoly) -> NPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return NPoly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        // gcd with a monomial only involves the monomial content.
        let g = a.monomial_content().gcd(&b.monomial_content());
        return NPoly::term(g, Number::ONE);
    }
    if a == b {
        return a.monic();
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }
    let ka = a.keys();
    let kb = b.keys();
    // Main variable: highest-priority symbol common to both.
    let common: Vec<u32> = ka.iter().filter(|k| kb.contains(k)).copied().collect();
    let Some(&x) = common.first() else {
        // A common divisor only involves symbols present in both.
        return NPoly::one();
    };
    let ca = content(a, x);
    let cb = content(b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let gp = primitive_prs(pa, pb, x);
    gc.mul(&gp).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content(p: &NPoly, x: u32) -> NPoly {
    let coeffs = p.coefficients_in(x);
    let mut g = NPoly::zero();
    // Start from the smallest coefficient to make early exit likely.
    let mut nz: Vec<&NPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    for c in nz {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn lc_in(p: &NPoly, x: u32) -> NPoly {
    let cs = p.coefficients_in(x);
    cs.last().cloned().unwrap_or_else(NPoly::zero)
}

/// Pseudo-remainder of `a` by `b` in `x`.
fn prem(a: &NPoly, b: &NPoly, x: u32) -> NPoly {
    let db = b.degree(x);
    let lb = lc_in(b, x);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree(x);
        if dr < db {
            return r;
        }
        let lr = lc_in(&r, x);
        let shift = NPoly::term(Monomial::var(x, dr - db), Number::ONE);
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
}

fn primitive_part(p: &NPoly, x: u32) -> NPoly {
    let c = content(p, x);
    p.div_exact(&c).expect("content divides").monic()
}

fn primitive_prs(a: NPoly, b: NPoly, x: u32) -> NPoly {
    let (mut a, mut b) = if a.degree(x) >= b.degree(x) { (a, b) } else { (b, a) };
    loop {
        if b.degree(x) == 0 {
            return NPoly::one();
        }
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return primitive_part(&b, x);
        }
        a = b;
        b = primitive_part(&r, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u32) -> NPoly {
        NPoly::var(k)
    }
    fn c(n: i64) -> NPoly {
        NPoly::constant(Number::from_i64(n))
    }

    #[test]
    fn gcd_of_products() {
        let f = v(1).add(&v(2)).add(&c(1));
        let g = v(1).mul(&v(3)).sub(&c(2));
        let h = v(2).sub(&v(3)).add(&c(5));
        let a = f.mul(&g).mul(&f);
        let b = f.mul(&h).mul(&v(2));
        assert_eq!(gcd(&a, &b), f.monic());
        assert!(gcd(&g, &h).is_one());
    }

    #[test]
    fn gcd_disjoint_supports() {
        let a = v(1).add(&c(1)).mul(&v(2));
        let b = v(3).mul(&v(2)).add(&v(2));
        assert_eq!(gcd(&a, &b), v(2));
    }
}
