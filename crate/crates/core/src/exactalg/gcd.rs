//! Multivariate gcd over the rationals by recursive primitive pseudo-remainder
//! sequences. Polynomials here are small, so no modular machinery is needed.

use num_traits::One;

use super::{Poly, Rational};

/// Greatest common divisor, normalized to leading coefficient one. The gcd of
/// two zero polynomials is zero.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.nvars(), b.nvars(), "gcd operands must share a chart");
    gcd_rec(a, b).monic()
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    let var = a
        .support_vars()
        .into_iter()
        .chain(b.support_vars())
        .max()
        .expect("non-constant polynomial has a variable");

    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let g_content = gcd_rec(&ca, &cb);
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(var) == 0 || pb.degree_in(var) == 0 {
        return g_content;
    }
    if pa.degree_in(var) < pb.degree_in(var) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            return g_content;
        }
        pa = pb;
        pb = primitive_part(&r, var);
    }
    &g_content * &primitive_part(&pb, var)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero(p.nvars());
    for c in p.coeffs_in(var).values() {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    g.monic()
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    let q = p.div_exact(&c).expect("content divides");
    q.scale(&q.normalizing_scale())
}

fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = b.degree_in(var);
    let lb = b.coeffs_in(var).remove(&db).expect("leading coefficient");
    let x = Poly::var(a.nvars(), var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeffs_in(var).remove(&dr).expect("leading coefficient");
        let shift = &lr * &x.pow(dr - db);
        r = &(&lb * &r) - &(&shift * b);
        let s = r.normalizing_scale();
        if s != Rational::one() {
            r = r.scale(&s);
        }
    }
    r
}
