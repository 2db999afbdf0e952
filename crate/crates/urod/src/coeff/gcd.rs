//! Multivariate polynomial gcd over Q: recursive primitive remainder sequences with
//! an evaluation-based coprimality shortcut.

use num_traits::{One, Zero};

use super::poly::{Mono, Poly};
use super::rational::Q;
use super::symbols::{Sym, SymbolSet};

/// Normalized gcd: integer coefficients, content 1, positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.integer_primitive().0;
    }
    if b.is_zero() {
        return a.integer_primitive().0;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let m = ma.meet(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_mono(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_mono(&mb) };
    let g = gcd_no_mono(&a1, &b1);
    if m.is_one() {
        g
    } else {
        g.mul_mono(&m, &Q::one())
    }
}

fn first_in(s: SymbolSet, not: SymbolSet) -> Option<Sym> {
    s.iter().find(|x| !not.contains(*x))
}

fn gcd_no_mono(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.nterms() == 1 || b.nterms() == 1 {
        // a monomial-free polynomial has no nonconstant monomial divisor
        return Poly::one();
    }
    let sa = a.syms();
    let sb = b.syms();
    if let Some(x) = first_in(sa, sb) {
        return gcd(&content(a, x), b);
    }
    if let Some(x) = first_in(sb, sa) {
        return gcd(a, &content(b, x));
    }
    let x = sa
        .iter()
        .min_by_key(|s| a.degree(*s).max(b.degree(*s)))
        .unwrap();
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd(&ca, &cb);
    let pa = if ca.is_one() { a.clone() } else { a.div_exact(&ca).unwrap() };
    let pb = if cb.is_one() { b.clone() } else { b.div_exact(&cb).unwrap() };
    let g = pp_gcd(&pa, &pb, x);
    c.mul(&g).integer_primitive().0
}

/// gcd of the coefficients of `a` viewed as a polynomial in `x`.
pub fn content(a: &Poly, x: Sym) -> Poly {
    let cs = a.coeffs_in(x);
    let mut nz: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.nterms());
    let mut g = Poly::zero();
    for c in nz {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Primitive part with respect to `x`, integer-normalized.
fn pp(a: &Poly, x: Sym) -> Poly {
    let c = content(a, x);
    let r = if c.is_one() { a.clone() } else { a.div_exact(&c).unwrap() };
    r.integer_primitive().0
}

/// Pseudo-remainder of `a` by `b` in `x` (up to a nonzero factor free of `x`).
fn prem(a: &Poly, b: &Poly, x: Sym) -> Poly {
    let db = b.degree(x);
    let lb = b.lc_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree(x) >= db {
        let dr = r.degree(x);
        let lr = r.lc_in(x);
        let shift = Mono::var(x, dr - db);
        let t = lr.mul(b).mul_mono(&shift, &Q::one());
        r = r.mul(&lb).sub(&t);
    }
    r
}

fn sample_value(i: usize, attempt: usize) -> Q {
    const P: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let n = P[(i + 3 * attempt) % P.len()] + 2 * attempt as i64;
    Q::new(n.into(), ((i % 3) as i64 + 2).into())
}

fn dense_univariate(p: &Poly, x: Sym) -> Vec<Q> {
    p.coeffs_in(x)
        .into_iter()
        .map(|c| c.constant_value().expect("univariate image"))
        .collect()
}

fn uni_gcd_degree(mut a: Vec<Q>, mut b: Vec<Q>) -> usize {
    fn trim(v: &mut Vec<Q>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().unwrap().clone();
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.last().unwrap() / &lb;
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let t = c * &k;
                a[off + i] -= t;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on the degree in `x` of gcd(a, b), from one good evaluation of the
/// other symbols. Returns `None` if no good point was found.
fn image_degree(a: &Poly, b: &Poly, x: Sym) -> Option<usize> {
    let others: Vec<Sym> = a.syms().union(b.syms()).iter().filter(|s| *s != x).collect();
    let la = a.lc_in(x);
    let lb = b.lc_in(x);
    for attempt in 0..6 {
        let val = |s: Sym| -> Option<Q> {
            others
                .iter()
                .position(|o| *o == s)
                .map(|i| sample_value(i + s.index(), attempt))
        };
        if !la.eval_with(&val).constant_value()?.is_zero()
            && !lb.eval_with(&val).constant_value()?.is_zero()
        {
            let ia = dense_univariate(&a.eval_with(&val), x);
            let ib = dense_univariate(&b.eval_with(&val), x);
            return Some(uni_gcd_degree(ia, ib));
        }
    }
    None
}

fn pp_gcd(a: &Poly, b: &Poly, x: Sym) -> Poly {
    let (mut r0, mut r1) = if a.degree(x) >= b.degree(x) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    match image_degree(&r0, &r1, x) {
        Some(0) => return Poly::one(),
        Some(d) if d == r1.degree(x) as usize
            && r0.div_exact(&r1).is_some() => {
                return r1.integer_primitive().0;
            }
        _ => {}
    }
    loop {
        let r = prem(&r0, &r1, x);
        if r.is_zero() {
            return r1.integer_primitive().0;
        }
        if r.degree(x) == 0 {
            return Poly::one();
        }
        r0 = r1;
        r1 = pp(&r, x);
    }
}

/// Least common multiple, normalized like [`gcd`].
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    a.div_exact(&g).unwrap().mul(b).integer_primitive().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::qi;

    fn v(s: Sym) -> Poly {
        Poly::var(s)
    }

    #[test]
    fn simple_gcds() {
        let b = v(Sym::B);
        let p = v(Sym::P);
        let f = b.add(&p).mul(&b.sub(&Poly::one()));
        let g = b.add(&p).mul(&p.add(&Poly::int(3)));
        assert_eq!(gcd(&f, &g), b.add(&p));
        assert_eq!(gcd(&f, &Poly::int(5)), Poly::one());
        assert_eq!(gcd(&b.pow(3).mul(&p), &b.pow(2)), b.pow(2));
        assert_eq!(gcd(&Poly::zero(), &f.scale(&qi(-3))), f.integer_primitive().0);
    }

    #[test]
    fn gcd_with_content() {
        let b = v(Sym::B);
        let p = v(Sym::P);
        let c = v(Sym::C);
        // (P+1)(b^2 - c) and (P+1)(b^2 - c)(b + c) share (P+1)(b^2-c)
        let common = p.add(&Poly::one()).mul(&b.pow(2).sub(&c));
        let f = common.mul(&b.add(&c).pow(2));
        let g = common.mul(&p.sub(&c));
        let r = gcd(&f, &g);
        assert_eq!(r, common.integer_primitive().0);
    }

    #[test]
    fn coprime_shortcut() {
        let b = v(Sym::B);
        let d = v(Sym::Delta);
        let f = b.pow(5).add(&d.pow(3)).add(&Poly::one());
        let g = b.pow(4).sub(&d).add(&Poly::int(2));
        assert_eq!(gcd(&f, &g), Poly::one());
    }
}
