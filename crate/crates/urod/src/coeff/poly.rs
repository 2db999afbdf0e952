//! Sparse multivariate polynomials over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_q, qpow, Q};
use super::symbols::{Sym, SymbolSet, NSYM};

/// Exponent vector indexed by [`Sym::index`]. Derived ordering is lexicographic
/// with `b` most significant; the leading term is the largest key.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Mono(pub [u16; NSYM]);

impl Mono {
    pub const ONE: Mono = Mono([0; NSYM]);

    pub fn var(s: Sym, e: u16) -> Mono {
        let mut m = Mono::ONE;
        m.0[s.index()] = e;
        m
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..NSYM {
            r.0[i] += o.0[i];
        }
        r
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..NSYM).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quot(&self, o: &Mono) -> Mono {
        let mut r = *o;
        for i in 0..NSYM {
            r.0[i] -= self.0[i];
        }
        r
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..NSYM {
            r.0[i] = r.0[i].min(o.0[i]);
        }
        r
    }

    pub fn deg(&self, s: Sym) -> u16 {
        self.0[s.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn syms(&self) -> SymbolSet {
        let mut s = SymbolSet::EMPTY;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                s.insert(Sym::from_index(i));
            }
        }
        s
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Q::from_integer(BigInt::from(n)))
    }

    pub fn var(s: Sym) -> Poly {
        Poly::monomial(Mono::var(s, 1), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Q)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::ONE))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn syms(&self) -> SymbolSet {
        let mut s = SymbolSet::EMPTY;
        for m in self.terms.keys() {
            s = s.union(m.syms());
        }
        s
    }

    pub fn degree(&self, s: Sym) -> u16 {
        self.terms.keys().map(|m| m.deg(s)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::total).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let mut acc: std::collections::HashMap<Mono, Q> =
            std::collections::HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let p = c1 * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Greatest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let mut m = match it.next() {
            Some(m) => *m,
            None => return Mono::ONE,
        };
        for x in it {
            m = m.meet(x);
        }
        m
    }

    pub fn div_mono(&self, d: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (d.quot(m), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = d.leading().unwrap();
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                terms.insert(dm.quot(m), c * &inv);
            }
            return Some(Poly { terms });
        }
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone())).unwrap();
        let inv = dc.recip();
        let mut r = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quot(&rm);
            let qc = &rc * &inv;
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients as a polynomial in `s`: entry `i` multiplies `s^i`.
    pub fn coeffs_in(&self, s: Sym) -> Vec<Poly> {
        let d = self.degree(s) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        let i = s.index();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut mm = *m;
            mm.0[i] = 0;
            out[e].terms.insert(mm, c.clone());
        }
        out
    }

    pub fn lc_in(&self, s: Sym) -> Poly {
        let d = self.degree(s);
        let i = s.index();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.0[i] == d {
                let mut mm = *m;
                mm.0[i] = 0;
                out.terms.insert(mm, c.clone());
            }
        }
        out
    }

    /// Substitute a rational value for `s`.
    pub fn eval_sym(&self, s: Sym, v: &Q) -> Poly {
        let i = s.index();
        let mut pows: Vec<Q> = vec![Q::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap() * v;
                pows.push(next);
            }
            let mut mm = *m;
            mm.0[i] = 0;
            out.add_term(mm, c * &pows[e]);
        }
        out
    }

    /// Evaluate every symbol for which `f` returns a value.
    pub fn eval_with(&self, f: &dyn Fn(Sym) -> Option<Q>) -> Poly {
        let mut p = self.clone();
        for s in self.syms().iter() {
            if let Some(v) = f(s) {
                p = p.eval_sym(s, &v);
            }
        }
        p
    }

    /// Scale to integer coefficients with content 1 and positive leading coefficient;
    /// returns the scaled polynomial and the factor used.
    pub fn integer_primitive(&self) -> (Poly, Q) {
        if self.is_zero() {
            return (Poly::zero(), Q::one());
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut k = Q::new(l, g);
        if self.leading().unwrap().1.is_negative() {
            k = -k;
        }
        (self.scale(&k), k)
    }

    /// `self` with leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    /// Substitute `s -> v` where `v` is a polynomial.
    pub fn compose(&self, s: Sym, v: &Poly) -> Poly {
        let cs = self.coeffs_in(s);
        let mut out = Poly::zero();
        for c in cs.iter().rev() {
            out = out.mul(v).add(c);
        }
        out
    }

    /// Map of symbol powers, for printing.
    fn fmt_mono(m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let s = Sym::from_index(i).name();
            if e == 1 {
                parts.push(s.to_string());
            } else {
                parts.push(format!("{s}^{e}"));
            }
        }
        parts.join("*")
    }

    /// Value of `self` at integer powers of a rational, reusing a power table.
    pub fn eval_all(&self, f: &dyn Fn(Sym) -> Q) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= qpow(&f(Sym::from_index(i)), e as i64);
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let ms = Poly::fmt_mono(m);
            if ms.is_empty() {
                f.write_str(&fmt_q(&a))?;
            } else if a.is_one() {
                f.write_str(&ms)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), ms)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::{q, qi};

    fn b() -> Poly {
        Poly::var(Sym::B)
    }
    fn p() -> Poly {
        Poly::var(Sym::P)
    }

    #[test]
    fn arithmetic_basics() {
        let x = b().add(&Poly::one());
        let y = b().sub(&Poly::one());
        assert_eq!(x.mul(&y), b().pow(2).sub(&Poly::one()));
        assert_eq!(x.pow(3).degree(Sym::B), 3);
        assert!(x.sub(&x).is_zero());
        assert_eq!(format!("{}", b().mul(&p()).scale(&q(-1, 2))), "-1/2*b*P");
    }

    #[test]
    fn exact_division() {
        let f = b().add(&p()).mul(&b().sub(&p().scale(&qi(2))));
        let d = b().add(&p());
        assert_eq!(f.div_exact(&d), Some(b().sub(&p().scale(&qi(2)))));
        assert_eq!(f.div_exact(&b()), None);
    }

    #[test]
    fn compose_and_eval() {
        let f = b().pow(2).add(&b());
        let g = f.compose(Sym::B, &p().add(&Poly::one()));
        assert_eq!(g.eval_sym(Sym::P, &qi(1)).constant_value(), Some(qi(6)));
        assert_eq!(f.eval_all(&|_| q(1, 2)), q(3, 4));
    }

    #[test]
    fn primitive_form() {
        let f = b().scale(&q(-2, 3)).add(&Poly::constant(q(4, 9)));
        let (g, _) = f.integer_primitive();
        assert_eq!(g, b().scale(&qi(3)).sub(&Poly::int(2)));
    }
}
