//! Rational functions in canonical form.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly};
use super::rational::{qpow, Q};
use super::symbols::{Sym, SymbolSet};
use crate::Error;

/// `num / den` with gcd(num, den) = 1 and `den` having leading coefficient 1,
/// so equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl Default for RatFn {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Q> for RatFn {
    fn from(c: Q) -> Self {
        RatFn::constant(c)
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::poly(p)
    }
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFn {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(n: i64) -> RatFn {
        RatFn::poly(Poly::int(n))
    }

    pub fn q(n: i64, d: i64) -> RatFn {
        RatFn::constant(super::rational::q(n, d))
    }

    pub fn constant(c: Q) -> RatFn {
        RatFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn var(s: Sym) -> RatFn {
        RatFn::poly(Poly::var(s))
    }

    pub fn poly(p: Poly) -> RatFn {
        RatFn { num: p, den: Poly::one() }
    }

    /// Build from numerator and denominator, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<RatFn, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFn { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        RatFn::normalize_lc(n, d)
    }

    fn coprime(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            RatFn::zero()
        } else {
            RatFn::normalize_lc(num, den)
        }
    }

    /// Already coprime; fix the scalar normalization only.
    fn normalize_lc(num: Poly, den: Poly) -> RatFn {
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let k = lc.recip();
            RatFn { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn syms(&self) -> SymbolSet {
        self.num.syms().union(self.den.syms())
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFn { num: n, den: Poly::one() };
            }
            return RatFn::reduce(n, self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::coprime(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return RatFn::coprime(o.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let d = self.den.mul(&o.den);
            return RatFn::coprime(n, d);
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let n = self.num.mul(&d2).add(&o.num.mul(&d1));
        if n.is_zero() {
            return RatFn::zero();
        }
        let h = gcd(&n, &g);
        if h.is_one() {
            RatFn::normalize_lc(n, d1.mul(&o.den))
        } else {
            let n = n.div_exact(&h).unwrap();
            let d = d1.mul(&o.den).div_exact(&h).unwrap();
            RatFn::normalize_lc(n, d)
        }
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        RatFn::normalize_lc(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, k: &Q) -> RatFn {
        if k.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFn, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn, Error> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFn, Error> {
        if e >= 0 {
            let e = e as u32;
            Ok(RatFn { num: self.num.pow(e), den: self.den.pow(e) })
        } else {
            self.inv()?.pow(-e)
        }
    }

    /// Evaluate at a full rational assignment; `None` if the denominator vanishes.
    pub fn eval(&self, f: &dyn Fn(Sym) -> Q) -> Option<Q> {
        let d = self.den.eval_all(f);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_all(f) / d)
    }

    /// Substitute rational values for some symbols.
    pub fn eval_partial(&self, f: &dyn Fn(Sym) -> Option<Q>) -> Result<RatFn, Error> {
        let n = self.num.eval_with(f);
        let d = self.den.eval_with(f);
        RatFn::new(n, d)
    }

    /// Substitute `s -> v` for a rational function `v`.
    pub fn subst(&self, s: Sym, v: &RatFn) -> Result<RatFn, Error> {
        if !self.syms().contains(s) {
            return Ok(self.clone());
        }
        if let Some(c) = v.constant_value() {
            return self.eval_partial(&|x| if x == s { Some(c.clone()) } else { None });
        }
        let (n, dn) = homogenize(&self.num, s, v);
        let (d, dd) = homogenize(&self.den, s, v);
        // num/den = n / d * vden^(dd - dn)
        let shift = dd as i64 - dn as i64;
        let (n, d) = if shift >= 0 {
            (n.mul(&v.den.pow(shift as u32)), d)
        } else {
            (n, d.mul(&v.den.pow((-shift) as u32)))
        };
        RatFn::new(n, d)
    }

    /// Substitute several symbols at once.
    pub fn subst_many(&self, subs: &[(Sym, RatFn)]) -> Result<RatFn, Error> {
        let mut n = RatFn::poly(self.num.clone());
        let mut d = RatFn::poly(self.den.clone());
        for (s, v) in subs {
            n = n.subst(*s, v)?;
            d = d.subst(*s, v)?;
        }
        n.div(&d)
    }

    /// For a function even in `s`, substitute a value for `s²`.
    pub fn subst_square(&self, s: Sym, v: &Q) -> Result<RatFn, Error> {
        let n = even_part_eval(&self.num, s, v);
        let d = even_part_eval(&self.den, s, v);
        match (n, d) {
            (Some((n, pn)), Some((d, pd))) if pn == pd => RatFn::new(n, d),
            _ => Err(Error::NotEven(s.name().to_string())),
        }
    }

    pub fn to_json(&self, syms: SymbolSet) -> serde_json::Value {
        serde_json::json!({
            "num": poly_json(&self.num, syms),
            "den": poly_json(&self.den, syms),
        })
    }
}

/// `p(v) * vden^deg` as a polynomial, with `deg = deg_s p`.
fn homogenize(p: &Poly, s: Sym, v: &RatFn) -> (Poly, u16) {
    let cs = p.coeffs_in(s);
    let deg = cs.len() - 1;
    let mut out = Poly::zero();
    let mut npow = Poly::one();
    let mut dpows = vec![Poly::one()];
    for _ in 0..deg {
        let last = dpows.last().unwrap().mul(&v.den);
        dpows.push(last);
    }
    for (i, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&c.mul(&npow).mul(&dpows[deg - i]));
        }
        if i < deg {
            npow = npow.mul(&v.num);
        }
    }
    (out, deg as u16)
}

/// If `p` has only even (or only odd) powers of `s`, evaluate at `s² = v`;
/// returns the parity found.
fn even_part_eval(p: &Poly, s: Sym, v: &Q) -> Option<(Poly, u16)> {
    let mut parity = None;
    let mut out = Poly::zero();
    let i = s.index();
    for (m, c) in p.terms() {
        let e = m.0[i];
        match parity {
            None => parity = Some(e % 2),
            Some(pr) if pr != e % 2 => return None,
            _ => {}
        }
        let mut mm = *m;
        mm.0[i] = 0;
        out = out.add(&Poly::monomial(mm, c * qpow(v, (e / 2) as i64)));
    }
    Some((out, parity.unwrap_or(0)))
}

fn poly_json(p: &Poly, syms: SymbolSet) -> serde_json::Value {
    let idx: Vec<usize> = syms.iter().map(Sym::index).collect();
    let mut map = serde_json::Map::new();
    for (m, c) in p.terms() {
        let key: Vec<String> = idx.iter().map(|&i| m.0[i].to_string()).collect();
        map.insert(key.join(","), serde_json::Value::String(super::rational::fmt_q(c)));
    }
    serde_json::Value::Object(map)
}

/// Parse the form written by [`RatFn::to_json`].
pub fn ratfn_from_json(v: &serde_json::Value, syms: SymbolSet) -> Option<RatFn> {
    let idx: Vec<usize> = syms.iter().map(Sym::index).collect();
    let parse = |p: &serde_json::Value| -> Option<Poly> {
        let mut out = Poly::zero();
        for (k, c) in p.as_object()? {
            let mut m = Mono::ONE;
            if !idx.is_empty() {
                let es: Vec<&str> = k.split(',').collect();
                if es.len() != idx.len() {
                    return None;
                }
                for (j, e) in es.iter().enumerate() {
                    m.0[idx[j]] = e.parse().ok()?;
                }
            }
            let c = super::rational::parse_q(c.as_str()?)?;
            out = out.add(&Poly::monomial(m, c));
        }
        Some(out)
    };
    RatFn::new(parse(v.get("num")?)?, parse(v.get("den")?)?).ok()
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.nterms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let d = if self.den.nterms() > 1 { format!("({})", self.den) } else { self.den.to_string() };
        write!(f, "{n}/{d}")
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::ops::Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        RatFn::add(&self, &o)
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}

impl std::ops::Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        RatFn::mul(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::{q, qi};

    fn b() -> RatFn {
        RatFn::var(Sym::B)
    }
    fn p() -> RatFn {
        RatFn::var(Sym::P)
    }

    #[test]
    fn canonical_equality() {
        let x = b().add(&RatFn::one()).div(&b().sub(&RatFn::one())).unwrap();
        let y = b()
            .pow(2)
            .unwrap()
            .sub(&RatFn::one())
            .div(&b().sub(&RatFn::one()).pow(2).unwrap())
            .unwrap();
        assert_eq!(x, y);
        assert_eq!(x.sub(&y), RatFn::zero());
        let z = x.scale(&qi(2)).div(&RatFn::int(2)).unwrap();
        assert_eq!(z, x);
    }

    #[test]
    fn partial_fractions_sum() {
        // 1/(e1(e2-e1)) + 1/((e1-e2)e2) = 1/(e1 e2)
        let e1 = RatFn::var(Sym::Eps1);
        let e2 = RatFn::var(Sym::Eps2);
        let l = e1.mul(&e2.sub(&e1)).inv().unwrap();
        let r = e1.sub(&e2).mul(&e2).inv().unwrap();
        assert_eq!(l.add(&r), e1.mul(&e2).inv().unwrap());
    }

    #[test]
    fn substitution() {
        // Delta = (b + 1/b)^2/4 - P^2 at P = (b + 1/b)/2 vanishes
        let q_ = b().add(&b().inv().unwrap());
        let delta = q_.pow(2).unwrap().scale(&q(1, 4)).sub(&p().pow(2).unwrap());
        let r = delta.subst(Sym::P, &q_.scale(&q(1, 2))).unwrap();
        assert!(r.is_zero());
        let e = delta.eval(&|s| if s == Sym::B { qi(2) } else { q(1, 3) }).unwrap();
        assert_eq!(e, q(25, 16) - q(1, 9));
    }

    #[test]
    fn square_substitution() {
        let f = b().pow(2).unwrap().add(&RatFn::one()).div(&b().pow(2).unwrap().sub(&RatFn::one())).unwrap();
        assert_eq!(f.subst_square(Sym::B, &q(-2, 3)).unwrap().constant_value(), Some(q(-1, 5)));
        let g = b().div(&b().sub(&b().inv().unwrap())).unwrap();
        assert_eq!(g.subst_square(Sym::B, &q(-2, 3)).unwrap().constant_value(), Some(q(2, 5)));
        assert!(b().add(&RatFn::one()).subst_square(Sym::B, &qi(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = b().add(&p().scale(&q(3, 7))).div(&b().pow(3).unwrap().sub(&p())).unwrap();
        let s = SymbolSet::of(&[Sym::B, Sym::P]);
        assert_eq!(ratfn_from_json(&x.to_json(s), s), Some(x));
    }
}
