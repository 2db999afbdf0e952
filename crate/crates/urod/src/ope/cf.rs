//! Coefficients in Q(√2)(symbols): pairs `r + s·√2` of rational functions.

use std::fmt;

use crate::coeff::rational::fmt_q;
use crate::coeff::{Poly, RatFn, Sym, SymbolSet, Q};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cf {
    pub r: RatFn,
    pub s: RatFn,
}

impl Cf {
    pub fn zero() -> Cf {
        Cf { r: RatFn::zero(), s: RatFn::zero() }
    }

    pub fn one() -> Cf {
        Cf::rat(RatFn::one())
    }

    pub fn rat(r: RatFn) -> Cf {
        Cf { r, s: RatFn::zero() }
    }

    pub fn int(n: i64) -> Cf {
        Cf::rat(RatFn::int(n))
    }

    pub fn q(n: i64, d: i64) -> Cf {
        Cf::rat(RatFn::q(n, d))
    }

    pub fn constant(c: Q) -> Cf {
        Cf::rat(RatFn::constant(c))
    }

    pub fn var(s: Sym) -> Cf {
        Cf::rat(RatFn::var(s))
    }

    /// `s·√2`.
    pub fn sqrt2_times(s: RatFn) -> Cf {
        Cf { r: RatFn::zero(), s }
    }

    pub fn sqrt2() -> Cf {
        Cf::sqrt2_times(RatFn::one())
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn add(&self, o: &Cf) -> Cf {
        Cf { r: self.r.add(&o.r), s: self.s.add(&o.s) }
    }

    pub fn sub(&self, o: &Cf) -> Cf {
        Cf { r: self.r.sub(&o.r), s: self.s.sub(&o.s) }
    }

    pub fn neg(&self) -> Cf {
        Cf { r: self.r.neg(), s: self.s.neg() }
    }

    pub fn mul(&self, o: &Cf) -> Cf {
        if self.s.is_zero() && o.s.is_zero() {
            return Cf::rat(self.r.mul(&o.r));
        }
        let rr = self.r.mul(&o.r).add(&self.s.mul(&o.s).scale(&Q::from_integer(2.into())));
        let ss = self.r.mul(&o.s).add(&self.s.mul(&o.r));
        Cf { r: rr, s: ss }
    }

    pub fn scale(&self, k: &Q) -> Cf {
        Cf { r: self.r.scale(k), s: self.s.scale(k) }
    }

    pub fn mul_rat(&self, k: &RatFn) -> Cf {
        Cf { r: self.r.mul(k), s: self.s.mul(k) }
    }

    /// Conjugate `r − s√2`.
    pub fn conj(&self) -> Cf {
        Cf { r: self.r.clone(), s: self.s.neg() }
    }

    pub fn norm(&self) -> RatFn {
        self.r.mul(&self.r).sub(&self.s.mul(&self.s).scale(&Q::from_integer(2.into())))
    }

    pub fn inv(&self) -> Result<Cf> {
        let n = self.norm().inv()?;
        Ok(self.conj().mul_rat(&n))
    }

    pub fn div(&self, o: &Cf) -> Result<Cf> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn syms(&self) -> SymbolSet {
        self.r.syms().union(self.s.syms())
    }

    /// Apply a map to both rational parts (a substitution homomorphism fixing √2).
    pub fn map(&self, f: impl Fn(&RatFn) -> Result<RatFn>) -> Result<Cf> {
        Ok(Cf { r: f(&self.r)?, s: f(&self.s)? })
    }

    pub fn subst(&self, s: Sym, v: &RatFn) -> Result<Cf> {
        self.map(|x| x.subst(s, v))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let syms = self.syms();
        serde_json::json!({ "rat": self.r.to_json(syms), "sqrt2": self.s.to_json(syms) })
    }
}

/// Evaluate a polynomial at Q(√2)-valued symbol assignments; unassigned symbols stay symbolic.
pub fn eval_poly(p: &Poly, vals: &[(Sym, Cf)]) -> Cf {
    let mut acc = Cf::zero();
    for (m, c) in p.terms() {
        let mut t = Cf::constant(c.clone());
        for s in m.syms().iter() {
            let e = m.deg(s);
            let base = match vals.iter().find(|(x, _)| *x == s) {
                Some((_, v)) => v.clone(),
                None => Cf::var(s),
            };
            for _ in 0..e {
                t = t.mul(&base);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Evaluate a Q(√2)-coefficient expression at Q(√2)-valued symbol assignments.
pub fn eval_cf(x: &Cf, vals: &[(Sym, Cf)]) -> Result<Cf> {
    let part = |r: &RatFn| -> Result<Cf> { eval_poly(r.num(), vals).div(&eval_poly(r.den(), vals)) };
    let r = part(&x.r)?;
    let s = part(&x.s)?;
    Ok(r.add(&s.mul(&Cf::sqrt2())))
}

fn paren(r: &RatFn) -> String {
    let t = r.to_string();
    if let Some(c) = r.constant_value() {
        return fmt_q(&c);
    }
    if t.contains(['+', ' ']) || t.chars().skip(1).any(|c| c == '-') {
        format!("({t})")
    } else {
        t
    }
}

impl fmt::Display for Cf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.r),
            (true, false) => write!(f, "{}·√2", paren(&self.s)),
            (false, false) => write!(f, "{} + {}·√2", self.r, paren(&self.s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let x = Cf { r: RatFn::int(1), s: RatFn::int(1) };
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), Cf::one());
        assert_eq!(Cf::sqrt2().mul(&Cf::sqrt2()), Cf::int(2));
        let e = Cf::var(Sym::Eps);
        assert_eq!(e.mul(&Cf::sqrt2()).div(&e).unwrap(), Cf::sqrt2());
    }

    #[test]
    fn evaluation() {
        let p = RatFn::var(Sym::Alpha).mul(&RatFn::var(Sym::Alpha)).add(&RatFn::var(Sym::Eps));
        let v = eval_cf(&Cf::rat(p), &[(Sym::Alpha, Cf::sqrt2())]).unwrap();
        assert_eq!(v, Cf::int(2).add(&Cf::var(Sym::Eps)));
    }
}
