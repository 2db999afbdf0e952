//! Truncated q-series `q^{prefix} * Σ c_g q^g` with grades in (1/4)Z.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use super::ratfunc::{ratfn_from_json, RatFn};
use super::rational::{fmt_q, parse_q, q, Q};
use super::symbols::SymbolSet;
use crate::Error;

/// Grades are stored as integer multiples of 1/4.
pub type Q4 = i64;

pub fn q4_to_q(g: Q4) -> Q {
    q(g, 4)
}

/// `4 g` as an integer, or an error if `g` is not in (1/4)Z.
pub fn q_to_q4(g: &Q) -> Result<Q4, Error> {
    let x = g * Q::from_integer(BigInt::from(4));
    if !x.denom().is_one() {
        return Err(Error::GradeDenominator(fmt_q(g)));
    }
    i64::try_from(x.numer()).map_err(|_| Error::GradeDenominator(fmt_q(g)))
}

#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    syms: SymbolSet,
    prefix: RatFn,
    coeffs: BTreeMap<Q4, RatFn>,
    order: Q4,
}

/// Outcome of a coefficientwise comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesCmp {
    Equal,
    Mismatch { grade: Q, lhs: RatFn, rhs: RatFn },
}

impl SeriesCmp {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesCmp::Equal)
    }
}

impl GradedSeries {
    /// Series with the given coefficients (grades in quarter units); coefficients
    /// beyond `order` are dropped.
    pub fn new(
        syms: SymbolSet,
        prefix: RatFn,
        coeffs: impl IntoIterator<Item = (Q4, RatFn)>,
        order: Q4,
    ) -> Result<GradedSeries, Error> {
        if order < 0 {
            return Err(Error::NegativeOrder);
        }
        if !prefix.syms().is_subset(syms) {
            return Err(Error::MismatchedSymbols(prefix.syms().to_string(), syms.to_string()));
        }
        let mut map = BTreeMap::new();
        for (g, c) in coeffs {
            if g < 0 {
                return Err(Error::NegativeGrade(fmt_q(&q4_to_q(g))));
            }
            if !c.syms().is_subset(syms) {
                return Err(Error::MismatchedSymbols(c.syms().to_string(), syms.to_string()));
            }
            if g <= order && !c.is_zero() {
                let e: &mut RatFn = map.entry(g).or_insert_with(RatFn::zero);
                *e = e.add(&c);
            }
        }
        map.retain(|_, c: &mut RatFn| !c.is_zero());
        Ok(GradedSeries { syms, prefix, coeffs: map, order })
    }

    /// Integer-graded series from a list of integer coefficients `c[n] q^n`.
    pub fn from_ints(syms: SymbolSet, prefix: RatFn, cs: &[i64], order: i64) -> GradedSeries {
        let it = cs.iter().enumerate().map(|(n, &c)| (4 * n as Q4, RatFn::int(c)));
        GradedSeries::new(syms, prefix, it, 4 * order).expect("valid integer series")
    }

    pub fn zero(syms: SymbolSet, order: Q4) -> GradedSeries {
        GradedSeries { syms, prefix: RatFn::zero(), coeffs: BTreeMap::new(), order }
    }

    pub fn one(syms: SymbolSet, order: Q4) -> GradedSeries {
        GradedSeries::monomial(syms, RatFn::zero(), RatFn::one(), 0, order)
    }

    pub fn monomial(syms: SymbolSet, prefix: RatFn, c: RatFn, grade: Q4, order: Q4) -> GradedSeries {
        GradedSeries::new(syms, prefix, [(grade, c)], order).expect("valid monomial")
    }

    pub fn syms(&self) -> SymbolSet {
        self.syms
    }

    pub fn prefix(&self) -> &RatFn {
        &self.prefix
    }

    pub fn order(&self) -> Q {
        q4_to_q(self.order)
    }

    pub fn order_q4(&self) -> Q4 {
        self.order
    }

    pub fn coeff_q4(&self, g: Q4) -> RatFn {
        self.coeffs.get(&g).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn coeff(&self, g: &Q) -> Result<RatFn, Error> {
        let g4 = q_to_q4(g)?;
        if g4 > self.order {
            return Err(Error::OrderExceeded(fmt_q(g), fmt_q(&self.order())));
        }
        Ok(self.coeff_q4(g4))
    }

    /// Integer coefficient at integer grade `n`, if it is a rational integer.
    pub fn int_coeff(&self, n: i64) -> Option<i64> {
        let c = self.coeff_q4(4 * n).constant_value()?;
        if !c.denom().is_one() {
            return None;
        }
        i64::try_from(c.numer()).ok()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Q4, &RatFn)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same series over a larger symbol set.
    pub fn embed(&self, syms: SymbolSet) -> Result<GradedSeries, Error> {
        if !self.syms.is_subset(syms) {
            return Err(Error::MismatchedSymbols(self.syms.to_string(), syms.to_string()));
        }
        let mut s = self.clone();
        s.syms = syms;
        Ok(s)
    }

    pub fn truncate(&self, order: Q4) -> GradedSeries {
        let order = order.min(self.order);
        GradedSeries {
            syms: self.syms,
            prefix: self.prefix.clone(),
            coeffs: self.coeffs.range(..=order).map(|(g, c)| (*g, c.clone())).collect(),
            order,
        }
    }

    /// Multiply by `q^r` for a constant `r` (changes only the prefix).
    pub fn shift(&self, r: &RatFn) -> GradedSeries {
        let mut s = self.clone();
        s.prefix = s.prefix.add(r);
        s
    }

    fn check_syms(&self, o: &GradedSeries) -> Result<(), Error> {
        if self.syms != o.syms {
            return Err(Error::MismatchedSymbols(self.syms.to_string(), o.syms.to_string()));
        }
        Ok(())
    }

    /// Quarter-grade offsets placing both series over the smaller prefix.
    fn align(&self, o: &GradedSeries) -> Result<(RatFn, Q4, Q4), Error> {
        let d = self.prefix.sub(&o.prefix);
        let d = d
            .constant_value()
            .ok_or_else(|| Error::PrefixMismatch(self.prefix.to_string(), o.prefix.to_string()))?;
        let d4 = q_to_q4(&d)
            .map_err(|_| Error::PrefixMismatch(self.prefix.to_string(), o.prefix.to_string()))?;
        if d4 >= 0 {
            Ok((o.prefix.clone(), d4, 0))
        } else {
            Ok((self.prefix.clone(), 0, -d4))
        }
    }

    /// Re-express over `prefix`, which must differ from the current prefix by a
    /// nonpositive element of (1/4)Z.
    pub fn rebase(&self, prefix: &RatFn) -> Result<GradedSeries, Error> {
        let d = self
            .prefix
            .sub(prefix)
            .constant_value()
            .ok_or_else(|| Error::PrefixMismatch(self.prefix.to_string(), prefix.to_string()))?;
        let d4 = q_to_q4(&d)?;
        if d4 < 0 {
            return Err(Error::PrefixMismatch(self.prefix.to_string(), prefix.to_string()));
        }
        Ok(GradedSeries {
            syms: self.syms,
            prefix: prefix.clone(),
            coeffs: self.coeffs.iter().map(|(g, c)| (g + d4, c.clone())).collect(),
            order: self.order + d4,
        })
    }

    pub fn add(&self, o: &GradedSeries) -> Result<GradedSeries, Error> {
        self.check_syms(o)?;
        if self.is_zero() && self.prefix.is_zero() {
            return Ok(o.truncate(self.order));
        }
        if o.is_zero() && o.prefix.is_zero() {
            return Ok(self.truncate(o.order));
        }
        let (prefix, sa, sb) = self.align(o)?;
        let order = (self.order + sa).min(o.order + sb);
        let mut coeffs: BTreeMap<Q4, RatFn> = BTreeMap::new();
        for (g, c) in &self.coeffs {
            if g + sa <= order {
                coeffs.insert(g + sa, c.clone());
            }
        }
        for (g, c) in &o.coeffs {
            if g + sb <= order {
                let e = coeffs.entry(g + sb).or_insert_with(RatFn::zero);
                *e = e.add(c);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(GradedSeries { syms: self.syms, prefix, coeffs, order })
    }

    pub fn neg(&self) -> GradedSeries {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = c.neg();
        }
        s
    }

    pub fn sub(&self, o: &GradedSeries) -> Result<GradedSeries, Error> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &RatFn) -> Result<GradedSeries, Error> {
        if !k.syms().is_subset(self.syms) {
            return Err(Error::MismatchedSymbols(k.syms().to_string(), self.syms.to_string()));
        }
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = c.mul(k);
        }
        s.coeffs.retain(|_, c| !c.is_zero());
        Ok(s)
    }

    pub fn mul(&self, o: &GradedSeries) -> Result<GradedSeries, Error> {
        self.check_syms(o)?;
        let order = self.order.min(o.order);
        let mut coeffs: BTreeMap<Q4, RatFn> = BTreeMap::new();
        for (ga, ca) in &self.coeffs {
            for (gb, cb) in o.coeffs.range(..=order - ga) {
                let e = coeffs.entry(ga + gb).or_insert_with(RatFn::zero);
                *e = e.add(&ca.mul(cb));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(GradedSeries { syms: self.syms, prefix: self.prefix.add(&o.prefix), coeffs, order })
    }

    /// Multiplicative inverse; the grade-0 coefficient must be nonzero.
    pub fn invert_unit(&self) -> Result<GradedSeries, Error> {
        let c0 = self.coeff_q4(0);
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.inv()?;
        let mut r: BTreeMap<Q4, RatFn> = BTreeMap::new();
        r.insert(0, inv0.clone());
        for n in 1..=self.order {
            let mut acc = RatFn::zero();
            for (k, ck) in self.coeffs.range(1..=n) {
                if let Some(rn) = r.get(&(n - k)) {
                    acc = acc.add(&ck.mul(rn));
                }
            }
            if !acc.is_zero() {
                r.insert(n, acc.mul(&inv0).neg());
            }
        }
        Ok(GradedSeries { syms: self.syms, prefix: self.prefix.neg(), coeffs: r, order: self.order })
    }

    /// `q -> β q`.
    pub fn scale_substitute(&self, beta: &RatFn) -> Result<GradedSeries, Error> {
        if beta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let pre_pow = if self.prefix.is_zero() {
            0
        } else {
            match self.prefix.constant_value() {
                Some(p) if p.denom().is_one() => i64::try_from(p.numer()).map_err(|_| Error::SymbolicScaling)?,
                _ => return Err(Error::SymbolicScaling),
            }
        };
        let mut coeffs = BTreeMap::new();
        for (g, c) in &self.coeffs {
            if g % 4 != 0 {
                return Err(Error::SymbolicScaling);
            }
            coeffs.insert(*g, c.mul(&beta.pow(g / 4 + pre_pow)?));
        }
        Ok(GradedSeries { syms: self.syms, prefix: self.prefix.clone(), coeffs, order: self.order })
    }

    /// θ^m with θ = q d/dq.
    pub fn theta_derive(&self, m: u32) -> GradedSeries {
        let mut s = self.clone();
        for (g, c) in s.coeffs.iter_mut() {
            let w = self.prefix.add(&RatFn::constant(q4_to_q(*g)));
            let f = w.pow(m as i64).expect("nonnegative power");
            *c = c.mul(&f);
        }
        s.coeffs.retain(|_, c| !c.is_zero());
        s
    }

    /// Apply `f` to every coefficient (and keep the prefix).
    pub fn map_coeffs(
        &self,
        syms: SymbolSet,
        f: &dyn Fn(&RatFn) -> Result<RatFn, Error>,
    ) -> Result<GradedSeries, Error> {
        let coeffs: Vec<(Q4, RatFn)> =
            self.coeffs.iter().map(|(g, c)| Ok((*g, f(c)?))).collect::<Result<_, Error>>()?;
        GradedSeries::new(syms, f(&self.prefix)?, coeffs, self.order)
    }

    /// Compare coefficients up to `order` (relative to the smaller prefix).
    pub fn equal_to_order(&self, o: &GradedSeries, order: &Q) -> Result<SeriesCmp, Error> {
        self.check_syms(o)?;
        let (prefix, sa, sb) = self.align(o)?;
        let avail = (self.order + sa).min(o.order + sb);
        let n = q_to_q4(order)?;
        if n > avail {
            return Err(Error::OrderExceeded(fmt_q(order), fmt_q(&q4_to_q(avail))));
        }
        let _ = prefix;
        let mut grades: Vec<Q4> = self
            .coeffs
            .keys()
            .map(|g| g + sa)
            .chain(o.coeffs.keys().map(|g| g + sb))
            .filter(|g| *g <= n)
            .collect();
        grades.sort_unstable();
        grades.dedup();
        for g in grades {
            let l = self.coeff_q4(g - sa);
            let r = o.coeff_q4(g - sb);
            if l != r {
                return Ok(SeriesCmp::Mismatch { grade: q4_to_q(g), lhs: l, rhs: r });
            }
        }
        Ok(SeriesCmp::Equal)
    }

    /// 1/(q)_∞ to integer order `order`.
    pub fn pochhammer_inf_inverse(syms: SymbolSet, order: i64) -> Result<GradedSeries, Error> {
        if order < 0 {
            return Err(Error::NegativeOrder);
        }
        let p = partition_numbers(order as usize);
        let it = p.into_iter().enumerate().map(|(n, c)| (4 * n as Q4, RatFn::constant(Q::from_integer(c))));
        GradedSeries::new(syms, RatFn::zero(), it, 4 * order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cs = serde_json::Map::new();
        for (g, c) in &self.coeffs {
            cs.insert(fmt_q(&q4_to_q(*g)), c.to_json(self.syms));
        }
        json!({
            "symbols": self.syms,
            "prefix": self.prefix.to_json(self.syms),
            "order": fmt_q(&self.order()),
            "coeffs": cs,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<GradedSeries> {
        let syms: SymbolSet = serde_json::from_value(v.get("symbols")?.clone()).ok()?;
        let prefix = ratfn_from_json(v.get("prefix")?, syms)?;
        let order = q_to_q4(&parse_q(v.get("order")?.as_str()?)?).ok()?;
        let mut coeffs = Vec::new();
        for (g, c) in v.get("coeffs")?.as_object()? {
            coeffs.push((q_to_q4(&parse_q(g)?).ok()?, ratfn_from_json(c, syms)?));
        }
        GradedSeries::new(syms, prefix, coeffs, order).ok()
    }
}

/// p(0..=n) by Euler's recurrence-free DP over part sizes.
pub fn partition_numbers(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for k in 1..=n {
        for m in k..=n {
            let t = p[m - k].clone();
            p[m] += t;
        }
    }
    p
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_zero() {
            write!(f, "q^({})*(", self.prefix)?;
        }
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        let mut first = true;
        for (g, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = if c.syms().is_empty() { c.to_string() } else { format!("({c})") };
            if *g == 0 {
                f.write_str(&cs)?;
            } else {
                write!(f, "{}*q^{}", cs, fmt_q(&q4_to_q(*g)))?;
            }
        }
        write!(f, " + O(q^{})", fmt_q(&(self.order() + Q::from_integer(BigInt::from(1)) / Q::from_integer(BigInt::from(4)))))?;
        if !self.prefix.is_zero() {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational::qi;
    use crate::coeff::symbols::Sym;

    fn e() -> SymbolSet {
        SymbolSet::EMPTY
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = GradedSeries::from_ints(e(), RatFn::zero(), &[1, -1], 5);
        let geo = GradedSeries::from_ints(e(), RatFn::zero(), &[1, 1, 1, 1, 1, 1], 5);
        let prod = one_minus_q.mul(&geo).unwrap();
        assert!(prod.equal_to_order(&GradedSeries::one(e(), 20), &qi(5)).unwrap().is_equal());
        let inv = GradedSeries::from_ints(e(), RatFn::zero(), &[1, -1], 3).invert_unit().unwrap();
        assert_eq!(inv, GradedSeries::from_ints(e(), RatFn::zero(), &[1, 1, 1, 1], 3));
    }

    #[test]
    fn prefix_addition() {
        let s = SymbolSet::of(&[Sym::Delta]);
        let d = RatFn::var(Sym::Delta);
        let a = GradedSeries::monomial(s, d.clone(), RatFn::one(), 0, 8);
        let b = GradedSeries::monomial(s, d.scale(&qi(2)), RatFn::one(), 0, 8);
        assert_eq!(a.mul(&b).unwrap().prefix(), &d.scale(&qi(3)));
    }

    #[test]
    fn partitions() {
        let p = GradedSeries::pochhammer_inf_inverse(e(), 10).unwrap();
        assert_eq!(p.int_coeff(4), Some(5));
        assert_eq!(p.int_coeff(10), Some(42));
        let p0 = GradedSeries::pochhammer_inf_inverse(e(), 0).unwrap();
        assert_eq!(p0, GradedSeries::one(e(), 0));
    }

    #[test]
    fn theta() {
        let s = SymbolSet::of(&[Sym::Delta]);
        let d = RatFn::var(Sym::Delta);
        let f = GradedSeries::new(s, d.clone(), [(0, RatFn::one()), (4, RatFn::one())], 4).unwrap();
        let t = f.theta_derive(1);
        assert_eq!(t.coeff_q4(0), d);
        assert_eq!(t.coeff_q4(4), d.add(&RatFn::one()));
        let g = GradedSeries::monomial(e(), RatFn::zero(), RatFn::int(5), 8, 8);
        assert_eq!(g.theta_derive(2).coeff_q4(8), RatFn::int(20));
    }

    #[test]
    fn scaling() {
        let f = GradedSeries::from_ints(e(), RatFn::zero(), &[1, 1], 1);
        assert_eq!(f.scale_substitute(&RatFn::int(2)).unwrap().int_coeff(1), Some(2));
        let g = GradedSeries::from_ints(e(), RatFn::q(1, 4), &[1, 1], 1);
        assert!(matches!(g.scale_substitute(&RatFn::int(4)), Err(Error::SymbolicScaling)));
        let h = GradedSeries::from_ints(e(), RatFn::one(), &[1, 1], 2);
        let hs = h.scale_substitute(&RatFn::int(2)).unwrap();
        assert_eq!((hs.int_coeff(0), hs.int_coeff(1)), (Some(2), Some(4)));
    }

    #[test]
    fn mismatch_reporting() {
        let a = GradedSeries::from_ints(e(), RatFn::zero(), &[1, 1], 1);
        let b = GradedSeries::from_ints(e(), RatFn::zero(), &[1, 2], 1);
        match a.equal_to_order(&b, &qi(1)).unwrap() {
            SeriesCmp::Mismatch { grade, lhs, rhs } => {
                assert_eq!(grade, qi(1));
                assert_eq!((lhs, rhs), (RatFn::int(1), RatFn::int(2)));
            }
            _ => panic!(),
        }
        assert!(a.equal_to_order(&b, &qi(2)).is_err());
    }

    #[test]
    fn quarter_prefix_alignment() {
        let a = GradedSeries::from_ints(e(), RatFn::q(-1, 4), &[1, 3], 1);
        let b = GradedSeries::from_ints(e(), RatFn::q(3, 4), &[3], 0);
        let d = a.sub(&b).unwrap();
        assert_eq!(d.coeff_q4(0), RatFn::one());
        assert_eq!(d.coeff_q4(4), RatFn::zero());
        assert!(GradedSeries::from_ints(e(), RatFn::q(1, 5), &[1], 1).add(&a).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SymbolSet::of(&[Sym::Delta, Sym::C]);
        let f = GradedSeries::new(
            s,
            RatFn::var(Sym::Delta),
            [(0, RatFn::one()), (4, RatFn::var(Sym::Delta).inv().unwrap().scale(&q(1, 2)))],
            8,
        )
        .unwrap();
        assert_eq!(GradedSeries::from_json(&f.to_json()), Some(f));
    }
}
