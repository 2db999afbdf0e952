//! Free boson on the half-lattice (1/√2)ℤ, optionally tensored with an abstract
//! Virasoro current T_b. Fields are states; products are n-th products computed
//! from the normal-ordered vertex operator.

pub mod catalog;
pub mod cf;
pub mod checks;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::coeff::{RatFn, Sym, SymbolSet, Q};
use crate::{verma, Error, Result};
pub use cf::Cf;

/// `a_{−n₁}···a_{−n_r} · L_{−m₁}···L_{−m_s} · v_{s/√2}`; both index lists descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub charge: i32,
    pub heis: Vec<u32>,
    pub vir: Vec<u32>,
}

fn desc(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

impl Monomial {
    pub fn new(heis: Vec<u32>, vir: Vec<u32>, charge: i32) -> Monomial {
        Monomial { charge, heis: desc(heis), vir: desc(vir) }
    }

    pub fn vacuum() -> Monomial {
        Monomial::new(vec![], vec![], 0)
    }

    pub fn heis_level(&self) -> u32 {
        self.heis.iter().sum()
    }

    pub fn vir_level(&self) -> u32 {
        self.vir.iter().sum()
    }

    /// Eigenvalue of L₀^{free} + L₀^{abs} (vacuum abstract module): level + s²/4.
    pub fn free_grade(&self) -> Q {
        Q::from_integer((self.heis_level() + self.vir_level()).into()) + Q::new((self.charge * self.charge).into(), 4.into())
    }

    /// Eigenvalue of L₀ for the shifted stress tensor: level + (s² − 2s)/4.
    pub fn urod_grade(&self) -> Q {
        let s = self.charge as i64;
        Q::from_integer((self.heis_level() + self.vir_level()).into()) + Q::new((s * s - 2 * s).into(), 4.into())
    }
}

/// Finite Q(√2)(symbols)-combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldExpr {
    terms: BTreeMap<Monomial, Cf>,
}

impl FieldExpr {
    pub fn zero() -> FieldExpr {
        FieldExpr::default()
    }

    pub fn mono(m: Monomial, c: Cf) -> FieldExpr {
        let mut f = FieldExpr::zero();
        f.add_term(m, c);
        f
    }

    pub fn vacuum() -> FieldExpr {
        FieldExpr::mono(Monomial::vacuum(), Cf::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Cf) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cf)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Cf {
        self.terms.get(m).cloned().unwrap_or_else(Cf::zero)
    }

    pub fn add(&self, o: &FieldExpr) -> FieldExpr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &FieldExpr) -> FieldExpr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FieldExpr {
        FieldExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, k: &Cf) -> FieldExpr {
        let mut r = FieldExpr::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.mul(k));
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Cf) -> Result<Cf>) -> Result<FieldExpr> {
        let mut r = FieldExpr::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c)?);
        }
        Ok(r)
    }

    pub fn subst(&self, s: Sym, v: &RatFn) -> Result<FieldExpr> {
        self.map_coeffs(|c| c.subst(s, v))
    }

    /// Keep only monomials satisfying the predicate.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> FieldExpr {
        FieldExpr { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn syms(&self) -> SymbolSet {
        self.terms.values().fold(SymbolSet::default(), |a, c| a.union(c.syms()))
    }

    pub fn has_abstract(&self) -> bool {
        self.terms.keys().any(|m| !m.vir.is_empty())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| serde_json::json!({ "heis": m.heis, "vir": m.vir, "charge": m.charge, "coeff": c.to_json() }))
                .collect(),
        )
    }
}

fn sup(n: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

fn heis_factor(n: u32) -> String {
    match n {
        1 => "∂φ".into(),
        2 => "∂²φ".into(),
        _ => {
            let f: u64 = (1..n as u64).product();
            format!("∂{}φ/{}", sup(n), f)
        }
    }
}

fn exp_factor(s: i32) -> String {
    match s {
        0 => String::new(),
        1 => "e^{φ/√2}".into(),
        -1 => "e^{−φ/√2}".into(),
        2 => "e^{√2φ}".into(),
        -2 => "e^{−√2φ}".into(),
        _ if s % 2 == 0 => format!("e^{{{}√2φ}}", s / 2).replace('-', "−"),
        _ => format!("e^{{{}φ/√2}}", s).replace('-', "−"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        let h: Vec<u32> = self.heis.iter().rev().copied().collect();
        while i < h.len() {
            let n = h[i];
            let k = h[i..].iter().take_while(|x| **x == n).count() as u32;
            let fac = heis_factor(n);
            parts.push(if k == 1 { fac } else { format!("({fac}){}", sup(k)) });
            i += k as usize;
        }
        for m in self.vir.iter().rev() {
            parts.push(if *m == 2 { "T_b".into() } else { format!("L_{{−{m}}}") });
        }
        let e = exp_factor(self.charge);
        if !e.is_empty() {
            parts.push(e);
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, ":{}:", parts.concat())
        }
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = !cs.contains(" + ") && !cs.chars().skip(1).collect::<String>().contains(" - ") && !cs.contains('/');
            if c == &Cf::one() {
                write!(f, "{m}")?;
            } else if simple {
                write!(f, "{cs}·{m}")?;
            } else {
                write!(f, "({cs})·{m}")?;
            }
        }
        Ok(())
    }
}

/// Highest-weight module carried by the abstract Virasoro factor.
#[derive(Clone, Debug)]
pub enum AbsModule {
    /// Vacuum module: Δ = 0 and L_{−1}|0⟩ = 0.
    Vacuum,
    /// Verma module with the given highest weight.
    Verma(RatFn),
}

type AbsCache = HashMap<(i64, Vec<u32>), Arc<Vec<(Vec<u32>, RatFn)>>>;

/// Evaluation context: central charge of T_b and the module it acts on.
#[derive(Clone)]
pub struct Ctx {
    pub c_abs: RatFn,
    pub module: AbsModule,
    cache: Arc<Mutex<AbsCache>>,
}

impl Ctx {
    /// Pure free boson (abstract factor only ever the vacuum).
    pub fn free() -> Ctx {
        Ctx::with(RatFn::zero(), AbsModule::Vacuum)
    }

    /// Vacuum abstract sector with central charge c(b) = 13 + 6b² + 6b⁻².
    pub fn tb() -> Ctx {
        Ctx::with(c_of_b(), AbsModule::Vacuum)
    }

    pub fn with(c_abs: RatFn, module: AbsModule) -> Ctx {
        Ctx { c_abs, module, cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    /// L_m acting on a PBW word of the abstract module.
    pub fn abs_mode(&self, m: i64, word: &[u32]) -> Result<Arc<Vec<(Vec<u32>, RatFn)>>> {
        let key = (m, word.to_vec());
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let combo = verma::apply_mode(m, word);
        let delta = match &self.module {
            AbsModule::Vacuum => RatFn::zero(),
            AbsModule::Verma(d) => d.clone(),
        };
        let mut out = Vec::new();
        for (w, p) in combo.iter() {
            if matches!(self.module, AbsModule::Vacuum) && w.contains(&1) {
                continue;
            }
            let mut r = RatFn::poly(p.clone());
            if delta != RatFn::var(Sym::Delta) {
                r = r.subst(Sym::Delta, &delta)?;
            }
            if self.c_abs != RatFn::var(Sym::C) {
                r = r.subst(Sym::C, &self.c_abs)?;
            }
            if !r.is_zero() {
                out.push((w.clone(), r));
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }
}

/// c(b) = 13 + 6b² + 6b⁻².
pub fn c_of_b() -> RatFn {
    let b2 = RatFn::var(Sym::B).mul(&RatFn::var(Sym::B));
    RatFn::int(13).add(&b2.scale(&Q::from_integer(6.into()))).add(&b2.inv().unwrap().scale(&Q::from_integer(6.into())))
}

fn binom(n: u64, k: u64) -> Q {
    let mut r = Q::from_integer(1.into());
    for i in 0..k {
        r = r * Q::from_integer((n - i).into()) / Q::from_integer((i + 1).into());
    }
    r
}

fn remove_one(h: &[u32], m: u32) -> Option<(Vec<u32>, usize)> {
    let cnt = h.iter().filter(|x| **x == m).count();
    if cnt == 0 {
        return None;
    }
    let pos = h.iter().position(|x| *x == m).unwrap();
    let mut v = h.to_vec();
    v.remove(pos);
    Some((v, cnt))
}

fn insert(h: &[u32], m: u32) -> Vec<u32> {
    let mut v = h.to_vec();
    let pos = v.iter().position(|x| *x < m).unwrap_or(v.len());
    v.insert(pos, m);
    v
}

type Terms = BTreeMap<(i64, Vec<u32>), Cf>;

fn push(t: &mut Terms, key: (i64, Vec<u32>), c: Cf) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

/// Partitions with parts ≤ total and Σ ≤ total, as multiplicity lists (part, k).
fn small_partitions(total: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(part: u32, left: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if part == 0 {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        while k * part <= left {
            if k > 0 {
                cur.push((part, k));
            }
            rec(part - 1, left - k * part, cur, out);
            if k > 0 {
                cur.pop();
            }
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of Y(Π a_{−n_i} v_{s/√2}, z)(Π a_{−m_j} v_{t/√2}) at all powers z^p with p ≤ hi.
///
/// Keys are (p, heis) with the result in charge sector s + t.
fn fock_y(ah: &[u32], s: i32, bh: &[u32], t: i32, hi: i64) -> Result<Terms> {
    let st = s as i64 * t as i64;
    if st % 2 != 0 {
        return Err(Error::NonLocal(s as i64, t as i64));
    }
    let lam = Cf::sqrt2_times(RatFn::q(s as i64, 2));
    let mu = Cf::sqrt2_times(RatFn::q(t as i64, 2));
    let r = ah.len();
    let mut out = Terms::new();
    for mask in 0u32..(1 << r) {
        let mut terms = Terms::new();
        terms.insert((0, bh.to_vec()), Cf::one());
        // annihilation parts of the derivative factors
        for (i, &n) in ah.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let k = (n - 1) as u64;
            let mut next = Terms::new();
            for ((p, h), c) in &terms {
                let g: u32 = h.iter().sum();
                for m in 0..=g {
                    let mut bc = binom(m as u64 + k, k);
                    if k % 2 == 1 {
                        bc = -bc;
                    }
                    let pw = p - m as i64 - n as i64;
                    if m == 0 {
                        push(&mut next, (pw, h.clone()), c.mul(&mu).scale(&bc));
                    } else if let Some((h2, cnt)) = remove_one(h, m) {
                        let f = bc * Q::from_integer((m as i64 * cnt as i64).into());
                        push(&mut next, (pw, h2), c.scale(&f));
                    }
                }
            }
            terms = next;
        }
        // exp(−λ Σ a_n z^{−n}/n)
        if s != 0 {
            let g: u32 = terms.keys().map(|(_, h)| h.iter().sum::<u32>()).max().unwrap_or(0);
            for n in 1..=g {
                let mut next = Terms::new();
                for ((p, h), c) in &terms {
                    let cnt = h.iter().filter(|x| **x == n).count() as u64;
                    let mut cur = h.clone();
                    let mut lp = Cf::one();
                    for k in 0..=cnt {
                        push(&mut next, (p - (n as i64) * k as i64, cur.clone()), c.mul(&lp).scale(&binom(cnt, k)));
                        if k < cnt {
                            cur = remove_one(&cur, n).unwrap().0;
                            lp = lp.mul(&lam.neg());
                        }
                    }
                }
                terms = next;
            }
        }
        // z^{λμ}, then creation parts
        let shift = st / 2;
        for ((p, h), c) in terms {
            let p = p + shift;
            if p > hi {
                continue;
            }
            let budget = (hi - p) as u32;
            let mut cre: Terms = Terms::new();
            cre.insert((p, h), c);
            for (i, &n) in ah.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let mut next = Terms::new();
                for ((p, h), c) in &cre {
                    let left = (hi - p) as u32;
                    for j in n..=n + left {
                        let bc = binom((j - 1) as u64, (n - 1) as u64);
                        push(&mut next, (p + (j - n) as i64, insert(h, j)), c.scale(&bc));
                    }
                }
                cre = next;
            }
            if s == 0 {
                for (k, c) in cre {
                    push(&mut out, k, c);
                }
                continue;
            }
            let parts = small_partitions(budget);
            for ((p, h), c) in cre {
                let left = (hi - p) as u32;
                for part in &parts {
                    let tot: u32 = part.iter().map(|(n, k)| n * k).sum();
                    if tot > left {
                        continue;
                    }
                    let mut coef = c.clone();
                    let mut hh = h.clone();
                    for &(n, k) in part {
                        let mut f = Q::from_integer(1.into());
                        for i in 1..=k {
                            f /= Q::from_integer((n as i64 * i as i64).into());
                            hh = insert(&hh, n);
                        }
                        coef = coef.scale(&f);
                        for _ in 0..k {
                            coef = coef.mul(&lam);
                        }
                    }
                    push(&mut out, (p + tot as i64, hh), coef);
                }
            }
        }
    }
    Ok(out)
}

/// All n-th products a_{(n)} b with n ≥ n_lo, for monomials a, b.
fn mono_products(a: &Monomial, b: &Monomial, n_lo: i64, ctx: &Ctx) -> Result<BTreeMap<i64, FieldExpr>> {
    let mut out: BTreeMap<i64, FieldExpr> = BTreeMap::new();
    let charge = a.charge + b.charge;
    match a.vir.as_slice() {
        [] => {
            let f = fock_y(&a.heis, a.charge, &b.heis, b.charge, -n_lo - 1)?;
            for ((p, h), c) in f {
                out.entry(-p - 1).or_default().add_term(Monomial { charge, heis: h, vir: b.vir.clone() }, c);
            }
        }
        [2] => {
            let lv = b.vir_level() as i64;
            let f = fock_y(&a.heis, a.charge, &b.heis, b.charge, lv + 1 - n_lo)?;
            for ((p, h), c) in f {
                for m in (n_lo + p - 1)..=lv {
                    let n = m - p + 1;
                    for (w, r) in ctx.abs_mode(m, &b.vir)?.iter() {
                        out.entry(n).or_default().add_term(Monomial { charge, heis: h.clone(), vir: w.clone() }, c.mul_rat(r));
                    }
                }
            }
        }
        _ => return Err(Error::Other(format!("abstract factor {:?} not supported as a field", a.vir))),
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// n-th products a_{(n)} b for all n ≥ n_lo.
pub fn products(a: &FieldExpr, b: &FieldExpr, n_lo: i64, ctx: &Ctx) -> Result<BTreeMap<i64, FieldExpr>> {
    let mut out: BTreeMap<i64, FieldExpr> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let k = ca.mul(cb);
            for (n, f) in mono_products(ma, mb, n_lo, ctx)? {
                let e = out.entry(n).or_default();
                *e = e.add(&f.scale(&k));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// The n-th product a_{(n)} b: the coefficient of z^{−n−1} in Y(a, z)b.
pub fn nprod(a: &FieldExpr, n: i64, b: &FieldExpr, ctx: &Ctx) -> Result<FieldExpr> {
    let mut out = FieldExpr::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if let Some(f) = mono_products(ma, mb, n, ctx)?.remove(&n) {
                out = out.add(&f.scale(&ca.mul(cb)));
            }
        }
    }
    Ok(out)
}

/// Translation operator D (state of ∂A).
pub fn derive(x: &FieldExpr, ctx: &Ctx) -> Result<FieldExpr> {
    let mut out = FieldExpr::zero();
    for (m, c) in x.terms() {
        for i in 0..m.heis.len() {
            if i > 0 && m.heis[i] == m.heis[i - 1] {
                continue;
            }
            let n = m.heis[i];
            let cnt = m.heis.iter().filter(|x| **x == n).count() as i64;
            let h = insert(&remove_one(&m.heis, n).unwrap().0, n + 1);
            out.add_term(Monomial { charge: m.charge, heis: h, vir: m.vir.clone() }, c.scale(&Q::from_integer((n as i64 * cnt).into())));
        }
        if m.charge != 0 {
            let lam = Cf::sqrt2_times(RatFn::q(m.charge as i64, 2));
            out.add_term(Monomial { charge: m.charge, heis: insert(&m.heis, 1), vir: m.vir.clone() }, c.mul(&lam));
        }
        if !m.vir.is_empty() {
            for (w, r) in ctx.abs_mode(-1, &m.vir)?.iter() {
                out.add_term(Monomial { charge: m.charge, heis: m.heis.clone(), vir: w.clone() }, c.mul_rat(r));
            }
        }
    }
    Ok(out)
}

/// Singular part of A(z)B(w): pole order p ↦ field of (z−w)^{−p}.
#[derive(Clone, Debug, PartialEq)]
pub struct OpeResult {
    pub poles: BTreeMap<u32, FieldExpr>,
    /// Distinct charge products λ_A·λ_B = s·t/2 occurring between the two fields.
    pub locality: Vec<i64>,
}

impl OpeResult {
    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn pole(&self, p: u32) -> FieldExpr {
        self.poles.get(&p).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let poles: serde_json::Map<String, serde_json::Value> =
            self.poles.iter().map(|(p, f)| (p.to_string(), f.to_json())).collect();
        serde_json::json!({ "poles": poles, "locality": self.locality })
    }
}

impl fmt::Display for OpeResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poles.is_empty() {
            return write!(f, "regular");
        }
        let mut first = true;
        for (p, x) in self.poles.iter().rev() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "(z−w)^−{p}: {x}")?;
        }
        Ok(())
    }
}

/// Complete singular part of A(z)B(w), optionally capped at `max_pole`.
pub fn ope_singular(a: &FieldExpr, b: &FieldExpr, max_pole: Option<u32>, ctx: &Ctx) -> Result<OpeResult> {
    let mut loc: Vec<i64> = Vec::new();
    for (ma, _) in a.terms() {
        for (mb, _) in b.terms() {
            let st = ma.charge as i64 * mb.charge as i64;
            if st % 2 != 0 {
                return Err(Error::NonLocal(ma.charge as i64, mb.charge as i64));
            }
            if !loc.contains(&(st / 2)) {
                loc.push(st / 2);
            }
        }
    }
    loc.sort_unstable();
    let mut poles = BTreeMap::new();
    for (n, f) in products(a, b, 0, ctx)? {
        let p = (n + 1) as u32;
        if max_pole.is_none_or(|mp| p <= mp) {
            poles.insert(p, f);
        }
    }
    Ok(OpeResult { poles, locality: loc })
}

/// Mode of Y(A; z) with index `n` (coefficient of z^{−n−1}) acting on a module element,
/// dropping components whose shifted grade exceeds `trunc`.
pub fn fock_mode_action(a: &FieldExpr, n: i64, state: &FieldExpr, trunc: Option<&Q>, ctx: &Ctx) -> Result<FieldExpr> {
    let r = nprod(a, n, state, ctx)?;
    Ok(match trunc {
        Some(g) => r.filter(|m| m.urod_grade() <= *g),
        None => r,
    })
}

/// Virasoro mode L_m = T_{(m+1)}.
pub fn vir_mode(t: &FieldExpr, m: i64, state: &FieldExpr, ctx: &Ctx) -> Result<FieldExpr> {
    nprod(t, m + 1, state, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis(h: &[u32], s: i32) -> FieldExpr {
        FieldExpr::mono(Monomial::new(h.to_vec(), vec![], s), Cf::one())
    }

    #[test]
    fn free_boson_contraction() {
        let ctx = Ctx::free();
        let a = heis(&[1], 0);
        let r = ope_singular(&a, &a, None, &ctx).unwrap();
        assert_eq!(r.poles.len(), 1);
        assert_eq!(r.pole(2), FieldExpr::vacuum());
    }

    #[test]
    fn exponential_regular() {
        let ctx = Ctx::free();
        let e = heis(&[], 2);
        assert!(ope_singular(&e, &e, None, &ctx).unwrap().is_empty());
        let em = heis(&[], -2);
        let r = ope_singular(&e, &em, None, &ctx).unwrap();
        // e^{√2φ}(z)e^{−√2φ}(w) ~ (z−w)^{−2}(1 + √2(z−w)∂φ)
        assert_eq!(r.pole(2), FieldExpr::vacuum());
        assert_eq!(r.pole(1), heis(&[1], 0).scale(&Cf::sqrt2()));
        assert!(matches!(ope_singular(&heis(&[], 1), &heis(&[], 1), None, &ctx), Err(Error::NonLocal(1, 1))));
    }

    #[test]
    fn vacuum_and_creation() {
        let ctx = Ctx::free();
        // A_{(−1)}|0⟩ = A
        for a in [heis(&[2, 1, 1], 0), heis(&[1], 2), heis(&[3], -1)] {
            assert_eq!(nprod(&a, -1, &FieldExpr::vacuum(), &ctx).unwrap(), a);
            // A_{(−2)}|0⟩ = DA
            assert_eq!(nprod(&a, -2, &FieldExpr::vacuum(), &ctx).unwrap(), derive(&a, &ctx).unwrap());
        }
    }

    #[test]
    fn exponential_modes_on_vacuum() {
        // Y(v_{√2}, z)v_0 = e^{√2 Σ a_{−n}z^n/n} v_{√2}: grade-1 term √2 a_{−1}
        let ctx = Ctx::free();
        let e = heis(&[], 2);
        let r = nprod(&e, -2, &FieldExpr::vacuum(), &ctx).unwrap();
        assert_eq!(r, heis(&[1], 2).scale(&Cf::sqrt2()));
        let r = nprod(&e, -3, &FieldExpr::vacuum(), &ctx).unwrap();
        let want = heis(&[1, 1], 2).add(&heis(&[2], 2).scale(&Cf::sqrt2().scale(&Q::new(1.into(), 2.into()))));
        assert_eq!(r, want);
    }

    #[test]
    fn abstract_sector() {
        let ctx = Ctx::tb();
        let t = FieldExpr::mono(Monomial::new(vec![], vec![2], 0), Cf::one());
        let r = ope_singular(&t, &t, None, &ctx).unwrap();
        assert_eq!(r.pole(4), FieldExpr::vacuum().scale(&Cf::rat(c_of_b().scale(&Q::new(1.into(), 2.into())))));
        assert!(r.pole(3).is_zero());
        assert_eq!(r.pole(2), t.scale(&Cf::int(2)));
        assert_eq!(r.pole(1), derive(&t, &ctx).unwrap());
        assert!(ope_singular(&t, &heis(&[1, 1], 2), None, &ctx).unwrap().is_empty());
    }

    #[test]
    fn pretty() {
        let f = heis(&[1, 1], 2).add(&heis(&[], -2).scale(&Cf::q(1, 2)));
        let s = f.to_string();
        assert!(s.contains(":(∂φ)²e^{√2φ}:"), "{s}");
        assert!(s.contains("e^{−√2φ}"), "{s}");
    }
}
