//! (l,k)-configurations, their q-weights, and the configuration-sum identities.
//!
//! Sweeping positions left to right, the weight of the negative half-line is
//! Σ_{J≥1} D_J with D_J = Σ_{j≤−J} (ext(j) − f(j)). Every D_J is nonnegative (pairs of
//! neighbours have extremal sum k), so partial weights only grow and the sweep prunes.
//! A first deviation at position −J already costs ⌈J/2⌉, which sets the left window.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::rational::q;
use crate::coeff::{GradedSeries, RatFn, SymbolSet, Q};
use crate::verdict::Verdict;
use crate::{Error, Result};

/// Extremal value at position `m`: `l` on even, `k − l` on odd positions.
pub fn extremal(l: u32, k: u32, m: i64) -> u32 {
    if m.rem_euclid(2) == 0 {
        l
    } else {
        k - l
    }
}

/// A configuration stored as overrides of `f_{-1}` (extremal on m < 0, zero on m ≥ 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub l: u32,
    pub k: u32,
    pub overrides: BTreeMap<i64, u32>,
}

impl Configuration {
    pub fn new(l: u32, k: u32, overrides: BTreeMap<i64, u32>) -> Result<Configuration> {
        if k == 0 || l > k {
            return Err(Error::InvalidLabel(format!("(l,k) = ({l},{k})")));
        }
        let c = Configuration { l, k, overrides };
        c.validate()?;
        Ok(c)
    }

    pub fn value(&self, m: i64) -> u32 {
        match self.overrides.get(&m) {
            Some(v) => *v,
            None if m < 0 => extremal(self.l, self.k, m),
            None => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        let (Some(lo), Some(hi)) = (self.overrides.keys().next(), self.overrides.keys().last()) else {
            return Ok(());
        };
        for m in lo - 1..=hi + 1 {
            let v = self.value(m);
            if v > self.k {
                return Err(Error::InvalidLabel(format!("f({m}) = {v} > k")));
            }
            if v + self.value(m + 1) > self.k {
                return Err(Error::InvalidLabel(format!("f({m}) + f({}) > k", m + 1)));
            }
        }
        Ok(())
    }

    /// `w_q(f)` straight from the defining sum.
    pub fn weight(&self) -> i64 {
        let (l, k) = (self.l as i64, self.k as i64);
        let mut w = 0i64;
        for (&m, &v) in &self.overrides {
            let v = v as i64;
            if m < 0 {
                if m.rem_euclid(2) == 1 {
                    // m = 2j+1
                    w -= m * (k - l - v);
                } else {
                    w -= m * (l - v);
                }
            } else {
                w += m * v;
            }
        }
        w
    }
}

pub fn config_weight(f: &Configuration) -> i64 {
    f.weight()
}

/// Number of configurations at each weight `0..=max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCount(pub Vec<BigInt>);

impl Serialize for WeightedCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl WeightedCount {
    pub fn zeros(n: usize) -> WeightedCount {
        WeightedCount(vec![BigInt::from(0); n + 1])
    }

    pub fn max_weight(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, w: usize) -> &BigInt {
        &self.0[w]
    }

    /// Truncated product of two generating series.
    pub fn mul(&self, o: &WeightedCount) -> WeightedCount {
        let n = self.max_weight().min(o.max_weight());
        let mut r = WeightedCount::zeros(n);
        for i in 0..=n {
            for j in 0..=n - i {
                r.0[i + j] += &self.0[i] * &o.0[j];
            }
        }
        r
    }

    pub fn add(&self, o: &WeightedCount) -> WeightedCount {
        let n = self.max_weight().min(o.max_weight());
        WeightedCount((0..=n).map(|i| &self.0[i] + &o.0[i]).collect())
    }

    /// As an integer-graded series with the given prefix.
    pub fn to_series(&self, prefix: &Q) -> GradedSeries {
        let n = self.max_weight() as i64;
        let it = self.0.iter().enumerate().map(|(i, c)| (4 * i as i64, RatFn::constant(Q::from_integer(c.clone()))));
        GradedSeries::new(SymbolSet::default(), RatFn::constant(prefix.clone()), it, 4 * n).expect("series")
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|c| i64::try_from(c).expect("count fits")).collect()
    }
}

/// Left window needed so every configuration of weight ≤ `max_weight` is seen.
pub fn left_window(max_weight: usize) -> i64 {
    2 * max_weight as i64 + 2
}

/// One sweep of the transfer matrix over positions `from..=to`.
///
/// `prev` is the value just left of `from`. `allowed(m, v)` filters values. Negative
/// positions add the running tail sum, nonnegative positions add `m·f(m)`.
fn sweep(
    l: u32,
    k: u32,
    from: i64,
    to: i64,
    prev: u32,
    allowed: &dyn Fn(i64, u32) -> bool,
    max_weight: usize,
) -> WeightedCount {
    // state (previous value, tail sum) -> counts by weight
    let nw = max_weight + 1;
    let mut states: HashMap<(u32, i64), Vec<BigInt>> = HashMap::new();
    let mut init = vec![BigInt::from(0); nw];
    init[0] = BigInt::from(1);
    states.insert((prev, 0), init);
    for m in from..=to {
        let mut next: HashMap<(u32, i64), Vec<BigInt>> = HashMap::new();
        for ((pv, d), counts) in &states {
            for v in 0..=k - pv {
                if !allowed(m, v) {
                    continue;
                }
                let (d2, add) = if m < 0 {
                    let d2 = d + extremal(l, k, m) as i64 - v as i64;
                    if d2 < 0 {
                        continue;
                    }
                    (d2, d2)
                } else {
                    (*d, m * v as i64)
                };
                if add as usize > max_weight {
                    continue;
                }
                let add = add as usize;
                let e = next.entry((v, d2)).or_insert_with(|| vec![BigInt::from(0); nw]);
                for w in 0..nw - add {
                    if counts[w].sign() != num_bigint::Sign::NoSign {
                        e[w + add] += &counts[w];
                    }
                }
            }
        }
        states = next;
    }
    let mut out = WeightedCount::zeros(max_weight);
    for ((_, d), counts) in states {
        // the tail sum left of the window is zero; right of a minus sweep it is absorbed
        let _ = d;
        for (w, c) in counts.into_iter().enumerate() {
            out.0[w] += c;
        }
    }
    out
}

/// Weighted counts of Σ_{l,k} up to `max_weight`.
pub fn enumerate_configs(l: u32, k: u32, max_weight: usize) -> Result<WeightedCount> {
    check_lk(l, k)?;
    let wl = left_window(max_weight);
    let start = extremal(l, k, -wl - 1);
    Ok(sweep(l, k, -wl, max_weight as i64, start, &|_, _| true, max_weight))
}

/// Σ_k^{+,s}: functions on m ≥ 1 with f(1) ≤ s.
pub fn plus_counts(k: u32, s: u32, max_weight: usize) -> WeightedCount {
    sweep(0, k, 1, max_weight as i64, 0, &|m, v| m != 1 || v <= s, max_weight)
}

/// Σ_{l,k}^{−,s}: functions on m ≤ −1 with f(−1) ≤ s and extremal far left.
pub fn minus_counts(l: u32, k: u32, s: u32, max_weight: usize) -> WeightedCount {
    let wl = left_window(max_weight);
    let start = extremal(l, k, -wl - 1);
    sweep(l, k, -wl, -1, start, &|m, v| m != -1 || v <= s, max_weight)
}

fn check_lk(l: u32, k: u32) -> Result<()> {
    if k == 0 || l > k {
        return Err(Error::InvalidLabel(format!("(l,k) = ({l},{k})")));
    }
    Ok(())
}

/// Explicit enumeration over a window `[−left, right]`, each configuration built and
/// weighed from the definition. Pruned only by the nonnegative partial tail sums.
pub fn enumerate_naive(l: u32, k: u32, max_weight: usize, left: i64) -> Result<WeightedCount> {
    check_lk(l, k)?;
    let right = max_weight as i64;
    let mut out = WeightedCount::zeros(max_weight);
    let mut vals: Vec<u32> = Vec::new();
    fn rec(
        l: u32,
        k: u32,
        left: i64,
        right: i64,
        vals: &mut Vec<u32>,
        tail: i64,
        lower: i64,
        max_weight: usize,
        out: &mut WeightedCount,
    ) {
        let m = -left + vals.len() as i64;
        if m > right {
            let overrides: BTreeMap<i64, u32> = vals
                .iter()
                .enumerate()
                .map(|(i, v)| (-left + i as i64, *v))
                .filter(|(p, v)| *v != if *p < 0 { extremal(l, k, *p) } else { 0 })
                .collect();
            let c = Configuration::new(l, k, overrides).expect("valid by construction");
            let w = c.weight();
            assert!(w >= 0);
            if w as usize <= max_weight {
                out.0[w as usize] += 1;
            }
            return;
        }
        let prev = vals.last().copied().unwrap_or(extremal(l, k, -left - 1));
        for v in 0..=k - prev {
            let (t2, add) = if m < 0 {
                let t2 = tail + extremal(l, k, m) as i64 - v as i64;
                (t2, t2.max(0))
            } else {
                (tail, m * v as i64)
            };
            if lower + add > max_weight as i64 {
                continue;
            }
            vals.push(v);
            rec(l, k, left, right, vals, t2, lower + add, max_weight, out);
            vals.pop();
        }
    }
    rec(l, k, left, right, &mut vals, 0, 0, max_weight, &mut out);
    Ok(out)
}

/// Σ_f q^w = Σ_{0≤r≤k} (Σ_{Σ_k^{+,k−r}} q^w)(Σ_{Σ_{l,k}^{−,k−r}} q^w) as weighted counts.
pub fn split_check(l: u32, k: u32, max_weight: usize) -> Result<Verdict> {
    let full = enumerate_configs(l, k, max_weight)?;
    let mut acc = WeightedCount::zeros(max_weight);
    for r in 0..=k {
        acc = acc.add(&plus_counts(k, k - r, max_weight).mul(&minus_counts(l, k, k - r, max_weight)));
    }
    let v = Verdict::new("configurations.split", max_weight).param("l", l).param("k", k);
    Ok(compare_counts(v, &full, &acc))
}

/// Level-k integrable sl(2) character at z = 1, prefix removed, from the Weyl–Kac numerator
/// Σ_n (l+1+2(k+2)n) q^{(k+2)n²+(l+1)n} over (q)_∞³.
pub fn sl2_character_counts(l: u32, k: u32, max_weight: usize) -> WeightedCount {
    let (l, k) = (l as i64, k as i64);
    let mut num = vec![BigInt::from(0); max_weight + 1];
    let span = max_weight as i64 + 2;
    for n in -span..=span {
        let e = (k + 2) * n * n + (l + 1) * n;
        if e >= 0 && e as usize <= max_weight {
            num[e as usize] += BigInt::from(l + 1 + 2 * (k + 2) * n);
        }
    }
    let p = inv_qn(max_weight, max_weight);
    let den = mul_trunc(&mul_trunc(&p, &p, max_weight), &p, max_weight);
    WeightedCount(mul_trunc(&num, &den, max_weight))
}

/// Configuration sum against the sl(2) character.
pub fn enumerate_check(l: u32, k: u32, max_weight: usize) -> Result<Verdict> {
    if l > k {
        return Err(Error::InvalidLabel(format!("l={l} > k={k}")));
    }
    let got = enumerate_configs(l, k, max_weight)?;
    let want = sl2_character_counts(l, k, max_weight);
    let v = Verdict::new("configurations.enumerate", max_weight).param("l", l).param("k", k);
    Ok(compare_counts(v, &got, &want))
}

/// Transfer-matrix counts against explicit enumeration over the left window.
pub fn dp_vs_naive_check(l: u32, k: u32, max_weight: usize) -> Result<Verdict> {
    let a = enumerate_configs(l, k, max_weight)?;
    let b = enumerate_naive(l, k, max_weight, left_window(max_weight))?;
    let v = Verdict::new("configurations.dp_vs_naive", max_weight).param("l", l).param("k", k);
    Ok(compare_counts(v, &a, &b))
}

fn compare_counts(v: Verdict, a: &WeightedCount, b: &WeightedCount) -> Verdict {
    let n = a.max_weight().min(b.max_weight());
    for w in 0..=n {
        if a.0[w] != b.0[w] {
            return v.fail(format!("weight {w}"), &a.0[w], &b.0[w]);
        }
    }
    v
}

/// Truncated `1/(q)_n` as integer coefficients.
fn inv_qn(n: usize, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); order + 1];
    c[0] = BigInt::from(1);
    for j in 1..=n.min(order) {
        for i in j..=order {
            let t = c[i - j].clone();
            c[i] += t;
        }
    }
    c
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut r = vec![BigInt::from(0); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.sign() == num_bigint::Sign::NoSign {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            r[i + j] += x * y;
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fermionic {
    /// (2, 2k+3) sum with label r, 1 ≤ r ≤ k+1.
    TwoTwoKPlusThree { r: u32, k: u32 },
    /// (3,5) single sums for (1, n), n = 1..4.
    ThreeFive { n: u32 },
}

/// The fermionic sums as integer coefficient lists up to `order`.
pub fn fermionic_counts(family: Fermionic, order: usize) -> Result<WeightedCount> {
    let mut acc = vec![BigInt::from(0); order + 1];
    match family {
        Fermionic::TwoTwoKPlusThree { r, k } => {
            if k == 0 || r == 0 || r > k + 1 {
                return Err(Error::InvalidLabel(format!("two_2kp3 r={r} k={k}")));
            }
            // Σ min(i,j) n_i n_j = Σ_i N_i², N_i = n_i + … + n_k
            let mut n = vec![0usize; k as usize];
            fn rec(i: usize, n: &mut Vec<usize>, k: usize, r: usize, order: usize, acc: &mut Vec<BigInt>) {
                if i == k {
                    let mut e = 0usize;
                    let mut tail = 0usize;
                    for j in (0..k).rev() {
                        tail += n[j];
                        e += tail * tail;
                    }
                    for j in r..=k {
                        e += (j - r + 1) * n[j - 1];
                    }
                    if e > order {
                        return;
                    }
                    let mut s = vec![BigInt::from(0); order + 1];
                    s[e] = BigInt::from(1);
                    for nj in n.iter() {
                        s = mul_trunc(&s, &inv_qn(*nj, order), order);
                    }
                    for (a, b) in acc.iter_mut().zip(s) {
                        *a += b;
                    }
                    return;
                }
                let mut v = 0;
                loop {
                    n[i] = v;
                    // partial lower bound: each N_j for j ≤ i is at least n_i
                    if (v * v) * (i + 1) > order {
                        break;
                    }
                    rec(i + 1, n, k, r, order, acc);
                    v += 1;
                }
                n[i] = 0;
            }
            rec(0, &mut n, k as usize, r as usize, order, &mut acc);
        }
        Fermionic::ThreeFive { n: label } => {
            let (lin, odd): (usize, usize) = match label {
                1 => (1, 0),
                2 => (0, 0),
                3 => (1, 1),
                4 => (2, 1),
                _ => return Err(Error::InvalidLabel(format!("three_five (1,{label})"))),
            };
            let mut n = 0usize;
            while n * n + lin * n <= order {
                let e = n * n + lin * n;
                let mut s = vec![BigInt::from(0); order + 1];
                s[e] = BigInt::from(1);
                let s = mul_trunc(&s, &inv_qn(2 * n + odd, order), order);
                for (a, b) in acc.iter_mut().zip(s) {
                    *a += b;
                }
                n += 1;
            }
        }
    }
    Ok(WeightedCount(acc))
}

/// Fermionic sum as a series with prefix 0.
pub fn fermionic_sum(family: Fermionic, order: usize) -> Result<GradedSeries> {
    Ok(fermionic_counts(family, order)?.to_series(&Q::from_integer(0.into())))
}

/// `Δ(P_{m,n}, b)` at `b² = −p/p'` from the Kac formula.
fn kac_delta(p: i64, pp: i64, m: i64, n: i64) -> Q {
    q((m * pp - n * p).pow(2) - (p - pp).pow(2), 4 * p * pp)
}

/// Plus half-lines against the (2,2k+3) fermionic sums and, for k = 1, minus half-lines
/// against the four (3,5) sums.
pub fn config_identity_checks(max_weight: usize) -> Result<Verdict> {
    let mut v = Verdict::new("configurations.identities", max_weight);
    for k in 1..=3u32 {
        for r in 1..=k + 1 {
            let a = plus_counts(k, r - 1, max_weight);
            let b = fermionic_counts(Fermionic::TwoTwoKPlusThree { r, k }, max_weight)?;
            v.push(compare_counts(Verdict::new(format!("plus k={k} s={} vs (2,{}) r={r}", r - 1, 2 * k + 3), max_weight), &a, &b));
        }
    }
    // (l, s) for the minus side, paired with (3,5) label n and the minimal weight of the
    // set: for (l, s) = (0, 0) the bound f(-1) <= 0 forces one unit of deficit at -1
    for (l, s, n, shift) in [(1u32, 0u32, 1u32, 0usize), (0, 1, 2, 0), (1, 1, 3, 0), (0, 0, 4, 1)] {
        let a = minus_counts(l, 1, s, max_weight);
        let f = fermionic_counts(Fermionic::ThreeFive { n }, max_weight)?;
        let mut b = WeightedCount::zeros(max_weight);
        for w in shift..=max_weight {
            b.0[w] = f.0[w - shift].clone();
        }
        let name = format!("minus l={l} s={s} vs q^{shift} (3,5) (1,{n})");
        v.push(compare_counts(Verdict::new(name, max_weight), &a, &b));
    }
    Ok(v)
}

/// χ(L_{l,1}) from configurations against q^{1/4} Σ_r χ^{2/5}χ^{3/5}, with every factor
/// produced by a configuration sum or a fermionic formula.
pub fn level_one_reassembly(l: u32, max_weight: usize) -> Result<Verdict> {
    if l > 1 {
        return Err(Error::InvalidLabel(format!("level-1 weight l={l}")));
    }
    let n = max_weight;
    let lhs = enumerate_configs(l, 1, n + 2)?.to_series(&q((l * (l + 2)) as i64, 12));
    let mut terms: Vec<GradedSeries> = Vec::new();
    for r in 0..=1u32 {
        let s = 1 - r;
        // Σ_1^{+,s} is the (2,5) sum with label s+1; Σ_{l,1}^{-,s} the (3,5) sum below
        let r25 = s + 1;
        let n35 = match (l, s) {
            (1, 0) => 1,
            (0, 1) => 2,
            (1, 1) => 3,
            (0, 0) => 4,
            _ => unreachable!(),
        };
        let plus = fermionic_counts(Fermionic::TwoTwoKPlusThree { r: r25, k: 1 }, n + 2)?;
        let minus = fermionic_counts(Fermionic::ThreeFive { n: n35 }, n + 2)?;
        let pre = kac_delta(2, 5, 1, r25 as i64) + kac_delta(3, 5, 1, n35 as i64) + q(1, 4);
        terms.push(plus.mul(&minus).to_series(&pre));
    }
    let mut rhs = terms[0].clone();
    for t in &terms[1..] {
        rhs = rhs.add(t)?;
    }
    Ok(Verdict::new("configurations.level1", max_weight)
        .param("l", l)
        .compare(&lhs, &rhs, &Q::from_integer((n as i64).into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_from_definition() {
        let c = Configuration::new(0, 1, BTreeMap::new()).unwrap();
        assert_eq!(c.weight(), 0);
        let c = Configuration::new(0, 1, BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(c.weight(), 1);
        let c = Configuration::new(0, 1, BTreeMap::from([(-1, 0)])).unwrap();
        assert_eq!(c.weight(), 1);
        let c = Configuration::new(1, 1, BTreeMap::from([(-2, 0)])).unwrap();
        assert_eq!(c.weight(), 2);
        assert!(Configuration::new(0, 1, BTreeMap::from([(0, 1)])).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_configs(0, 1, 4).unwrap().to_i64(), vec![1, 3, 4, 7, 13]);
        assert_eq!(enumerate_configs(1, 1, 0).unwrap().to_i64(), vec![2]);
    }

    #[test]
    fn dp_matches_naive() {
        for (l, k) in [(0, 1), (1, 1), (0, 2), (1, 2), (2, 2)] {
            let a = enumerate_configs(l, k, 7).unwrap();
            let b = enumerate_naive(l, k, 7, left_window(7)).unwrap();
            assert_eq!(a, b, "(l,k)=({l},{k})");
        }
    }

    #[test]
    fn narrow_window_undercounts() {
        let full = enumerate_naive(0, 1, 4, left_window(4)).unwrap();
        let narrow = enumerate_naive(0, 1, 4, 4 + 2).unwrap();
        assert!(narrow.0[4] < full.0[4]);
    }

    #[test]
    fn fermionic_small() {
        let s = fermionic_counts(Fermionic::ThreeFive { n: 2 }, 4).unwrap().to_i64();
        assert_eq!(s, vec![1, 1, 1, 2, 3]);
        let s = fermionic_counts(Fermionic::TwoTwoKPlusThree { r: 1, k: 1 }, 6).unwrap().to_i64();
        assert_eq!(s, vec![1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(fermionic_counts(Fermionic::TwoTwoKPlusThree { r: 2, k: 2 }, 0).unwrap().to_i64(), vec![1]);
    }

    #[test]
    fn splits_and_identities() {
        for (l, k) in [(0, 1), (1, 1), (0, 2), (2, 3)] {
            assert!(split_check(l, k, 8).unwrap().passed());
        }
        assert!(split_check(1, 2, 0).unwrap().passed());
        let v = config_identity_checks(10).unwrap();
        assert!(v.passed(), "{}", v.line());
        assert!(level_one_reassembly(0, 10).unwrap().passed());
        assert!(level_one_reassembly(1, 10).unwrap().passed());
    }
}
