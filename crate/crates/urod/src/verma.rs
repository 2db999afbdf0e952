//! Virasoro Verma modules at symbolic (Δ, c): PBW bases, Shapovalov forms,
//! Whittaker vectors and the Whittaker conformal block.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{central_charge, delta_mn};
use crate::coeff::rational::fmt_q;
use crate::coeff::{q, GradedSeries, Poly, RatFn, Sym, SymbolSet, Q};
use crate::linalg;
use crate::verdict::Verdict;
use crate::{Error, Result};

/// Version tag of the basis ordering; part of every cache key.
pub const BASIS_VERSION: u32 = 1;

/// A PBW word L_{-λ1} L_{-λ2} ... v with λ1 ≥ λ2 ≥ ...
pub type Word = Vec<u32>;

/// Sparse combination of PBW words with coefficients polynomial in (Δ, c).
pub type Combo = BTreeMap<Word, Poly>;

fn partitions_into(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max.min(n)).rev() {
        prefix.push(part);
        partitions_into(n - part, part, prefix, out);
        prefix.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBasis {
    pub level: usize,
    pub parts: Vec<Word>,
}

impl LevelBasis {
    /// Partitions of `level` in lexicographic order, so [1^N] comes first and [N] last.
    pub fn new(level: usize) -> LevelBasis {
        let mut parts = Vec::new();
        partitions_into(level as u32, level as u32, &mut Vec::new(), &mut parts);
        parts.sort();
        LevelBasis { level, parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn index(&self, w: &[u32]) -> Option<usize> {
        self.parts.binary_search_by(|p| p.as_slice().cmp(w)).ok()
    }
}

/// Memoized action of single modes L_m on PBW words.
#[derive(Default)]
pub struct ModeAlgebra {
    memo: HashMap<(i64, Word), Arc<Combo>>,
}

fn add_into(out: &mut Combo, w: Word, c: Poly) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&w) {
        Some(e) => {
            *e = e.add(&c);
            if e.is_zero() {
                out.remove(&w);
            }
        }
        None => {
            out.insert(w, c);
        }
    }
}

impl ModeAlgebra {
    pub fn new() -> ModeAlgebra {
        ModeAlgebra::default()
    }

    /// L_m applied to the word, rewritten in PBW form.
    pub fn apply(&mut self, m: i64, word: &[u32]) -> Arc<Combo> {
        let key = (m, word.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let mut out = Combo::new();
        let level: i64 = word.iter().map(|x| *x as i64).sum();
        if m == 0 {
            add_into(&mut out, word.to_vec(), Poly::var(Sym::Delta).add(&Poly::int(level)));
        } else if word.is_empty() {
            if m < 0 {
                out.insert(vec![(-m) as u32], Poly::one());
            }
        } else if m > 0 {
            let a = word[0] as i64;
            let rest = &word[1..];
            let x = self.apply(m, rest);
            for (w, c) in x.iter() {
                let y = self.apply(-a, w);
                for (w2, c2) in y.iter() {
                    add_into(&mut out, w2.clone(), c.mul(c2));
                }
            }
            let y = self.apply(m - a, rest);
            for (w, c) in y.iter() {
                add_into(&mut out, w.clone(), c.scale(&Q::from_integer((m + a).into())));
            }
            if m == a {
                let k = q(m * m * m - m, 12);
                add_into(&mut out, rest.to_vec(), Poly::var(Sym::C).scale(&k));
            }
        } else {
            let a = -m;
            let b = word[0] as i64;
            if a >= b {
                let mut w = vec![a as u32];
                w.extend_from_slice(word);
                out.insert(w, Poly::one());
            } else {
                let rest = &word[1..];
                let x = self.apply(-a, rest);
                for (w, c) in x.iter() {
                    let y = self.apply(-b, w);
                    for (w2, c2) in y.iter() {
                        add_into(&mut out, w2.clone(), c.mul(c2));
                    }
                }
                let y = self.apply(-(a + b), rest);
                for (w, c) in y.iter() {
                    add_into(&mut out, w.clone(), c.scale(&Q::from_integer((b - a).into())));
                }
            }
        }
        let r = Arc::new(out);
        self.memo.insert(key, r.clone());
        r
    }

    /// Apply L_m to a combination.
    pub fn apply_combo(&mut self, m: i64, x: &Combo) -> Combo {
        let mut out = Combo::new();
        for (w, c) in x {
            let y = self.apply(m, w);
            for (w2, c2) in y.iter() {
                add_into(&mut out, w2.clone(), c.mul(c2));
            }
        }
        out
    }

    /// Matrix of L_n from level N to level N−n; rows index the target basis.
    pub fn lowering_action(&mut self, n: u32, level: usize) -> Result<Vec<Vec<Poly>>> {
        if (n as usize) > level {
            return Err(Error::Other(format!("L_{n} needs level >= {n}, got {level}")));
        }
        let src = LevelBasis::new(level);
        let dst = LevelBasis::new(level - n as usize);
        let mut m = vec![vec![Poly::zero(); src.len()]; dst.len()];
        for (j, w) in src.parts.iter().enumerate() {
            for (w2, c) in self.apply(n as i64, w).iter() {
                let i = dst.index(w2).expect("PBW output lies in the target basis");
                m[i][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// Shapovalov form ⟨L_{-λ}v, L_{-μ}v⟩ at a fixed level.
    pub fn gram(&mut self, level: usize) -> GramMatrix {
        let basis = LevelBasis::new(level);
        let n = basis.len();
        let mut entries = vec![vec![Poly::zero(); n]; n];
        for (j, mu) in basis.parts.iter().enumerate() {
            let mut start = Combo::new();
            start.insert(mu.clone(), Poly::one());
            for (i, lam) in basis.parts.iter().enumerate() {
                let mut x = start.clone();
                for part in lam {
                    x = self.apply_combo(*part as i64, &x);
                }
                entries[i][j] = x.get(&Vec::new()).cloned().unwrap_or_else(Poly::zero);
            }
        }
        GramMatrix { level, basis, entries }
    }
}

fn algebra() -> &'static Mutex<ModeAlgebra> {
    static A: OnceLock<Mutex<ModeAlgebra>> = OnceLock::new();
    A.get_or_init(|| Mutex::new(ModeAlgebra::new()))
}

fn lowering_cache() -> &'static Mutex<HashMap<(u32, usize), Arc<Vec<Vec<Poly>>>>> {
    static C: OnceLock<Mutex<HashMap<(u32, usize), Arc<Vec<Vec<Poly>>>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn gram_cache() -> &'static Mutex<HashMap<usize, Arc<GramMatrix>>> {
    static C: OnceLock<Mutex<HashMap<usize, Arc<GramMatrix>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// L_m on a PBW word of the generic Verma module, coefficients polynomial in (Δ, c).
pub fn apply_mode(m: i64, word: &[u32]) -> Arc<Combo> {
    algebra().lock().unwrap().apply(m, word)
}

/// Matrix of L_n (n ∈ {1, 2}, or any positive n) from level N to N−n.
pub fn lowering_action(n: u32, level: usize) -> Result<Arc<Vec<Vec<Poly>>>> {
    if let Some(m) = lowering_cache().lock().unwrap().get(&(n, level)) {
        return Ok(m.clone());
    }
    let m = Arc::new(algebra().lock().unwrap().lowering_action(n, level)?);
    lowering_cache().lock().unwrap().insert((n, level), m.clone());
    Ok(m)
}

pub fn gram(level: usize) -> Arc<GramMatrix> {
    if let Some(g) = gram_cache().lock().unwrap().get(&level) {
        return g.clone();
    }
    let g = Arc::new(algebra().lock().unwrap().gram(level));
    gram_cache().lock().unwrap().insert(level, g.clone());
    g
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub level: usize,
    pub basis: LevelBasis,
    pub entries: Vec<Vec<Poly>>,
}

impl GramMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn specialize(&self, p: &VermaParams) -> Result<Vec<Vec<RatFn>>> {
        self.entries.iter().map(|r| r.iter().map(|e| p.specialize(e)).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let syms = SymbolSet::of(&[Sym::Delta, Sym::C]);
        serde_json::json!({
            "level": self.level,
            "basis_version": BASIS_VERSION,
            "basis": self.basis.parts,
            "entries": self.entries.iter()
                .map(|r| r.iter().map(|e| RatFn::poly(e.clone()).to_json(syms)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Values substituted for (Δ, c); the symbols themselves give the generic module.
#[derive(Clone, Debug, PartialEq)]
pub struct VermaParams {
    pub delta: RatFn,
    pub c: RatFn,
}

impl VermaParams {
    pub fn symbolic() -> VermaParams {
        VermaParams { delta: RatFn::var(Sym::Delta), c: RatFn::var(Sym::C) }
    }

    pub fn numeric(delta: Q, c: Q) -> VermaParams {
        VermaParams { delta: RatFn::constant(delta), c: RatFn::constant(c) }
    }

    /// Δ(P, b), c(b) with b² = t.
    pub fn from_pb(p: &RatFn, b: &RatFn) -> Result<VermaParams> {
        let t = b.mul(b);
        let delta = crate::characters::delta_from_squares(&p.mul(p), &t)?;
        Ok(VermaParams { delta, c: central_charge(&t)? })
    }

    pub fn is_symbolic(&self) -> bool {
        self.delta == RatFn::var(Sym::Delta) && self.c == RatFn::var(Sym::C)
    }

    pub fn specialize(&self, e: &Poly) -> Result<RatFn> {
        if self.is_symbolic() {
            return Ok(RatFn::poly(e.clone()));
        }
        if let (Some(d), Some(c)) = (self.delta.constant_value(), self.c.constant_value()) {
            let v = e.eval_all(&|s| match s {
                Sym::Delta => d.clone(),
                Sym::C => c.clone(),
                _ => Q::from_integer(0.into()),
            });
            return Ok(RatFn::constant(v));
        }
        RatFn::poly(e.clone()).subst_many(&[(Sym::Delta, self.delta.clone()), (Sym::C, self.c.clone())])
    }

    /// Substitute into a rational function of (Δ, c).
    pub fn apply(&self, f: &RatFn) -> Result<RatFn> {
        if self.is_symbolic() {
            return Ok(f.clone());
        }
        f.subst_many(&[(Sym::Delta, self.delta.clone()), (Sym::C, self.c.clone())])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerComponent {
    pub level: usize,
    pub coeffs: Vec<RatFn>,
}

impl WhittakerComponent {
    pub fn to_json(&self, syms: SymbolSet) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "basis": LevelBasis::new(self.level).parts,
            "coeffs": self.coeffs.iter().map(|c| c.to_json(syms)).collect::<Vec<_>>(),
        })
    }
}

fn spec_matrix(m: &[Vec<Poly>], p: &VermaParams) -> Result<Vec<Vec<RatFn>>> {
    m.iter().map(|r| r.iter().map(|e| p.specialize(e)).collect()).collect()
}

fn mat_vec(m: &[Vec<RatFn>], x: &[RatFn]) -> Vec<RatFn> {
    m.iter()
        .map(|r| r.iter().zip(x).fold(RatFn::zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc.add(&a.mul(b)) }))
        .collect()
}

/// Solve L1 w_N = w_{N−1}, L2 w_N = 0 level by level.
pub fn whittaker_components(p: &VermaParams, n_max: usize) -> Result<Vec<WhittakerComponent>> {
    let mut out = vec![WhittakerComponent { level: 0, coeffs: vec![RatFn::one()] }];
    for n in 1..=n_max {
        let l1 = spec_matrix(&lowering_action(1, n)?, p)?;
        let mut a = l1;
        let mut rhs = out[n - 1].coeffs.clone();
        if n >= 2 {
            let l2 = spec_matrix(&lowering_action(2, n)?, p)?;
            rhs.extend(std::iter::repeat_n(RatFn::zero(), l2.len()));
            a.extend(l2);
        }
        let x = match linalg::solve(a, rhs) {
            Ok(Some(x)) => x,
            Ok(None) | Err(Error::Underdetermined(_)) => return Err(Error::SingularGram(n)),
            Err(e) => return Err(e),
        };
        out.push(WhittakerComponent { level: n, coeffs: x });
    }
    Ok(out)
}

/// ⟨w_N, w_N⟩ read off as the [1^N] coefficient of w_N.
///
/// The pairing of L_{-λ}v with w_N is 1 for λ = [1^N] and 0 otherwise, so the
/// self-pairing equals that coefficient.
pub fn block_coeffs(p: &VermaParams, n_max: usize) -> Result<Vec<RatFn>> {
    if p.is_symbolic() {
        return symbolic_block_coeffs(n_max);
    }
    Ok(whittaker_components(p, n_max)?.into_iter().map(|w| w.coeffs[0].clone()).collect())
}

fn symbolic_cache() -> &'static Mutex<Vec<RatFn>> {
    static C: OnceLock<Mutex<Vec<RatFn>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(Vec::new()))
}

/// Block coefficients at symbolic (Δ, c), memoized for the process lifetime.
pub fn symbolic_block_coeffs(n_max: usize) -> Result<Vec<RatFn>> {
    {
        let c = symbolic_cache().lock().unwrap();
        if c.len() > n_max {
            return Ok(c[..=n_max].to_vec());
        }
    }
    let comps = whittaker_components(&VermaParams::symbolic(), n_max)?;
    let v: Vec<RatFn> = comps.into_iter().map(|w| w.coeffs[0].clone()).collect();
    let mut c = symbolic_cache().lock().unwrap();
    if c.len() < v.len() {
        *c = v.clone();
    }
    Ok(v)
}

/// Preload memoized symbolic coefficients, e.g. from a disk cache.
pub fn seed_symbolic_block_coeffs(v: Vec<RatFn>) {
    let mut c = symbolic_cache().lock().unwrap();
    if c.len() < v.len() {
        *c = v;
    }
}

/// The Whittaker block Σ_N ⟨w_N, w_N⟩ q^N.
pub fn block(p: &VermaParams, n_max: usize) -> Result<GradedSeries> {
    let cs = block_coeffs(p, n_max)?;
    series_from(cs)
}

/// The block at (Δ(P, b), c(b)), substituting into the symbolic coefficients.
pub fn block_pb(p: &RatFn, b: &RatFn, n_max: usize) -> Result<GradedSeries> {
    let params = VermaParams::from_pb(p, b)?;
    let numeric = params.delta.constant_value().is_some() && params.c.constant_value().is_some();
    let cs = if numeric {
        block_coeffs(&params, n_max)?
    } else {
        symbolic_block_coeffs(n_max)?.iter().map(|f| params.apply(f)).collect::<Result<Vec<_>>>()?
    };
    series_from(cs)
}

fn series_from(cs: Vec<RatFn>) -> Result<GradedSeries> {
    let order = cs.len() as i64 - 1;
    let mut syms = SymbolSet::default();
    for c in &cs {
        syms = syms.union(c.syms());
    }
    let mut coeffs = BTreeMap::new();
    for (n, c) in cs.into_iter().enumerate() {
        if !c.is_zero() {
            coeffs.insert(4 * n as i64, c);
        }
    }
    GradedSeries::new(syms, RatFn::zero(), coeffs, 4 * order)
}

/// ([1^N],[1^N]) entry of gram(N)^{-1}, by an independent solve of G y = e.
pub fn gram_inverse_corner(p: &VermaParams, level: usize) -> Result<RatFn> {
    let g = gram(level).specialize(p)?;
    let n = g.len();
    let mut e = vec![RatFn::zero(); n];
    e[0] = RatFn::one();
    match linalg::solve(g, e) {
        Ok(Some(y)) => Ok(y[0].clone()),
        Ok(None) | Err(Error::Underdetermined(_)) => Err(Error::SingularGram(level)),
        Err(err) => Err(err),
    }
}

/// wᵀ G w for a Whittaker component.
pub fn self_pairing(p: &VermaParams, w: &WhittakerComponent) -> Result<RatFn> {
    let g = gram(w.level).specialize(p)?;
    let gw = mat_vec(&g, &w.coeffs);
    Ok(w.coeffs.iter().zip(&gw).fold(RatFn::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
}

/// Check both Whittaker relations and both pairing routes up to `n_max`.
pub fn whittaker_crosscheck(p: &VermaParams, n_max: usize) -> Result<Verdict> {
    let mut v = Verdict::new("verma.whittaker", n_max).param("params", if p.is_symbolic() { "symbolic".into() } else { format!("Δ={}, c={}", p.delta, p.c) });
    let comps = whittaker_components(p, n_max)?;
    for n in 1..=n_max {
        let mut child = Verdict::new(format!("level {n}"), n);
        let l1 = spec_matrix(&lowering_action(1, n)?, p)?;
        let lhs = mat_vec(&l1, &comps[n].coeffs);
        if lhs != comps[n - 1].coeffs {
            child = child.fail("L1 w_N", "≠", "w_{N-1}");
        }
        if n >= 2 {
            let l2 = spec_matrix(&lowering_action(2, n)?, p)?;
            if mat_vec(&l2, &comps[n].coeffs).iter().any(|x| !x.is_zero()) {
                child = child.fail("L2 w_N", "≠", "0");
            }
        }
        let a = comps[n].coeffs[0].clone();
        let b = self_pairing(p, &comps[n])?;
        let c = gram_inverse_corner(p, n)?;
        if a != b {
            child = child.fail("wᵀGw", &b, &a);
        } else if a != c {
            child = child.fail("gram^{-1} corner", &c, &a);
        }
        v.push(child);
    }
    Ok(v)
}

/// det gram(N) at (Δ, c) given numerically.
pub fn gram_det_at(level: usize, delta: &Q, c: &Q) -> Result<Q> {
    let g = gram(level).specialize(&VermaParams::numeric(delta.clone(), c.clone()))?;
    let d = linalg::det(g)?;
    Ok(d.constant_value().expect("numeric determinant"))
}

/// Kac determinant vanishing at degenerate weights, with non-vanishing controls.
pub fn kac_vanishing_check(n_max: usize, sample_b2: &Q, seed: u64) -> Result<Verdict> {
    let t = RatFn::constant(sample_b2.clone());
    let c = central_charge(&t)?.constant_value().ok_or(Error::SymbolicScaling)?;
    let mut v = Verdict::new("verma.kac_vanishing", n_max).param("b^2", fmt_q(sample_b2)).param("seed", seed);
    for m in 1..=n_max as i64 {
        for n in 1..=n_max as i64 {
            if (m * n) as usize > n_max {
                continue;
            }
            let d = delta_mn(m, n, &t)?.constant_value().ok_or(Error::SymbolicScaling)?;
            for level in (m * n) as usize..=n_max {
                let det = gram_det_at(level, &d, &c)?;
                let id = format!("({m},{n}) level {level}");
                let child = Verdict::new(id, level);
                v.push(if det == Q::from_integer(0.into()) { child } else { child.fail("det", fmt_q(&det), "0") });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..5 {
        let d = q(rng.gen_range(-400..400), rng.gen_range(1..60));
        let level = n_max.max(1);
        let det = gram_det_at(level, &d, &c)?;
        let child = Verdict::new(format!("control {i} Δ={}", fmt_q(&d)), level);
        // A random Δ coinciding with a Kac weight would be a legitimate zero.
        let degenerate = (1..=level as i64)
            .flat_map(|m| (1..=level as i64).map(move |n| (m, n)))
            .filter(|(m, n)| (m * n) as usize <= level)
            .any(|(m, n)| delta_mn(m, n, &t).ok().and_then(|x| x.constant_value()) == Some(d.clone()));
        v.push(if det != Q::from_integer(0.into()) || degenerate { child } else { child.fail("det", "0", "nonzero") });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dl() -> Poly {
        Poly::var(Sym::Delta)
    }

    fn cc() -> Poly {
        Poly::var(Sym::C)
    }

    #[test]
    fn bases() {
        assert_eq!(LevelBasis::new(0).parts, vec![Vec::<u32>::new()]);
        assert_eq!(LevelBasis::new(2).parts, vec![vec![1, 1], vec![2]]);
        assert_eq!(LevelBasis::new(4).parts, vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]);
        assert_eq!(LevelBasis::new(8).len(), 22);
    }

    #[test]
    fn lowering_examples() {
        let l1 = lowering_action(1, 1).unwrap();
        assert_eq!(l1[0][0], dl().scale(&q(2, 1)));
        let l2 = lowering_action(2, 2).unwrap();
        assert_eq!(l2[0][1], dl().scale(&q(4, 1)).add(&cc().scale(&q(1, 2))));
        let l1 = lowering_action(1, 2).unwrap();
        assert_eq!(l1[0][1], Poly::int(3));
    }

    #[test]
    fn gram_level_two() {
        let g = gram(2);
        let d = dl();
        assert_eq!(g.entries[0][0], d.scale(&q(4, 1)).mul(&d.scale(&q(2, 1)).add(&Poly::one())));
        assert_eq!(g.entries[0][1], d.scale(&q(6, 1)));
        assert_eq!(g.entries[1][0], d.scale(&q(6, 1)));
        assert_eq!(g.entries[1][1], d.scale(&q(4, 1)).add(&cc().scale(&q(1, 2))));
        assert_eq!(gram(0).entries, vec![vec![Poly::one()]]);
        for n in 0..=6 {
            assert!(gram(n).is_symmetric(), "level {n}");
        }
    }

    #[test]
    fn block_low_orders() {
        let p = VermaParams::symbolic();
        let cs = block_coeffs(&p, 2).unwrap();
        let d = RatFn::var(Sym::Delta);
        let c = RatFn::var(Sym::C);
        assert!(cs[0].is_one());
        assert_eq!(cs[1], d.scale(&q(2, 1)).inv().unwrap());
        let num = d.scale(&q(8, 1)).add(&c);
        let den = d
            .scale(&q(4, 1))
            .mul(&d.mul(&d).scale(&q(16, 1)).add(&d.mul(&c).scale(&q(2, 1))).sub(&d.scale(&q(10, 1))).add(&c));
        assert_eq!(cs[2], num.div(&den).unwrap());
        assert_eq!(cs[2], gram_inverse_corner(&p, 2).unwrap());
    }

    #[test]
    fn crosscheck_symbolic_small() {
        let v = whittaker_crosscheck(&VermaParams::symbolic(), 4).unwrap();
        assert!(v.passed(), "{}", v.line());
    }

    #[test]
    fn numeric_singular_reported() {
        // Δ = 0 makes level 1 singular.
        let p = VermaParams::numeric(q(0, 1), q(1, 2));
        assert!(matches!(whittaker_components(&p, 2), Err(Error::SingularGram(1))));
    }

    #[test]
    fn kac_small() {
        let v = kac_vanishing_check(4, &q(3, 7), 1).unwrap();
        assert!(v.passed(), "{}", v.line());
    }
}
