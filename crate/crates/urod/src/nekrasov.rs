//! Pure U(1) and U(2) Nekrasov partition functions by fixed-point sums, and the AGT gate.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::rational::fmt_q;
use crate::coeff::{q, GradedSeries, RatFn, Sym, SymbolSet, Q};
use crate::verdict::Verdict;
use crate::verma::{self, VermaParams};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct YoungDiagram(Vec<u32>);

impl YoungDiagram {
    pub fn new(mut rows: Vec<u32>) -> Result<YoungDiagram> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidLabel(format!("rows {rows:?} not weakly decreasing")));
        }
        Ok(YoungDiagram(rows))
    }

    pub fn empty() -> YoungDiagram {
        YoungDiagram(Vec::new())
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length of row `i` (1-based); zero beyond the diagram.
    pub fn row(&self, i: u32) -> i64 {
        self.0.get(i as usize - 1).map_or(0, |r| *r as i64)
    }

    /// Length of column `j` (1-based).
    pub fn col(&self, j: u32) -> i64 {
        self.0.iter().filter(|r| **r >= j).count() as i64
    }

    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, r)| (1..=*r).map(move |j| (i as u32 + 1, j)))
    }

    pub fn all(n: u32) -> Vec<YoungDiagram> {
        fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
            if n == 0 {
                out.push(YoungDiagram(cur.clone()));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// A tuple of Young diagrams labelling a torus fixed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FixedPoint(pub Vec<YoungDiagram>);

impl FixedPoint {
    pub fn size(&self) -> u32 {
        self.0.iter().map(|d| d.size()).sum()
    }
}

/// All fixed points of the given rank and instanton number, in canonical order.
pub fn enumerate_fixed_points(rank: usize, n: u32) -> Vec<FixedPoint> {
    if rank == 0 {
        return if n == 0 { vec![FixedPoint(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for d in YoungDiagram::all(k) {
            for mut rest in enumerate_fixed_points(rank - 1, n - k) {
                rest.0.insert(0, d.clone());
                out.push(rest);
            }
        }
    }
    out.sort();
    out
}

/// Equivariant parameters; `a` has one entry per diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct NekParams {
    pub e1: RatFn,
    pub e2: RatFn,
    pub a: Vec<RatFn>,
}

impl NekParams {
    pub fn rank1() -> NekParams {
        NekParams { e1: RatFn::var(Sym::Eps1), e2: RatFn::var(Sym::Eps2), a: vec![RatFn::zero()] }
    }

    /// Rank 2 with a1 = a, a2 = −a.
    pub fn rank2() -> NekParams {
        let a = RatFn::var(Sym::A);
        NekParams { e1: RatFn::var(Sym::Eps1), e2: RatFn::var(Sym::Eps2), a: vec![a.clone(), a.neg()] }
    }

    /// Rank 2 with independent a1, a2.
    pub fn rank2_full() -> NekParams {
        NekParams { e1: RatFn::var(Sym::Eps1), e2: RatFn::var(Sym::Eps2), a: vec![RatFn::var(Sym::A1), RatFn::var(Sym::A2)] }
    }

    pub fn numeric(e1: Q, e2: Q, a: &[Q]) -> NekParams {
        NekParams {
            e1: RatFn::constant(e1),
            e2: RatFn::constant(e2),
            a: a.iter().cloned().map(RatFn::constant).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn syms(&self) -> SymbolSet {
        self.a.iter().fold(self.e1.syms().union(self.e2.syms()), |s, x| s.union(x.syms()))
    }

    /// Substitute into every parameter.
    pub fn subst(&self, subs: &[(Sym, RatFn)]) -> Result<NekParams> {
        Ok(NekParams {
            e1: self.e1.subst_many(subs)?,
            e2: self.e2.subst_many(subs)?,
            a: self.a.iter().map(|x| x.subst_many(subs)).collect::<Result<_>>()?,
        })
    }
}

/// Reciprocal equivariant Euler class of the tangent space at a fixed point.
pub fn fixed_point_weight(fp: &FixedPoint, p: &NekParams) -> Result<RatFn> {
    if fp.0.len() != p.rank() {
        return Err(Error::InvalidLabel(format!("{} diagrams for rank {}", fp.0.len(), p.rank())));
    }
    let eps = p.e1.add(&p.e2);
    let mut den = RatFn::one();
    for (i, li) in fp.0.iter().enumerate() {
        for (j, lj) in fp.0.iter().enumerate() {
            let aij = p.a[i].sub(&p.a[j]);
            for (x, y) in li.boxes() {
                let leg = lj.col(y) - x as i64;
                let arm = li.row(x) - y as i64;
                let e = aij.sub(&p.e1.scale(&Q::from_integer(leg.into()))).add(&p.e2.scale(&Q::from_integer((arm + 1).into())));
                den = den.mul(&e).mul(&eps.sub(&e));
            }
        }
    }
    den.inv()
}

/// Σ_N q^N Σ_fp weight(fp) through q^order.
pub fn nekrasov_z(p: &NekParams, order: u32) -> Result<GradedSeries> {
    let coeffs = (0..=order)
        .map(|n| {
            let fps = enumerate_fixed_points(p.rank(), n);
            let ws: Vec<RatFn> = fps.par_iter().map(|fp| fixed_point_weight(fp, p)).collect::<Result<_>>()?;
            Ok((4 * n as i64, ws.iter().fold(RatFn::zero(), |acc, w| acc.add(w))))
        })
        .collect::<Result<Vec<_>>>()?;
    GradedSeries::new(p.syms(), RatFn::zero(), coeffs, 4 * order as i64)
}

/// exp(q/(ε1ε2)) through q^order.
pub fn rank1_closed_form(e1: &RatFn, e2: &RatFn, order: u32) -> Result<GradedSeries> {
    let x = e1.mul(e2).inv()?;
    let mut coeffs = Vec::new();
    let mut term = RatFn::one();
    for n in 0..=order {
        coeffs.push((4 * n as i64, term.clone()));
        term = term.mul(&x).scale(&q(1, n as i64 + 1));
    }
    GradedSeries::new(e1.syms().union(e2.syms()), RatFn::zero(), coeffs, 4 * order as i64)
}

/// Rank-1 Z against exp(q/(ε1ε2)) and the rank-1 blow-up product.
pub fn blowr1_check(order: u32) -> Result<Verdict> {
    let p = NekParams::rank1();
    let z = nekrasov_z(&p, order)?;
    let closed = rank1_closed_form(&p.e1, &p.e2, order)?;
    let oq = Q::from_integer(order.into());
    let exp = Verdict::new("nekrasov.rank1_exp", order).compare(&z, &closed, &oq);
    let p1 = NekParams { e1: p.e1.clone(), e2: p.e2.sub(&p.e1), a: p.a.clone() };
    let p2 = NekParams { e1: p.e1.sub(&p.e2), e2: p.e2.clone(), a: p.a.clone() };
    let rhs = nekrasov_z(&p1, order)?.mul(&nekrasov_z(&p2, order)?)?;
    let prod = Verdict::new("nekrasov.blowr1_product", order).compare(&z, &rhs, &oq);
    Ok(Verdict::new("nekrasov.blowr1", order).with_children([exp, prod]))
}

/// Δ and c of the AGT dictionary at (ε1, ε2, a).
pub fn agt_params(e1: &RatFn, e2: &RatFn, a: &RatFn) -> Result<VermaParams> {
    let s = e1.add(e2);
    let pr = e1.mul(e2);
    let delta = s.mul(&s).sub(&a.mul(a).scale(&q(4, 1))).div(&pr.scale(&q(4, 1)))?;
    let c = RatFn::one().add(&s.mul(&s).scale(&q(6, 1)).div(&pr)?);
    Ok(VermaParams { delta, c })
}

/// Block coefficients mapped to Z-normalization: F_N(Δ, c)/(ε1ε2)^{2N}.
pub fn agt_block_side(e1: &RatFn, e2: &RatFn, a: &RatFn, order: u32) -> Result<GradedSeries> {
    let vp = agt_params(e1, e2, a)?;
    let numeric = vp.delta.constant_value().is_some() && vp.c.constant_value().is_some();
    let cs = if numeric {
        verma::block_coeffs(&vp, order as usize)?
    } else {
        verma::symbolic_block_coeffs(order as usize)?.iter().map(|f| vp.apply(f)).collect::<Result<Vec<_>>>()?
    };
    let pr2 = e1.mul(e2).mul(&e1.mul(e2));
    let mut scale = RatFn::one();
    let mut coeffs = Vec::new();
    for (n, c) in cs.into_iter().enumerate() {
        coeffs.push((4 * n as i64, c.mul(&scale)));
        scale = scale.div(&pr2)?;
    }
    let syms = e1.syms().union(e2.syms()).union(a.syms());
    GradedSeries::new(syms, RatFn::zero(), coeffs, 4 * order as i64)
}

/// F(a/√(ε1ε2), √(ε1/ε2); q/(ε1ε2)²) = Z(ε1, ε2, a; q), symbolic or at a rational point.
pub fn agt_crosscheck(order: u32, point: Option<(Q, Q, Q)>) -> Result<Verdict> {
    let (e1, e2, a) = match &point {
        None => (RatFn::var(Sym::Eps1), RatFn::var(Sym::Eps2), RatFn::var(Sym::A)),
        Some((x, y, z)) => (RatFn::constant(x.clone()), RatFn::constant(y.clone()), RatFn::constant(z.clone())),
    };
    let np = NekParams { e1: e1.clone(), e2: e2.clone(), a: vec![a.clone(), a.neg()] };
    let z = nekrasov_z(&np, order)?;
    let f = agt_block_side(&e1, &e2, &a, order)?;
    let mut v = Verdict::new("nekrasov.agt", order);
    v = match &point {
        None => v.param("point", "symbolic"),
        Some((x, y, w)) => v.param("eps1", fmt_q(x)).param("eps2", fmt_q(y)).param("a", fmt_q(w)),
    };
    Ok(v.compare(&f, &z, &Q::from_integer(order.into())))
}

/// `2a = mε1 + nε2` for small integers: fixed-point weights or Kac determinants vanish there.
fn on_wall(e1: &Q, e2: &Q, a: &Q) -> bool {
    const N: i64 = 24;
    let two_a = a * Q::from_integer(2.into());
    (-N..=N).any(|m| {
        let rest = &two_a - e1 * Q::from_integer(m.into());
        let n = &rest / e2;
        n.is_integer() && n.numer().magnitude() <= &num_bigint::BigUint::from(N as u64)
    })
}

/// Random rational (ε1, ε2, a) away from the walls where blocks or weights are singular.
pub fn sample_points(seed: u64, n: usize) -> Vec<(Q, Q, Q)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let e1 = q(rng.gen_range(1..40), rng.gen_range(1..12));
        let e2 = q(-rng.gen_range(1..40), rng.gen_range(1..12));
        let a = q(rng.gen_range(-60..60), rng.gen_range(1..15));
        if e1 == -e2.clone() || on_wall(&e1, &e2, &a) {
            continue;
        }
        out.push((e1, e2, a));
    }
    out
}

/// Exchange two symbols, routing through an unused one.
fn swap(f: &RatFn, x: Sym, y: Sym) -> Result<RatFn> {
    let tmp = Sym::U;
    f.subst(x, &RatFn::var(tmp))?.subst(y, &RatFn::var(x))?.subst(tmp, &RatFn::var(y))
}

/// ε1↔ε2 and a1↔a2 symmetry of the rank-2 coefficients.
pub fn symmetry_check(order: u32) -> Result<Verdict> {
    let p = NekParams::rank2_full();
    let z = nekrasov_z(&p, order)?;
    let swap_e = |f: &RatFn| swap(f, Sym::Eps1, Sym::Eps2);
    let swap_a = |f: &RatFn| swap(f, Sym::A1, Sym::A2);
    let mut v = Verdict::new("nekrasov.symmetry", order);
    for n in 0..=order {
        let c = z.coeff_q4(4 * n as i64);
        let se = swap_e(&c)?;
        let sa = swap_a(&c)?;
        if se != c {
            v = v.fail(format!("q^{n} ε1↔ε2"), se, &c);
            break;
        }
        if sa != c {
            v = v.fail(format!("q^{n} a1↔a2"), sa, &c);
            break;
        }
    }
    Ok(v)
}

/// Partition-function coefficients keyed by instanton number, for the JSON cache.
pub fn z_to_json(z: &GradedSeries) -> serde_json::Value {
    let m: BTreeMap<String, serde_json::Value> =
        z.terms().map(|(g, c)| ((g / 4).to_string(), c.to_json(z.syms()))).collect();
    serde_json::json!({ "syms": z.syms().names(), "order": z.order_q4() / 4, "coeffs": m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_counts() {
        assert_eq!(enumerate_fixed_points(2, 0).len(), 1);
        assert_eq!(enumerate_fixed_points(2, 1).len(), 2);
        assert_eq!(enumerate_fixed_points(2, 2).len(), 5);
        assert_eq!(enumerate_fixed_points(2, 4).len(), 20);
        assert_eq!(enumerate_fixed_points(1, 6).len(), 11);
    }

    #[test]
    fn single_box_weights() {
        let p = NekParams::rank1();
        let fp = FixedPoint(vec![YoungDiagram::new(vec![1]).unwrap()]);
        let w = fixed_point_weight(&fp, &p).unwrap();
        assert_eq!(w, RatFn::var(Sym::Eps1).mul(&RatFn::var(Sym::Eps2)).inv().unwrap());
        let e = FixedPoint(vec![YoungDiagram::empty(), YoungDiagram::empty()]);
        assert!(fixed_point_weight(&e, &NekParams::rank2()).unwrap().is_one());
    }

    #[test]
    fn rank2_first_coefficient() {
        let z = nekrasov_z(&NekParams::rank2(), 1).unwrap();
        let e1 = RatFn::var(Sym::Eps1);
        let e2 = RatFn::var(Sym::Eps2);
        let a = RatFn::var(Sym::A);
        let s = e1.add(&e2);
        let expect = RatFn::int(2).div(&e1.mul(&e2).mul(&s.mul(&s).sub(&a.mul(&a).scale(&q(4, 1))))).unwrap();
        assert_eq!(z.coeff_q4(4), expect);
    }

    #[test]
    fn rank1_and_blowr1() {
        let v = blowr1_check(4).unwrap();
        assert!(v.passed(), "{}", v.line());
    }

    #[test]
    fn agt_low_orders() {
        for o in 0..=2 {
            let v = agt_crosscheck(o, None).unwrap();
            assert!(v.passed(), "{}", v.line());
        }
        let pt = sample_points(3, 1).remove(0);
        let v = agt_crosscheck(4, Some(pt)).unwrap();
        assert!(v.passed(), "{}", v.line());
    }

    #[test]
    fn symmetric_rank2() {
        let v = symmetry_check(2).unwrap();
        assert!(v.passed(), "{}", v.line());
    }
}
