//! Named fields: deformed stress tensors, the six-parameter ansatz, the
//! T_{b1}/T_{b2} pair, the H density and the Φ_{1,n}Φ_{n,1} fields.

use std::sync::OnceLock;

use super::{Cf, FieldExpr, Monomial};
use crate::coeff::{RatFn, Sym};
use crate::{Error, Result};

fn m(heis: &[u32], vir: &[u32], s: i32) -> Monomial {
    Monomial::new(heis.to_vec(), vir.to_vec(), s)
}

fn term(heis: &[u32], vir: &[u32], s: i32, c: Cf) -> FieldExpr {
    FieldExpr::mono(m(heis, vir, s), c)
}

fn sum(ts: Vec<FieldExpr>) -> FieldExpr {
    ts.iter().fold(FieldExpr::zero(), |a, t| a.add(t))
}

fn r(n: i64, d: i64) -> RatFn {
    RatFn::q(n, d)
}

fn v(s: Sym) -> RatFn {
    RatFn::var(s)
}

fn eps() -> RatFn {
    v(Sym::Eps)
}

/// (∂φ)² e^{s φ/√2}.
pub fn dphi_sq(s: i32) -> FieldExpr {
    term(&[1, 1], &[], s, Cf::one())
}

/// ∂²φ e^{s φ/√2}.
pub fn d2phi(s: i32) -> FieldExpr {
    term(&[2], &[], s, Cf::one())
}

/// e^{s φ/√2}.
pub fn vertex(s: i32) -> FieldExpr {
    term(&[], &[], s, Cf::one())
}

/// T_b, or T_b e^{s φ/√2}.
pub fn t_b_times(s: i32) -> FieldExpr {
    term(&[], &[2], s, Cf::one())
}

pub fn t_b() -> FieldExpr {
    t_b_times(0)
}

/// ∂²(e^{√2φ}) = 2(∂φ)²e^{√2φ} + √2 ∂²φ e^{√2φ}.
pub fn d2_e() -> FieldExpr {
    dphi_sq(2).scale(&Cf::int(2)).add(&d2phi(2).scale(&Cf::sqrt2()))
}

/// ½(∂φ)² + u∂²φ.
pub fn t_std(u: Cf) -> FieldExpr {
    dphi_sq(0).scale(&Cf::q(1, 2)).add(&d2phi(0).scale(&u))
}

/// ½(∂φ)² + (1/√2)∂²φ + ε ∂²e.
pub fn t_u() -> FieldExpr {
    t_std(Cf::sqrt2_times(r(1, 2))).add(&d2_e().scale(&Cf::rat(eps())))
}

fn einv() -> RatFn {
    eps().inv().unwrap()
}

pub fn t_25() -> FieldExpr {
    let e = eps();
    sum(vec![
        vertex(-2).scale(&Cf::rat(einv().scale(&crate::coeff::q(-1, 10)))),
        dphi_sq(0).scale(&Cf::q(1, 5)),
        d2phi(0).scale(&Cf::sqrt2_times(r(3, 10))),
        dphi_sq(2).scale(&Cf::rat(e.scale(&crate::coeff::q(12, 5)))),
        d2phi(2).scale(&Cf::sqrt2_times(e.scale(&crate::coeff::q(3, 5)))),
        vertex(4).scale(&Cf::rat(e.mul(&e).scale(&crate::coeff::q(-12, 5)))),
    ])
}

pub fn t_53() -> FieldExpr {
    let e = eps();
    sum(vec![
        vertex(-2).scale(&Cf::rat(einv().scale(&crate::coeff::q(1, 10)))),
        dphi_sq(0).scale(&Cf::q(3, 10)),
        d2phi(0).scale(&Cf::sqrt2_times(r(1, 5))),
        dphi_sq(2).scale(&Cf::rat(e.scale(&crate::coeff::q(-2, 5)))),
        d2phi(2).scale(&Cf::sqrt2_times(e.scale(&crate::coeff::q(2, 5)))),
        vertex(4).scale(&Cf::rat(e.mul(&e).scale(&crate::coeff::q(12, 5)))),
    ])
}

/// αe^{−√2φ} + β₁(∂φ)² + β₂∂²φ + γ₁(∂φ)²e^{√2φ} + γ₂∂²φe^{√2φ} + δe^{2√2φ}.
pub fn ansatz(c: &[Cf; 6]) -> FieldExpr {
    sum(vec![
        vertex(-2).scale(&c[0]),
        dphi_sq(0).scale(&c[1]),
        d2phi(0).scale(&c[2]),
        dphi_sq(2).scale(&c[3]),
        d2phi(2).scale(&c[4]),
        vertex(4).scale(&c[5]),
    ])
}

pub const ANSATZ_SYMS: [Sym; 6] = [Sym::Alpha, Sym::Beta1, Sym::Beta2, Sym::Gamma1, Sym::Gamma2, Sym::DeltaA];

pub fn ansatz_symbolic() -> FieldExpr {
    ansatz(&ANSATZ_SYMS.map(Cf::var))
}

/// αe^{−√2φ} + ½(∂φ)².
pub fn t_one() -> FieldExpr {
    vertex(-2).scale(&Cf::var(Sym::Alpha)).add(&dphi_sq(0).scale(&Cf::q(1, 2)))
}

/// ½(∂φ)² + 3/(2√2)∂²φ + δe^{2√2φ}.
pub fn t_two() -> FieldExpr {
    t_std(Cf::sqrt2_times(r(3, 4))).add(&vertex(4).scale(&Cf::var(Sym::DeltaA)))
}

struct BParts {
    b: RatFn,
    bi: RatFn,
    d: RatFn,
    d2: RatFn,
}

fn bparts() -> BParts {
    let b = v(Sym::B);
    let bi = b.inv().unwrap();
    let d = b.sub(&bi);
    let d2 = b.mul(&b).sub(&bi.mul(&bi));
    BParts { b, bi, d, d2 }
}

fn q(a: &RatFn, c: &RatFn) -> RatFn {
    a.div(c).unwrap()
}

pub fn t_b1() -> FieldExpr {
    let BParts { b, bi, d, d2 } = bparts();
    let e = eps();
    let two = RatFn::int(2);
    sum(vec![
        vertex(-2).scale(&Cf::rat(q(&b.add(&bi), &two.mul(&d).mul(&e)))),
        dphi_sq(0).scale(&Cf::rat(q(&b, &two.mul(&d)))),
        d2phi(0).scale(&Cf::sqrt2_times(q(&bi.neg(), &two.mul(&d)))),
        dphi_sq(2).scale(&Cf::rat(q(&RatFn::one().add(&two.mul(&bi).mul(&bi)).mul(&e).neg(), &d2))),
        d2phi(2).scale(&Cf::sqrt2_times(q(&bi.mul(&e).neg(), &d))),
        vertex(4).scale(&Cf::rat(q(&two.mul(&e).mul(&e).neg(), &d2))),
        t_b().scale(&Cf::rat(q(&bi.neg(), &d))),
        t_b_times(2).scale(&Cf::rat(q(&two.mul(&e).neg(), &d2))),
    ])
}

pub fn t_b2() -> FieldExpr {
    let BParts { b, bi, d, d2 } = bparts();
    let e = eps();
    let two = RatFn::int(2);
    sum(vec![
        vertex(-2).scale(&Cf::rat(q(&b.add(&bi).neg(), &two.mul(&d).mul(&e)))),
        dphi_sq(0).scale(&Cf::rat(q(&bi.neg(), &two.mul(&d)))),
        d2phi(0).scale(&Cf::sqrt2_times(q(&b, &two.mul(&d)))),
        dphi_sq(2).scale(&Cf::rat(q(&two.mul(&b).mul(&b).add(&RatFn::one()).mul(&e), &d2))),
        d2phi(2).scale(&Cf::sqrt2_times(q(&b.mul(&e), &d))),
        vertex(4).scale(&Cf::rat(q(&two.mul(&e).mul(&e), &d2))),
        t_b().scale(&Cf::rat(q(&b, &d))),
        t_b_times(2).scale(&Cf::rat(q(&two.mul(&e), &d2))),
    ])
}

/// H density bT_{b1} + b⁻¹T_{b2} written out, with the (∂φ)²e^{√2φ} coefficient
/// as printed, (b+b⁻¹)ε, or as forced by T_{b1}, T_{b2}, ε/(b+b⁻¹).
pub fn h_density_variant(printed: bool) -> FieldExpr {
    let BParts { b, bi, .. } = bparts();
    let s = b.add(&bi);
    let e = eps();
    let two = RatFn::int(2);
    let g = if printed { s.mul(&e) } else { q(&e, &s) };
    sum(vec![
        vertex(-2).scale(&Cf::rat(q(&s, &two.mul(&e)))),
        dphi_sq(0).scale(&Cf::rat(q(&s, &two))),
        dphi_sq(2).scale(&Cf::rat(g)),
        vertex(4).scale(&Cf::rat(q(&two.mul(&e).mul(&e).neg(), &s))),
        t_b_times(2).scale(&Cf::rat(q(&two.mul(&e).neg(), &s))),
    ])
}

pub fn h_density() -> FieldExpr {
    h_density_variant(false)
}

/// Φ_{1,n}Φ_{n,1} for n = 1..4.
pub fn phi(n: u32) -> Result<FieldExpr> {
    let e = eps();
    Ok(match n {
        1 => FieldExpr::vacuum(),
        2 => vertex(1),
        3 => FieldExpr::vacuum().add(&vertex(2).scale(&Cf::rat(e.scale(&crate::coeff::qi(2))))),
        4 => sum(vec![
            vertex(-1),
            term(&[1], &[], 1, Cf::sqrt2_times(e.scale(&crate::coeff::qi(2)))),
            vertex(3).scale(&Cf::rat(e.mul(&e).scale(&crate::coeff::qi(2)))),
        ]),
        _ => return Err(Error::InvalidLabel(format!("Φ index {n}"))),
    })
}

/// Expected conformal dimensions of Φ_{1,n}Φ_{n,1} under (T_{2/5}, T_{5/3}).
pub fn phi_dims(n: u32) -> (RatFn, RatFn) {
    match n {
        1 => (r(0, 1), r(0, 1)),
        2 => (r(-1, 5), r(-1, 20)),
        3 => (r(-1, 5), r(1, 5)),
        _ => (r(0, 1), r(3, 4)),
    }
}

/// A catalog stress tensor with its expected central charge.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub field: FieldExpr,
    pub central_charge: RatFn,
    /// Whether the entry needs the abstract T_b sector.
    pub abstract_tb: bool,
}

/// 13 + 6x + 6/x for x = b_i².
fn c_of_sq(sq: &RatFn) -> RatFn {
    RatFn::int(13).add(&sq.scale(&crate::coeff::qi(6))).add(&sq.inv().unwrap().scale(&crate::coeff::qi(6)))
}

/// c(b₁) with b₁² = b²/(1−b²).
pub fn c_b1() -> RatFn {
    let b2 = v(Sym::B).mul(&v(Sym::B));
    c_of_sq(&b2.div(&RatFn::one().sub(&b2)).unwrap())
}

/// c(b₂) with b₂² = b² − 1.
pub fn c_b2() -> RatFn {
    let b2 = v(Sym::B).mul(&v(Sym::B));
    c_of_sq(&b2.sub(&RatFn::one()))
}

fn build() -> Vec<Entry> {
    let u = v(Sym::U);
    vec![
        Entry { name: "T_U", field: t_u(), central_charge: RatFn::int(-5), abstract_tb: false },
        Entry { name: "T_2/5", field: t_25(), central_charge: r(-22, 5), abstract_tb: false },
        Entry { name: "T_5/3", field: t_53(), central_charge: r(-3, 5), abstract_tb: false },
        Entry {
            name: "T_std",
            field: t_std(Cf::var(Sym::U)),
            central_charge: RatFn::one().sub(&u.mul(&u).scale(&crate::coeff::qi(12))),
            abstract_tb: false,
        },
        Entry { name: "T_1", field: t_one(), central_charge: RatFn::one(), abstract_tb: false },
        Entry { name: "T_2", field: t_two(), central_charge: r(-25, 2), abstract_tb: false },
        Entry { name: "T_b1", field: t_b1(), central_charge: c_b1(), abstract_tb: true },
        Entry { name: "T_b2", field: t_b2(), central_charge: c_b2(), abstract_tb: true },
        Entry { name: "T_b", field: t_b(), central_charge: super::c_of_b(), abstract_tb: true },
    ]
}

/// The shared catalog.
pub fn catalog() -> &'static [Entry] {
    static CAT: OnceLock<Vec<Entry>> = OnceLock::new();
    CAT.get_or_init(build)
}

pub fn entry(name: &str) -> Option<&'static Entry> {
    catalog().iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_rules_by_hand() {
        assert!(t_u().sub(&t_25()).sub(&t_53()).is_zero());
        assert!(t_b1().add(&t_b2()).sub(&t_b()).sub(&t_u()).is_zero());
        let b = v(Sym::B);
        let h = t_b1().scale(&Cf::rat(b.clone())).add(&t_b2().scale(&Cf::rat(b.inv().unwrap())));
        assert!(h.sub(&h_density()).is_zero());
        assert!(!h.sub(&h_density_variant(true)).is_zero());
    }

    #[test]
    fn printing() {
        let s = t_u().to_string();
        assert!(s.contains("(∂φ)²") && s.contains("e^{√2φ}"), "{s}");
    }
}
