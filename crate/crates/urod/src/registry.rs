//! Named checks: every verification reachable from the command line, the FFI layer and the
//! suites goes through this table.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::blowup::{self, BlowupFrame, LkForm};
use crate::characters::{self as ch, LatticeSector, PrefixVariant};
use crate::coeff::{Q, RatFn, Sym};
use crate::configurations as cf;
use crate::nekrasov;
use crate::ope::{catalog, checks};
use crate::verdict::Verdict;
use crate::verma::{self, VermaParams};
use crate::{Error, Result};

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0;
/// Default number of sampled parameter points.
pub const DEFAULT_POINTS: &str = "3";

#[derive(Clone, Copy, Debug)]
pub enum Kind {
    /// Integer in `[min, max]`, or `all` when allowed.
    Int { min: i64, max: i64, all: bool },
    /// Rational number or `symbolic`.
    Rational,
    /// Comma-separated nonzero integers.
    IntList,
    /// Comma-separated rationals.
    RationalList,
    Choice(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

macro_rules! p {
    ($name:expr, $kind:expr, $default:expr, $help:expr) => {
        ParamSpec { name: $name, kind: $kind, default: $default, help: $help }
    };
}

/// What the order flag bounds for a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    /// q-expansion order.
    Series,
    /// Configuration weight.
    Weight,
    /// Module level or grade.
    Level,
    /// Exact check, no order.
    Exact,
}

pub struct CheckSpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub order: OrderKind,
    pub default_order: i64,
    pub max_order: i64,
    pub params: &'static [ParamSpec],
    pub sampled: bool,
    run: fn(&Args) -> Result<Verdict>,
}

/// A request as typed by a user: unset parameters take their defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRequest {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
}

impl CheckRequest {
    pub fn new(id: impl Into<String>) -> CheckRequest {
        CheckRequest { id: id.into(), order: None, params: BTreeMap::new(), seed: DEFAULT_SEED }
    }

    pub fn order(mut self, n: i64) -> CheckRequest {
        self.order = Some(n);
        self
    }

    pub fn param(mut self, k: &str, v: &str) -> CheckRequest {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn seed(mut self, s: u64) -> CheckRequest {
        self.seed = s;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error("unknown check id '{0}' (see `urod list`)")]
    UnknownCheck(String),
    #[error("check {0} has no parameter '{1}'")]
    UnknownParam(String, String),
    #[error("parameter {0}={1}: {2}")]
    BadValue(String, String, String),
    #[error("order {1} out of range for {0} (0..={2})")]
    BadOrder(String, i64, i64),
    #[error("{0} is exact and takes no order")]
    ExactCheck(String),
    #[error("{0}")]
    Other(String),
}

/// A validated request with every parameter resolved.
#[derive(Clone, Debug)]
pub struct Args {
    pub id: String,
    pub order: i64,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
}

impl Args {
    fn get(&self, k: &str) -> &str {
        self.params.get(k).map(String::as_str).unwrap_or("")
    }

    fn int_or_all(&self, k: &str, lo: i64, hi: i64) -> Vec<i64> {
        match self.get(k) {
            "all" => (lo..=hi).collect(),
            s => vec![s.parse().expect("validated")],
        }
    }

    fn usize(&self, k: &str) -> usize {
        self.get(k).parse().expect("validated")
    }

    fn rational(&self, k: &str) -> Option<Q> {
        match self.get(k) {
            "symbolic" => None,
            s => Some(parse_q(s).expect("validated")),
        }
    }

    fn sectors(&self, k: &str, all: &[LatticeSector]) -> Vec<LatticeSector> {
        match self.get(k) {
            "all" => all.to_vec(),
            s => vec![LatticeSector::parse(s).expect("validated")],
        }
    }

    fn order_u(&self) -> usize {
        self.order as usize
    }

    fn points(&self) -> usize {
        self.usize("points")
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.parse().ok()?, num_bigint::BigInt::from(1)),
    };
    if d == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(Q::new(n, d))
}

fn check_value(kind: &Kind, v: &str) -> std::result::Result<(), String> {
    match kind {
        Kind::Int { min, max, all } => {
            if *all && v == "all" {
                return Ok(());
            }
            let n: i64 = v.parse().map_err(|_| format!("expected an integer{}", if *all { " or 'all'" } else { "" }))?;
            if n < *min || n > *max {
                return Err(format!("expected {min}..={max}"));
            }
            Ok(())
        }
        Kind::Rational => {
            if v == "symbolic" || parse_q(v).is_some() {
                Ok(())
            } else {
                Err("expected a rational number such as -3/7, or 'symbolic'".into())
            }
        }
        Kind::IntList => {
            let ok = !v.is_empty() && v.split(',').all(|x| x.trim().parse::<i64>().map(|n| n != 0).unwrap_or(false));
            if ok {
                Ok(())
            } else {
                Err("expected comma-separated nonzero integers".into())
            }
        }
        Kind::RationalList => {
            if !v.is_empty() && v.split(',').all(|x| parse_q(x).is_some()) {
                Ok(())
            } else {
                Err("expected comma-separated rationals".into())
            }
        }
        Kind::Choice(cs) => {
            if cs.contains(&v) {
                Ok(())
            } else {
                Err(format!("expected one of {}", cs.join(", ")))
            }
        }
    }
}

pub fn lookup(id: &str) -> Option<&'static CheckSpec> {
    registry().iter().find(|c| c.id == id)
}

/// Resolve defaults and validate every field; no computation happens here.
pub fn validate(req: &CheckRequest) -> std::result::Result<Args, UsageError> {
    let spec = lookup(&req.id).ok_or_else(|| UsageError::UnknownCheck(req.id.clone()))?;
    let mut params = BTreeMap::new();
    for (k, v) in &req.params {
        let ps = spec
            .params
            .iter()
            .find(|p| p.name == k)
            .ok_or_else(|| UsageError::UnknownParam(req.id.clone(), k.clone()))?;
        check_value(&ps.kind, v).map_err(|e| UsageError::BadValue(k.clone(), v.clone(), e))?;
        params.insert(k.clone(), v.clone());
    }
    for ps in spec.params {
        params.entry(ps.name.to_string()).or_insert_with(|| ps.default.to_string());
    }
    let order = match (spec.order, req.order) {
        (OrderKind::Exact, Some(_)) => return Err(UsageError::ExactCheck(req.id.clone())),
        (OrderKind::Exact, None) => 0,
        (_, None) => spec.default_order,
        (_, Some(n)) if n < 0 || n > spec.max_order => return Err(UsageError::BadOrder(req.id.clone(), n, spec.max_order)),
        (_, Some(n)) => n,
    };
    let both_or_neither = |a: &str, b: &str| -> std::result::Result<(), UsageError> {
        let sa = params.get(a).map(|s| s == "symbolic");
        let sb = params.get(b).map(|s| s == "symbolic");
        if sa != sb {
            return Err(UsageError::Other(format!("{a} and {b} must both be rational or both symbolic")));
        }
        Ok(())
    };
    match spec.id {
        "characters.rep_decomp" => both_or_neither("p", "b")?,
        "verma.whittaker" => both_or_neither("delta", "c")?,
        "blowup.l_k_solve" if params["form"] == "printed" => {
            if params["k"].split(',').any(|k| k.trim().starts_with('-')) {
                return Err(UsageError::Other("the printed l_k product is only defined for k > 0".into()));
            }
        }
        "configurations.enumerate" | "configurations.split" => {
            if let (Ok(l), Ok(k)) = (params["l"].parse::<i64>(), params["k"].parse::<i64>()) {
                if l > k {
                    return Err(UsageError::Other(format!("l={l} exceeds k={k}")));
                }
            }
        }
        _ => {}
    }
    Ok(Args { id: req.id.clone(), order, params, seed: req.seed })
}

/// Run a validated request. Library errors become failing or skipped verdicts.
pub fn execute(args: &Args) -> Verdict {
    let spec = lookup(&args.id).expect("validated id");
    let outcome = std::panic::catch_unwind(|| (spec.run)(args));
    let base = || Verdict::new(args.id.clone(), args.order);
    match outcome {
        Ok(Ok(v)) => v,
        Ok(Err(e @ (Error::OrderExceeded(..) | Error::Truncation(_) | Error::Underdetermined(_)))) => {
            base().skipped(format!("truncation: {e}"))
        }
        Ok(Err(e)) => base().fail("error", e, ""),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            base().fail("internal error", msg, "")
        }
    }
}

/// Parent verdict carrying the resolved parameters, one child per sub-check.
fn collect(a: &Args, order: impl ToString, items: Vec<Result<Verdict>>) -> Result<Verdict> {
    let vs = items.into_iter().collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::new(a.id.clone(), order);
    v.params = a.params.clone();
    Ok(v.with_children(vs))
}

const SECTOR_U: Kind = Kind::Choice(&["U0", "U1", "all"]);
const SECTOR_L: Kind = Kind::Choice(&["L01", "L11", "all"]);
const POINT: Kind = Kind::Choice(&["symbolic", "sampled"]);
const POINTS: ParamSpec = p!("points", Kind::Int { min: 1, max: 20, all: false }, DEFAULT_POINTS, "number of sampled points");

fn frames(a: &Args) -> Vec<BlowupFrame> {
    blowup::sample_frames(a.seed, a.points(), a.order)
}

fn lk_form(a: &Args) -> LkForm {
    if a.get("form") == "printed" {
        LkForm::Printed
    } else {
        LkForm::Balanced
    }
}

fn minmod_models(a: &Args) -> Vec<(i64, i64)> {
    let all = [(2, 5), (3, 5), (2, 7), (3, 7), (4, 5)];
    match a.get("model") {
        "all" => all.to_vec(),
        s => {
            let (x, y) = s.split_once(',').expect("validated");
            vec![(x.parse().unwrap(), y.parse().unwrap())]
        }
    }
}

fn f_plan(a: &Args) -> Vec<(u32, i64)> {
    match a.get("m") {
        "all" => (1..=6u32).map(|m| (m, if m <= 3 { a.order } else { a.order.min(2) })).collect(),
        s => vec![(s.parse().unwrap(), a.order)],
    }
}

fn virasoro(a: &Args) -> Result<Verdict> {
    let name = a.id.trim_start_matches("ope.virasoro.");
    let e = catalog::entry(name).ok_or_else(|| Error::InvalidLabel(name.to_string()))?;
    checks::virasoro_verdict(e.name, &e.field, &e.central_charge)
}

fn build() -> Vec<CheckSpec> {
    use OrderKind::*;
    let mut v = vec![
        CheckSpec {
            id: "characters.urod_lattice",
            summary: "χ(U₀), χ(U₁) against q^{-1/4} times the level-1 lattice characters",
            order: Series,
            default_order: 30,
            max_order: 200,
            params: &[p!("sector", SECTOR_U, "all", "lattice sector")],
            sampled: false,
            run: |a| {
                let r = a.sectors("sector", &[LatticeSector::U0, LatticeSector::U1]);
                collect(a, a.order, r.into_iter().map(|s| ch::verify_urod_lattice(s, a.order)).collect())
            },
        },
        CheckSpec {
            id: "characters.chab",
            summary: "Σ χ^{b1}χ^{b2} = χ(U)·χ^b vacuum identity, symbolic in b",
            order: Series,
            default_order: 30,
            max_order: 60,
            params: &[p!("sector", SECTOR_U, "U0", "U sector")],
            sampled: false,
            run: |a| {
                let r = a.sectors("sector", &[LatticeSector::U0, LatticeSector::U1]);
                collect(a, a.order, r.into_iter().map(|s| ch::verify_chab(s, a.order)).collect())
            },
        },
        CheckSpec {
            id: "characters.m2535",
            summary: "level-1 sl(2) characters as (2,5)⊗(3,5) minimal-model products",
            order: Series,
            default_order: 30,
            max_order: 200,
            params: &[
                p!("sector", SECTOR_L, "all", "level-1 module"),
                p!("prefix", Kind::Choice(&["corrected", "printed"]), "corrected", "q^{+1/4} or the printed q^{-1/4}"),
            ],
            sampled: false,
            run: |a| {
                let var = if a.get("prefix") == "printed" { PrefixVariant::Printed } else { PrefixVariant::Corrected };
                let r = a.sectors("sector", &[LatticeSector::L01, LatticeSector::L11]);
                collect(a, a.order, r.into_iter().map(|s| ch::verify_m2535(s, var, a.order)).collect())
            },
        },
        CheckSpec {
            id: "characters.minmod",
            summary: "χ(U_s)·χ^{p/p'} as Σ χ^{p/(p+p')}χ^{(p+p')/p'} for all admissible labels",
            order: Series,
            default_order: 30,
            max_order: 100,
            params: &[p!("model", Kind::Choice(&["2,5", "3,5", "2,7", "3,7", "4,5", "all"]), "all", "(p,p')")],
            sampled: false,
            run: |a| collect(a, a.order, minmod_models(a).into_iter().map(|(x, y)| ch::verify_minmod(x, y, a.order)).collect()),
        },
        CheckSpec {
            id: "characters.rep_decomp",
            summary: "U ⊗ Verma decomposition into b1 ⊗ b2 Verma products",
            order: Series,
            default_order: 20,
            max_order: 40,
            params: &[
                p!("sector", SECTOR_U, "all", "U sector"),
                p!("p", Kind::Rational, "symbolic", "momentum P"),
                p!("b", Kind::Rational, "symbolic", "coupling b"),
            ],
            sampled: false,
            run: |a| {
                let pt = a.rational("p").zip(a.rational("b"));
                let r = a.sectors("sector", &[LatticeSector::U0, LatticeSector::U1]);
                collect(a, a.order, r.into_iter().map(|s| ch::verify_rep_decomp(s, a.order, pt.clone())).collect())
            },
        },
        CheckSpec {
            id: "characters.c5",
            summary: "c = -5 decompositions of L^{2/5} ⊗ L^{5/3} products",
            order: Series,
            default_order: 30,
            max_order: 100,
            params: &[p!("n", Kind::Int { min: 1, max: 4, all: true }, "all", "label n")],
            sampled: false,
            run: |a| collect(a, a.order, a.int_or_all("n", 1, 4).into_iter().map(|n| ch::verify_c5(n, a.order)).collect()),
        },
        CheckSpec {
            id: "characters.deltasum",
            summary: "Δ(P_{1,n}, b₁) + Δ(P_{n,1}, b₂) = ((n-2)² - 1)/4, symbolic in b; order bounds n",
            order: Level,
            default_order: 10,
            max_order: 100,
            params: &[],
            sampled: false,
            run: |a| ch::verify_deltasum(a.order),
        },
        CheckSpec {
            id: "characters.ur",
            summary: "U₀, U₁ as sums of (2,5) ⊗ (5,3) minimal-model characters",
            order: Series,
            default_order: 30,
            max_order: 100,
            params: &[],
            sampled: false,
            run: |a| ch::verify_ur(a.order),
        },
        CheckSpec {
            id: "configurations.enumerate",
            summary: "(l,k)-configuration sums against sl(2) characters",
            order: Weight,
            default_order: 25,
            max_order: 60,
            params: &[
                p!("k", Kind::Int { min: 1, max: 4, all: true }, "all", "level k (all: 1..3)"),
                p!("l", Kind::Int { min: 0, max: 4, all: true }, "all", "weight l"),
            ],
            sampled: false,
            run: |a| {
                let mut out = Vec::new();
                for k in a.int_or_all("k", 1, 3) {
                    for l in a.int_or_all("l", 0, k) {
                        out.push(cf::enumerate_check(l as u32, k as u32, a.order_u()));
                    }
                }
                collect(a, a.order, out)
            },
        },
        CheckSpec {
            id: "configurations.split",
            summary: "configuration sum split into half-line sums",
            order: Weight,
            default_order: 20,
            max_order: 60,
            params: &[
                p!("k", Kind::Int { min: 1, max: 4, all: true }, "all", "level k (all: 1..3)"),
                p!("l", Kind::Int { min: 0, max: 4, all: true }, "all", "weight l"),
            ],
            sampled: false,
            run: |a| {
                let mut out = Vec::new();
                for k in a.int_or_all("k", 1, 3) {
                    for l in a.int_or_all("l", 0, k) {
                        out.push(cf::split_check(l as u32, k as u32, a.order_u()));
                    }
                }
                collect(a, a.order, out)
            },
        },
        CheckSpec {
            id: "configurations.identities",
            summary: "half-line sums against fermionic (2,2k+3) and (3,5) sums",
            order: Weight,
            default_order: 25,
            max_order: 60,
            params: &[],
            sampled: false,
            run: |a| cf::config_identity_checks(a.order_u()),
        },
        CheckSpec {
            id: "configurations.reassembly",
            summary: "level-1 characters rebuilt from configurations and fermionic sums",
            order: Weight,
            default_order: 25,
            max_order: 60,
            params: &[p!("l", Kind::Int { min: 0, max: 1, all: true }, "all", "level-1 weight")],
            sampled: false,
            run: |a| collect(a, a.order, a.int_or_all("l", 0, 1).into_iter().map(|l| cf::level_one_reassembly(l as u32, a.order_u())).collect()),
        },
        CheckSpec {
            id: "configurations.dp_vs_naive",
            summary: "transfer-matrix counts against explicit enumeration",
            order: Weight,
            default_order: 12,
            max_order: 16,
            params: &[p!("k", Kind::Int { min: 1, max: 3, all: true }, "all", "level k (all: 1..2)")],
            sampled: false,
            run: |a| {
                let mut out = Vec::new();
                for k in a.int_or_all("k", 1, 2) {
                    for l in 0..=k {
                        out.push(cf::dp_vs_naive_check(l as u32, k as u32, a.order_u()));
                    }
                }
                collect(a, a.order, out)
            },
        },
        CheckSpec {
            id: "verma.whittaker",
            summary: "Whittaker relations and both pairing routes",
            order: Level,
            default_order: 4,
            max_order: 8,
            params: &[p!("delta", Kind::Rational, "symbolic", "highest weight Δ"), p!("c", Kind::Rational, "symbolic", "central charge")],
            sampled: false,
            run: |a| {
                let vp = match (a.rational("delta"), a.rational("c")) {
                    (Some(d), Some(c)) => VermaParams::numeric(d, c),
                    _ => VermaParams::symbolic(),
                };
                verma::whittaker_crosscheck(&vp, a.order_u())
            },
        },
        CheckSpec {
            id: "verma.kac",
            summary: "Kac determinant vanishing at degenerate weights",
            order: Level,
            default_order: 6,
            max_order: 8,
            params: &[p!("b2", Kind::Rational, "3/7", "sample value of b²")],
            sampled: true,
            run: |a| {
                let b2 = a.rational("b2").ok_or_else(|| Error::InvalidLabel("b2 must be rational".into()))?;
                verma::kac_vanishing_check(a.order_u(), &b2, a.seed)
            },
        },
        CheckSpec {
            id: "nekrasov.blowr1",
            summary: "rank-1 Z against exp(q/(ε₁ε₂)) and the rank-1 blow-up product",
            order: Series,
            default_order: 6,
            max_order: 10,
            params: &[],
            sampled: false,
            run: |a| nekrasov::blowr1_check(a.order as u32),
        },
        CheckSpec {
            id: "nekrasov.agt",
            summary: "rank-2 instanton sum against the Virasoro Gram-matrix block",
            order: Series,
            default_order: 3,
            max_order: 8,
            params: &[p!("point", POINT, "symbolic", "symbolic or sampled (ε₁, ε₂, a)"), POINTS],
            sampled: true,
            run: |a| {
                if a.get("point") == "symbolic" {
                    return nekrasov::agt_crosscheck(a.order as u32, None);
                }
                let pts = nekrasov::sample_points(a.seed, a.points());
                collect(a, a.order, pts.into_iter().map(|pt| nekrasov::agt_crosscheck(a.order as u32, Some(pt))).collect())
            },
        },
        CheckSpec {
            id: "nekrasov.symmetry",
            summary: "ε₁ ↔ ε₂ and a₁ ↔ a₂ symmetry of the rank-2 coefficients",
            order: Series,
            default_order: 3,
            max_order: 8,
            params: &[],
            sampled: false,
            run: |a| nekrasov::symmetry_check(a.order as u32),
        },
        CheckSpec {
            id: "blowup.block_form",
            summary: "conformal-block blow-up relation F = Σ l_k F₁F₂",
            order: Series,
            default_order: 2,
            max_order: 8,
            params: &[
                p!("point", POINT, "symbolic", "symbolic (P, b) or sampled"),
                POINTS,
                p!("form", Kind::Choice(&["balanced", "printed"]), "balanced", "l_k product form"),
            ],
            sampled: true,
            run: |a| {
                let form = lk_form(a);
                if a.get("point") == "symbolic" {
                    return blowup::blowup_block_form(&BlowupFrame::symbolic(), a.order, form);
                }
                collect(a, a.order, frames(a).iter().map(|f| blowup::blowup_block_form(f, a.order, form)).collect())
            },
        },
        CheckSpec {
            id: "blowup.z_form",
            summary: "Nekrasov-function blow-up relation",
            order: Series,
            default_order: 2,
            max_order: 8,
            params: &[p!("point", POINT, "symbolic", "symbolic (ε₁, ε₂, a) or sampled"), POINTS],
            sampled: true,
            run: |a| {
                if a.get("point") == "symbolic" {
                    let (e1, e2, x) = (RatFn::var(Sym::Eps1), RatFn::var(Sym::Eps2), RatFn::var(Sym::A));
                    return blowup::blowup_z_form(&e1, &e2, &x, a.order);
                }
                let pts = nekrasov::sample_points(a.seed, a.points());
                let c = RatFn::constant;
                collect(
                    a,
                    a.order,
                    pts.into_iter().map(|(x, y, z)| blowup::blowup_z_form(&c(x), &c(y), &c(z), a.order)).collect(),
                )
            },
        },
        CheckSpec {
            id: "blowup.l_k_solve",
            summary: "l_k solved from the blow-up relation against the closed product",
            order: Series,
            default_order: 5,
            max_order: 8,
            params: &[
                p!("k", Kind::IntList, "-2,-1,1,2", "comma-separated k"),
                p!("form", Kind::Choice(&["balanced", "printed"]), "balanced", "l_k product form"),
                POINTS,
            ],
            sampled: true,
            run: |a| {
                let ks: Vec<i64> = a.get("k").split(',').map(|k| k.trim().parse().unwrap()).collect();
                let form = lk_form(a);
                collect(a, a.order, frames(a).iter().map(|f| blowup::l_k_compare(f, &ks, form, a.order)).collect())
            },
        },
        CheckSpec {
            id: "blowup.f_relations",
            summary: "bilinear relations F̂_m, symbolic in (P, b); with m=all, m ≥ 4 is capped at order 2",
            order: Series,
            default_order: 3,
            max_order: 6,
            params: &[
                p!("m", Kind::Int { min: 1, max: 6, all: true }, "all", "relation index"),
                p!("f6", Kind::Choice(&["corrected", "printed"]), "corrected", "closed form used for F̂_6"),
            ],
            sampled: false,
            run: |a| blowup::f_relations_verify(&BlowupFrame::symbolic(), &f_plan(a), a.get("f6") == "corrected"),
        },
        CheckSpec {
            id: "blowup.whittaker_eigen",
            summary: "L1, L2 eigen-relations of the blow-up Whittaker vectors",
            order: Level,
            default_order: 3,
            max_order: 5,
            params: &[],
            sampled: false,
            run: |a| blowup::whittaker_eigen_check(a.order_u()),
        },
    ];
    for e in catalog::catalog() {
        let id: &'static str = Box::leak(format!("ope.virasoro.{}", e.name).into_boxed_str());
        v.push(CheckSpec {
            id,
            summary: "T(z)T(w) has the Virasoro form with the expected central charge",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[],
            sampled: false,
            run: virasoro,
        });
    }
    v.extend([
        CheckSpec {
            id: "ope.commute",
            summary: "commuting stress tensors have a regular mixed OPE",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[p!("pair", Kind::Choice(&["T_2/5,T_5/3", "T_b1,T_b2", "all"]), "all", "pair of tensors")],
            sampled: false,
            run: |a| {
                let mut out = Vec::new();
                if a.get("pair") != "T_b1,T_b2" {
                    out.push(checks::commute_test("T_2/5,T_5/3", &catalog::t_25(), &catalog::t_53()));
                }
                if a.get("pair") != "T_2/5,T_5/3" {
                    out.push(checks::commute_test("T_b1,T_b2", &catalog::t_b1(), &catalog::t_b2()));
                }
                collect(a, "exact", out)
            },
        },
        CheckSpec {
            id: "ope.identities",
            summary: "stress-tensor sum rules, central-charge sum and specialization",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[],
            sampled: false,
            run: |_| checks::identity_tests(),
        },
        CheckSpec {
            id: "ope.h_density",
            summary: "H(z) density identity",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[p!("variant", Kind::Choice(&["corrected", "printed"]), "corrected", "ε coefficient of (∂φ)²e^{√2φ}")],
            sampled: false,
            run: |a| checks::h_density_check(a.get("variant") == "printed"),
        },
        CheckSpec {
            id: "ope.primary",
            summary: "Φ_{1,n}Φ_{n,1} are primary with the tabulated dimensions",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[],
            sampled: false,
            run: |_| checks::primary_tests(),
        },
        CheckSpec {
            id: "ope.ansatz",
            summary: "all Virasoro stress tensors in the quadratic ansatz",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[],
            sampled: false,
            run: |_| checks::ansatz_verify(),
        },
        CheckSpec {
            id: "ope.tb_sector",
            summary: "T_b is regular against pure-boson fields in both orders",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[],
            sampled: false,
            run: |_| checks::tb_regularity(),
        },
        CheckSpec {
            id: "ope.mode_level",
            summary: "[L_m, L_n] on Fock states up to a grade",
            order: Level,
            default_order: 4,
            max_order: 6,
            params: &[
                p!("tensor", Kind::Choice(&["T_U", "T_2/5", "T_5/3"]), "T_U", "stress tensor"),
                p!("sector", Kind::Choice(&["U0", "U1"]), "U0", "lattice sector"),
                p!("mmax", Kind::Int { min: 1, max: 5, all: false }, "3", "bound on |m|, |n|"),
            ],
            sampled: false,
            run: |a| {
                let e = catalog::entry(a.get("tensor")).expect("catalog entry");
                let s = LatticeSector::parse(a.get("sector")).expect("validated");
                checks::mode_level_check(e.name, &e.field, &e.central_charge, s, a.order as u32, a.usize("mmax") as i64)
            },
        },
        CheckSpec {
            id: "ope.l0_spectrum",
            summary: "L₀ spectrum of T_U on the Fock sectors against the lattice character",
            order: Level,
            default_order: 6,
            max_order: 8,
            params: &[p!("sector", SECTOR_U, "all", "lattice sector")],
            sampled: false,
            run: |a| {
                let r = a.sectors("sector", &[LatticeSector::U0, LatticeSector::U1]);
                collect(a, a.order, r.into_iter().map(|s| checks::l0_verify(s, a.order as u32)).collect())
            },
        },
        CheckSpec {
            id: "ope.skew_symmetry",
            summary: "skew symmetry of random quadratic fields",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[p!("count", Kind::Int { min: 1, max: 200, all: false }, "20", "number of random fields")],
            sampled: true,
            run: |a| checks::skew_symmetry_check(a.seed, a.usize("count")),
        },
        CheckSpec {
            id: "ope.eps_independence",
            summary: "ε-dependent checks give the same verdicts at several ε values",
            order: Exact,
            default_order: 0,
            max_order: 0,
            params: &[p!("values", Kind::RationalList, "1,-3/2,7/5", "ε values")],
            sampled: false,
            run: |a| {
                let vals: Vec<Q> = a.get("values").split(',').map(|x| parse_q(x).unwrap()).collect();
                checks::eps_independence(&vals)
            },
        },
    ]);
    v
}

/// Every registered check, in listing order.
pub fn registry() -> &'static [CheckSpec] {
    static R: OnceLock<Vec<CheckSpec>> = OnceLock::new();
    R.get_or_init(build)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "quick" => Some(Suite::Quick),
            "full" => Some(Suite::Full),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Quick => "quick",
            Suite::Full => "full",
        }
    }
}

/// Requests making up a suite. Quick runs every registered check at reduced orders; full
/// runs the acceptance orders.
pub fn suite_plan(s: Suite, seed: u64) -> Vec<CheckRequest> {
    let r = |id: &str| CheckRequest::new(id).seed(seed);
    let mut out = Vec::new();
    match s {
        Suite::Quick => {
            for c in registry() {
                let req = r(c.id);
                let req = match c.id {
                    "characters.rep_decomp" => req.order(10),
                    "characters.deltasum" => req.order(10),
                    id if id.starts_with("characters.") => req.order(20),
                    "configurations.dp_vs_naive" => req.order(10),
                    "configurations.split" => req.order(15),
                    id if id.starts_with("configurations.") => req.order(20),
                    "verma.whittaker" => req.order(4),
                    "verma.kac" => req.order(5),
                    "nekrasov.blowr1" => req.order(5),
                    "nekrasov.agt" | "nekrasov.symmetry" => req.order(3),
                    "blowup.block_form" | "blowup.z_form" => req.order(2),
                    "blowup.l_k_solve" => req.order(5).param("points", "1"),
                    "blowup.f_relations" => req.order(2),
                    "blowup.whittaker_eigen" => req.order(2),
                    "ope.mode_level" => req.order(3),
                    "ope.l0_spectrum" => req.order(6),
                    "ope.skew_symmetry" => req.param("count", "10"),
                    _ if c.order == OrderKind::Exact => req,
                    _ => req.order(c.default_order),
                };
                out.push(req);
            }
        }
        Suite::Full => {
            for c in registry() {
                let req = r(c.id);
                match c.id {
                    "characters.chab" => {
                        out.push(req.clone().order(30).param("sector", "U0"));
                        out.push(req.order(30).param("sector", "U1"));
                    }
                    "nekrasov.agt" => {
                        out.push(req.clone().order(3));
                        out.push(req.order(5).param("point", "sampled"));
                    }
                    "blowup.block_form" | "blowup.z_form" => {
                        out.push(req.clone().order(2));
                        out.push(req.order(5).param("point", "sampled"));
                    }
                    "blowup.l_k_solve" => {
                        out.push(req.clone().order(5));
                    }
                    "blowup.f_relations" => out.push(req.order(3)),
                    _ if c.order == OrderKind::Exact => out.push(req),
                    _ => out.push(req.order(c.default_order)),
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_quick_covers_all() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        let plan = suite_plan(Suite::Quick, 0);
        assert!(plan.len() >= 25);
        for id in ids {
            assert!(plan.iter().any(|r| r.id == id), "{id} missing from quick");
        }
        for r in plan.iter().chain(suite_plan(Suite::Full, 0).iter()) {
            validate(r).unwrap();
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(validate(&CheckRequest::new("nonexistent.check")), Err(UsageError::UnknownCheck(_))));
        let r = CheckRequest::new("characters.c5").param("n", "7");
        assert!(matches!(validate(&r), Err(UsageError::BadValue(..))));
        let r = CheckRequest::new("characters.c5").param("m", "1");
        assert!(matches!(validate(&r), Err(UsageError::UnknownParam(..))));
        let r = CheckRequest::new("ope.identities").order(3);
        assert!(matches!(validate(&r), Err(UsageError::ExactCheck(_))));
        let r = CheckRequest::new("characters.rep_decomp").param("p", "1/2");
        assert!(matches!(validate(&r), Err(UsageError::Other(_))));
        let a = validate(&CheckRequest::new("characters.c5").order(4)).unwrap();
        assert_eq!(a.params["n"], "all");
        assert_eq!(parse_q("-3/7"), Some(crate::coeff::q(-3, 7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn small_runs() {
        let a = validate(&CheckRequest::new("characters.c5").order(6).param("n", "2")).unwrap();
        assert!(execute(&a).passed());
        let a = validate(&CheckRequest::new("blowup.f_relations").order(2).param("m", "1")).unwrap();
        assert!(execute(&a).passed());
        let a = validate(&CheckRequest::new("ope.h_density").param("variant", "printed")).unwrap();
        assert!(!execute(&a).passed());
    }
}
