//! Versioned reports for single checks and suites.
//!
//! Timing and cache-hit fields are only serialized when requested, so the default JSON is
//! a pure function of (id, params, order, seed).

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{Cache, Lookup};
use crate::registry::{self, Args, CheckRequest, Suite, UsageError};
use crate::verdict::{Mismatch, Status, Verdict};

pub const REPORT_SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub wall_ms: u64,
    pub cache_hit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: &'static str,
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub order: Option<i64>,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let order = self.order.map(|o| format!(" order={o}")).unwrap_or_default();
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let ps = if ps.is_empty() { String::new() } else { format!(" [{}]", ps.join(" ")) };
        let mut s = format!("{tag} {}{order}{ps}", self.id);
        if let Some(m) = &self.mismatch {
            s.push_str(&format!("\n    first mismatch at {}: {} vs {}", m.at, m.lhs, m.rhs));
        }
        if self.status == Status::Skipped {
            for d in &self.verdict.details {
                s.push_str(&format!("\n    {d}"));
            }
        }
        if let Some(t) = &self.timing {
            s.push_str(&format!(" ({} ms{})", t.wall_ms, if t.cache_hit { ", cached" } else { "" }));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub status: Status,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failing: Vec<String>,
    pub reports: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "suite {}: {} checks, {} passed, {} failed, {} skipped",
            self.suite, self.total, self.passed, self.failed, self.skipped
        );
        if !self.failing.is_empty() {
            s.push_str(&format!("\nnot passing: {}", self.failing.join(", ")));
        }
        s
    }
}

#[derive(Clone, Copy, Default)]
pub struct RunOptions<'a> {
    pub cache: Option<&'a Cache>,
    pub timings: bool,
}

/// Replaces the computation for selected requests; used to exercise the suite harness.
pub type Override<'a> = &'a (dyn Fn(&Args) -> Option<Verdict> + Sync);

fn compute(a: &Args, opts: RunOptions, hook: Option<Override>) -> (Verdict, bool, Vec<String>) {
    if let Some(v) = hook.and_then(|h| h(a)) {
        return (v, false, Vec::new());
    }
    let mut warnings = Vec::new();
    if let Some(c) = opts.cache {
        match c.get(a) {
            Lookup::Hit(v) => return (v, true, warnings),
            Lookup::Miss => {}
            Lookup::Evicted(msg) => warnings.push(format!("evicted corrupt cache entry {msg}")),
        }
    }
    let v = registry::execute(a);
    if let Some(c) = opts.cache {
        if let Err(e) = c.put(a, &v) {
            warnings.push(format!("cache write failed: {e}"));
        }
    }
    (v, false, warnings)
}

fn report_for(a: &Args, opts: RunOptions, hook: Option<Override>) -> Report {
    let t = Instant::now();
    let (verdict, hit, warnings) = compute(a, opts, hook);
    let spec = registry::lookup(&a.id).expect("validated");
    Report {
        schema: REPORT_SCHEMA,
        tool_version: TOOL_VERSION,
        id: a.id.clone(),
        params: a.params.clone(),
        order: (spec.order != registry::OrderKind::Exact).then_some(a.order),
        seed: a.seed,
        status: verdict.status,
        mismatch: verdict.mismatch.clone(),
        warnings,
        verdict,
        timing: opts.timings.then(|| Timing { wall_ms: t.elapsed().as_millis() as u64, cache_hit: hit }),
    }
}

pub fn run(req: &CheckRequest, opts: RunOptions) -> Result<Report, UsageError> {
    let a = registry::validate(req)?;
    Ok(report_for(&a, opts, None))
}

/// Run requests in a work pool; reports come back in request order.
pub fn run_plan(name: &str, seed: u64, reqs: &[CheckRequest], opts: RunOptions, hook: Option<Override>) -> Result<SuiteReport, UsageError> {
    let t = Instant::now();
    let args = reqs.iter().map(registry::validate).collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<Report> = args.par_iter().map(|a| report_for(a, opts, hook)).collect();
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| match r.order {
            Some(o) => format!("{} (order {o})", r.id),
            None => r.id.clone(),
        })
        .collect();
    Ok(SuiteReport {
        schema: REPORT_SCHEMA,
        tool_version: TOOL_VERSION,
        suite: name.to_string(),
        seed,
        status: if failing.is_empty() { Status::Pass } else { Status::Fail },
        total: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        failing,
        reports,
        wall_ms: opts.timings.then(|| t.elapsed().as_millis() as u64),
    })
}

pub fn run_suite(s: Suite, seed: u64, opts: RunOptions, hook: Option<Override>) -> SuiteReport {
    run_plan(s.name(), seed, &registry::suite_plan(s, seed), opts, hook).expect("suite plans validate")
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub checked: Vec<String>,
    pub mismatched: Vec<String>,
    pub evicted: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.mismatched.is_empty() && self.evicted.is_empty()
    }
}

/// Recompute up to `n` cached entries, chosen by `seed`, and compare with the stored verdicts.
/// Mismatching entries are evicted.
pub fn verify_cache(c: &Cache, n: usize, seed: u64) -> std::io::Result<VerifyOutcome> {
    let (mut entries, evicted) = c.scan()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    entries.shuffle(&mut rng);
    entries.truncate(n);
    let results: Vec<(String, bool)> = entries
        .par_iter()
        .map(|e| {
            let a = e.request.args();
            let ok = registry::lookup(&a.id).is_some() && registry::execute(&a) == e.verdict;
            (e.key.clone(), ok)
        })
        .collect();
    let mut mismatched = Vec::new();
    for (e, (key, ok)) in entries.iter().zip(&results) {
        if !ok {
            c.evict(&e.request.args())?;
            mismatched.push(key.clone());
        }
    }
    Ok(VerifyOutcome { checked: results.into_iter().map(|(k, _)| k).collect(), mismatched, evicted })
}
