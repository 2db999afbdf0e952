//! Suite harness: aggregation, ordering and reproducibility through the library API.

use urod::registry::{self, Args, CheckRequest, Suite};
use urod::report::{run_plan, run_suite, RunOptions};
use urod::verdict::{Status, Verdict};

#[test]
fn broken_check_fails_the_full_suite_by_name() {
    let broken = |a: &Args| {
        (a.id == "configurations.split").then(|| Verdict::new(a.id.clone(), a.order).fail("weight 3", 7, 8))
    };
    let rep = run_suite(Suite::Full, 0, RunOptions::default(), Some(&broken));
    assert_eq!(rep.status, Status::Fail);
    assert_eq!(rep.failed, 1);
    assert_eq!(rep.failing, vec!["configurations.split (order 20)".to_string()]);
    assert!(rep.summary().contains("configurations.split"));
    let r = rep.reports.iter().find(|r| r.id == "configurations.split").unwrap();
    assert_eq!(r.mismatch.as_ref().unwrap().at, "weight 3");
    assert_eq!(rep.passed + rep.failed + rep.skipped, rep.total);
}

#[test]
fn reports_follow_request_order() {
    let reqs: Vec<CheckRequest> = ["ope.primary", "characters.c5", "configurations.identities", "ope.virasoro.T_U"]
        .iter()
        .map(|id| CheckRequest::new(*id))
        .map(|r| if r.id == "characters.c5" { r.order(8) } else { r })
        .collect();
    let rep = run_plan("adhoc", 0, &reqs, RunOptions::default(), None).unwrap();
    let ids: Vec<&str> = rep.reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["ope.primary", "characters.c5", "configurations.identities", "ope.virasoro.T_U"]);
    assert!(rep.passed());
}

#[test]
fn invalid_request_rejected_before_running() {
    let reqs = vec![CheckRequest::new("characters.c5"), CheckRequest::new("nope")];
    let hook = |_: &Args| -> Option<Verdict> { panic!("nothing may run") };
    assert!(run_plan("adhoc", 0, &reqs, RunOptions::default(), Some(&hook)).is_err());
}

#[test]
fn every_check_has_one_operation_and_runs_quick() {
    let plan = registry::suite_plan(Suite::Quick, 0);
    assert_eq!(plan.len(), registry::registry().len());
    let rep = run_plan("quick", 0, &plan, RunOptions::default(), None).unwrap();
    assert!(rep.passed(), "{}", rep.summary());
    assert!(rep.total >= 25);
}

#[test]
fn same_seed_same_payload() {
    let req = CheckRequest::new("ope.skew_symmetry").param("count", "4").seed(11);
    let a = urod::report::run(&req, RunOptions::default()).unwrap().to_json();
    let b = urod::report::run(&req, RunOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
}
