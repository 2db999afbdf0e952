//! End-to-end behaviour of the `urod` binary.

use std::path::Path;
use std::process::{Command, Output};

fn urod(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_urod"));
    c.args(args).env_remove("UROD_CACHE_DIR");
    if let Some(d) = cache {
        c.env("UROD_CACHE_DIR", d);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn unknown_check_is_a_usage_error() {
    let o = urod(&["run", "nonexistent.check"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check id"));
}

#[test]
fn bad_parameters_are_usage_errors() {
    assert_eq!(urod(&["run", "characters.c5", "--param", "n=9"], None).status.code(), Some(2));
    assert_eq!(urod(&["run", "characters.c5", "--param", "bogus=1"], None).status.code(), Some(2));
    assert_eq!(urod(&["run", "characters.c5", "--param", "n"], None).status.code(), Some(2));
    assert_eq!(urod(&["run", "ope.identities", "--order", "3"], None).status.code(), Some(2));
    assert_eq!(urod(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn urod_lattice_to_order_30() {
    let o = urod(&["run", "characters.urod_lattice", "--order", "30"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS characters.urod_lattice order=30"));
}

#[test]
fn first_hirota_relation_to_order_3() {
    let o = urod(&["run", "blowup.f_relations", "--param", "m=1", "--order", "3"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let d = tempfile::tempdir().unwrap();
    let path = d.path().join("r.json");
    let o = urod(&["run", "ope.h_density", "--param", "variant=printed", "--json", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["schema"], 1);
    assert!(v["mismatch"]["lhs"].as_str().unwrap().contains("(∂φ)²e^{√2φ}"));
    assert!(v.get("timing").is_none());
}

#[test]
fn json_report_fields() {
    let o = urod(&["run", "nekrasov.agt", "--order", "2", "--param", "point=sampled", "--seed", "5", "--json", "-"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["id"], "nekrasov.agt");
    assert_eq!(v["order"], 2);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["params"]["points"], "3");
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["verdict"]["children"].as_array().unwrap().len(), 3);
}

#[test]
fn list_covers_every_namespace() {
    let o = urod(&["list", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.len() >= 25);
    for ns in ["characters.", "configurations.", "verma.", "nekrasov.", "blowup.", "ope."] {
        assert!(ids.iter().any(|i| i.starts_with(ns)), "{ns}");
    }
    assert!(ids.contains(&"ope.virasoro.T_U"));
}

#[test]
fn cache_lifecycle() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path();
    assert_eq!(urod(&["cache", "stats"], None).status.code(), Some(2));
    let o = urod(&["cache", "stats"], Some(dir));
    assert!(stdout(&o).starts_with("0 entries"), "{}", stdout(&o));

    let o = urod(&["suite", "quick"], Some(dir));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).starts_with("0 entries"));

    let o = urod(&["cache", "verify"], Some(dir));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3 recomputed, 0 mismatched, 0 corrupt"));

    // a second run is served from the cache and reports it
    let o = urod(&["run", "characters.c5", "--order", "20", "--timings"], Some(dir));
    assert!(stdout(&o).contains("cached"), "{}", stdout(&o));

    let victim = std::fs::read_dir(dir).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&victim, "{ truncated").unwrap();
    let o = urod(&["cache", "verify", "--count", "1"], Some(dir));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("EVICTED"));
    assert!(!victim.exists());

    let o = urod(&["--cache-dir", dir.to_str().unwrap(), "cache", "clear"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = urod(&["cache", "stats"], Some(dir));
    assert!(stdout(&o).starts_with("0 entries"));
}

#[test]
fn quick_suite_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let a = d.path().join("a.json");
    let b = d.path().join("b.json");
    let oa = urod(&["suite", "quick", "--seed", "7", "--json", a.to_str().unwrap()], None);
    let ob = urod(&["suite", "quick", "--seed", "7", "--json", b.to_str().unwrap()], None);
    assert_eq!(oa.status.code(), Some(0), "{}", stdout(&oa));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(oa.stdout, ob.stdout);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert!(v["total"].as_u64().unwrap() >= 25);
    assert_eq!(v["total"], v["passed"]);
}
