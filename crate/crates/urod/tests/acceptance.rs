//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

use std::time::Instant;

mod oracles;

use urod::characters::{self as ch, LatticeSector, PrefixVariant};
use urod::blowup::{self, BlowupFrame, LkForm};
use urod::coeff::{q, RatFn, Sym};
use urod::configurations as cf;
use urod::nekrasov;
use urod::ope::{catalog, checks};
use urod::verdict::Verdict;

struct Runner {
    failed: Vec<String>,
}

impl Runner {
    fn criterion(&mut self, name: &str, budget_s: f64, f: impl FnOnce() -> Vec<Verdict>) {
        let t = Instant::now();
        let vs = f();
        let secs = t.elapsed().as_secs_f64();
        let ok = vs.iter().all(|v| v.passed());
        for v in &vs {
            println!("    {}", v.line());
            for d in &v.details {
                println!("        {d}");
            }
        }
        let time_note = if secs > budget_s { format!(" (over the {budget_s}s budget)") } else { String::new() };
        println!("{} {name} [{secs:.1}s]{time_note}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(name.to_string());
        }
    }
}

fn main() {
    let mut r = Runner { failed: Vec::new() };

    r.criterion("1a urod lattice (U0, U1) to q^30", 30.0, || {
        vec![
            ch::verify_urod_lattice(LatticeSector::U0, 30).unwrap(),
            ch::verify_urod_lattice(LatticeSector::U1, 30).unwrap(),
        ]
    });
    r.criterion("1b chAb vacuum character to q^30", 30.0, || vec![ch::verify_chab(LatticeSector::U0, 30).unwrap()]);
    r.criterion("1c level-1 minimal-model identities, printed q^{-1/4} prefix, to q^30", 30.0, || {
        vec![
            ch::verify_m2535(LatticeSector::L01, PrefixVariant::Printed, 30).unwrap(),
            ch::verify_m2535(LatticeSector::L11, PrefixVariant::Printed, 30).unwrap(),
        ]
    });
    r.criterion("1c' level-1 minimal-model identities, q^{+1/4} prefix, to q^30", 30.0, || {
        vec![
            ch::verify_m2535(LatticeSector::L01, PrefixVariant::Corrected, 30).unwrap(),
            ch::verify_m2535(LatticeSector::L11, PrefixVariant::Corrected, 30).unwrap(),
        ]
    });
    r.criterion("1d minimal-model tensor decompositions to q^30", 30.0, || {
        [(2, 5), (3, 5), (2, 7), (3, 7), (4, 5)]
            .iter()
            .map(|(p, pp)| ch::verify_minmod(*p, *pp, 30).unwrap())
            .collect()
    });
    r.criterion("2 U x Verma decomposition, symbolic (P, b), to q^20", 60.0, || {
        vec![
            ch::verify_rep_decomp(LatticeSector::U0, 20, None).unwrap(),
            ch::verify_rep_decomp(LatticeSector::U1, 20, None).unwrap(),
        ]
    });
    r.criterion("3 c=-5 character decompositions to q^30", 10.0, || {
        (1..=4).map(|w| ch::verify_c5(w, 30).unwrap()).collect()
    });

    r.criterion("4 OPE suite: central charges, commutation, identities, primaries", 300.0, || {
        let mut out: Vec<Verdict> = ["T_U", "T_2/5", "T_5/3", "T_std", "T_1", "T_2"]
            .iter()
            .map(|n| {
                let e = catalog::entry(n).unwrap();
                checks::virasoro_verdict(e.name, &e.field, &e.central_charge).unwrap()
            })
            .collect();
        out.push(checks::commute_test("T_2/5,T_5/3", &catalog::t_25(), &catalog::t_53()).unwrap());
        out.push(checks::commute_test("T_b1,T_b2", &catalog::t_b1(), &catalog::t_b2()).unwrap());
        out.push(checks::identity_tests().unwrap());
        out.push(checks::primary_tests().unwrap());
        out
    });
    r.criterion("4' OPE supporting checks: ansatz, T_b sector, skew symmetry, eps independence, H density", 300.0, || {
        vec![
            checks::ansatz_verify().unwrap(),
            checks::tb_regularity().unwrap(),
            checks::virasoro_verdict("T_b1", &catalog::t_b1(), &catalog::c_b1()).unwrap(),
            checks::virasoro_verdict("T_b2", &catalog::t_b2(), &catalog::c_b2()).unwrap(),
            checks::skew_symmetry_check(20260401, 20).unwrap(),
            checks::eps_independence(&[q(1, 1), q(-3, 2), q(7, 5)]).unwrap(),
        ]
    });
    r.criterion("4'' H density with the printed (b+1/b)eps coefficient", 60.0, || vec![checks::h_density_check(true).unwrap()]);
    r.criterion("5 mode-level Virasoro relations on U0 grade <= 4, |m|,|n| <= 3; L0 spectrum to grade 6", 120.0, || {
        vec![
            checks::mode_level_check("T_U", &catalog::t_u(), &RatFn::int(-5), LatticeSector::U0, 4, 3).unwrap(),
            checks::l0_verify(LatticeSector::U0, 6).unwrap(),
            checks::l0_verify(LatticeSector::U1, 6).unwrap(),
        ]
    });
    r.criterion("5' mode-level relations for T_2/5 and T_5/3 on U0 grade <= 4", 120.0, || {
        vec![
            checks::mode_level_check("T_2/5", &catalog::t_25(), &RatFn::q(-22, 5), LatticeSector::U0, 4, 3).unwrap(),
            checks::mode_level_check("T_5/3", &catalog::t_53(), &RatFn::q(-3, 5), LatticeSector::U0, 4, 3).unwrap(),
        ]
    });
    let frames = blowup::sample_frames(20260402, 3, 5);
    r.criterion("6 blow-up suite: blowr1, F=FF and Z form, AGT, Whittaker eigen-relations", 600.0, || {
        let mut out = vec![nekrasov::blowr1_check(6).unwrap()];
        out.push(blowup::blowup_block_form(&BlowupFrame::symbolic(), 2, LkForm::Balanced).unwrap());
        for f in &frames {
            out.push(blowup::blowup_block_form(f, 5, LkForm::Balanced).unwrap());
        }
        let (e1, e2, a) = (RatFn::var(Sym::Eps1), RatFn::var(Sym::Eps2), RatFn::var(Sym::A));
        out.push(blowup::blowup_z_form(&e1, &e2, &a, 2).unwrap());
        for (x, y, z) in nekrasov::sample_points(20260403, 3) {
            out.push(blowup::blowup_z_form(&RatFn::constant(x), &RatFn::constant(y), &RatFn::constant(z), 5).unwrap());
        }
        out.push(nekrasov::agt_crosscheck(3, None).unwrap());
        for pt in nekrasov::sample_points(20260404, 3) {
            out.push(nekrasov::agt_crosscheck(5, Some(pt)).unwrap());
        }
        out.push(blowup::whittaker_eigen_check(3).unwrap());
        out
    });
    r.criterion("6b l_k_solve vs printed l_k product, k = 1, 2 at 3 points", 600.0, || {
        frames.iter().map(|f| blowup::l_k_compare(f, &[1, 2], LkForm::Printed, 5).unwrap()).collect()
    });
    r.criterion("6b' l_k_solve vs balanced l_k product, k = +-1, +-2 at 3 points", 600.0, || {
        frames.iter().map(|f| blowup::l_k_compare(f, &[-2, -1, 1, 2], LkForm::Balanced, 5).unwrap()).collect()
    });
    let plan = [(1, 3), (2, 3), (3, 3), (4, 2), (5, 2), (6, 2)];
    r.criterion("7 Hirota suite F_1..F_6, symbolic (P, b), printed F_6", 300.0, || {
        vec![blowup::f_relations_verify(&BlowupFrame::symbolic(), &plan, false).unwrap()]
    });
    r.criterion("7' Hirota suite F_1..F_6, symbolic (P, b), corrected F_6", 300.0, || {
        vec![blowup::f_relations_verify(&BlowupFrame::symbolic(), &plan, true).unwrap()]
    });

    r.criterion("8a configuration sums vs Weyl-Kac characters, k <= 3, weight 25", 120.0, || {
        let mut out = Vec::new();
        for k in 1..=3u32 {
            for l in 0..=k {
                let got = cf::enumerate_configs(l, k, 25).unwrap();
                let want = oracles::weyl_kac::tail(l as i64, k as i64, 25);
                let mut v = Verdict::new(format!("configurations.enumerate l={l} k={k}"), 25);
                for (w, c) in want.iter().enumerate() {
                    let g = got.get(w).to_string();
                    if g != c.to_string() {
                        v = v.fail(format!("weight {w}"), g, c);
                        break;
                    }
                }
                out.push(v);
            }
        }
        out
    });
    r.criterion("8b split identity, k <= 3, weight 20", 120.0, || {
        let mut out = Vec::new();
        for k in 1..=3u32 {
            for l in 0..=k {
                out.push(cf::split_check(l, k, 20).unwrap());
            }
        }
        out
    });
    r.criterion("8c level-1 reassembly from configurations and fermionic sums, weight 25", 120.0, || {
        vec![cf::level_one_reassembly(0, 25).unwrap(), cf::level_one_reassembly(1, 25).unwrap()]
    });
    r.criterion("8d transfer-matrix DP vs explicit enumeration, k <= 2, weight 12", 120.0, || {
        let mut out = Vec::new();
        for k in 1..=2u32 {
            for l in 0..=k {
                let a = cf::enumerate_configs(l, k, 12).unwrap();
                let b = cf::enumerate_naive(l, k, 12, cf::left_window(12)).unwrap();
                let mut v = Verdict::new(format!("configurations.dp_vs_naive l={l} k={k}"), 12);
                if a != b {
                    let w = (0..=12).find(|w| a.get(*w) != b.get(*w)).unwrap();
                    v = v.fail(format!("weight {w}"), a.get(w), b.get(w));
                }
                out.push(v);
            }
        }
        out
    });

    r.criterion("9 determinism: `suite quick` byte-identical across two runs with the same seed", 120.0, || {
        let dir = std::env::temp_dir().join(format!("urod-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let run = |name: &str| {
            let path = dir.join(name);
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_urod"))
                .args(["suite", "quick", "--seed", "20260409", "--json", path.to_str().unwrap()])
                .env_remove("UROD_CACHE_DIR")
                .output()
                .unwrap();
            (out.status.code(), out.stdout, std::fs::read(&path).unwrap_or_default())
        };
        let (ca, sa, ja) = run("a.json");
        let (cb, sb, jb) = run("b.json");
        let _ = std::fs::remove_dir_all(&dir);
        let mut v = Verdict::new("cli.suite_quick.determinism", "exact").param("seed", 20260409);
        let checks: usize = serde_json::from_slice::<serde_json::Value>(&ja)
            .ok()
            .and_then(|j| j["total"].as_u64())
            .unwrap_or(0) as usize;
        v = v.detail(format!("{checks} checks, {} report bytes", ja.len()));
        if ca != Some(0) || cb != Some(0) {
            v = v.fail("exit status", format!("{ca:?}"), format!("{cb:?}"));
        } else if ja.is_empty() || ja != jb {
            let at = ja.iter().zip(&jb).position(|(x, y)| x != y).unwrap_or(ja.len().min(jb.len()));
            v = v.fail(format!("JSON byte {at}"), ja.len(), jb.len());
        } else if sa != sb {
            v = v.fail("stdout", sa.len(), sb.len());
        } else if checks < 25 {
            v = v.fail("check count", checks, ">= 25");
        }
        vec![v]
    });

    if r.failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: {} failing: {}", r.failed.len(), r.failed.join("; "));
        std::process::exit(1);
    }
}
