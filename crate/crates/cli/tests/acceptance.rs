//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use common::{instances, to_set, Oracle};
use qmod_core::galois::closed_subquasimodules;
use qmod_core::subquasi::{all_subquasimodules, generate};
use qmod_core::verify::{check_all, CheckOptions, Status};

const EX1_BUDGET: Duration = Duration::from_secs(1);
const M3_BUDGET: Duration = Duration::from_secs(1);
const FIG5_BUDGET: Duration = Duration::from_secs(1);
const N5_POWER_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const THEOREM_BUDGET: Duration = Duration::from_secs(120);
const SEARCH_BUDGET: Duration = Duration::from_secs(600);
/// Carrier bound of the oracle-equivalence and theorem suites.
const MAX_CARRIER: usize = 64;
/// Brute-force subset filtering applies up to this carrier size.
const BRUTE_CARRIER: usize = 16;

struct Outcome {
    ok: bool,
    detail: String,
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn qmod(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qmod"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("qmod runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn records(stdout: &str) -> Vec<Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .filter(|v: &Value| v["record"] == "theorem")
        .collect()
}

/// Runs `verify --instance NAME` and requires `ids` to pass.
fn golden(instance: &str, ids: &[&str]) -> Outcome {
    let (_, stdout) = qmod(&["verify", "--instance", instance, "--format", "structured"]);
    let reports = records(&stdout);
    let mut bad = Vec::new();
    for id in ids {
        match reports.iter().find(|r| r["id"] == *id) {
            Some(r) if r["status"] == "pass" => {}
            Some(r) => bad.push(format!("{id}: {} ({})", r["status"], r["detail"].as_str().unwrap_or(""))),
            None => bad.push(format!("{id}: missing")),
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} golden reports pass", ids.len())
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_1() -> Outcome {
    golden(
        "ex1",
        &["ex1.subquasimodules", "ex1.perp-table", "ex1.closed", "ex1.closed-boolean", "ex1.bases"],
    )
}

fn criterion_2() -> Outcome {
    let mut o = golden(
        "m3",
        &["m3.not-zero-distributive", "m3.perp-not-subquasimodule", "m3.orthogonal-basis"],
    );
    let (_, text) = qmod(&["lattice", "check", "data/m3.lat"]);
    if !text.contains("0-distributive: no, witness (a,b,c)") {
        o.ok = false;
        o.detail.push_str("; lattice check lacks the (a,b,c) witness");
    }
    o
}

fn criterion_3() -> Outcome {
    golden("fig5", &["fig5.lattice", "fig5.closed-not-splitting"])
}

fn criterion_4() -> Outcome {
    golden("n5-power", &["n5-power.1", "n5-power.2"])
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut brute = 0;
    let qms = instances(MAX_CARRIER, 2);
    for qm in &qms {
        let name = qm.describe();
        let oracle = Oracle::new(qm);
        let Ok(subs) = all_subquasimodules(qm, 1_000_000) else {
            bad.push(format!("{name}: enumeration failed"));
            continue;
        };
        let got: BTreeSet<Vec<usize>> = subs.nodes().iter().map(|p| p.members().to_vec()).collect();
        if qm.len() <= BRUTE_CARRIER {
            brute += 1;
            let want: BTreeSet<Vec<usize>> = oracle.all_subs().into_iter().collect();
            if got != want {
                bad.push(format!("{name}: (a) {} vs {} brute force", got.len(), want.len()));
            }
        }
        if qm.factors_zero_distributive() {
            let filter: BTreeSet<Vec<usize>> = got
                .iter()
                .filter(|a| oracle.perp(&oracle.perp(a)) == **a)
                .cloned()
                .collect();
            let closed: BTreeSet<Vec<usize>> = closed_subquasimodules(qm)
                .map(|c| c.base.nodes().iter().map(|p| p.members().to_vec()).collect())
                .unwrap_or_default();
            if closed != filter {
                bad.push(format!("{name}: (b) closed lattice differs from the closed filter"));
            }
        }
        let n = qm.len();
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for x in 0..n {
            tuples.push(vec![x]);
            for y in x + 1..n {
                tuples.push(vec![x, y]);
                for z in y + 1..n {
                    tuples.push(vec![x, y, z]);
                }
            }
        }
        for t in tuples {
            let a = to_set(qm, &t);
            let mut meet = qm.full();
            for p in subs.nodes().iter().filter(|p| a.is_subset(p.members())) {
                meet.intersect_with(p.members());
            }
            if *generate(qm, &a).members() != meet {
                bad.push(format!("{name}: (c) ⟨{t:?}⟩"));
                break;
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{} instances with carrier ≤ {MAX_CARRIER}, {brute} of them brute-forced over all subsets",
                qms.len()
            )
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_6() -> Outcome {
    let opts = CheckOptions::default();
    let mut failures = Vec::new();
    let (mut clauses, mut count) = (0, 0);
    for qm in instances(MAX_CARRIER, 2).into_iter().filter(|q| q.factors_zero_distributive()) {
        count += 1;
        for r in check_all(&qm, &opts) {
            if r.id.starts_with("hom.") {
                if r.status == Status::Fail {
                    failures.push(format!("{} on {}", r.id, r.instance));
                }
                continue;
            }
            clauses += 1;
            if r.status != Status::Pass {
                failures.push(format!("{} on {}: {}", r.id, r.instance, r.status.as_str()));
            }
        }
    }
    Outcome {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{clauses} clause reports over {count} 0-distributive instances, zero failures")
        } else {
            failures.join("; ")
        },
    }
}

fn criterion_7() -> Outcome {
    let drop = [
        "verify", "--search", "--max-size", "5", "--exhaustive-size", "5", "--seed", "7", "--drop", "0-distributive",
        "--format", "structured",
    ];
    let split = [
        "verify", "--search", "--max-size", "6", "--exhaustive-size", "6", "--seed", "7", "--target",
        "closed-not-splitting", "--format", "structured",
    ];
    let (_, first) = qmod(&drop);
    let (_, again) = qmod(&drop);
    let (_, closed) = qmod(&split);
    let prop2 = records(&first)
        .into_iter()
        .find(|r| r["id"] == "prop2")
        .is_some_and(|r| r["status"] == "hypothesis-not-met" && r["witness"].is_object());
    let refuted = records(&closed)
        .first()
        .is_some_and(|r| r["status"] == "refuted" && r["witness"].is_object());
    let reproducible = first == again;
    Outcome {
        ok: prop2 && refuted && reproducible,
        detail: format!(
            "prop2 violation with 0-distributive dropped (≤ 5 elements): {}; closed-not-splitting (≤ 6 elements): {}; identical reruns: {}",
            prop2, refuted, reproducible
        ),
    }
}

fn main() {
    let criteria: [(usize, &str, Duration, fn() -> Outcome); 7] = [
        (1, "ex1 reproduced exactly", EX1_BUDGET, criterion_1),
        (2, "M3 counterexample reproduced", M3_BUDGET, criterion_2),
        (3, "six-element closed-not-splitting example reproduced", FIG5_BUDGET, criterion_3),
        (4, "L_C(N5^n) Boolean of rank 2n for n = 1, 2", N5_POWER_BUDGET, criterion_4),
        (5, "oracle equivalence", ORACLE_BUDGET, criterion_5),
        (6, "theorem suite on 0-distributive instances", THEOREM_BUDGET, criterion_6),
        (7, "counterexample search", SEARCH_BUDGET, criterion_7),
    ];
    let mut failed = 0;
    for (n, title, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let ok = o.ok && took <= budget;
        failed += usize::from(!ok);
        println!(
            "criterion {n} {}  {title}: {} [exact; {:.2} s of {} s]",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 7 criteria pass", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
