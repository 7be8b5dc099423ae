mod common;

use common::instances;
use qmod_core::verify::{check_all, replay, CheckOptions, Status};

#[test]
fn no_clause_fails_on_zero_distributive_instances() {
    let opts = CheckOptions::default();
    let mut total = 0;
    for qm in instances(64, 2).into_iter().filter(|q| q.factors_zero_distributive()) {
        for r in check_all(&qm, &opts) {
            assert_ne!(r.status, Status::Fail, "{} on {}: {}", r.id, r.instance, r.detail);
            assert_ne!(r.status, Status::BudgetExceeded, "{} on {}", r.id, r.instance);
            if r.id.starts_with("hom.") {
                continue;
            }
            assert_eq!(r.status, Status::Pass, "{} on {}: {}", r.id, r.instance, r.detail);
            total += 1;
        }
    }
    assert!(total > 1000);
}

#[test]
fn non_zero_distributive_instances_never_fail() {
    let opts = CheckOptions::default();
    for qm in instances(25, 2).into_iter().filter(|q| !q.factors_zero_distributive()) {
        for r in check_all(&qm, &opts) {
            assert_ne!(r.status, Status::Fail, "{} on {}: {}", r.id, r.instance, r.detail);
            if r.status == Status::HypothesisNotMet && r.witness.is_some() {
                assert_eq!(replay(&r).unwrap(), Some(true), "{} on {}", r.id, r.instance);
            }
        }
    }
}
