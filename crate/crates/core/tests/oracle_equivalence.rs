mod common;

use std::collections::BTreeSet;

use common::{instances, to_set, Oracle};
use qmod_core::galois::{closed_subquasimodules, is_closed, perp};
use qmod_core::subquasi::{all_subquasimodules, generate};
use qmod_core::VecSet;

fn sorted(sets: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<Vec<usize>> {
    sets.into_iter().collect()
}

#[test]
fn enumeration_matches_subset_filter() {
    let mut checked = 0;
    for qm in instances(16, 3) {
        let oracle = Oracle::new(&qm);
        let fast = all_subquasimodules(&qm, 1_000_000).unwrap();
        let want = sorted(oracle.all_subs());
        let got = sorted(fast.nodes().iter().map(|p| p.members().to_vec()));
        assert_eq!(got, want, "{}", qm.describe());
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn perp_matches_definition() {
    for qm in instances(16, 2) {
        let oracle = Oracle::new(&qm);
        for p in all_subquasimodules(&qm, 1_000_000).unwrap().nodes() {
            let a = p.members().to_vec();
            assert_eq!(perp(&qm, p.members()).to_vec(), oracle.perp(&a), "{}", qm.describe());
        }
    }
}

#[test]
fn closed_lattice_matches_closed_filter() {
    for qm in instances(64, 2) {
        let subs = all_subquasimodules(&qm, 1_000_000).unwrap();
        let filter = sorted(
            subs.nodes()
                .iter()
                .filter(|p| {
                    let oracle = Oracle::new(&qm);
                    let a = p.members().to_vec();
                    oracle.perp(&oracle.perp(&a)) == a
                })
                .map(|p| p.members().to_vec()),
        );
        match closed_subquasimodules(&qm) {
            Ok(closed) => {
                let got = sorted(closed.base.nodes().iter().map(|p| p.members().to_vec()));
                assert_eq!(got, filter, "{}", qm.describe());
            }
            Err(_) => assert!(!qm.factors_zero_distributive(), "{}", qm.describe()),
        }
        for p in subs.nodes() {
            assert_eq!(is_closed(&qm, p.members()), filter.contains(&p.members().to_vec()));
        }
    }
}

#[test]
fn generated_is_meet_of_containing_subquasimodules() {
    for qm in instances(64, 2) {
        let subs = all_subquasimodules(&qm, 1_000_000).unwrap();
        let n = qm.len();
        let meet_over = |a: &VecSet| {
            let mut acc = qm.full();
            for p in subs.nodes().iter().filter(|p| a.is_subset(p.members())) {
                acc.intersect_with(p.members());
            }
            acc
        };
        let check = |items: &[usize]| {
            let a = to_set(&qm, items);
            assert_eq!(*generate(&qm, &a).members(), meet_over(&a), "{} {items:?}", qm.describe());
        };
        check(&[]);
        for x in 0..n {
            check(&[x]);
            for y in x + 1..n {
                check(&[x, y]);
                for z in y + 1..n {
                    check(&[x, y, z]);
                }
            }
        }
    }
}
