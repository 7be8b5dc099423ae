#![allow(dead_code)]

use std::sync::Arc;

use qmod_core::{builtin, CanonicalQm, VecSet};

pub const BUILTINS: [&str; 8] = ["chain_2", "chain_3", "chain_4", "boolean_2", "boolean_3", "n5", "m3", "fig5"];

/// Every canonical quasimodule with one to three principal factors over a
/// built-in lattice and carrier at most `max_carrier`.
pub fn instances(max_carrier: usize, max_factors: usize) -> Vec<CanonicalQm> {
    let mut out = Vec::new();
    for name in BUILTINS {
        let l = Arc::new(builtin(name).unwrap());
        let n = l.len();
        let mut tuples: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        let mut frontier = tuples.clone();
        for _ in 1..max_factors {
            frontier = frontier
                .iter()
                .flat_map(|t| (*t.last().unwrap()..n).map(move |x| [t.clone(), vec![x]].concat()))
                .collect();
            tuples.extend(frontier.iter().cloned());
        }
        for t in tuples {
            let size: usize = t.iter().map(|&q| l.down_set(q).len()).product();
            if size <= max_carrier {
                out.push(CanonicalQm::principal(l.clone(), &t).unwrap());
            }
        }
    }
    out
}

/// Componentwise join and scalar meet computed from coordinates.
pub struct Oracle<'a> {
    pub qm: &'a CanonicalQm,
    coords: Vec<Vec<usize>>,
}

impl<'a> Oracle<'a> {
    pub fn new(qm: &'a CanonicalQm) -> Oracle<'a> {
        let coords = (0..qm.len())
            .map(|v| (0..qm.factor_count()).map(|i| qm.coord(v, i)).collect())
            .collect();
        Oracle { qm, coords }
    }

    fn find(&self, c: &[usize]) -> usize {
        self.coords.iter().position(|x| x == c).expect("result in carrier")
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let l = self.qm.lattice();
        let c: Vec<usize> = self.coords[x].iter().zip(&self.coords[y]).map(|(&a, &b)| l.join(a, b)).collect();
        self.find(&c)
    }

    pub fn smul(&self, s: usize, x: usize) -> usize {
        let l = self.qm.lattice();
        let c: Vec<usize> = self.coords[x].iter().map(|&a| l.meet(s, a)).collect();
        self.find(&c)
    }

    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        let l = self.qm.lattice();
        self.coords[x].iter().zip(&self.coords[y]).all(|(&a, &b)| l.meet(a, b) == l.bottom())
    }

    pub fn zero(&self) -> usize {
        self.find(&vec![self.qm.lattice().bottom(); self.qm.factor_count()])
    }

    pub fn is_sub(&self, members: &[usize]) -> bool {
        let inside = |v: usize| members.contains(&v);
        inside(self.zero())
            && members.iter().all(|&x| members.iter().all(|&y| inside(self.add(x, y))))
            && members
                .iter()
                .all(|&x| (0..self.qm.lattice().len()).all(|s| inside(self.smul(s, x))))
    }

    pub fn perp(&self, a: &[usize]) -> Vec<usize> {
        (0..self.qm.len()).filter(|&y| a.iter().all(|&x| self.orthogonal(x, y))).collect()
    }

    /// Every subquasimodule by filtering all subsets.
    pub fn all_subs(&self) -> Vec<Vec<usize>> {
        let n = self.qm.len();
        assert!(n <= 20);
        (0u64..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_sub(s))
            .collect()
    }
}

pub fn to_set(qm: &CanonicalQm, members: &[usize]) -> VecSet {
    VecSet::from_indices(qm.len(), members.iter().copied())
}
