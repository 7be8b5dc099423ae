//! The orthogonality Galois connection on a canonical quasimodule: `A^⊥`,
//! the `⊥⊥` closure, closed and splitting subquasimodules, and the product
//! decomposition of closed subquasimodules.

use std::collections::{HashSet, VecDeque};

use crate::bitset::{ElemSet, VecSet};
use crate::error::{Error, Result};
use crate::quasimodule::CanonicalQm;
use crate::subquasi::{all_subquasimodules, closure_violation, ClosureViolation, SubQm, SubQmLattice};

/// `A^⊥ = {x : x ⊥ y for all y ∈ A}`; `∅^⊥ = Q`.
pub fn perp(qm: &CanonicalQm, a: &VecSet) -> VecSet {
    let items = a.to_vec();
    let mut out = qm.empty();
    for x in 0..qm.len() {
        if items.iter().all(|&y| qm.orthogonal(x, y)) {
            out.insert(x);
        }
    }
    out
}

/// `y^⊥` for a single vector.
pub fn perp_of(qm: &CanonicalQm, y: usize) -> VecSet {
    let mut out = qm.empty();
    for x in 0..qm.len() {
        if qm.orthogonal(x, y) {
            out.insert(x);
        }
    }
    out
}

pub fn double_perp_set(qm: &CanonicalQm, a: &VecSet) -> VecSet {
    perp(qm, &perp(qm, a))
}

/// Result of `A^⊥⊥`: a subquasimodule, or (when some factor is not
/// 0-distributive) possibly a raw set with the closure law it breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoublePerp {
    Sub(SubQm),
    Raw {
        set: VecSet,
        violation: ClosureViolation,
    },
}

impl DoublePerp {
    pub fn members(&self) -> &VecSet {
        match self {
            DoublePerp::Sub(s) => s.members(),
            DoublePerp::Raw { set, .. } => set,
        }
    }

    pub fn into_sub(self) -> Option<SubQm> {
        match self {
            DoublePerp::Sub(s) => Some(s),
            DoublePerp::Raw { .. } => None,
        }
    }
}

pub fn double_perp(qm: &CanonicalQm, a: &VecSet) -> DoublePerp {
    let set = double_perp_set(qm, a);
    match closure_violation(qm, &set) {
        None => DoublePerp::Sub(SubQm::new(qm, set).expect("closure just verified")),
        Some(violation) => DoublePerp::Raw { set, violation },
    }
}

/// `S^⊥⊥ = S`.
pub fn is_closed(qm: &CanonicalQm, s: &VecSet) -> bool {
    double_perp_set(qm, s) == *s
}

/// Orthogonal complement of `set` inside factor `i`, taken in the
/// one-factor canonical quasimodule on that factor.
pub fn factor_perp(qm: &CanonicalQm, i: usize, set: ElemSet) -> ElemSet {
    let l = qm.lattice();
    let mut out = ElemSet::EMPTY;
    for &x in qm.factor_members(i) {
        if set.iter().all(|y| l.meet(x, y) == l.bottom()) {
            out.insert(x);
        }
    }
    out
}

/// `{x + y : x ∈ P, y ∈ R}`.
pub fn sum_set(qm: &CanonicalQm, p: &VecSet, r: &VecSet) -> VecSet {
    let rs = r.to_vec();
    let mut out = qm.empty();
    for x in p.iter() {
        for &y in &rs {
            out.insert(qm.add(x, y));
        }
    }
    out
}

/// `P + P^⊥ = Q`.
pub fn is_splitting(qm: &CanonicalQm, p: &SubQm) -> bool {
    let pp = perp(qm, p.members());
    debug_assert_eq!(p.members().intersection(&pp), qm.zero_set());
    sum_set(qm, p.members(), &pp).is_full()
}

pub fn splitting_subquasimodules(qm: &CanonicalQm, budget: usize) -> Result<Vec<SubQm>> {
    let all = all_subquasimodules(qm, budget)?;
    Ok(all
        .nodes()
        .iter()
        .filter(|p| is_splitting(qm, p))
        .cloned()
        .collect())
}

fn require_zero_distributive(qm: &CanonicalQm) -> Result<()> {
    match qm.non_zero_distributive_factor() {
        Some(i) => Err(Error::NotZeroDistributive(i)),
        None => Ok(()),
    }
}

/// `L_C(Q)` with its orthocomplementation.
#[derive(Clone, Debug)]
pub struct ClosedLattice {
    pub base: SubQmLattice,
    /// Node index of `P^⊥` for each node `P`.
    pub perp_map: Vec<usize>,
}

impl ClosedLattice {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn perp(&self, i: usize) -> usize {
        self.perp_map[i]
    }
}

/// Closed subquasimodules, computed as the intersection closure of the
/// principal complements `x^⊥` together with `Q` (every `A^⊥` is the
/// intersection of the `x^⊥` for `x ∈ A`).
pub fn closed_subquasimodules(qm: &CanonicalQm) -> Result<ClosedLattice> {
    require_zero_distributive(qm)?;
    let mut generators: Vec<VecSet> = (0..qm.len()).map(|x| perp_of(qm, x)).collect();
    generators.sort_by(|a, b| a.canonical_cmp(b));
    generators.dedup();
    let mut seen: HashSet<VecSet> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in std::iter::once(qm.full()).chain(generators.iter().cloned()) {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for g in &generators {
            let t = s.intersection(g);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let nodes = seen
        .into_iter()
        .map(|s| {
            SubQm::new(qm, s).expect("complements are subquasimodules over 0-distributive factors")
        })
        .collect();
    Ok(with_perp_map(qm, SubQmLattice::from_nodes(nodes)))
}

/// Wraps a family of closed subquasimodules with its `⊥` map.
pub fn with_perp_map(qm: &CanonicalQm, base: SubQmLattice) -> ClosedLattice {
    let perp_map = base
        .nodes()
        .iter()
        .map(|n| {
            base.position(&perp(qm, n.members()))
                .expect("the complement of a closed node is a closed node")
        })
        .collect();
    ClosedLattice { base, perp_map }
}

/// `(P ∪ R)^⊥⊥` for closed `P` and `R`.
pub fn closed_join(qm: &CanonicalQm, p: &SubQm, r: &SubQm) -> Result<DoublePerp> {
    if !is_closed(qm, p.members()) || !is_closed(qm, r.members()) {
        return Err(Error::NotClosed);
    }
    Ok(double_perp(qm, &p.members().union(r.members())))
}

/// Per-factor closed sets `P_i` with `∏ P_i = P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub parts: Vec<ElemSet>,
}

/// Splits a closed subquasimodule into its projections, checking that each
/// projection is closed in its factor and that their product is `P`.
pub fn factorize_closed(qm: &CanonicalQm, p: &SubQm) -> Result<FactorizationWitness> {
    require_zero_distributive(qm)?;
    if !is_closed(qm, p.members()) {
        return Err(Error::NotClosed);
    }
    let parts = (0..qm.factor_count())
        .map(|i| qm.project(p.members(), i))
        .collect::<Result<Vec<_>>>()?;
    for (i, &part) in parts.iter().enumerate() {
        if factor_perp(qm, i, factor_perp(qm, i, part)) != part {
            return Err(Error::FactorizationFailed);
        }
    }
    if qm.product(&parts) != *p.members() {
        return Err(Error::FactorizationFailed);
    }
    Ok(FactorizationWitness { parts })
}

/// The map `(P_i)_i ↦ ∏ P_i` from `∏ L_C(L_i)` to `L_C(Q)`, with the
/// outcome of checking it is an order isomorphism.
#[derive(Clone, Debug)]
pub struct ClosedIso {
    pub closed: ClosedLattice,
    pub factor_lattices: Vec<ClosedLattice>,
    /// Tuples of factor node indices, in row-major order.
    pub tuples: Vec<Vec<usize>>,
    /// `image[t]` is the node of `closed` hit by `tuples[t]`.
    pub image: Vec<usize>,
    pub bijective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
}

impl ClosedIso {
    pub fn is_isomorphism(&self) -> bool {
        self.bijective && self.order_preserving && self.order_reflecting
    }
}

pub fn closed_lattice_iso(qm: &CanonicalQm) -> Result<ClosedIso> {
    require_zero_distributive(qm)?;
    let closed = closed_subquasimodules(qm)?;
    let factor_qms: Vec<CanonicalQm> = (0..qm.factor_count()).map(|i| qm.factor_qm(i)).collect();
    let factor_lattices = factor_qms
        .iter()
        .map(closed_subquasimodules)
        .collect::<Result<Vec<_>>>()?;
    // factor nodes as element sets
    let factor_sets: Vec<Vec<ElemSet>> = factor_qms
        .iter()
        .zip(&factor_lattices)
        .map(|(fq, fl)| {
            fl.base
                .nodes()
                .iter()
                .map(|n| fq.project(n.members(), 0).expect("single factor"))
                .collect()
        })
        .collect();

    let mut tuples = vec![vec![]];
    for sets in &factor_sets {
        tuples = tuples
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..sets.len()).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    let mut image = Vec::with_capacity(tuples.len());
    let mut hit = vec![false; closed.len()];
    let mut bijective = tuples.len() == closed.len();
    for t in &tuples {
        let parts: Vec<ElemSet> = t.iter().enumerate().map(|(i, &j)| factor_sets[i][j]).collect();
        match closed.base.position(&qm.product(&parts)) {
            Some(k) => {
                if hit[k] {
                    bijective = false;
                }
                hit[k] = true;
                image.push(k);
            }
            None => {
                bijective = false;
                image.push(usize::MAX);
            }
        }
    }
    let mut order_preserving = true;
    let mut order_reflecting = true;
    if bijective {
        for (s, ts) in tuples.iter().enumerate() {
            for (u, tu) in tuples.iter().enumerate() {
                let factorwise = ts
                    .iter()
                    .zip(tu)
                    .enumerate()
                    .all(|(i, (&a, &b))| factor_sets[i][a].is_subset(factor_sets[i][b]));
                let whole = closed.base.leq(image[s], image[u]);
                if factorwise && !whole {
                    order_preserving = false;
                }
                if whole && !factorwise {
                    order_reflecting = false;
                }
            }
        }
    }
    Ok(ClosedIso {
        closed,
        factor_lattices,
        tuples,
        image,
        bijective,
        order_preserving,
        order_reflecting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;
    use crate::subquasi::generate;
    use std::sync::Arc;

    fn qm(name: &str, tops: &[&str]) -> CanonicalQm {
        let l = Arc::new(builtin(name).unwrap());
        let tops: Vec<usize> = tops.iter().map(|t| l.index_of(t).unwrap()).collect();
        CanonicalQm::principal(l, &tops).unwrap()
    }

    fn set(q: &CanonicalQm, items: &[&str]) -> VecSet {
        q.parse_set(items).unwrap()
    }

    fn sub(q: &CanonicalQm, items: &[&str]) -> SubQm {
        SubQm::new(q, set(q, items)).unwrap()
    }

    #[test]
    fn perp_examples() {
        let n5 = qm("n5", &["1"]);
        assert_eq!(perp(&n5, &set(&n5, &["b"])), set(&n5, &["0", "a", "c"]));
        assert_eq!(perp(&n5, &n5.zero_set()), n5.full());
        assert_eq!(perp(&n5, &n5.full()), n5.zero_set());
        assert_eq!(perp(&n5, &n5.empty()), n5.full());
    }

    #[test]
    fn double_perp_examples() {
        let q = qm("n5", &["1", "a"]);
        let p3 = set(&q, &["(0,0)", "(a,0)"]);
        let p8 = set(&q, &["(0,0)", "(a,0)", "(c,0)"]);
        assert_eq!(double_perp(&q, &p3).members(), &p8);
        assert_eq!(double_perp(&q, &q.zero_set()).members(), &q.zero_set());
        let p16 = set(&q, &["(0,0)", "(a,a)", "(b,0)", "(c,a)", "(1,a)"]);
        assert_eq!(double_perp(&q, &p16).members(), &q.full());
        assert!(!is_closed(&q, &p3));
        assert!(is_closed(&q, &p8));
        assert!(is_closed(&q, &q.zero_set()));
    }

    #[test]
    fn m3_double_perp_degrades_to_raw() {
        let q = qm("m3", &["1", "a"]);
        let a0 = set(&q, &["(a,0)"]);
        let p = perp(&q, &a0);
        // A^⊥⊥⊥ = A^⊥, so the double complement of p is p itself
        match double_perp(&q, &p) {
            DoublePerp::Raw { set, violation } => {
                assert_eq!(set, p);
                assert_eq!(violation.describe(&q), "(b,0)+(c,0)=(1,0) is missing");
            }
            DoublePerp::Sub(_) => panic!("expected a raw set"),
        }
        assert!(double_perp(&q, &a0).into_sub().is_some());
    }

    #[test]
    fn closed_lattice_of_n5() {
        let q = qm("n5", &["1"]);
        let lc = closed_subquasimodules(&q).unwrap();
        let sets: Vec<String> = lc.base.nodes().iter().map(|n| q.format_set(n.members())).collect();
        assert_eq!(sets, ["{(0)}", "{(0),(b)}", "{(0),(a),(c)}", "{(0),(a),(b),(c),(1)}"]);
        assert_eq!(lc.base.boolean_rank(), Some(2));
        assert_eq!(lc.perp_map, vec![3, 2, 1, 0]);
    }

    #[test]
    fn closed_lattice_requires_zero_distributivity() {
        let q = qm("m3", &["1", "a"]);
        assert_eq!(
            closed_subquasimodules(&q).unwrap_err(),
            Error::NotZeroDistributive(0)
        );
        let q = qm("m3", &["a", "a"]);
        assert!(closed_subquasimodules(&q).is_ok());
    }

    #[test]
    fn closed_lattice_of_ex1_is_boolean_cube() {
        let q = qm("n5", &["1", "a"]);
        let lc = closed_subquasimodules(&q).unwrap();
        assert_eq!(lc.len(), 8);
        assert_eq!(lc.base.boolean_rank(), Some(3));
        let trivial = qm("n5", &["0"]);
        assert_eq!(closed_subquasimodules(&trivial).unwrap().len(), 1);
    }

    #[test]
    fn closed_joins() {
        let q = qm("n5", &["1", "a"]);
        let p2 = sub(&q, &["(0,0)", "(0,a)"]);
        let p5 = sub(&q, &["(0,0)", "(b,0)"]);
        let p8 = sub(&q, &["(0,0)", "(a,0)", "(c,0)"]);
        let p12 = set(&q, &["(0,0)", "(0,a)", "(b,0)", "(b,a)"]);
        let p17 = set(&q, &["(0,0)", "(0,a)", "(a,0)", "(a,a)", "(c,0)", "(c,a)"]);
        assert_eq!(closed_join(&q, &p2, &p5).unwrap().members(), &p12);
        assert_eq!(closed_join(&q, &p2, &p8).unwrap().members(), &p17);
        let bottom = sub(&q, &["(0,0)"]);
        assert_eq!(closed_join(&q, &p8, &bottom).unwrap().members(), p8.members());
        let p3 = sub(&q, &["(0,0)", "(a,0)"]);
        assert_eq!(closed_join(&q, &p3, &p2).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn sums_and_splitting() {
        let f = qm("fig5", &["1", "1"]);
        let p = f.product(&[
            f.lattice().down_set(f.lattice().index_of("b").unwrap()),
            f.lattice().down_set(f.lattice().index_of("c").unwrap()),
        ]);
        let pp = perp(&f, &p);
        let s = sum_set(&f, &p, &pp);
        assert!(!s.contains(f.parse_vector("(1,1)").unwrap()));
        let p = SubQm::new(&f, p).unwrap();
        assert!(is_closed(&f, p.members()));
        assert!(!is_splitting(&f, &p));

        let q = qm("n5", &["1", "a"]);
        let p2 = set(&q, &["(0,0)", "(0,a)"]);
        let p15 = set(&q, &["(0,0)", "(a,0)", "(b,0)", "(c,0)", "(1,0)"]);
        assert!(sum_set(&q, &p2, &p15).is_full());
        assert_eq!(sum_set(&q, &p15, &q.zero_set()), p15);
        assert!(is_splitting(&q, &generate(&q, &q.full())));
    }

    #[test]
    fn ex1_splitting_equals_closed() {
        let q = qm("n5", &["1", "a"]);
        let split = splitting_subquasimodules(&q, 1000).unwrap();
        let closed = closed_subquasimodules(&q).unwrap();
        assert_eq!(split.len(), 8);
        for s in &split {
            assert!(closed.base.contains(s.members()));
        }
        let trivial = qm("n5", &["0"]);
        assert_eq!(splitting_subquasimodules(&trivial, 10).unwrap().len(), 1);
    }

    #[test]
    fn factorization() {
        let q = qm("n5", &["1", "a"]);
        let l = q.lattice();
        let e = |names: &[&str]| ElemSet::from_iter(names.iter().map(|n| l.index_of(n).unwrap()));
        let p12 = sub(&q, &["(0,0)", "(0,a)", "(b,0)", "(b,a)"]);
        assert_eq!(
            factorize_closed(&q, &p12).unwrap().parts,
            vec![e(&["0", "b"]), e(&["0", "a"])]
        );
        let p17 = sub(&q, &["(0,0)", "(0,a)", "(a,0)", "(a,a)", "(c,0)", "(c,a)"]);
        assert_eq!(
            factorize_closed(&q, &p17).unwrap().parts,
            vec![e(&["0", "a", "c"]), e(&["0", "a"])]
        );
        let zero = sub(&q, &["(0,0)"]);
        assert_eq!(factorize_closed(&q, &zero).unwrap().parts, vec![e(&["0"]), e(&["0"])]);
        let p3 = sub(&q, &["(0,0)", "(a,0)"]);
        assert_eq!(factorize_closed(&q, &p3).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn isomorphism_with_product_of_factor_lattices() {
        let q = qm("n5", &["1", "a"]);
        let iso = closed_lattice_iso(&q).unwrap();
        assert!(iso.is_isomorphism());
        assert_eq!(iso.closed.len(), 8);
        assert_eq!(iso.factor_lattices[0].len(), 4);
        assert_eq!(iso.factor_lattices[1].len(), 2);

        let sq = qm("n5", &["1", "1"]);
        let iso = closed_lattice_iso(&sq).unwrap();
        assert!(iso.is_isomorphism());
        assert_eq!(iso.closed.base.boolean_rank(), Some(4));

        let single = qm("fig5", &["1"]);
        let iso = closed_lattice_iso(&single).unwrap();
        assert!(iso.is_isomorphism());
        assert_eq!(iso.image, (0..iso.closed.len()).collect::<Vec<_>>());
    }
}
