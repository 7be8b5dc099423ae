//! Generated subquasimodules, the lattice `L(Q)` and basis search.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::bitset::VecSet;
use crate::error::{Error, Result};
use crate::quasimodule::CanonicalQm;

pub const DEFAULT_ENUMERATION_BUDGET: usize = 200_000;

/// A subset of the carrier known to contain `0⃗` and be closed under
/// addition and every scalar action.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubQm {
    members: VecSet,
}

impl fmt::Debug for SubQm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubQm{:?}", self.members)
    }
}

impl SubQm {
    /// Validates `members` as a subquasimodule of `qm`.
    pub fn new(qm: &CanonicalQm, members: VecSet) -> Result<SubQm> {
        match closure_violation(qm, &members) {
            None => Ok(SubQm { members }),
            Some(v) => Err(Error::NotSubquasimodule(v.describe(qm))),
        }
    }

    pub(crate) fn trusted(members: VecSet) -> SubQm {
        SubQm { members }
    }

    pub fn members(&self) -> &VecSet {
        &self.members
    }

    pub fn into_members(self) -> VecSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }
}

/// Why a set fails to be a subquasimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    MissingZero,
    Sum { x: usize, y: usize, sum: usize },
    Scalar { c: usize, x: usize, product: usize },
}

impl ClosureViolation {
    pub fn describe(&self, qm: &CanonicalQm) -> String {
        let v = |i| qm.format_vector(i);
        match *self {
            ClosureViolation::MissingZero => "0⃗ is missing".to_string(),
            ClosureViolation::Sum { x, y, sum } => {
                format!("{}+{}={} is missing", v(x), v(y), v(sum))
            }
            ClosureViolation::Scalar { c, x, product } => format!(
                "{}·{}={} is missing",
                qm.lattice().name(c),
                v(x),
                v(product)
            ),
        }
    }
}

/// First closure violation: `0⃗` first, then sums over pairs `x <= y` in
/// carrier order, then scalar products by scalar then vector.
pub fn closure_violation(qm: &CanonicalQm, set: &VecSet) -> Option<ClosureViolation> {
    if !set.contains(qm.zero()) {
        return Some(ClosureViolation::MissingZero);
    }
    let items = set.to_vec();
    for (i, &x) in items.iter().enumerate() {
        for &y in &items[i..] {
            let sum = qm.add(x, y);
            if !set.contains(sum) {
                return Some(ClosureViolation::Sum { x, y, sum });
            }
        }
    }
    for c in 0..qm.lattice().len() {
        for &x in &items {
            let product = qm.smul(c, x);
            if !set.contains(product) {
                return Some(ClosureViolation::Scalar { c, x, product });
            }
        }
    }
    None
}

pub fn is_subquasimodule(qm: &CanonicalQm, set: &VecSet) -> bool {
    closure_violation(qm, set).is_none()
}

/// Closes `set` (assumed already closed) after adding `extra`, processing
/// only the new elements against everything present.
fn close_from(qm: &CanonicalQm, mut set: VecSet, extra: impl IntoIterator<Item = usize>) -> VecSet {
    let scalars = qm.lattice().len();
    let mut list = set.to_vec();
    let mut work = Vec::new();
    for x in extra {
        if set.insert(x) {
            list.push(x);
            work.push(x);
        }
    }
    while let Some(v) = work.pop() {
        for c in 0..scalars {
            let w = qm.smul(c, v);
            if set.insert(w) {
                list.push(w);
                work.push(w);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let w = qm.add(v, list[i]);
            if set.insert(w) {
                list.push(w);
                work.push(w);
            }
            i += 1;
        }
    }
    set
}

/// `⟨A⟩`: the least subquasimodule containing `A`; `⟨∅⟩ = {0⃗}`.
pub fn generate(qm: &CanonicalQm, a: &VecSet) -> SubQm {
    SubQm::trusted(close_from(qm, qm.zero_set(), a.iter()))
}

pub fn generate_from(qm: &CanonicalQm, items: &[usize]) -> SubQm {
    SubQm::trusted(close_from(qm, qm.zero_set(), items.iter().copied()))
}

/// `⟨P ∪ extra⟩` for a subquasimodule `P`.
pub fn extend(qm: &CanonicalQm, base: &SubQm, extra: &[usize]) -> SubQm {
    SubQm::trusted(close_from(qm, base.members.clone(), extra.iter().copied()))
}

/// `⟨P ∪ R⟩`, the join in `L(Q)`.
pub fn generated_join(qm: &CanonicalQm, p: &SubQm, r: &SubQm) -> SubQm {
    let extra: Vec<usize> = r.members.difference(&p.members).to_vec();
    extend(qm, p, &extra)
}

/// A finite family of subquasimodules ordered by inclusion, sorted
/// canonically (by size, then lexicographically by members), so that node
/// `i` is named `P{i+1}`.
#[derive(Clone)]
pub struct SubQmLattice {
    nodes: Vec<SubQm>,
    index: HashMap<VecSet, usize>,
    /// `above[i]` holds the nodes containing node `i`.
    above: OnceLock<Vec<VecSet>>,
}

impl fmt::Debug for SubQmLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.nodes.iter()).finish()
    }
}

impl SubQmLattice {
    /// Builds from any collection of distinct subquasimodules.
    pub fn from_nodes(mut nodes: Vec<SubQm>) -> SubQmLattice {
        nodes.sort_by(|a, b| a.members.canonical_cmp(&b.members));
        nodes.dedup();
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.members.clone(), i))
            .collect();
        SubQmLattice {
            nodes,
            index,
            above: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[SubQm] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &SubQm {
        &self.nodes[i]
    }

    pub fn position(&self, set: &VecSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn contains(&self, set: &VecSet) -> bool {
        self.index.contains_key(set)
    }

    /// `P1`, `P2`, ...
    pub fn name(&self, i: usize) -> String {
        format!("P{}", i + 1)
    }

    /// Name of a set if it is a node.
    pub fn name_of(&self, set: &VecSet) -> Option<String> {
        self.position(set).map(|i| self.name(i))
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    fn above(&self) -> &[VecSet] {
        self.above.get_or_init(|| {
            let n = self.nodes.len();
            (0..n)
                .map(|i| {
                    let mut row = VecSet::new(n);
                    for j in i..n {
                        if self.nodes[i].members.is_subset(&self.nodes[j].members) {
                            row.insert(j);
                        }
                    }
                    row
                })
                .collect()
        })
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above()[i].contains(j)
    }

    /// Meet by intersection, if the intersection is a node.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.position(&self.nodes[i].members.intersection(&self.nodes[j].members))
    }

    /// Least upper bound in the inclusion order, if unique.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let above = self.above();
        let upper = above[i].intersection(&above[j]);
        let lub = upper.iter().find(|&k| above[k] == upper);
        lub
    }

    /// `Some(k)` when the family, ordered by inclusion, is isomorphic to the
    /// Boolean algebra `2^k`: exactly `2^k` nodes and the map sending a node
    /// to the atoms below it is an order isomorphism onto all atom subsets.
    pub fn boolean_rank(&self) -> Option<usize> {
        let n = self.nodes.len();
        if n == 0 {
            return None;
        }
        let atoms: Vec<usize> = (1..n)
            .filter(|&j| self.leq(0, j) && (1..n).all(|k| k == j || !(self.leq(k, j) && k != 0)))
            .collect();
        let k = atoms.len();
        if k >= usize::BITS as usize || n != 1usize << k {
            return None;
        }
        let masks: Vec<usize> = (0..n)
            .map(|i| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| self.leq(a, i))
                    .fold(0usize, |m, (b, _)| m | 1 << b)
            })
            .collect();
        let mut hit = vec![false; n];
        for &m in &masks {
            if hit[m] {
                return None;
            }
            hit[m] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) != (masks[i] & !masks[j] == 0) {
                    return None;
                }
            }
        }
        Some(k)
    }

    /// Covering pairs `(i, j)` of the inclusion order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let above = self.above();
        let n = self.nodes.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in above[i].iter() {
                if j == i {
                    continue;
                }
                let between = above[i]
                    .iter()
                    .filter(|&k| k != i && k != j && above[k].contains(j))
                    .count();
                if between == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// All subquasimodules of `qm`, found by closing `{0⃗}` under
/// one-vector extensions `⟨P ∪ {v}⟩` (equivalently, joins with cyclic
/// subquasimodules).
pub fn all_subquasimodules(qm: &CanonicalQm, budget: usize) -> Result<SubQmLattice> {
    let bottom = generate(qm, &qm.empty());
    let mut seen: HashMap<VecSet, ()> = HashMap::new();
    seen.insert(bottom.members.clone(), ());
    let mut nodes = vec![bottom.clone()];
    let mut queue = VecDeque::from([bottom]);
    while let Some(p) = queue.pop_front() {
        for v in 0..qm.len() {
            if p.contains(v) {
                continue;
            }
            let next = extend(qm, &p, &[v]);
            if seen.contains_key(&next.members) {
                continue;
            }
            if nodes.len() >= budget {
                return Err(Error::EnumerationBudgetExceeded(budget));
            }
            seen.insert(next.members.clone(), ());
            nodes.push(next.clone());
            queue.push_back(next);
        }
    }
    Ok(SubQmLattice::from_nodes(nodes))
}

/// `⟨A⟩ = P`.
pub fn is_generating(qm: &CanonicalQm, p: &SubQm, a: &[usize]) -> bool {
    generate_from(qm, a) == *p
}

/// Generating and inclusion-minimal: no one-element deletion still
/// generates `P` (enough, since `⟨·⟩` is monotone).
pub fn is_basis(qm: &CanonicalQm, p: &SubQm, a: &[usize]) -> bool {
    if !is_generating(qm, p, a) {
        return false;
    }
    (0..a.len()).all(|skip| {
        let rest: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect();
        !is_generating(qm, p, &rest)
    })
}

pub fn is_orthogonal_set(qm: &CanonicalQm, a: &[usize]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, &x)| a[i + 1..].iter().all(|&y| qm.orthogonal(x, y)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub members: Vec<usize>,
    pub orthogonal: bool,
}

/// All bases of `P` with at most `max_size` elements, ordered by size and
/// then lexicographically by carrier index.
///
/// The search walks independent sets only (no member lies in the span of
/// the others); independence is inherited by subsets, so a dependent set is
/// never extended.
pub fn find_bases(qm: &CanonicalQm, p: &SubQm, max_size: usize, budget: usize) -> Result<Vec<Basis>> {
    let mut out = Vec::new();
    if generate(qm, &qm.empty()) == *p {
        out.push(Basis {
            members: vec![],
            orthogonal: true,
        });
        return Ok(out);
    }
    let candidates: Vec<usize> = p.members.iter().filter(|&v| v != qm.zero()).collect();
    let mut visited = 0usize;
    let mut stack: Vec<usize> = Vec::new();
    search_bases(
        qm,
        p,
        &candidates,
        0,
        &mut stack,
        max_size,
        budget,
        &mut visited,
        &mut out,
    )?;
    out.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_bases(
    qm: &CanonicalQm,
    p: &SubQm,
    candidates: &[usize],
    start: usize,
    stack: &mut Vec<usize>,
    max_size: usize,
    budget: usize,
    visited: &mut usize,
    out: &mut Vec<Basis>,
) -> Result<()> {
    if stack.len() >= max_size {
        return Ok(());
    }
    let span = generate_from(qm, stack);
    for ci in start..candidates.len() {
        let c = candidates[ci];
        if span.contains(c) {
            continue;
        }
        *visited += 1;
        if *visited > budget {
            return Err(Error::EnumerationBudgetExceeded(budget));
        }
        stack.push(c);
        let independent = (0..stack.len() - 1).all(|skip| {
            let rest: Vec<usize> = stack
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect();
            !generate_from(qm, &rest).contains(stack[skip])
        });
        if independent {
            let generated = extend(qm, &span, &[c]);
            if generated == *p {
                out.push(Basis {
                    members: stack.clone(),
                    orthogonal: is_orthogonal_set(qm, stack),
                });
            } else {
                search_bases(qm, p, candidates, ci + 1, stack, max_size, budget, visited, out)?;
            }
        }
        stack.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;
    use std::sync::Arc;

    fn ex1() -> CanonicalQm {
        let l = Arc::new(builtin("n5").unwrap());
        let a = l.index_of("a").unwrap();
        CanonicalQm::principal(l.clone(), &[l.top(), a]).unwrap()
    }

    fn set(q: &CanonicalQm, items: &[&str]) -> VecSet {
        q.parse_set(items).unwrap()
    }

    #[test]
    fn generation_examples() {
        let q = ex1();
        let p12 = set(&q, &["(0,0)", "(0,a)", "(b,0)", "(b,a)"]);
        assert_eq!(generate(&q, &set(&q, &["(0,a)", "(b,0)"])).members(), &p12);
        assert_eq!(generate(&q, &q.empty()).members(), &q.zero_set());
        let p15 = set(&q, &["(0,0)", "(a,0)", "(b,0)", "(c,0)", "(1,0)"]);
        assert_eq!(generate(&q, &set(&q, &["(1,0)"])).members(), &p15);
    }

    #[test]
    fn membership_with_witness() {
        let q = ex1();
        assert!(is_subquasimodule(&q, &q.zero_set()));
        let p10 = set(&q, &["(0,0)", "(0,a)", "(a,0)", "(a,a)"]);
        assert!(is_subquasimodule(&q, &p10));
        assert_eq!(
            closure_violation(&q, &set(&q, &["(a,0)"])),
            Some(ClosureViolation::MissingZero)
        );
        let v = closure_violation(&q, &set(&q, &["(0,0)", "(a,0)", "(b,0)"])).unwrap();
        assert_eq!(v.describe(&q), "(a,0)+(b,0)=(1,0) is missing");
    }

    #[test]
    fn ex1_subquasimodule_count() {
        let q = ex1();
        let lat = all_subquasimodules(&q, 1000).unwrap();
        // includes {(0,0),(a,0),(a,a),(c,a)}, which is easy to overlook
        assert_eq!(lat.len(), 21);
        let extra = set(&q, &["(0,0)", "(a,0)", "(a,a)", "(c,a)"]);
        assert_eq!(lat.name_of(&extra).as_deref(), Some("P13"));
        assert_eq!(lat.node(0).members(), &q.zero_set());
        assert_eq!(lat.node(20).members(), &q.full());
        let p8 = set(&q, &["(0,0)", "(a,0)", "(c,0)"]);
        assert_eq!(lat.name_of(&p8).as_deref(), Some("P8"));
    }

    #[test]
    fn single_factor_n5_subquasimodules_are_ideals() {
        let l = Arc::new(builtin("n5").unwrap());
        let q = CanonicalQm::principal(l.clone(), &[l.top()]).unwrap();
        let lat = all_subquasimodules(&q, 100).unwrap();
        assert_eq!(lat.len(), 5);
        for node in lat.nodes() {
            let mask = crate::bitset::ElemSet::from_iter(node.members().iter());
            assert!(l.is_ideal(mask));
        }
    }

    #[test]
    fn trivial_quasimodule() {
        let l = Arc::new(builtin("m3").unwrap());
        let q = CanonicalQm::principal(l.clone(), &[l.bottom()]).unwrap();
        let lat = all_subquasimodules(&q, 10).unwrap();
        assert_eq!(lat.len(), 1);
        let bases = find_bases(&q, lat.node(0), 3, 100).unwrap();
        assert_eq!(bases, vec![Basis { members: vec![], orthogonal: true }]);
    }

    #[test]
    fn budget_is_enforced() {
        let q = ex1();
        assert_eq!(
            all_subquasimodules(&q, 5).unwrap_err(),
            Error::EnumerationBudgetExceeded(5)
        );
    }

    #[test]
    fn bases_of_ex1() {
        let q = ex1();
        let whole = generate(&q, &q.full());
        let b1: Vec<usize> = ["(0,a)", "(1,0)"].iter().map(|s| q.parse_vector(s).unwrap()).collect();
        let b2: Vec<usize> = ["(0,a)", "(b,0)", "(c,0)"]
            .iter()
            .map(|s| q.parse_vector(s).unwrap())
            .collect();
        assert!(is_basis(&q, &whole, &b1));
        assert!(is_basis(&q, &whole, &b2));
        assert!(!is_generating(&q, &whole, &b2[..2]));
        assert!(is_generating(&q, &whole, &whole.members().to_vec()));

        let found = find_bases(&q, &whole, 3, 100_000).unwrap();
        let mut sorted_b1 = b1.clone();
        sorted_b1.sort();
        let mut sorted_b2 = b2.clone();
        sorted_b2.sort();
        assert!(found.contains(&Basis { members: sorted_b1, orthogonal: true }));
        assert!(found.contains(&Basis { members: sorted_b2, orthogonal: true }));
        for b in &found {
            assert!(is_basis(&q, &whole, &b.members));
        }
        for w in found.windows(2) {
            assert!(
                (w[0].members.len(), &w[0].members) < (w[1].members.len(), &w[1].members)
            );
        }
    }

    #[test]
    fn top_of_n5_is_a_basis() {
        let l = Arc::new(builtin("n5").unwrap());
        let q = CanonicalQm::principal(l.clone(), &[l.top()]).unwrap();
        let whole = generate(&q, &q.full());
        let found = find_bases(&q, &whole, 2, 1000).unwrap();
        assert!(found.iter().any(|b| b.members == vec![l.top()]));
    }

    #[test]
    fn order_join_matches_generated_join() {
        let q = ex1();
        let lat = all_subquasimodules(&q, 1000).unwrap();
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let g = generated_join(&q, lat.node(i), lat.node(j));
                assert_eq!(lat.join(i, j).map(|k| lat.node(k)), Some(&g));
                let m = lat.meet(i, j).unwrap();
                assert_eq!(
                    lat.node(m).members(),
                    &lat.node(i).members().intersection(lat.node(j).members())
                );
            }
        }
    }
}
