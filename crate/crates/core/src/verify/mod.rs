//! Theorem verification harness.
//!
//! Every clause is a predicate over a small tuple of carrier subsets (and,
//! for the product clauses, per-factor element sets). A clause is checked by
//! running the predicate over a candidate family and reporting the first
//! tuple that breaks it. The same predicate replays a stored witness.

mod golden;
mod search;

pub use golden::{reproduce_paper, EX1_PRINTED_TO_CANONICAL, INSTANCES};
pub use search::{counterexample_search, enumerate_lattices, random_lattice, SearchConfig, SearchTarget};

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::{ElemSet, VecSet};
use crate::error::{Error, Result};
use crate::formats::{format_factors, format_lattice, qm_from_text};
use crate::galois::{
    closed_lattice_iso, closed_subquasimodules, factor_perp, factorize_closed, is_closed,
    is_splitting, perp, sum_set,
};
use crate::quasimodule::{verify_axioms, CanonicalQm, Vector};
use crate::subquasi::{
    all_subquasimodules, closure_violation, generate, is_basis, is_orthogonal_set,
    is_subquasimodule, SubQm, SubQmLattice, DEFAULT_ENUMERATION_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A hypothesis of the clause is false on the instance. A witness, when
    /// present, shows the conclusion failing as well.
    HypothesisNotMet,
    /// A statement not claimed in general was shown false by a witness.
    Refuted,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HypothesisNotMet => "hypothesis-not-met",
            Status::Refuted => "refuted",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Hypothesis {
    #[serde(rename = "0-distributive")]
    ZeroDistributive,
    #[serde(rename = "principal-factors")]
    PrincipalFactors,
}

impl Hypothesis {
    pub fn id(self) -> &'static str {
        match self {
            Hypothesis::ZeroDistributive => "0-distributive",
            Hypothesis::PrincipalFactors => "principal-factors",
        }
    }

    pub fn parse(s: &str) -> Result<Hypothesis> {
        match s {
            "0-distributive" | "zero-distributive" => Ok(Hypothesis::ZeroDistributive),
            "principal-factors" | "principal" => Ok(Hypothesis::PrincipalFactors),
            _ => Err(Error::UnknownHypothesis(s.to_string())),
        }
    }
}

/// A subset named in a witness. `factor: Some(i)` marks a set of lattice
/// elements standing for a subset of factor `i`; otherwise the members are
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedSet {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    pub members: Vec<String>,
}

/// Everything needed to rebuild the instance and re-evaluate the broken
/// predicate `check` on `sets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub lattice: String,
    pub factors: Vec<String>,
    pub sets: Vec<NamedSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<usize>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub status: Status,
    pub instance: String,
    pub scope: String,
    pub detail: String,
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub(crate) fn new(id: &str, status: Status, instance: &str) -> TheoremReport {
        TheoremReport {
            id: id.to_string(),
            status,
            instance: instance.to_string(),
            scope: String::new(),
            detail: String::new(),
            witness: None,
            elapsed: Duration::ZERO,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub seed: u64,
    /// Cap on `|L(Q)|` and other enumerations.
    pub budget: usize,
    /// Random subsets added when a family is not exhaustive.
    pub random_subsets: usize,
    /// Carriers up to this size get every subset tested.
    pub exhaustive_carrier: usize,
    /// Instance label used in reports; defaults to the factor description.
    pub label: Option<String>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            budget: DEFAULT_ENUMERATION_BUDGET,
            random_subsets: 1000,
            exhaustive_carrier: 16,
            label: None,
        }
    }
}

pub struct Clause {
    pub id: &'static str,
    pub hypothesis: Option<Hypothesis>,
    pub statement: &'static str,
}

const fn clause(id: &'static str, hypothesis: Option<Hypothesis>, statement: &'static str) -> Clause {
    Clause {
        id,
        hypothesis,
        statement,
    }
}

const ZD: Option<Hypothesis> = Some(Hypothesis::ZeroDistributive);
const PRINCIPAL: Option<Hypothesis> = Some(Hypothesis::PrincipalFactors);

pub const CLAUSES: &[Clause] = &[
    clause("qm.axioms", None, "the quasimodule axioms hold"),
    clause("separation", PRINCIPAL, "x⃗z⃗ = y⃗z⃗ for all z⃗ implies x⃗ = y⃗"),
    clause("inner-product", None, "x⃗ ⊥ y⃗ iff x⃗y⃗ = 0, and x⃗y⃗ = y⃗x⃗"),
    clause("th1", PRINCIPAL, "the vectors b_i form a basis and dropping b_k generates {x⃗ : x_k = 0}"),
    clause("rem1.i", None, "A ⊆ A^⊥⊥"),
    clause("rem1.ii", None, "A ⊆ B implies B^⊥ ⊆ A^⊥"),
    clause("rem1.iii", None, "A^⊥⊥⊥ = A^⊥"),
    clause("rem1.iv", None, "A ⊆ B^⊥ iff B ⊆ A^⊥"),
    clause("lem4.i", None, "⋂ A_j^⊥ = (⋃ A_j)^⊥"),
    clause("lem4.ii", None, "(⋂ A_j)^⊥⊥ ⊆ ⋂ A_j^⊥⊥"),
    clause("lem4.iii", None, "Q^⊥ = {0⃗}"),
    clause("lem4.iv", None, "A ∩ A^⊥ ⊆ {0⃗} for A ≠ ∅, with equality when 0⃗ ∈ A"),
    clause("lem4.v", None, "{0⃗}^⊥ = Q"),
    clause("prop2", ZD, "A^⊥ is a subquasimodule"),
    clause("th2.i", ZD, "L_C(Q) = {D^⊥ : D ⊆ Q}"),
    clause("th2.ii", ZD, "A^⊥⊥ is the least closed subquasimodule containing A"),
    clause("th2.iii", ZD, "the join of closed P_j in L_C(Q) is (⋃ P_j)^⊥⊥"),
    clause("th2.iv", ZD, "⊥ is an antitone involution on L_C(Q)"),
    clause("th2.v", ZD, "L_C(Q) is a complete lattice"),
    clause("th2.vi", ZD, "A^⊥ = ⟨A⟩^⊥"),
    clause("th2.vii", ZD, "⟨C ∖ B⟩ ⊆ ⟨B⟩^⊥ for B ⊆ C with C orthogonal"),
    clause("lem6.i", None, "every projection of a subquasimodule is a subquasimodule of its factor"),
    clause("lem6.ii", None, "∏ M_i is a subquasimodule iff every M_i is"),
    clause("lem1", None, "A^⊥ = ∏ p_i(A)^⊥"),
    clause("th3", ZD, "P is a closed subquasimodule iff P = ∏ P_i with every P_i closed in its factor"),
    clause("cor1", ZD, "(P_i) ↦ ∏ P_i is an isomorphism ∏ L_C(L_i) → L_C(Q)"),
    clause("splitting-closed", None, "L_S(Q) ⊆ L_C(Q)"),
    clause("prop-splitting-perp.i", ZD, "P splitting implies P^⊥ splitting"),
    clause("prop-splitting-perp.ii", ZD, "⊥ is an antitone map from L_S(Q) to L_C(Q)"),
    clause("prop-product-splitting", None, "∏ M_i is splitting iff every M_i is splitting in its factor"),
];

pub const HOMOMORPHISM_IDS: [&str; 2] = ["hom.i", "hom.ii"];

pub fn clause_by_id(id: &str) -> Option<&'static Clause> {
    CLAUSES.iter().find(|c| c.id == id)
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Args {
    pub sets: Vec<VecSet>,
    pub parts: Vec<ElemSet>,
    pub param: Option<usize>,
}

impl Args {
    pub fn sets(sets: Vec<VecSet>) -> Args {
        Args {
            sets,
            ..Args::default()
        }
    }
}

struct Cands<'a> {
    iter: Box<dyn Iterator<Item = Args> + 'a>,
    scope: String,
}

fn fnv(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Lazily computed data shared by the clauses of one instance.
pub(crate) struct Env<'a> {
    pub qm: &'a CanonicalQm,
    pub opts: &'a CheckOptions,
    pub zd: bool,
    principal: bool,
    factor_qms: Vec<CanonicalQm>,
    subs: OnceLock<Result<SubQmLattice>>,
    closed: OnceLock<Result<SubQmLattice>>,
    splitting: OnceLock<Result<Vec<VecSet>>>,
}

impl<'a> Env<'a> {
    pub fn new(qm: &'a CanonicalQm, opts: &'a CheckOptions) -> Env<'a> {
        let l = qm.lattice();
        Env {
            qm,
            opts,
            zd: qm.factors_zero_distributive(),
            principal: qm.factors().iter().all(|f| f.generator(l).is_some()),
            factor_qms: (0..qm.factor_count()).map(|i| qm.factor_qm(i)).collect(),
            subs: OnceLock::new(),
            closed: OnceLock::new(),
            splitting: OnceLock::new(),
        }
    }

    pub fn label(&self) -> String {
        self.opts.label.clone().unwrap_or_else(|| self.qm.describe())
    }

    fn satisfies(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::ZeroDistributive => self.zd,
            Hypothesis::PrincipalFactors => self.principal,
        }
    }

    pub fn subs(&self) -> Result<&SubQmLattice> {
        self.subs
            .get_or_init(|| all_subquasimodules(self.qm, self.opts.budget))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `L_C(Q)`: the intersection closure of complements when the factors
    /// are 0-distributive, otherwise the closed members of `L(Q)`.
    pub fn closed(&self) -> Result<&SubQmLattice> {
        self.closed
            .get_or_init(|| {
                if self.zd {
                    return closed_subquasimodules(self.qm).map(|c| c.base);
                }
                let subs = self.subs()?;
                Ok(SubQmLattice::from_nodes(
                    subs.nodes()
                        .iter()
                        .filter(|p| is_closed(self.qm, p.members()))
                        .cloned()
                        .collect(),
                ))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn splitting(&self) -> Result<&[VecSet]> {
        self.splitting
            .get_or_init(|| {
                let subs = self.subs()?;
                Ok(subs
                    .nodes()
                    .iter()
                    .filter(|p| is_splitting(self.qm, p))
                    .map(|p| p.members().clone())
                    .collect())
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn perp(&self, a: &VecSet) -> VecSet {
        perp(self.qm, a)
    }

    pub fn pp(&self, a: &VecSet) -> VecSet {
        perp(self.qm, &perp(self.qm, a))
    }

    fn splitting_set(&self, s: &VecSet) -> bool {
        is_subquasimodule(self.qm, s) && sum_set(self.qm, s, &self.perp(s)).is_full()
    }

    /// `E ⊆ L_i` as a subset of the one-factor quasimodule on factor `i`.
    fn factor_set(&self, i: usize, e: ElemSet) -> Option<VecSet> {
        let fq = &self.factor_qms[i];
        let mut out = fq.empty();
        for x in e {
            out.insert(fq.index_of(&Vector(vec![x])).ok()?);
        }
        Some(out)
    }

    fn factor_sub(&self, i: usize, e: ElemSet) -> bool {
        self.factor_set(i, e)
            .is_some_and(|s| is_subquasimodule(&self.factor_qms[i], &s))
    }

    fn factor_closed(&self, i: usize, e: ElemSet) -> bool {
        factor_perp(self.qm, i, factor_perp(self.qm, i, e)) == e
    }

    fn factor_splitting(&self, i: usize, e: ElemSet) -> bool {
        let fq = &self.factor_qms[i];
        match self.factor_set(i, e).map(|s| SubQm::new(fq, s)) {
            Some(Ok(sub)) => is_splitting(fq, &sub),
            _ => false,
        }
    }

    fn rng(&self, salt: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ fnv(salt))
    }

    fn random_subset(&self, rng: &mut ChaCha8Rng) -> VecSet {
        let n = self.qm.len();
        let k = rng.gen_range(0..=n);
        VecSet::from_indices(n, sample(rng, n, k))
    }

    fn random_subsets(&self, salt: &str, count: usize) -> Vec<VecSet> {
        let mut rng = self.rng(salt);
        (0..count).map(|_| self.random_subset(&mut rng)).collect()
    }

    fn exhaustive(&self) -> bool {
        self.qm.len() <= self.opts.exhaustive_carrier.min(24)
    }

    /// Subquasimodule members, or an empty list when `L(Q)` is over budget.
    fn sub_sets(&self) -> (Vec<VecSet>, String) {
        match self.subs() {
            Ok(s) => (
                s.nodes().iter().map(|p| p.members().clone()).collect(),
                format!("all {} subquasimodules", s.len()),
            ),
            Err(e) => (Vec::new(), format!("no subquasimodules ({e})")),
        }
    }

    fn singles(&self) -> Cands<'a> {
        let n = self.qm.len();
        if self.exhaustive() {
            return Cands {
                iter: Box::new((0..1u64 << n).map(move |m| Args::sets(vec![VecSet::from_mask(n, m)]))),
                scope: format!("exhaustive: all {} subsets", 1u64 << n),
            };
        }
        let (mut sets, what) = self.sub_sets();
        let r = self.opts.random_subsets;
        sets.extend(self.random_subsets("singles", r));
        Cands {
            iter: Box::new(sets.into_iter().map(|s| Args::sets(vec![s]))),
            scope: format!("{what} + {r} random subsets (seed {})", self.opts.seed),
        }
    }

    fn pairs(&self) -> Cands<'a> {
        let n = self.qm.len();
        if 2 * n <= 16 {
            let mask = (1u64 << n) - 1;
            return Cands {
                iter: Box::new((0..1u64 << (2 * n)).map(move |m| {
                    Args::sets(vec![VecSet::from_mask(n, m & mask), VecSet::from_mask(n, m >> n)])
                })),
                scope: format!("exhaustive: all {} pairs of subsets", 1u64 << (2 * n)),
            };
        }
        let (subs, what) = self.sub_sets();
        let mut out = Vec::new();
        let node_pairs = subs.len() * subs.len() <= 250_000;
        if node_pairs {
            for a in &subs {
                for b in &subs {
                    out.push(Args::sets(vec![a.clone(), b.clone()]));
                }
            }
        }
        let r = self.opts.random_subsets;
        let mut rng = self.rng("pairs");
        for _ in 0..r {
            let a = self.random_subset(&mut rng);
            let b = self.random_subset(&mut rng);
            out.push(Args::sets(vec![a, b]));
        }
        let what = if node_pairs {
            format!("pairs from {what}")
        } else {
            "no subquasimodule pairs (too many)".to_string()
        };
        Cands {
            iter: Box::new(out.into_iter()),
            scope: format!("{what} + {r} random pairs (seed {})", self.opts.seed),
        }
    }

    /// Pairs `(A, B)` with `A ⊆ B`.
    fn nested_pairs(&self) -> Cands<'a> {
        let n = self.qm.len();
        if n <= 10 {
            return Cands {
                iter: Box::new((0..1u64 << n).flat_map(move |b| {
                    Submasks::new(b).map(move |a| {
                        Args::sets(vec![VecSet::from_mask(n, a), VecSet::from_mask(n, b)])
                    })
                })),
                scope: format!("exhaustive: all {} nested pairs", 3u64.pow(n as u32)),
            };
        }
        let (subs, what) = self.sub_sets();
        let mut out = Vec::new();
        if subs.len() * subs.len() <= 250_000 {
            for a in &subs {
                for b in &subs {
                    if a.is_subset(b) {
                        out.push(Args::sets(vec![a.clone(), b.clone()]));
                    }
                }
            }
        }
        let r = self.opts.random_subsets;
        let mut rng = self.rng("nested");
        for _ in 0..r {
            let b = self.random_subset(&mut rng);
            let a = VecSet::from_indices(n, b.iter().filter(|_| rng.gen_bool(0.5)));
            out.push(Args::sets(vec![a, b]));
        }
        Cands {
            iter: Box::new(out.into_iter()),
            scope: format!("nested pairs from {what} + {r} random nested pairs (seed {})", self.opts.seed),
        }
    }

    /// Pairs, plus random triples.
    fn families(&self) -> Cands<'a> {
        let pairs = self.pairs();
        let r = self.opts.random_subsets;
        let mut rng = self.rng("triples");
        let triples: Vec<Args> = (0..r)
            .map(|_| {
                Args::sets(vec![
                    self.random_subset(&mut rng),
                    self.random_subset(&mut rng),
                    self.random_subset(&mut rng),
                ])
            })
            .collect();
        Cands {
            iter: Box::new(pairs.iter.chain(triples)),
            scope: format!("{}; {r} random triples", pairs.scope),
        }
    }

    fn closed_sets(&self) -> Result<Vec<VecSet>> {
        Ok(self.closed()?.nodes().iter().map(|p| p.members().clone()).collect())
    }

    fn closed_pairs(&self) -> Result<Cands<'a>> {
        let c = self.closed_sets()?;
        let k = c.len();
        let mut out = Vec::with_capacity(k * k);
        for a in &c {
            for b in &c {
                out.push(Args::sets(vec![a.clone(), b.clone()]));
            }
        }
        Ok(Cands {
            iter: Box::new(out.into_iter()),
            scope: format!("all {} pairs of closed subquasimodules", k * k),
        })
    }

    /// The empty family, all pairs and random triples of closed members.
    fn closed_families(&self) -> Result<Cands<'a>> {
        let c = self.closed_sets()?;
        let mut out = vec![Args::default()];
        for a in &c {
            for b in &c {
                out.push(Args::sets(vec![a.clone(), b.clone()]));
            }
        }
        let r = self.opts.random_subsets.min(300);
        let mut rng = self.rng("closed-triples");
        for _ in 0..r {
            let pick: Vec<VecSet> = (0..3).map(|_| c[rng.gen_range(0..c.len())].clone()).collect();
            out.push(Args::sets(pick));
        }
        Ok(Cands {
            iter: Box::new(out.into_iter()),
            scope: format!(
                "empty family, all {} pairs of closed subquasimodules, {r} random triples (seed {})",
                c.len() * c.len(),
                self.opts.seed
            ),
        })
    }

    fn sub_nodes(&self) -> Result<Cands<'a>> {
        let subs = self.subs()?;
        let sets: Vec<Args> = subs
            .nodes()
            .iter()
            .map(|p| Args::sets(vec![p.members().clone()]))
            .collect();
        Ok(Cands {
            scope: format!("all {} subquasimodules", sets.len()),
            iter: Box::new(sets.into_iter()),
        })
    }

    fn splitting_nodes(&self, pairs: bool) -> Result<Cands<'a>> {
        let s = self.splitting()?.to_vec();
        let k = s.len();
        if !pairs {
            return Ok(Cands {
                iter: Box::new(s.into_iter().map(|p| Args::sets(vec![p]))),
                scope: format!("all {k} splitting subquasimodules"),
            });
        }
        let mut out = Vec::with_capacity(k * k);
        for a in &s {
            for b in &s {
                out.push(Args::sets(vec![a.clone(), b.clone()]));
            }
        }
        Ok(Cands {
            iter: Box::new(out.into_iter()),
            scope: format!("all {} pairs of splitting subquasimodules", k * k),
        })
    }

    fn vector_pairs(&self) -> Cands<'a> {
        let n = self.qm.len();
        if n * n <= 4_000_000 {
            return Cands {
                iter: Box::new((0..n).flat_map(move |x| {
                    (0..n).map(move |y| {
                        Args::sets(vec![VecSet::from_indices(n, [x]), VecSet::from_indices(n, [y])])
                    })
                })),
                scope: format!("exhaustive: all {} pairs of vectors", n * n),
            };
        }
        let mut rng = self.rng("vector-pairs");
        let out: Vec<Args> = (0..200_000)
            .map(|_| {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                Args::sets(vec![VecSet::from_indices(n, [x]), VecSet::from_indices(n, [y])])
            })
            .collect();
        Cands {
            iter: Box::new(out.into_iter()),
            scope: format!("200000 random pairs of vectors (seed {})", self.opts.seed),
        }
    }

    /// Orthogonal sets `C` (up to a cap) with every `B ⊆ C`.
    fn orthogonal_pairs(&self) -> Cands<'a> {
        const MAX_SETS: usize = 500;
        const MAX_LEN: usize = 8;
        let qm = self.qm;
        let n = qm.len();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        let mut complete = true;
        orthogonal_sets(qm, 0, &mut stack, MAX_LEN, MAX_SETS, &mut found, &mut complete);
        let count = found.len();
        let iter = found.into_iter().flat_map(move |c| {
            let len = c.len();
            (0..1u64 << len).map(move |mask| {
                let b = (0..len).filter(|&k| mask >> k & 1 == 1).map(|k| c[k]);
                Args::sets(vec![
                    VecSet::from_indices(n, c.iter().copied()),
                    VecSet::from_indices(n, b),
                ])
            })
        });
        Cands {
            iter: Box::new(iter),
            scope: if complete {
                format!("exhaustive: all {count} orthogonal sets with all their subsets")
            } else {
                format!("first {count} orthogonal sets of size ≤ {MAX_LEN} with all their subsets")
            },
        }
    }

    /// Tuples `(M_i)` of subsets of the factors.
    fn factor_tuples(&self) -> Cands<'a> {
        let qm = self.qm;
        let k = qm.factor_count();
        let members: Vec<Vec<usize>> = (0..k).map(|i| qm.factor_members(i).to_vec()).collect();
        let total: usize = members.iter().map(Vec::len).sum();
        if total <= 16 {
            let iter = (0..1u64 << total).map(move |mask| {
                let mut bit = 0;
                let parts = members
                    .iter()
                    .map(|m| {
                        let mut e = ElemSet::EMPTY;
                        for &x in m {
                            if mask >> bit & 1 == 1 {
                                e.insert(x);
                            }
                            bit += 1;
                        }
                        e
                    })
                    .collect();
                Args {
                    parts,
                    ..Args::default()
                }
            });
            return Cands {
                iter: Box::new(iter),
                scope: format!("exhaustive: all {} tuples of factor subsets", 1u64 << total),
            };
        }
        let mut out = Vec::new();
        let factor_subs: Vec<Vec<ElemSet>> = (0..k)
            .map(|i| {
                let fq = &self.factor_qms[i];
                all_subquasimodules(fq, self.opts.budget)
                    .map(|s| {
                        s.nodes()
                            .iter()
                            .map(|p| fq.project(p.members(), 0).expect("one factor"))
                            .collect()
                    })
                    .unwrap_or_default()
            })
            .collect();
        let combos: usize = factor_subs.iter().map(Vec::len).product();
        if combos <= 65_536 {
            for t in 0..combos {
                let mut rest = t;
                let parts = factor_subs
                    .iter()
                    .map(|fs| {
                        let p = fs[rest % fs.len()];
                        rest /= fs.len();
                        p
                    })
                    .collect();
                out.push(Args {
                    parts,
                    ..Args::default()
                });
            }
        }
        let r = self.opts.random_subsets;
        let mut rng = self.rng("tuples");
        for _ in 0..r {
            let parts = members
                .iter()
                .map(|m| ElemSet::from_iter(m.iter().copied().filter(|_| rng.gen_bool(0.5))))
                .collect();
            out.push(Args {
                parts,
                ..Args::default()
            });
        }
        Cands {
            iter: Box::new(out.into_iter()),
            scope: format!(
                "{} products of factor subquasimodules + {r} random tuples (seed {})",
                if combos <= 65_536 { combos } else { 0 },
                self.opts.seed
            ),
        }
    }

    fn whole() -> Cands<'a> {
        Cands {
            iter: Box::new(std::iter::once(Args::default())),
            scope: "whole instance".to_string(),
        }
    }

    fn candidates(&self, id: &str) -> Result<Cands<'a>> {
        Ok(match id {
            "qm.axioms" | "th1" | "lem4.iii" | "lem4.v" | "cor1" => Env::whole(),
            "separation" | "inner-product" => self.vector_pairs(),
            "rem1.i" | "rem1.iii" | "lem4.iv" | "prop2" | "th2.ii" | "th2.vi" | "lem1" => {
                self.singles()
            }
            "th2.i" | "th3" => {
                let c = self.closed_sets()?;
                let singles = self.singles();
                let k = c.len();
                Cands {
                    iter: Box::new(singles.iter.chain(c.into_iter().map(|s| Args::sets(vec![s])))),
                    scope: format!("{}; all {k} closed subquasimodules", singles.scope),
                }
            }
            "rem1.ii" => self.nested_pairs(),
            "rem1.iv" => self.pairs(),
            "lem4.i" | "lem4.ii" => self.families(),
            "th2.iii" => self.closed_families()?,
            "th2.iv" | "th2.v" => self.closed_pairs()?,
            "th2.vii" => self.orthogonal_pairs(),
            "lem6.i" | "splitting-closed" | "closed-is-splitting" => self.sub_nodes()?,
            "lem6.ii" | "prop-product-splitting" => self.factor_tuples(),
            "prop-splitting-perp.i" => self.splitting_nodes(false)?,
            "prop-splitting-perp.ii" => self.splitting_nodes(true)?,
            other => return Err(Error::UnknownCheck(other.to_string())),
        })
    }

    /// Whether the predicate named `check` holds on `a`.
    pub fn holds(&self, check: &str, a: &Args) -> Result<bool> {
        let qm = self.qm;
        let s = &a.sets;
        let one = |i: usize| s[i].iter().next().expect("singleton");
        Ok(match check {
            "qm.axioms" => verify_axioms(qm).all_passed() && verify_axioms(&qm.to_raw()).all_passed(),
            "separation" => {
                let (x, y) = (one(0), one(1));
                if x == y {
                    true
                } else {
                    let basis = qm.standard_basis()?;
                    let by_basis = basis
                        .iter()
                        .any(|&b| qm.inner_product(x, b) != qm.inner_product(y, b));
                    let by_all = (0..qm.len()).any(|z| qm.inner_product(x, z) != qm.inner_product(y, z));
                    by_basis && by_all
                }
            }
            "inner-product" => {
                let (x, y) = (one(0), one(1));
                let ip = qm.inner_product(x, y);
                qm.orthogonal(x, y) == (ip == qm.lattice().bottom()) && ip == qm.inner_product(y, x)
            }
            "th1" => {
                let mut basis: Vec<usize> = qm
                    .standard_basis()?
                    .into_iter()
                    .filter(|&b| b != qm.zero())
                    .collect();
                basis.dedup();
                let full = SubQm::new(qm, qm.full())?;
                let minimal_by_coordinate = (0..qm.factor_count()).all(|k| {
                    let b_k = qm.standard_basis().expect("principal")[k];
                    if b_k == qm.zero() {
                        return true;
                    }
                    let rest: Vec<usize> = basis.iter().copied().filter(|&b| b != b_k).collect();
                    let expected = VecSet::from_indices(
                        qm.len(),
                        (0..qm.len()).filter(|&v| qm.coord(v, k) == qm.lattice().bottom()),
                    );
                    *generate(qm, &VecSet::from_indices(qm.len(), rest)).members() == expected
                });
                is_basis(qm, &full, &basis) && minimal_by_coordinate
            }
            "rem1.i" => s[0].is_subset(&self.pp(&s[0])),
            "rem1.ii" => !s[0].is_subset(&s[1]) || self.perp(&s[1]).is_subset(&self.perp(&s[0])),
            "rem1.iii" => self.perp(&self.pp(&s[0])) == self.perp(&s[0]),
            "rem1.iv" => s[0].is_subset(&self.perp(&s[1])) == s[1].is_subset(&self.perp(&s[0])),
            "lem4.i" => {
                let mut meet = qm.full();
                let mut union = qm.empty();
                for x in s {
                    meet.intersect_with(&self.perp(x));
                    union.union_with(x);
                }
                meet == self.perp(&union)
            }
            "lem4.ii" => {
                let mut inter = qm.full();
                let mut pps = qm.full();
                for x in s {
                    inter.intersect_with(x);
                    pps.intersect_with(&self.pp(x));
                }
                self.pp(&inter).is_subset(&pps)
            }
            "lem4.iii" => self.perp(&qm.full()) == qm.zero_set(),
            "lem4.iv" => {
                if s[0].is_empty() {
                    true
                } else {
                    let m = s[0].intersection(&self.perp(&s[0]));
                    m.is_subset(&qm.zero_set()) && (!s[0].contains(qm.zero()) || m == qm.zero_set())
                }
            }
            "lem4.v" => self.perp(&qm.zero_set()) == qm.full(),
            "prop2" => is_subquasimodule(qm, &self.perp(&s[0])),
            "th2.i" => {
                let lc = self.closed()?;
                lc.contains(&self.perp(&s[0])) && (!lc.contains(&s[0]) || self.pp(&s[0]) == s[0])
            }
            "th2.ii" => {
                let lc = self.closed()?;
                let c = self.pp(&s[0]);
                lc.contains(&c)
                    && s[0].is_subset(&c)
                    && lc
                        .nodes()
                        .iter()
                        .all(|p| !s[0].is_subset(p.members()) || c.is_subset(p.members()))
            }
            "th2.iii" => {
                let lc = self.closed()?;
                let mut union = qm.empty();
                for x in s {
                    union.union_with(x);
                }
                let upper: Vec<&VecSet> = lc
                    .nodes()
                    .iter()
                    .map(|p| p.members())
                    .filter(|u| s.iter().all(|x| x.is_subset(u)))
                    .collect();
                let lub = upper.iter().find(|u| upper.iter().all(|v| u.is_subset(v)));
                lub.is_some_and(|u| **u == self.pp(&union))
            }
            "th2.iv" => {
                let lc = self.closed()?;
                let (p, r) = (&s[0], &s[1]);
                lc.contains(&self.perp(p))
                    && self.pp(p) == *p
                    && (!p.is_subset(r) || self.perp(r).is_subset(&self.perp(p)))
            }
            "th2.v" => {
                let lc = self.closed()?;
                match (lc.position(&s[0]), lc.position(&s[1])) {
                    (Some(i), Some(j)) => {
                        lc.join(i, j).is_some()
                            && lc.meet(i, j).is_some_and(|m| *lc.node(m).members() == s[0].intersection(&s[1]))
                    }
                    _ => false,
                }
            }
            "th2.vi" => self.perp(&s[0]) == self.perp(generate(qm, &s[0]).members()),
            "th2.vii" => {
                let (c, b) = (&s[0], &s[1]);
                if !b.is_subset(c) || !is_orthogonal_set(qm, &c.to_vec()) {
                    true
                } else {
                    generate(qm, &c.difference(b))
                        .members()
                        .is_subset(&self.perp(generate(qm, b).members()))
                }
            }
            "lem6.i" => (0..qm.factor_count()).all(|i| {
                qm.project(&s[0], i)
                    .is_ok_and(|e| self.factor_sub(i, e))
            }),
            "lem6.ii" => {
                let prod = qm.product(&a.parts);
                is_subquasimodule(qm, &prod)
                    == a.parts.iter().enumerate().all(|(i, &m)| self.factor_sub(i, m))
            }
            "lem1" => {
                let parts = (0..qm.factor_count())
                    .map(|i| qm.project(&s[0], i).map(|e| factor_perp(qm, i, e)))
                    .collect::<Result<Vec<_>>>()?;
                self.perp(&s[0]) == qm.product(&parts)
            }
            "th3" => {
                let p = &s[0];
                let left = is_subquasimodule(qm, p) && is_closed(qm, p);
                let parts = (0..qm.factor_count())
                    .map(|i| qm.project(p, i))
                    .collect::<Result<Vec<_>>>()?;
                let right = parts
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| self.factor_sub(i, e) && self.factor_closed(i, e))
                    && qm.product(&parts) == *p;
                let witness_ok = !left
                    || !self.zd
                    || factorize_closed(qm, &SubQm::new(qm, p.clone())?)
                        .is_ok_and(|w| w.parts == parts);
                left == right && witness_ok
            }
            "cor1" => {
                if self.zd {
                    closed_lattice_iso(qm)?.is_isomorphism()
                } else {
                    self.product_iso_by_filter()?
                }
            }
            "splitting-closed" => !self.splitting_set(&s[0]) || is_closed(qm, &s[0]),
            "closed-is-splitting" => {
                !is_subquasimodule(qm, &s[0]) || !is_closed(qm, &s[0]) || self.splitting_set(&s[0])
            }
            "prop-splitting-perp.i" => !self.splitting_set(&s[0]) || self.splitting_set(&self.perp(&s[0])),
            "prop-splitting-perp.ii" => {
                let (p, r) = (&s[0], &s[1]);
                let pp = self.perp(p);
                (!self.splitting_set(p) || (is_subquasimodule(qm, &pp) && is_closed(qm, &pp)))
                    && (!p.is_subset(r) || self.perp(r).is_subset(&pp))
            }
            "prop-product-splitting" => {
                let prod = qm.product(&a.parts);
                self.splitting_set(&prod)
                    == a.parts.iter().enumerate().all(|(i, &m)| self.factor_splitting(i, m))
            }
            "hom.hypothesis" => {
                let mut inter = qm.full();
                let mut pps = qm.full();
                for x in s {
                    inter.intersect_with(x);
                    pps.intersect_with(&self.pp(x));
                }
                self.pp(&inter) == pps
            }
            "hom.conclusion" => {
                let mut union = qm.empty();
                let mut closed_union = qm.empty();
                let mut inter = qm.full();
                let mut pps = qm.full();
                for x in s {
                    union.union_with(x);
                    let c = self.pp(x);
                    closed_union.union_with(&c);
                    inter.intersect_with(x);
                    pps.intersect_with(&c);
                }
                let joins = self.pp(generate(qm, &union).members()) == self.pp(&closed_union);
                let meets = self.pp(&inter) == pps;
                let perps = s.iter().all(|x| self.pp(&self.perp(x)) == self.perp(&self.pp(x)));
                let bounds = self.pp(&qm.zero_set()) == qm.zero_set() && self.pp(&qm.full()) == qm.full();
                joins && meets && perps && bounds
            }
            other => {
                return golden::holds(self, other, a)
                    .unwrap_or_else(|| Err(Error::UnknownCheck(other.to_string())))
            }
        })
    }

    /// `∏ L_C(L_i) → L_C(Q)` checked directly from the closed filters, for
    /// factors where the intersection-closure route does not apply.
    fn product_iso_by_filter(&self) -> Result<bool> {
        let qm = self.qm;
        let lc = self.closed()?;
        let mut factor_closed: Vec<Vec<ElemSet>> = Vec::new();
        for i in 0..qm.factor_count() {
            let fq = &self.factor_qms[i];
            let subs = all_subquasimodules(fq, self.opts.budget)?;
            factor_closed.push(
                subs.nodes()
                    .iter()
                    .filter(|p| is_closed(fq, p.members()))
                    .map(|p| fq.project(p.members(), 0).expect("one factor"))
                    .collect(),
            );
        }
        let count: usize = factor_closed.iter().map(Vec::len).product();
        if count != lc.len() {
            return Ok(false);
        }
        let tuples: Vec<Vec<ElemSet>> = (0..count)
            .map(|t| {
                let mut rest = t;
                factor_closed
                    .iter()
                    .map(|fs| {
                        let p = fs[rest % fs.len()];
                        rest /= fs.len();
                        p
                    })
                    .collect()
            })
            .collect();
        let images: Vec<VecSet> = tuples.iter().map(|t| qm.product(t)).collect();
        if images.iter().any(|im| !lc.contains(im)) {
            return Ok(false);
        }
        for (s, si) in tuples.iter().zip(&images) {
            for (t, ti) in tuples.iter().zip(&images) {
                let componentwise = s.iter().zip(t).all(|(a, b)| a.is_subset(*b));
                if componentwise != si.is_subset(ti) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn witness(&self, check: &str, a: &Args, note: String) -> Witness {
        let qm = self.qm;
        let l = qm.lattice();
        let node_name = |set: &VecSet| {
            self.subs
                .get()
                .and_then(|r| r.as_ref().ok())
                .and_then(|subs| subs.name_of(set))
        };
        let mut sets: Vec<NamedSet> = a
            .sets
            .iter()
            .enumerate()
            .map(|(k, set)| NamedSet {
                name: node_name(set).unwrap_or_else(|| set_letter(k)),
                factor: None,
                members: set.iter().map(|v| qm.format_vector(v)).collect(),
            })
            .collect();
        sets.extend(a.parts.iter().enumerate().map(|(i, e)| NamedSet {
            name: format!("M{}", i + 1),
            factor: Some(i),
            members: e.iter().map(|x| l.name(x).to_string()).collect(),
        }));
        Witness {
            check: check.to_string(),
            lattice: format_lattice(l),
            factors: format_factors(qm),
            sets,
            param: a.param,
            note,
        }
    }

    pub fn parse_args(&self, w: &Witness) -> Result<Args> {
        let qm = self.qm;
        let l = qm.lattice();
        let mut args = Args {
            param: w.param,
            ..Args::default()
        };
        for set in &w.sets {
            match set.factor {
                None => {
                    let items: Vec<&str> = set.members.iter().map(String::as_str).collect();
                    args.sets.push(qm.parse_set(&items)?);
                }
                Some(_) => {
                    let mut e = ElemSet::EMPTY;
                    for m in &set.members {
                        e.insert(l.index_of(m)?);
                    }
                    args.parts.push(e);
                }
            }
        }
        Ok(args)
    }

    /// Extra explanation for a failing tuple.
    fn note(&self, check: &str, a: &Args) -> String {
        let qm = self.qm;
        match check {
            "prop2" => {
                let p = self.perp(&a.sets[0]);
                match closure_violation(qm, &p) {
                    Some(v) => format!("A^⊥ = {}: {}", qm.format_set(&p), v.describe(qm)),
                    None => String::new(),
                }
            }
            "qm.axioms" => verify_axioms(qm)
                .failed()
                .map(|c| format!("{}: {}", c.axiom, c.witness.clone().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join("; "),
            "closed-is-splitting" | "splitting-closed" => {
                let p = &a.sets[0];
                let pp = self.perp(p);
                let missing = qm.full().difference(&sum_set(qm, p, &pp));
                format!(
                    "P^⊥ = {}; P + P^⊥ misses {}",
                    qm.format_set(&pp),
                    qm.format_set(&missing)
                )
            }
            _ => String::new(),
        }
    }
}

fn set_letter(k: usize) -> String {
    const LETTERS: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
    LETTERS.get(k).map_or_else(|| format!("A{k}"), |s| s.to_string())
}

fn orthogonal_sets(
    qm: &CanonicalQm,
    start: usize,
    stack: &mut Vec<usize>,
    max_len: usize,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
    complete: &mut bool,
) {
    if out.len() >= cap {
        *complete = false;
        return;
    }
    out.push(stack.clone());
    if stack.len() == max_len {
        *complete = false;
        return;
    }
    for v in start..qm.len() {
        if stack.iter().all(|&u| qm.orthogonal(u, v)) {
            stack.push(v);
            orthogonal_sets(qm, v + 1, stack, max_len, cap, out, complete);
            stack.pop();
        }
    }
}

/// All submasks of a mask, including 0 and the mask itself.
struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Submasks {
    fn new(mask: u64) -> Self {
        Submasks {
            mask,
            next: Some(mask),
        }
    }
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.mask)
        };
        Some(cur)
    }
}

fn run_clause(env: &Env, c: &Clause) -> TheoremReport {
    let start = Instant::now();
    let mut report = TheoremReport::new(c.id, Status::Pass, &env.label());
    let met = c.hypothesis.is_none_or(|h| env.satisfies(h));
    let found = env.candidates(c.id).and_then(|Cands { iter, scope }| {
        report.scope = scope;
        for args in iter {
            if !env.holds(c.id, &args)? {
                return Ok(Some(args));
            }
        }
        Ok(None)
    });
    match found {
        Err(e) => {
            report.status = Status::BudgetExceeded;
            report.detail = e.to_string();
        }
        Ok(None) if met => report.detail = c.statement.to_string(),
        Ok(None) => {
            report.status = Status::HypothesisNotMet;
            report.detail = format!(
                "{} does not hold; the conclusion held on the tested scope",
                c.hypothesis.expect("unmet hypothesis").id()
            );
        }
        Ok(Some(args)) => {
            report.status = if met {
                Status::Fail
            } else {
                Status::HypothesisNotMet
            };
            report.detail = match c.hypothesis {
                Some(h) if !met => format!("{} does not hold and the conclusion fails: not {}", h.id(), c.statement),
                _ => format!("violated: {}", c.statement),
            };
            report.witness = Some(env.witness(c.id, &args, env.note(c.id, &args)));
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Runs one clause by id, including `hom.i` and `hom.ii`.
pub fn check_clause(qm: &CanonicalQm, opts: &CheckOptions, id: &str) -> Result<TheoremReport> {
    let env = Env::new(qm, opts);
    match id {
        "hom.i" => Ok(homomorphism_report(&env, "hom.i", 2)),
        "hom.ii" => Ok(homomorphism_report(&env, "hom.ii", 4)),
        _ => {
            let c = clause_by_id(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
            Ok(run_clause(&env, c))
        }
    }
}

/// One report per clause, in the order of [`CLAUSES`], followed by the two
/// homomorphism reports.
pub fn check_all(qm: &CanonicalQm, opts: &CheckOptions) -> Vec<TheoremReport> {
    let env = Env::new(qm, opts);
    let mut out: Vec<TheoremReport> = CLAUSES.iter().map(|c| run_clause(&env, c)).collect();
    out.push(homomorphism_report(&env, "hom.i", 2));
    out.push(homomorphism_report(&env, "hom.ii", 4));
    out
}

/// Whether `(⋂ P_j)^⊥⊥ = ⋂ P_j^⊥⊥` over families of subquasimodules of
/// size 2 to 4 and, if so, whether `⊥⊥` preserves joins, meets, `⊥` and the
/// bounds on those families.
pub fn check_homomorphism(qm: &CanonicalQm, opts: &CheckOptions) -> Result<TheoremReport> {
    if let Some(i) = qm.non_zero_distributive_factor() {
        return Err(Error::NotZeroDistributive(i));
    }
    Ok(homomorphism_report(&Env::new(qm, opts), "hom.ii", 4))
}

fn binomial(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

fn combinations(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= m).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("present");
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < m - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

fn homomorphism_report(env: &Env, id: &str, max_family: usize) -> TheoremReport {
    const FAMILY_CAP: u128 = 200_000;
    let start = Instant::now();
    let mut report = TheoremReport::new(id, Status::Pass, &env.label());
    if !env.zd {
        report.status = Status::HypothesisNotMet;
        report.detail = "0-distributive does not hold; not evaluated".to_string();
        return report;
    }
    let subs = match env.subs() {
        Ok(s) => s,
        Err(e) => {
            report.status = Status::BudgetExceeded;
            report.detail = e.to_string();
            return report;
        }
    };
    let m = subs.len();
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut scope = Vec::new();
    let mut rng = env.rng(id);
    for k in 2..=max_family.min(m) {
        if binomial(m, k) <= FAMILY_CAP {
            families.extend(combinations(m, k));
            scope.push(format!("all {} families of size {k}", binomial(m, k)));
        } else {
            let r = env.opts.random_subsets;
            families.extend((0..r).map(|_| sample(&mut rng, m, k).into_vec()));
            scope.push(format!("{r} random families of size {k} (seed {})", env.opts.seed));
        }
    }
    report.scope = format!("{} over {m} subquasimodules", scope.join(", "));
    let args_of = |f: &Vec<usize>| Args::sets(f.iter().map(|&i| subs.node(i).members().clone()).collect());
    let first_failing = |check: &str| -> Result<Option<Args>> {
        for f in &families {
            let a = args_of(f);
            if !env.holds(check, &a)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    };
    let outcome = first_failing("hom.hypothesis").and_then(|h| Ok((h, first_failing("hom.conclusion")?)));
    match outcome {
        Err(e) => {
            report.status = Status::BudgetExceeded;
            report.detail = e.to_string();
        }
        Ok((Some(h), conclusion)) => {
            report.status = Status::HypothesisNotMet;
            let names: Vec<String> = h
                .sets
                .iter()
                .map(|s| subs.name_of(s).expect("node"))
                .collect();
            let mut inter = env.qm.full();
            let mut pps = env.qm.full();
            for s in &h.sets {
                inter.intersect_with(s);
                pps.intersect_with(&env.pp(s));
            }
            let i_name = |s: &VecSet| subs.name_of(s).unwrap_or_else(|| env.qm.format_set(s));
            report.detail = format!(
                "hypothesis fails at {{{}}}: (⋂)^⊥⊥ = {} but ⋂ ^⊥⊥ = {}; homomorphism conclusion not claimed ({} on the tested families)",
                names.join(","),
                i_name(&env.pp(&inter)),
                i_name(&pps),
                if conclusion.is_some() { "it fails" } else { "it holds" }
            );
            report.witness = Some(env.witness("hom.hypothesis", &h, String::new()));
        }
        Ok((None, Some(c))) => {
            report.status = Status::Fail;
            report.detail = "hypothesis holds but ⊥⊥ is not a homomorphism on this family".to_string();
            report.witness = Some(env.witness("hom.conclusion", &c, String::new()));
        }
        Ok((None, None)) => {
            report.detail = "hypothesis holds and ⊥⊥ preserves ∨, ∩, ⊥ and the bounds".to_string();
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Rebuilds the witness instance and re-evaluates the broken predicate.
/// `Ok(Some(true))` means the violation reproduces; `Ok(None)` means the
/// report carries no witness.
pub fn replay(report: &TheoremReport) -> Result<Option<bool>> {
    let Some(w) = &report.witness else {
        return Ok(None);
    };
    let qm = qm_from_text(&w.lattice, &w.factors)?;
    let opts = CheckOptions::default();
    let env = Env::new(&qm, &opts);
    let args = env.parse_args(w)?;
    Ok(Some(!env.holds(&w.check, &args)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;
    use std::sync::Arc;

    fn qm(name: &str, tops: &[&str]) -> CanonicalQm {
        let l = Arc::new(builtin(name).unwrap());
        let tops: Vec<usize> = tops.iter().map(|t| l.index_of(t).unwrap()).collect();
        CanonicalQm::principal(l, &tops).unwrap()
    }

    #[test]
    fn submasks_cover_all() {
        let subs: Vec<u64> = Submasks::new(0b101).collect();
        assert_eq!(subs, [0b101, 0b100, 0b001, 0]);
        assert_eq!(Submasks::new(0).count(), 1);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(4, 4).count(), 1);
        assert_eq!(combinations(3, 4).count(), 0);
        assert_eq!(binomial(21, 4), 5985);
    }

    #[test]
    fn n5_times_a_passes_everything_but_reports_homomorphism_hypothesis() {
        let q = qm("n5", &["1", "a"]);
        let reports = check_all(&q, &CheckOptions::default());
        assert_eq!(reports.len(), CLAUSES.len() + 2);
        for r in &reports {
            if r.id.starts_with("hom.") {
                assert_eq!(r.status, Status::HypothesisNotMet, "{}", r.detail);
                assert_eq!(replay(r).unwrap(), Some(true));
            } else {
                assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.detail);
            }
        }
    }

    #[test]
    fn m3_prop2_is_hypothesis_not_met_with_replayable_witness() {
        let q = qm("m3", &["1", "a"]);
        let r = check_clause(&q, &CheckOptions::default(), "prop2").unwrap();
        assert_eq!(r.status, Status::HypothesisNotMet);
        let w = r.witness.as_ref().unwrap();
        assert!(w.note.contains("is missing"), "{}", w.note);
        assert_eq!(replay(&r).unwrap(), Some(true));
    }

    #[test]
    fn trivial_instance_passes() {
        let q = qm("n5", &["0"]);
        assert_eq!(q.len(), 1);
        for r in check_all(&q, &CheckOptions::default()) {
            assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn zero_distributive_clauses_report_hypothesis_on_m3() {
        let q = qm("m3", &["1"]);
        let reports = check_all(&q, &CheckOptions::default());
        for r in &reports {
            let hyp = clause_by_id(&r.id).and_then(|c| c.hypothesis);
            if hyp == Some(Hypothesis::ZeroDistributive) || r.id.starts_with("hom.") {
                assert_eq!(r.status, Status::HypothesisNotMet, "{}", r.id);
            } else {
                assert_eq!(r.status, Status::Pass, "{}: {}", r.id, r.detail);
            }
            if r.witness.is_some() {
                assert_eq!(replay(r).unwrap(), Some(true), "{}", r.id);
            }
        }
    }

    #[test]
    fn unknown_clause_is_an_error() {
        let q = qm("n5", &["1"]);
        assert!(matches!(
            check_clause(&q, &CheckOptions::default(), "th9"),
            Err(Error::UnknownCheck(_))
        ));
    }
}
