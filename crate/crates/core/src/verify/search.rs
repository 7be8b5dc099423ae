//! Counterexample search over small lattices.
//!
//! Lattices up to `exhaustive_size` elements are enumerated up to
//! isomorphism from strict orders on the interior elements (every poset has
//! a linear extension, so upper-triangular relations suffice). Larger sizes
//! are sampled by random covers on a shelled element order.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{clause_by_id, Args, Cands, CheckOptions, Env, Hypothesis, Status, TheoremReport, CLAUSES};
use crate::lattice::Lattice;
use crate::quasimodule::CanonicalQm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Theorem clauses: with dropped hypotheses, look for instances where a
    /// dropped hypothesis fails and so does the conclusion; with nothing
    /// dropped, look for genuine failures.
    Clauses,
    /// Closed subquasimodules that are not splitting, on instances with
    /// 0-distributive factors.
    ClosedNotSplitting,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_size: usize,
    /// Sizes up to this bound are enumerated exhaustively; larger sizes up to
    /// `max_size` are sampled.
    pub exhaustive_size: usize,
    /// Random lattices drawn per size above `exhaustive_size`.
    pub random_lattices: usize,
    pub max_factors: usize,
    pub max_carrier: usize,
    pub seed: u64,
    pub drop: Vec<Hypothesis>,
    pub target: SearchTarget,
    /// Per-instance quantifier budgets.
    pub check: CheckOptions,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_size: 6,
            exhaustive_size: 6,
            random_lattices: 20,
            max_factors: 2,
            max_carrier: 64,
            seed: 0,
            drop: Vec::new(),
            target: SearchTarget::Clauses,
            check: CheckOptions {
                random_subsets: 200,
                ..CheckOptions::default()
            },
        }
    }
}

fn names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".to_string()],
        _ => {
            let mut v = vec!["0".to_string()];
            v.extend((0..n - 2).map(interior_name));
            v.push("1".to_string());
            v
        }
    }
}

fn interior_name(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

/// Strict-order pairs `(i, j)`, `i < j`, over `m` interior elements, bit
/// `k` of a code standing for the `k`-th such pair.
fn pair_list(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            out.push((i, j));
        }
    }
    out
}

fn transitive(m: usize, rel: &[u32]) -> bool {
    (0..m).all(|i| {
        let mut ok = true;
        for j in 0..m {
            if rel[i] >> j & 1 == 1 {
                ok &= rel[j] & !rel[i] == 0;
            }
        }
        ok
    })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Relation as a canonical bit string over all ordered pairs; the minimum
/// over relabellings identifies the isomorphism class.
fn canonical_code(m: usize, rel: &[u32], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            let mut code = 0u64;
            for i in 0..m {
                for j in 0..m {
                    if rel[i] >> j & 1 == 1 {
                        code |= 1 << (p[i] * m + p[j]);
                    }
                }
            }
            code
        })
        .min()
        .unwrap_or(0)
}

/// All lattices with exactly `n` elements up to isomorphism, in a fixed
/// order. Practical up to `n = 7`.
pub fn enumerate_lattices(n: usize) -> Vec<Lattice> {
    if n == 0 {
        return Vec::new();
    }
    if n <= 2 {
        return vec![Lattice::from_index_pairs(names(n), &[(0, n - 1)]).expect("chain")];
    }
    let m = n - 2;
    let pairs = pair_list(m);
    let perms = permutations(m);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![0u32; m];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rel[i] |= 1 << j;
            }
        }
        if !transitive(m, &rel) {
            continue;
        }
        let code = canonical_code(m, &rel, &perms);
        if !seen.insert(code) {
            continue;
        }
        if let Some(l) = lattice_from_interior(m, &rel) {
            out.push((code, l));
        }
    }
    out.sort_by_key(|(code, _)| *code);
    out.into_iter().map(|(_, l)| l).collect()
}

fn lattice_from_interior(m: usize, rel: &[u32]) -> Option<Lattice> {
    let top = m + 1;
    let mut pairs = vec![(0, top)];
    for i in 0..m {
        pairs.push((0, i + 1));
        pairs.push((i + 1, top));
        for j in 0..m {
            if rel[i] >> j & 1 == 1 {
                pairs.push((i + 1, j + 1));
            }
        }
    }
    Lattice::from_index_pairs(names(m + 2), &pairs).ok()
}

/// A random `n`-element lattice: each interior element receives random
/// lower covers among the earlier ones, and the order is kept if it is a
/// lattice. Gives up after 1000 draws.
pub fn random_lattice(rng: &mut impl Rng, n: usize) -> Option<Lattice> {
    if n <= 2 {
        return enumerate_lattices(n).pop();
    }
    let m = n - 2;
    for _ in 0..1000 {
        let mut rel = vec![0u32; m];
        for j in 0..m {
            for i in 0..j {
                if rng.gen_bool(0.5) {
                    rel[i] |= 1 << j;
                    let below: Vec<usize> = (0..i).filter(|&k| rel[k] >> i & 1 == 1).collect();
                    for k in below {
                        rel[k] |= 1 << j;
                    }
                }
            }
        }
        if let Some(l) = lattice_from_interior(m, &rel) {
            return Some(l);
        }
    }
    None
}

#[derive(Clone)]
struct Instance {
    lattice: Arc<Lattice>,
    tops: Vec<usize>,
}

impl Instance {
    fn build(&self, max_carrier: usize) -> Option<CanonicalQm> {
        CanonicalQm::principal(self.lattice.clone(), &self.tops)
            .ok()
            .filter(|qm| qm.len() <= max_carrier)
    }

    fn describe(&self) -> String {
        let l = &self.lattice;
        let tops: Vec<&str> = self.tops.iter().map(|&t| l.name(t)).collect();
        format!("{}-element lattice, factors [0,{}]", l.len(), tops.join("] x [0,"))
    }
}

/// Nondecreasing tuples of `k` elements.
fn top_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in top_tuples(n, k - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for x in start..n {
            let mut t = rest.clone();
            t.push(x);
            out.push(t);
        }
    }
    out
}

fn lattices(cfg: &SearchConfig) -> (Vec<Arc<Lattice>>, String) {
    let mut out = Vec::new();
    let exhaustive = cfg.exhaustive_size.min(cfg.max_size);
    for n in 1..=exhaustive {
        out.extend(enumerate_lattices(n).into_iter().map(Arc::new));
    }
    let mut scope = format!("all {} lattices of ≤ {exhaustive} elements up to isomorphism", out.len());
    if cfg.max_size > exhaustive && cfg.random_lattices > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut drawn = 0;
        for n in exhaustive + 1..=cfg.max_size {
            for _ in 0..cfg.random_lattices {
                if let Some(l) = random_lattice(&mut rng, n) {
                    out.push(Arc::new(l));
                    drawn += 1;
                }
            }
        }
        scope.push_str(&format!(
            ", {drawn} random lattices of {}..{} elements (seed {})",
            exhaustive + 1,
            cfg.max_size,
            cfg.seed
        ));
    }
    (out, scope)
}

fn instances(cfg: &SearchConfig) -> (Vec<Instance>, String) {
    let (ls, scope) = lattices(cfg);
    let mut out = Vec::new();
    for l in ls {
        for k in 1..=cfg.max_factors.max(1) {
            for tops in top_tuples(l.len(), k) {
                let inst = Instance {
                    lattice: l.clone(),
                    tops,
                };
                let carrier: usize = inst.tops.iter().map(|&t| l.down_set(t).len()).product();
                if carrier <= cfg.max_carrier {
                    out.push(inst);
                }
            }
        }
    }
    let scope = format!(
        "{scope}; 1..{} principal factors, carrier ≤ {}; {} instances",
        cfg.max_factors.max(1),
        cfg.max_carrier,
        out.len()
    );
    (out, scope)
}

/// One search question: a predicate over candidate tuples and a condition
/// the instance must meet for a violation to count.
#[derive(Clone, Copy)]
struct Probe {
    id: &'static str,
    check: &'static str,
    /// Hypothesis that must fail on the instance (`None`: all hypotheses of
    /// the clause must hold).
    dropped: Option<Hypothesis>,
    hypothesis: Option<Hypothesis>,
}

impl Probe {
    fn qualifies(&self, env: &Env) -> bool {
        match self.dropped {
            Some(h) => !env.satisfies(h),
            None => self.hypothesis.is_none_or(|h| env.satisfies(h)),
        }
    }
}

fn probes(cfg: &SearchConfig) -> Vec<Probe> {
    match cfg.target {
        SearchTarget::ClosedNotSplitting => vec![Probe {
            id: "closed-not-splitting",
            check: "closed-is-splitting",
            dropped: None,
            hypothesis: Some(Hypothesis::ZeroDistributive),
        }],
        SearchTarget::Clauses if cfg.drop.is_empty() => CLAUSES
            .iter()
            .map(|c| Probe {
                id: c.id,
                check: c.id,
                dropped: None,
                hypothesis: c.hypothesis,
            })
            .collect(),
        SearchTarget::Clauses => CLAUSES
            .iter()
            .filter_map(|c| {
                let h = c.hypothesis?;
                cfg.drop.contains(&h).then_some(Probe {
                    id: c.id,
                    check: c.id,
                    dropped: Some(h),
                    hypothesis: c.hypothesis,
                })
            })
            .collect(),
    }
}

/// First violating tuple of `probe` on `qm`, if the instance qualifies.
/// `None` when it does not qualify; `Some(None)` when nothing was found.
fn probe_instance(qm: &CanonicalQm, opts: &CheckOptions, probe: &Probe) -> Option<Option<TheoremReport>> {
    let env = Env::new(qm, opts);
    if !probe.qualifies(&env) {
        return None;
    }
    let Ok(Cands { iter, scope }) = env.candidates(probe.check) else {
        return Some(None);
    };
    for args in iter {
        if let Ok(false) = env.holds(probe.check, &args) {
            return Some(Some(violation(&env, probe, &args, scope)));
        }
    }
    Some(None)
}

fn violation(env: &Env, probe: &Probe, args: &Args, scope: String) -> TheoremReport {
    let mut r = TheoremReport::new(probe.id, Status::Fail, &env.label());
    r.scope = scope;
    r.witness = Some(env.witness(probe.check, args, env.note(probe.check, args)));
    r
}

/// Greedily removes factors and lattice elements while the violation
/// persists.
fn minimize(start: Instance, opts: &CheckOptions, cfg: &SearchConfig, probe: &Probe) -> (Instance, TheoremReport) {
    let attempt = |inst: &Instance| -> Option<TheoremReport> {
        let qm = inst.build(cfg.max_carrier)?;
        probe_instance(&qm, opts, probe).flatten()
    };
    let mut best = start;
    let mut report = attempt(&best).expect("starting instance violates");
    'outer: loop {
        if best.tops.len() > 1 {
            for i in 0..best.tops.len() {
                let mut tops = best.tops.clone();
                tops.remove(i);
                let cand = Instance {
                    lattice: best.lattice.clone(),
                    tops,
                };
                if let Some(r) = attempt(&cand) {
                    (best, report) = (cand, r);
                    continue 'outer;
                }
            }
        }
        let l = best.lattice.clone();
        for x in 0..l.len() {
            if x == l.bottom() || x == l.top() {
                continue;
            }
            let mut keep = l.all();
            keep.remove(x);
            let Some((small, map)) = l.induced(keep) else {
                continue;
            };
            let tops: Option<Vec<usize>> = best.tops.iter().map(|&t| map[t]).collect();
            let Some(tops) = tops else {
                continue;
            };
            let cand = Instance {
                lattice: Arc::new(small),
                tops,
            };
            if let Some(r) = attempt(&cand) {
                (best, report) = (cand, r);
                continue 'outer;
            }
        }
        return (best, report);
    }
}

/// Runs the configured search. Reports come one per probe (clause, or the
/// closed-not-splitting question), in a fixed order.
pub fn counterexample_search(cfg: &SearchConfig) -> Vec<TheoremReport> {
    let start = Instant::now();
    let (insts, scope) = instances(cfg);
    let probes = probes(cfg);
    let opts = CheckOptions {
        seed: cfg.seed,
        ..cfg.check.clone()
    };
    // hits[i][p]: whether instance i qualified for probe p and violated it.
    let hits: Vec<Vec<Option<bool>>> = insts
        .par_iter()
        .map(|inst| {
            let Some(qm) = inst.build(cfg.max_carrier) else {
                return vec![None; probes.len()];
            };
            probes
                .iter()
                .map(|p| probe_instance(&qm, &opts, p).map(|r| r.is_some()))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    for (k, probe) in probes.iter().enumerate() {
        let tested = hits.iter().filter(|h| h[k].is_some()).count();
        let violating: Vec<usize> = (0..insts.len()).filter(|&i| hits[i][k] == Some(true)).collect();
        let mut report = match violating.first() {
            None => {
                let mut r = TheoremReport::new(probe.id, Status::Pass, "search");
                r.detail = match (probe.dropped, cfg.target) {
                    (_, SearchTarget::ClosedNotSplitting) => {
                        format!("every closed subquasimodule was splitting on {tested} instances")
                    }
                    (Some(h), _) => format!("{} dropped: no violation on {tested} instances where it fails", h.id()),
                    (None, _) => format!("no violation on {tested} instances meeting the hypotheses"),
                };
                r
            }
            Some(&first) => {
                let (small, mut r) = minimize(insts[first].clone(), &opts, cfg, probe);
                let found = format!(
                    "violated on {} of {tested} instances; first found on {}, minimized to {}",
                    violating.len(),
                    insts[first].describe(),
                    small.describe()
                );
                r.instance = small.describe();
                let statement = clause_by_id(probe.id).map_or("", |c| c.statement);
                (r.status, r.detail) = match (probe.dropped, cfg.target) {
                    (_, SearchTarget::ClosedNotSplitting) => (
                        Status::Refuted,
                        format!("a closed subquasimodule that is not splitting: {found}"),
                    ),
                    (Some(h), _) => (
                        Status::HypothesisNotMet,
                        format!("{} dropped, conclusion fails ({statement}): {found}", h.id()),
                    ),
                    (None, _) => (Status::Fail, format!("violated: {statement}: {found}")),
                };
                r
            }
        };
        report.scope = scope.clone();
        out.push(report);
    }
    if let Some(last) = out.last_mut() {
        last.elapsed = start.elapsed();
    }
    out
}
