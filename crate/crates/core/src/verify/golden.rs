//! Golden reproductions of the worked examples: N5, M3, `N5 x [0,a]`, the
//! six-element lattice of the closed-but-not-splitting example, and powers
//! of N5.

use std::sync::Arc;
use std::time::Instant;

use super::{Args, CheckOptions, Env, Status, TheoremReport};
use crate::bitset::{ElemSet, VecSet};
use crate::error::{Error, Result};
use crate::galois::{closed_subquasimodules, factor_perp, is_closed, sum_set};
use crate::lattice::builtin;
use crate::quasimodule::CanonicalQm;
use crate::subquasi::{closure_violation, generate, is_basis, is_orthogonal_set, is_subquasimodule, ClosureViolation, SubQm};

pub const INSTANCES: [&str; 5] = ["ex2", "m3", "ex1", "fig5", "n5-power"];

/// The printed subquasimodules of `N5 x [0,a]`, in printed order.
const EX1_PRINTED: [&str; 20] = [
    "(0,0)",
    "(0,0) (0,a)",
    "(0,0) (a,0)",
    "(0,0) (a,a)",
    "(0,0) (b,0)",
    "(0,0) (0,a) (a,a)",
    "(0,0) (a,0) (a,a)",
    "(0,0) (a,0) (c,0)",
    "(0,0) (a,a) (c,a)",
    "(0,0) (0,a) (a,0) (a,a)",
    "(0,0) (0,a) (a,a) (c,a)",
    "(0,0) (0,a) (b,0) (b,a)",
    "(0,0) (0,a) (a,0) (a,a) (c,a)",
    "(0,0) (a,0) (a,a) (c,0) (c,a)",
    "(0,0) (a,0) (b,0) (c,0) (1,0)",
    "(0,0) (a,a) (b,0) (c,a) (1,a)",
    "(0,0) (0,a) (a,0) (a,a) (c,0) (c,a)",
    "(0,0) (0,a) (a,a) (b,0) (b,a) (c,a) (1,a)",
    "(0,0) (a,0) (a,a) (b,0) (c,0) (c,a) (1,0) (1,a)",
    "(0,0) (0,a) (a,0) (a,a) (b,0) (b,a) (c,0) (c,a) (1,0) (1,a)",
];

/// Printed `P^⊥` and `P^⊥⊥` for `P1..P20`, by printed index.
const EX1_PERP: [usize; 20] = [20, 15, 12, 5, 17, 5, 5, 12, 5, 5, 5, 8, 5, 5, 2, 1, 5, 1, 1, 1];
const EX1_DOUBLE_PERP: [usize; 20] = [1, 2, 8, 17, 5, 17, 17, 8, 17, 17, 17, 12, 17, 17, 15, 20, 17, 20, 20, 20];

/// Printed table restricted to the closed ones: `(P, P^⊥)`, and `P^⊥⊥ = P`.
const EX1_CLOSED_TABLE: [(usize, usize); 8] = [(1, 20), (2, 15), (5, 17), (8, 12), (12, 8), (15, 2), (17, 5), (20, 1)];

/// Printed generated subquasimodules `⟨A⟩ = P_k`.
const EX1_GENERATED: [(&str, usize); 7] = [
    ("(0,a) (1,0)", 20),
    ("(0,a)", 2),
    ("(1,0)", 15),
    ("(0,a) (b,0) (c,0)", 20),
    ("(0,a) (b,0)", 12),
    ("(0,a) (c,0)", 8),
    ("(b,0) (c,0)", 15),
];

const EX1_BASES: [&str; 2] = ["(0,a) (1,0)", "(0,a) (b,0) (c,0)"];

/// Canonical position (1-based) of each printed `P_k` in `L(N5 x [0,a])`.
/// The canonical list has one more member than the printed one, at
/// position 13, which shifts the printed `P13..P20` up by one.
pub const EX1_PRINTED_TO_CANONICAL: [usize; 20] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 17, 18, 19, 20, 21];

/// Printed complements in the one-factor quasimodule `N5`.
const N5_PERPS: [(&str, &str); 5] = [("0", "0 a b c 1"), ("a", "0 b"), ("b", "0 a c"), ("c", "0 b"), ("1", "0")];
const N5_CLOSED: [&str; 4] = ["0", "0 b", "0 a c", "0 a b c 1"];

fn principal(lattice: &str, tops: &[&str]) -> Result<CanonicalQm> {
    let l = Arc::new(builtin(lattice)?);
    let tops = tops.iter().map(|t| l.index_of(t)).collect::<Result<Vec<_>>>()?;
    CanonicalQm::principal(l, &tops)
}

fn labelled(opts: &CheckOptions, label: &str) -> CheckOptions {
    CheckOptions {
        label: Some(label.to_string()),
        ..opts.clone()
    }
}

fn set(qm: &CanonicalQm, text: &str) -> VecSet {
    let items: Vec<&str> = text.split_whitespace().collect();
    qm.parse_set(&items).expect("golden vectors lie in the carrier")
}

fn single(qm: &CanonicalQm, text: &str) -> VecSet {
    set(qm, text)
}

fn elems(qm: &CanonicalQm, text: &str) -> ElemSet {
    let l = qm.lattice();
    ElemSet::from_iter(text.split_whitespace().map(|t| l.index_of(t).expect("golden label")))
}

struct Item {
    check: &'static str,
    args: Args,
    what: String,
}

fn item(check: &'static str, sets: Vec<VecSet>, what: impl Into<String>) -> Item {
    Item {
        check,
        args: Args::sets(sets),
        what: what.into(),
    }
}

/// Evaluates the items; the report fails on the first item that does not
/// hold and lists every failing item in the detail.
fn golden(env: &Env, id: &str, summary: String, items: Vec<Item>) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut report = TheoremReport::new(id, Status::Pass, &env.label());
    report.scope = format!("{} golden items", items.len());
    let mut failures = Vec::new();
    for it in &items {
        if !env.holds(it.check, &it.args)? {
            if report.witness.is_none() {
                report.witness = Some(env.witness(it.check, &it.args, it.what.clone()));
            }
            failures.push(it.what.clone());
        }
    }
    report.detail = if failures.is_empty() {
        summary
    } else {
        report.status = Status::Fail;
        format!("{summary}; differs from the printed value at: {}", failures.join("; "))
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Golden predicates, evaluated by [`Env::holds`].
pub(super) fn holds(env: &Env, check: &str, a: &Args) -> Option<Result<bool>> {
    let qm = env.qm;
    let l = qm.lattice();
    let s = &a.sets;
    let one = |i: usize| s[i].iter().next().expect("singleton");
    let family = |nodes: &[SubQm]| -> bool {
        let mut want: Vec<&VecSet> = s.iter().collect();
        want.sort_by(|x, y| x.canonical_cmp(y));
        want.dedup();
        want.len() == nodes.len() && nodes.iter().zip(&want).all(|(n, w)| n.members() == *w)
    };
    let r = (|| -> Result<bool> {
        Ok(match check {
            "is-subquasimodule" => is_subquasimodule(qm, &s[0]),
            "perp-equals" => env.perp(&s[0]) == s[1],
            "double-perp-equals" => env.pp(&s[0]) == s[1],
            "generates" => *generate(qm, &s[0]).members() == s[1],
            "proper" => !s[0].is_full(),
            "closed-subquasimodule" => is_subquasimodule(qm, &s[0]) && is_closed(qm, &s[0]),
            "not-splitting" => {
                is_subquasimodule(qm, &s[0]) && !sum_set(qm, &s[0], &env.perp(&s[0])).is_full()
            }
            "absent-from-sum" => sum_set(qm, &s[1], &s[2]).intersection(&s[0]).is_empty(),
            "orthogonal-basis" => {
                let b = s[0].to_vec();
                is_basis(qm, &SubQm::new(qm, qm.full())?, &b) && is_orthogonal_set(qm, &b)
            }
            "subquasimodule-family" => family(env.subs()?.nodes()),
            "closed-family" => family(env.closed()?.nodes()),
            "splitting-family" => {
                let split: Vec<SubQm> = env
                    .splitting()?
                    .iter()
                    .map(|p| SubQm::new(qm, p.clone()))
                    .collect::<Result<_>>()?;
                family(&split)
            }
            "closed-boolean-rank" => env.closed()?.boolean_rank() == a.param,
            "closed-cover-count" => Some(env.closed()?.covers().len()) == a.param,
            "factor-closed" => a
                .parts
                .iter()
                .enumerate()
                .all(|(i, &e)| factor_perp(qm, i, factor_perp(qm, i, e)) == e),
            "product-equals" => qm.product(&a.parts) == s[0],
            "lattice-zero-distributive" => l.is_zero_distributive(),
            "lattice-not-modular" => !l.is_modular(),
            "first-zero-distributive-violation" => {
                let (x, y, z) = (qm.coord(one(0), 0), qm.coord(one(1), 0), qm.coord(one(2), 0));
                let b = l.bottom();
                l.zero_distributive_violation() == Some((x, y, z))
                    && l.meet(x, z) == b
                    && l.meet(y, z) == b
                    && l.meet(l.join(x, y), z) == z
            }
            "perp-sum-escapes" => {
                let p = env.perp(&s[0]);
                let (x, y, sum) = (one(1), one(2), one(3));
                let first = matches!(
                    closure_violation(qm, &p),
                    Some(ClosureViolation::Sum { x: vx, y: vy, sum: vs }) if vx == x && vy == y && vs == sum
                );
                p.contains(x)
                    && p.contains(y)
                    && qm.add(x, y) == sum
                    && !p.contains(sum)
                    && s[0].iter().any(|z| !qm.orthogonal(sum, z))
                    && first
            }
            _ => return Err(Error::UnknownCheck(check.to_string())),
        })
    })();
    match r {
        Err(Error::UnknownCheck(_)) => None,
        other => Some(other),
    }
}

fn ex2(opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    let qm = principal("n5", &["1"])?;
    let opts = labelled(opts, "N5");
    let env = Env::new(&qm, &opts);
    Ok(vec![golden(
        &env,
        "ex2.n5",
        "N5 is 0-distributive and not modular".to_string(),
        vec![
            item("lattice-zero-distributive", vec![], "N5 is 0-distributive"),
            item("lattice-not-modular", vec![], "N5 is not modular"),
        ],
    )?])
}

fn m3(opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    let lat = principal("m3", &["1"])?;
    let lat_opts = labelled(opts, "M3");
    let lat_env = Env::new(&lat, &lat_opts);
    let abc = vec![single(&lat, "a"), single(&lat, "b"), single(&lat, "c")];
    let mut out = vec![golden(
        &lat_env,
        "m3.not-zero-distributive",
        "M3 is not 0-distributive: a∧c = b∧c = 0 but (a∨b)∧c = c".to_string(),
        vec![item("first-zero-distributive-violation", abc, "witness (a,b,c)")],
    )?];

    let qm = principal("m3", &["1", "a"])?;
    let opts = labelled(opts, "M3 x [0,a]");
    let env = Env::new(&qm, &opts);
    let p = set(&qm, "(0,0) (0,a) (a,0) (a,a)");
    out.push(golden(
        &env,
        "m3.perp-not-subquasimodule",
        "P = [0,a] x [0,a] is a subquasimodule; (b,0)+(c,0) = (1,0) is missing from P^⊥".to_string(),
        vec![
            item("is-subquasimodule", vec![p.clone()], "P is a subquasimodule"),
            item(
                "perp-sum-escapes",
                vec![p, single(&qm, "(b,0)"), single(&qm, "(c,0)"), single(&qm, "(1,0)")],
                "(b,0),(c,0) ∈ P^⊥ and (b,0)+(c,0) = (1,0) ∉ P^⊥",
            ),
        ],
    )?);

    let products = [
        ("(0,a) (a,0)", "0 a", "0 a", "[0,a] x [0,a]"),
        ("(0,a) (b,0)", "0 b", "0 a", "[0,b] x [0,a]"),
        ("(a,0) (b,0)", "0 a b c 1", "0", "M3 x {0}"),
    ];
    let mut items = vec![item(
        "orthogonal-basis",
        vec![set(&qm, "(0,a) (a,0) (b,0)")],
        "{(0,a),(a,0),(b,0)} is an orthogonal basis",
    )];
    for (gens, first, second, name) in products {
        let prod = qm.product(&[elems(&qm, first), elems(&qm, second)]);
        items.push(item(
            "generates",
            vec![set(&qm, gens), prod.clone()],
            format!("⟨{gens}⟩ = {name}"),
        ));
        items.push(item("proper", vec![prod], format!("{name} ≠ Q")));
    }
    out.push(golden(
        &env,
        "m3.orthogonal-basis",
        "B = {(0,a),(a,0),(b,0)} is an orthogonal basis; its two-element subsets generate proper subquasimodules".to_string(),
        items,
    )?);
    out.push(super::check_clause(&qm, &opts, "prop2")?);
    Ok(out)
}

fn ex1(opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    let n5 = principal("n5", &["1"])?;
    let n5_opts = labelled(opts, "N5");
    let n5_env = Env::new(&n5, &n5_opts);
    let mut items: Vec<Item> = N5_PERPS
        .iter()
        .map(|(x, p)| {
            item(
                "perp-equals",
                vec![set(&n5, x), set(&n5, p)],
                format!("{x}^⊥ = {{{}}}", p.replace(' ', ",")),
            )
        })
        .collect();
    items.push(item(
        "closed-family",
        N5_CLOSED.iter().map(|c| set(&n5, c)).collect(),
        "L_C(N5) = {{0},{0,b},{0,a,c},N5}",
    ));
    let mut rank = item("closed-boolean-rank", vec![], "L_C(N5) is the four-element Boolean algebra");
    rank.args.param = Some(2);
    items.push(rank);
    let mut out = vec![golden(&n5_env, "ex1.n5-closed", "complements and closed subsets of N5".to_string(), items)?];

    let qm = principal("n5", &["1", "a"])?;
    let opts = labelled(opts, "N5 x [0,a]");
    let env = Env::new(&qm, &opts);
    let printed: Vec<VecSet> = EX1_PRINTED.iter().map(|t| set(&qm, t)).collect();
    let p = |k: usize| printed[k - 1].clone();

    let count = env.subs().map(|s| s.len());
    out.push(golden(
        &env,
        "ex1.subquasimodules",
        match &count {
            Ok(c) => format!("{c} subquasimodules computed, 20 printed"),
            Err(e) => e.to_string(),
        },
        vec![item("subquasimodule-family", printed.clone(), "L(Q) = {P1,...,P20}")],
    )?);

    let mut items = Vec::new();
    for k in 1..=20 {
        items.push(item(
            "perp-equals",
            vec![p(k), p(EX1_PERP[k - 1])],
            format!("P{k}^⊥ = P{}", EX1_PERP[k - 1]),
        ));
        items.push(item(
            "double-perp-equals",
            vec![p(k), p(EX1_DOUBLE_PERP[k - 1])],
            format!("P{k}^⊥⊥ = P{}", EX1_DOUBLE_PERP[k - 1]),
        ));
    }
    for (k, perp) in EX1_CLOSED_TABLE {
        items.push(item("perp-equals", vec![p(k), p(perp)], format!("closed table: P{k}^⊥ = P{perp}")));
        items.push(item("double-perp-equals", vec![p(k), p(k)], format!("closed table: P{k}^⊥⊥ = P{k}")));
    }
    out.push(golden(&env, "ex1.perp-table", "both printed ⊥ / ⊥⊥ tables".to_string(), items)?);

    let closed: Vec<VecSet> = EX1_CLOSED_TABLE.iter().map(|&(k, _)| p(k)).collect();
    out.push(golden(
        &env,
        "ex1.closed",
        "L_C(Q) = {P1,P2,P5,P8,P12,P15,P17,P20}".to_string(),
        vec![item("closed-family", closed.clone(), "L_C(Q) membership")],
    )?);

    let mut rank = item("closed-boolean-rank", vec![], "L_C(Q) is the Boolean algebra 2^3");
    rank.args.param = Some(3);
    let mut covers = item("closed-cover-count", vec![], "12 covering pairs");
    covers.args.param = Some(12);
    out.push(golden(
        &env,
        "ex1.closed-boolean",
        "L_C(Q) is order-isomorphic to 2^3".to_string(),
        vec![rank, covers],
    )?);

    out.push(golden(
        &env,
        "ex1.bases",
        "{(0,a),(1,0)} and {(0,a),(b,0),(c,0)} are orthogonal bases".to_string(),
        EX1_BASES
            .iter()
            .map(|b| item("orthogonal-basis", vec![set(&qm, b)], format!("{{{}}}", b.replace(' ', ","))))
            .collect(),
    )?);

    out.push(golden(
        &env,
        "ex1.generated",
        "printed generated subquasimodules of the two bases".to_string(),
        EX1_GENERATED
            .iter()
            .map(|&(gens, k)| {
                item(
                    "generates",
                    vec![set(&qm, gens), p(k)],
                    format!("⟨{{{}}}⟩ = P{k}", gens.replace(' ', ",")),
                )
            })
            .collect(),
    )?);

    out.push(golden(
        &env,
        "ex1.splitting",
        "L_S(Q) = L_C(Q)".to_string(),
        vec![item("splitting-family", closed, "L_S(Q) = L_C(Q)")],
    )?);
    Ok(out)
}

fn fig5(opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    let qm = principal("fig5", &["1", "1"])?;
    let opts = labelled(opts, "L x L (six-element L)");
    let env = Env::new(&qm, &opts);
    let mut out = vec![golden(
        &env,
        "fig5.lattice",
        "the six-element lattice is 0-distributive and not modular".to_string(),
        vec![
            item("lattice-zero-distributive", vec![], "0-distributive"),
            item("lattice-not-modular", vec![], "not modular"),
        ],
    )?];
    let (ob, oc) = (elems(&qm, "0 b"), elems(&qm, "0 a c"));
    let p = qm.product(&[ob, oc]);
    let printed_perp = qm.product(&[oc, ob]);
    let factors = Item {
        check: "factor-closed",
        args: Args {
            parts: vec![ob, oc],
            ..Args::default()
        },
        what: "[0,b] and [0,c] are closed in L".to_string(),
    };
    out.push(golden(
        &env,
        "fig5.closed-not-splitting",
        "P = [0,b] x [0,c] is closed and not splitting; (1,1) ∉ P + P^⊥".to_string(),
        vec![
            factors,
            item("closed-subquasimodule", vec![p.clone()], "P is a closed subquasimodule"),
            item("perp-equals", vec![p.clone(), printed_perp.clone()], "P^⊥ = [0,c] x [0,b]"),
            item(
                "absent-from-sum",
                vec![single(&qm, "(1,1)"), p.clone(), printed_perp],
                "(1,1) ∉ P + P^⊥",
            ),
            item("not-splitting", vec![p], "P is not splitting"),
        ],
    )?);
    Ok(out)
}

fn n5_power(opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        let qm = principal("n5", &vec!["1"; n])?;
        let opts = labelled(opts, &format!("N5^{n}"));
        let env = Env::new(&qm, &opts);
        let k = 2 * n;
        let mut rank = item("closed-boolean-rank", vec![], format!("L_C(N5^{n}) is Boolean of rank {k}"));
        rank.args.param = Some(k);
        let mut covers = item("closed-cover-count", vec![], format!("{} covering pairs", k << (k - 1)));
        covers.args.param = Some(k << (k - 1));
        let cor1 = item("cor1", vec![], "L_C(N5^n) ≅ L_C(N5)^n");
        let nodes = closed_subquasimodules(&qm)?.len();
        out.push(golden(
            &env,
            &format!("n5-power.{n}"),
            format!("L_C(N5^{n}) has {nodes} members, printed 2^{k} = {}", 1usize << k),
            vec![rank, covers, cor1],
        )?);
    }
    Ok(out)
}

/// Runs the named example against its embedded golden data.
pub fn reproduce_paper(instance: &str, opts: &CheckOptions) -> Result<Vec<TheoremReport>> {
    match instance {
        "ex2" => ex2(opts),
        "m3" => m3(opts),
        "ex1" => ex1(opts),
        "fig5" => fig5(opts),
        "n5-power" => n5_power(opts),
        other => Err(Error::UnknownInstance(other.to_string())),
    }
}
