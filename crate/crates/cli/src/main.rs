use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qmod_core::formats::{dot_family, dot_lattice, parse_lattice, parse_qm_spec};
use qmod_core::galois::{closed_subquasimodules, is_closed, is_splitting, perp};
use qmod_core::subquasi::{all_subquasimodules, find_bases, SubQm, SubQmLattice, DEFAULT_ENUMERATION_BUDGET};
use qmod_core::verify::{
    check_all, counterexample_search, reproduce_paper, CheckOptions, Hypothesis, SearchConfig, SearchTarget,
    Status, TheoremReport, INSTANCES,
};
use qmod_core::{CanonicalQm, Error, Lattice};

mod render;

use render::Out;

#[derive(Parser)]
#[command(name = "qmod", version, about = "Finite lattices, canonical quasimodules and their closed subquasimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice file operations.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Computations on a quasimodule spec file.
    Qm(QmArgs),
    /// Hasse diagram export.
    Export {
        #[command(subcommand)]
        action: ExportAction,
    },
    /// Golden reproductions and counterexample search.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Validity, bounds, and 0-distributive / modular / distributive flags.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ExportAction {
    /// DOT Hasse diagram (cover edges only).
    Dot {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(short, long)]
        o: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Lattice,
    Subs,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum QmAction {
    Subs,
    Closed,
    Splitting,
    PerpTable,
    Bases,
    Verify,
}

#[derive(clap::Args)]
struct QmArgs {
    #[arg(value_enum)]
    action: QmAction,
    file: PathBuf,
    #[arg(long, default_value_t = 3)]
    max_basis_size: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// perp-table: restrict to closed subquasimodules.
    #[arg(long)]
    closed: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Clauses,
    ClosedNotSplitting,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// One of ex2, m3, ex1, fig5, n5-power; all of them when neither this
    /// nor --search is given.
    #[arg(long, conflicts_with = "search")]
    instance: Option<String>,
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    /// Sizes enumerated exhaustively (default: min(max-size, 6)).
    #[arg(long)]
    exhaustive_size: Option<usize>,
    #[arg(long, default_value_t = 20)]
    random_lattices: usize,
    #[arg(long, default_value_t = 2)]
    max_factors: usize,
    #[arg(long, default_value_t = 64)]
    max_carrier: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hypothesis to drop: 0-distributive or principal-factors. Repeatable.
    #[arg(long)]
    drop: Vec<String>,
    #[arg(long, value_enum, default_value_t = Target::Clauses)]
    target: Target,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Lattice, Error> {
    parse_lattice(&read(path)?)
}

fn load_qm(path: &Path) -> Result<CanonicalQm, Error> {
    let spec = parse_qm_spec(&read(path)?)?;
    spec.build(path.parent().unwrap_or(Path::new(".")), None)
}

fn is_lattice_file(path: &Path) -> Result<bool, Error> {
    Ok(read(path)?
        .lines()
        .map(str::trim)
        .any(|l| l.starts_with("elements:")))
}

/// Closed subquasimodules: the Galois-closed family when every factor is
/// 0-distributive, the closed members of `L(Q)` otherwise.
fn closed_family(qm: &CanonicalQm, budget: usize) -> Result<SubQmLattice, Error> {
    if qm.factors_zero_distributive() {
        return Ok(closed_subquasimodules(qm)?.base);
    }
    let subs = all_subquasimodules(qm, budget)?;
    Ok(SubQmLattice::from_nodes(
        subs.nodes()
            .iter()
            .filter(|p| is_closed(qm, p.members()))
            .cloned()
            .collect(),
    ))
}

fn lattice_check(out: &mut Out, file: &Path, format: Format) -> Result<u8, Error> {
    out.config(&format!("qmod lattice check {}", file.display()), &[("format", fmt_name(format).into())]);
    let l = load_lattice(file)?;
    let triple = |t: Option<(usize, usize, usize)>| t.map(|(x, y, z)| [l.name(x), l.name(y), l.name(z)]);
    let zd = triple(l.zero_distributive_violation());
    let modular = triple(l.modular_violation());
    let distributive = triple(l.distributive_violation());
    if format == Format::Structured {
        out.record(json!({
            "record": "lattice",
            "elements": l.names(),
            "size": l.len(),
            "bottom": l.name(l.bottom()),
            "top": l.name(l.top()),
            "covers": l.cover_pairs().iter().map(|&(x, y)| [l.name(x), l.name(y)]).collect::<Vec<_>>(),
            "zero_distributive": zd.is_none(),
            "zero_distributive_witness": zd,
            "modular": modular.is_none(),
            "modular_witness": modular,
            "distributive": distributive.is_none(),
            "distributive_witness": distributive,
        }));
        return Ok(0);
    }
    out.line(&format!("lattice: {} elements, valid", l.len()));
    out.line(&format!("bottom: {}, top: {}", l.name(l.bottom()), l.name(l.top())));
    let flag = |name: &str, w: Option<[&str; 3]>, explain: &dyn Fn([&str; 3]) -> String| match w {
        None => format!("{name}: yes"),
        Some(w) => format!("{name}: no, witness ({}) {}", w.join(","), explain(w)),
    };
    out.line(&flag("0-distributive", zd, &|[x, y, z]| {
        format!("{x}∧{z} = {y}∧{z} = 0 but ({x}∨{y})∧{z} ≠ 0")
    }));
    out.line(&flag("modular", modular, &|[x, y, z]| {
        format!("{x} ≤ {z} but {x}∨({y}∧{z}) ≠ ({x}∨{y})∧{z}")
    }));
    out.line(&flag("distributive", distributive, &|[x, y, z]| {
        format!("{x}∧({y}∨{z}) ≠ ({x}∧{y})∨({x}∧{z})")
    }));
    Ok(0)
}

fn fmt_name(f: Format) -> &'static str {
    match f {
        Format::Table => "table",
        Format::Structured => "structured",
    }
}

fn qm_action_name(a: QmAction) -> &'static str {
    match a {
        QmAction::Subs => "subs",
        QmAction::Closed => "closed",
        QmAction::Splitting => "splitting",
        QmAction::PerpTable => "perp-table",
        QmAction::Bases => "bases",
        QmAction::Verify => "verify",
    }
}

fn members_json(qm: &CanonicalQm, p: &SubQm) -> Vec<String> {
    p.members().iter().map(|v| qm.format_vector(v)).collect()
}

fn qm_command(out: &mut Out, a: &QmArgs) -> Result<u8, Error> {
    let mut cfg = vec![
        ("budget", a.budget.to_string()),
        ("format", fmt_name(a.format).to_string()),
    ];
    match a.action {
        QmAction::Bases => cfg.push(("max-basis-size", a.max_basis_size.to_string())),
        QmAction::PerpTable => cfg.push(("closed", a.closed.to_string())),
        QmAction::Verify => cfg.push(("seed", a.seed.to_string())),
        _ => {}
    }
    out.config(&format!("qmod qm {} {}", qm_action_name(a.action), a.file.display()), &cfg);
    let qm = load_qm(&a.file)?;
    out.comment(&format!(
        "Q = {} over a {}-element lattice, carrier {}",
        qm.describe(),
        qm.lattice().len(),
        qm.len()
    ));
    let structured = a.format == Format::Structured;
    match a.action {
        QmAction::Subs | QmAction::Closed | QmAction::Splitting => {
            let subs = all_subquasimodules(&qm, a.budget)?;
            let family: Vec<usize> = match a.action {
                QmAction::Subs => (0..subs.len()).collect(),
                QmAction::Closed => {
                    let closed = closed_family(&qm, a.budget)?;
                    closed
                        .nodes()
                        .iter()
                        .filter_map(|p| subs.position(p.members()))
                        .collect()
                }
                _ => (0..subs.len()).filter(|&i| is_splitting(&qm, subs.node(i))).collect(),
            };
            let what = qm_action_name(a.action);
            if structured {
                for &i in &family {
                    let p = subs.node(i);
                    out.record(json!({
                        "record": "subquasimodule",
                        "name": subs.name(i),
                        "size": p.len(),
                        "closed": is_closed(&qm, p.members()),
                        "splitting": is_splitting(&qm, p),
                        "members": members_json(&qm, p),
                    }));
                }
                out.record(json!({"record": "summary", "family": what, "count": family.len(), "of": subs.len()}));
            } else {
                out.comment(&format!("{} of {} subquasimodules ({what})", family.len(), subs.len()));
                render::family_table(out, &qm, &subs, &family);
            }
            Ok(0)
        }
        QmAction::PerpTable => {
            let subs = all_subquasimodules(&qm, a.budget)?;
            let rows: Vec<usize> = if a.closed {
                (0..subs.len()).filter(|&i| is_closed(&qm, subs.node(i).members())).collect()
            } else {
                (0..subs.len()).collect()
            };
            let name = |set: &qmod_core::VecSet| subs.name_of(set);
            let cols: Vec<[String; 3]> = rows
                .iter()
                .map(|&i| {
                    let p = subs.node(i).members();
                    let pp = perp(&qm, p);
                    let ppp = perp(&qm, &pp);
                    [
                        subs.name(i),
                        name(&pp).unwrap_or_else(|| "n/a".into()),
                        name(&ppp).unwrap_or_else(|| "n/a".into()),
                    ]
                })
                .collect();
            if structured {
                for (&i, c) in rows.iter().zip(&cols) {
                    let pp = perp(&qm, subs.node(i).members());
                    let ppp = perp(&qm, &pp);
                    let fmt = |s: &qmod_core::VecSet| s.iter().map(|v| qm.format_vector(v)).collect::<Vec<_>>();
                    out.record(json!({
                        "record": "perp",
                        "name": c[0],
                        "perp": name(&pp),
                        "perp_members": fmt(&pp),
                        "double_perp": name(&ppp),
                        "double_perp_members": fmt(&ppp),
                    }));
                }
            } else {
                render::perp_table(out, &cols);
            }
            Ok(0)
        }
        QmAction::Bases => {
            let full = SubQm::new(&qm, qm.full())?;
            let bases = find_bases(&qm, &full, a.max_basis_size, a.budget)?;
            let fmt = |b: &[usize]| b.iter().map(|&v| qm.format_vector(v)).collect::<Vec<_>>();
            if structured {
                for b in &bases {
                    out.record(json!({
                        "record": "basis",
                        "size": b.members.len(),
                        "orthogonal": b.orthogonal,
                        "members": fmt(&b.members),
                    }));
                }
                out.record(json!({"record": "summary", "family": "bases", "count": bases.len(), "max_size": a.max_basis_size}));
            } else {
                out.comment(&format!("{} bases with at most {} elements", bases.len(), a.max_basis_size));
                for b in &bases {
                    let flag = if b.orthogonal { "orthogonal" } else { "not orthogonal" };
                    out.line(&format!("{{{}}}  size {}  {flag}", fmt(&b.members).join(","), b.members.len()));
                }
            }
            Ok(0)
        }
        QmAction::Verify => {
            let opts = CheckOptions {
                seed: a.seed,
                budget: a.budget,
                ..CheckOptions::default()
            };
            let reports = check_all(&qm, &opts);
            Ok(emit_reports(out, &reports, structured))
        }
    }
}

fn export_dot(out: &mut Out, file: &Path, which: Which, o: Option<&Path>, budget: usize) -> Result<u8, Error> {
    let which_name = match which {
        Which::Lattice => "lattice",
        Which::Subs => "subs",
        Which::Closed => "closed",
    };
    let target = o.map_or("stdout".to_string(), |p| p.display().to_string());
    let dot = if is_lattice_file(file)? {
        match which {
            Which::Lattice => dot_lattice(&load_lattice(file)?, "L"),
            _ => {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("--which {which_name} needs a quasimodule spec file"),
                })
            }
        }
    } else {
        let qm = load_qm(file)?;
        match which {
            Which::Lattice => dot_lattice(qm.lattice(), "L"),
            Which::Subs => dot_family(&all_subquasimodules(&qm, budget)?, "L(Q)"),
            Which::Closed => dot_family(&closed_family(&qm, budget)?, "L_C(Q)"),
        }
    };
    let header = format!(
        "// qmod export dot {} which={which_name} budget={budget} out={target}\n",
        file.display()
    );
    match o {
        Some(path) => std::fs::write(path, format!("{header}{dot}"))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => out.raw(&format!("{header}{dot}")),
    }
    Ok(0)
}

fn verify_command(out: &mut Out, a: &VerifyArgs) -> Result<u8, Error> {
    let structured = a.format == Format::Structured;
    if a.search {
        let drop = a
            .drop
            .iter()
            .map(|d| Hypothesis::parse(d))
            .collect::<Result<Vec<_>, _>>()?;
        let exhaustive = a.exhaustive_size.unwrap_or(a.max_size.min(6));
        let target = match a.target {
            Target::Clauses => SearchTarget::Clauses,
            Target::ClosedNotSplitting => SearchTarget::ClosedNotSplitting,
        };
        let cfg = SearchConfig {
            max_size: a.max_size,
            exhaustive_size: exhaustive,
            random_lattices: a.random_lattices,
            max_factors: a.max_factors,
            max_carrier: a.max_carrier,
            seed: a.seed,
            drop,
            target,
            ..SearchConfig::default()
        };
        out.config(
            "qmod verify --search",
            &[
                ("max-size", a.max_size.to_string()),
                ("exhaustive-size", exhaustive.to_string()),
                ("random-lattices", a.random_lattices.to_string()),
                ("max-factors", a.max_factors.to_string()),
                ("max-carrier", a.max_carrier.to_string()),
                ("seed", a.seed.to_string()),
                ("drop", a.drop.join(",")),
                (
                    "target",
                    match a.target {
                        Target::Clauses => "clauses",
                        Target::ClosedNotSplitting => "closed-not-splitting",
                    }
                    .to_string(),
                ),
                ("format", fmt_name(a.format).to_string()),
            ],
        );
        let reports = counterexample_search(&cfg);
        return Ok(emit_reports(out, &reports, structured));
    }
    let instances: Vec<&str> = match &a.instance {
        Some(name) => vec![name.as_str()],
        None => INSTANCES.to_vec(),
    };
    out.config(
        "qmod verify",
        &[
            ("instance", instances.join(",")),
            ("seed", a.seed.to_string()),
            ("format", fmt_name(a.format).to_string()),
        ],
    );
    let opts = CheckOptions {
        seed: a.seed,
        ..CheckOptions::default()
    };
    let mut reports = Vec::new();
    for name in instances {
        reports.extend(reproduce_paper(name, &opts)?);
    }
    Ok(emit_reports(out, &reports, structured))
}

fn emit_reports(out: &mut Out, reports: &[TheoremReport], structured: bool) -> u8 {
    if structured {
        for r in reports {
            let mut v = serde_json::to_value(r).expect("reports serialize");
            if let Value::Object(map) = &mut v {
                map.insert("record".into(), Value::String("theorem".into()));
            }
            out.record(v);
        }
    } else {
        render::report_table(out, reports);
    }
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    u8::from(failed)
}

fn run(cli: &Cli, out: &mut Out) -> Result<u8, Error> {
    match &cli.command {
        Command::Lattice {
            action: LatticeAction::Check { file, format },
        } => lattice_check(out, file, *format),
        Command::Qm(a) => qm_command(out, a),
        Command::Export {
            action: ExportAction::Dot { file, which, o, budget },
        } => export_dot(out, file, *which, o.as_deref(), *budget),
        Command::Verify(a) => verify_command(out, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let structured = match &cli.command {
        Command::Lattice {
            action: LatticeAction::Check { format, .. },
        } => *format == Format::Structured,
        Command::Qm(a) => a.format == Format::Structured,
        Command::Verify(a) => a.format == Format::Structured,
        Command::Export { .. } => false,
    };
    let mut out = Out::new(structured);
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let hint = match e {
                Error::EnumerationBudgetExceeded(_) => "; raise --budget or use a smaller quasimodule",
                _ => "",
            };
            out.flush();
            eprintln!("error: {e}{hint}");
            return ExitCode::from(2);
        }
    };
    out.flush();
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
