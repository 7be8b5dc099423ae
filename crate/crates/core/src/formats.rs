//! Text formats: lattice files, quasimodule spec files and DOT export.
//!
//! Lattice file:
//!
//! ```text
//! # comment
//! elements: 0 a b c 1
//! 0 <= a
//! a <= c
//! ```
//!
//! Quasimodule spec file: one `lattice: PATH` (relative to the spec file)
//! or `builtin: NAME` line, then one or more `factor: principal Q` or
//! `factor: set X Y ..` lines.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{builtin, Ideal, Lattice};
use crate::quasimodule::{CanonicalQm, DEFAULT_CARRIER_CAP};
use crate::subquasi::SubQmLattice;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Meaningful lines with their 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let mut names: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("elements:") {
            if names.is_some() {
                return Err(parse_err(no, "duplicate `elements:` header"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.is_empty() {
                return Err(parse_err(no, "empty element list"));
            }
            names = Some(list);
            continue;
        }
        let Some(known) = names.as_ref() else {
            return Err(parse_err(no, "expected `elements:` header first"));
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [x, "<=", y] => {
                for label in [x, y] {
                    if !known.iter().any(|n| n == label) {
                        return Err(parse_err(no, format!("unknown element `{label}`")));
                    }
                }
                pairs.push((x.to_string(), y.to_string()));
            }
            _ => return Err(parse_err(no, format!("expected `x <= y`, got `{line}`"))),
        }
    }
    let names = names.ok_or_else(|| parse_err(0, "missing `elements:` header"))?;
    Lattice::build(&names, &pairs)
}

/// Writes the lattice back in file format using cover pairs only.
pub fn format_lattice(l: &Lattice) -> String {
    let mut out = format!("elements: {}\n", l.names().join(" "));
    for (x, y) in l.cover_pairs() {
        let _ = writeln!(out, "{} <= {}", l.name(x), l.name(y));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSource {
    File(PathBuf),
    Builtin(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    Principal(String),
    Set(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmSpec {
    pub lattice: LatticeSource,
    pub factors: Vec<FactorSpec>,
}

pub fn parse_qm_spec(text: &str) -> Result<QmSpec> {
    let mut lattice = None;
    let mut factors = Vec::new();
    for (no, line) in content_lines(text) {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(no, format!("expected `key: value`, got `{line}`")))?;
        let value = value.trim();
        match key.trim() {
            "lattice" | "builtin" if lattice.is_some() => {
                return Err(parse_err(no, "lattice given twice"));
            }
            "lattice" => lattice = Some(LatticeSource::File(PathBuf::from(value))),
            "builtin" => lattice = Some(LatticeSource::Builtin(value.to_string())),
            "factor" => factors.push(parse_factor(no, value)?),
            other => return Err(parse_err(no, format!("unknown key `{other}`"))),
        }
    }
    let lattice = lattice.ok_or_else(|| parse_err(0, "missing `lattice:` or `builtin:` line"))?;
    if factors.is_empty() {
        return Err(parse_err(0, "no `factor:` lines"));
    }
    Ok(QmSpec { lattice, factors })
}

/// Parses the value of a `factor:` line.
pub fn parse_factor(line: usize, value: &str) -> Result<FactorSpec> {
    let words: Vec<&str> = value.split_whitespace().collect();
    match words.as_slice() {
        ["principal", q] => Ok(FactorSpec::Principal(q.to_string())),
        ["set", rest @ ..] if !rest.is_empty() => {
            Ok(FactorSpec::Set(rest.iter().map(|s| s.to_string()).collect()))
        }
        _ => Err(parse_err(
            line,
            "expected `factor: principal Q` or `factor: set X Y ..`",
        )),
    }
}

pub fn resolve_factors(specs: &[FactorSpec], l: &Lattice) -> Result<Vec<Ideal>> {
    specs
        .iter()
        .map(|f| match f {
            FactorSpec::Principal(q) => l.principal_ideal(l.index_of(q)?),
            FactorSpec::Set(items) => {
                let mut s = ElemSet::EMPTY;
                for it in items {
                    s.insert(l.index_of(it)?);
                }
                Ok(Ideal::from_members(s))
            }
        })
        .collect()
}

/// Builds a quasimodule from lattice file text and `factor:` lines.
pub fn qm_from_text(lattice: &str, factor_lines: &[String]) -> Result<CanonicalQm> {
    let l = Arc::new(parse_lattice(lattice)?);
    let mut specs = Vec::new();
    for (i, line) in factor_lines.iter().enumerate() {
        let value = line
            .trim()
            .strip_prefix("factor:")
            .ok_or_else(|| parse_err(i + 1, format!("expected `factor:` line, got `{line}`")))?;
        specs.push(parse_factor(i + 1, value)?);
    }
    CanonicalQm::new(l.clone(), resolve_factors(&specs, &l)?)
}

impl QmSpec {
    pub fn load_lattice(&self, base_dir: &Path) -> Result<Lattice> {
        match &self.lattice {
            LatticeSource::Builtin(name) => builtin(name),
            LatticeSource::File(p) => {
                let path = base_dir.join(p);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                parse_lattice(&text)
            }
        }
    }

    /// Resolves the lattice (file paths relative to `base_dir`) and builds
    /// the quasimodule.
    pub fn build(&self, base_dir: &Path, cap: Option<usize>) -> Result<CanonicalQm> {
        let l = Arc::new(self.load_lattice(base_dir)?);
        let factors = resolve_factors(&self.factors, &l)?;
        CanonicalQm::with_cap(l, factors, cap.unwrap_or(DEFAULT_CARRIER_CAP))
    }
}

/// `factor:` lines describing the factors of `qm`.
pub fn format_factors(qm: &CanonicalQm) -> Vec<String> {
    let l = qm.lattice();
    qm.factors()
        .iter()
        .map(|f| match f.generator(l) {
            Some(q) => format!("factor: principal {}", l.name(q)),
            None => format!(
                "factor: set {}",
                f.members()
                    .iter()
                    .map(|x| l.name(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        })
        .collect()
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_graph(title: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(title));
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n");
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(label));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a lattice, nodes labelled by element names.
pub fn dot_lattice(l: &Lattice, title: &str) -> String {
    dot_graph(title, l.names(), &l.cover_pairs())
}

/// Hasse diagram of a family of subquasimodules, nodes labelled `P1..Pk`.
pub fn dot_family(family: &SubQmLattice, title: &str) -> String {
    let labels: Vec<String> = (0..family.len()).map(|i| family.name(i)).collect();
    dot_graph(title, &labels, &family.covers())
}

#[cfg(test)]
mod tests {
    use super::*;

    const N5: &str = "# N5\nelements: 0 a b c 1\n0 <= a\n0 <= b\na <= c\nc <= 1\nb <= 1\n";

    #[test]
    fn parses_n5() {
        let l = parse_lattice(N5).unwrap();
        assert_eq!(l, builtin("n5").unwrap());
    }

    #[test]
    fn round_trips_builtins() {
        for name in ["n5", "m3", "fig5", "chain_4", "boolean_3", "chain_1"] {
            let l = builtin(name).unwrap();
            assert_eq!(parse_lattice(&format_lattice(&l)).unwrap(), l, "{name}");
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_lattice("elements: 0 1\n0 <= 1\n0 < 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_lattice("0 <= 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_lattice("elements: 0 1\n0 <= 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_lattice("elements: x y\n").unwrap_err();
        assert!(matches!(err, Error::NotBounded(_)));
    }

    #[test]
    fn qm_spec_builds() {
        let spec = parse_qm_spec("builtin: n5\nfactor: principal 1\nfactor: set 0 a\n").unwrap();
        let qm = spec.build(Path::new("."), None).unwrap();
        assert_eq!(qm.len(), 10);
        assert_eq!(qm.describe(), "[0,1] x [0,a]");
        assert_eq!(format_factors(&qm), ["factor: principal 1", "factor: principal a"]);

        let bad = parse_qm_spec("builtin: n5\nfactor: set a b\n").unwrap();
        assert_eq!(
            bad.build(Path::new("."), None).unwrap_err(),
            Error::FactorNotIdeal(0)
        );
        assert!(matches!(
            parse_qm_spec("builtin: n5\nfactor: cyclic a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_qm_spec("factor: principal a\n").is_err());
    }

    #[test]
    fn qm_round_trips_through_text() {
        let spec = parse_qm_spec("builtin: fig5\nfactor: principal b\nfactor: principal c\n").unwrap();
        let qm = spec.build(Path::new("."), None).unwrap();
        let again = qm_from_text(&format_lattice(qm.lattice()), &format_factors(&qm)).unwrap();
        assert_eq!(again.describe(), qm.describe());
        assert_eq!(again.len(), qm.len());
    }

    #[test]
    fn dot_output_is_covers_only() {
        let dot = dot_lattice(&builtin("n5").unwrap(), "n5");
        assert_eq!(dot.matches("->").count(), 5);
        assert!(dot.contains("n0 [label=\"0\"]"));
    }
}
