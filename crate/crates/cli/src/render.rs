//! Plain-text tables and the JSON-lines writer.

use std::io::Write as _;

use serde_json::{Map, Value};

use qmod_core::galois::{is_closed, is_splitting};
use qmod_core::subquasi::SubQmLattice;
use qmod_core::verify::{Status, TheoremReport};
use qmod_core::CanonicalQm;

/// Buffered stdout. In structured mode only JSON records are written.
pub struct Out {
    structured: bool,
    buf: String,
}

impl Out {
    pub fn new(structured: bool) -> Out {
        Out {
            structured,
            buf: String::new(),
        }
    }

    /// Echo of the effective configuration.
    pub fn config(&mut self, command: &str, settings: &[(&str, String)]) {
        if self.structured {
            let mut map = Map::new();
            map.insert("record".into(), "config".into());
            map.insert("command".into(), command.into());
            for (k, v) in settings {
                map.insert((*k).into(), v.clone().into());
            }
            self.record(Value::Object(map));
        } else {
            let rest: Vec<String> = settings.iter().map(|(k, v)| format!("{k}={v}")).collect();
            self.comment(&format!("{command} {}", rest.join(" ")));
        }
    }

    pub fn comment(&mut self, text: &str) {
        if !self.structured {
            self.buf.push_str("# ");
            self.buf.push_str(text);
            self.buf.push('\n');
        }
    }

    pub fn line(&mut self, text: &str) {
        self.buf.push_str(text.trim_end());
        self.buf.push('\n');
    }

    pub fn raw(&mut self, text: &str) {
        self.buf.push_str(text);
    }

    pub fn record(&mut self, v: Value) {
        self.buf.push_str(&v.to_string());
        self.buf.push('\n');
    }

    pub fn flush(&mut self) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(self.buf.as_bytes());
        self.buf.clear();
    }
}

fn pad(s: &str, width: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(width.saturating_sub(n)))
}

pub fn family_table(out: &mut Out, qm: &CanonicalQm, subs: &SubQmLattice, family: &[usize]) {
    let width = family.iter().map(|&i| subs.name(i).len()).max().unwrap_or(0);
    for &i in family {
        let p = subs.node(i);
        let mut flags = Vec::new();
        if is_closed(qm, p.members()) {
            flags.push("closed");
        }
        if is_splitting(qm, p) {
            flags.push("splitting");
        }
        let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
        out.line(&format!(
            "{}  {:>3}  {}  {}",
            pad(&subs.name(i), width),
            p.len(),
            pad(&flags, 16),
            qm.format_set(p.members())
        ));
    }
}

/// Three rows `P`, `P^⊥`, `P^⊥⊥`, ten columns per block.
pub fn perp_table(out: &mut Out, cols: &[[String; 3]]) {
    const HEADS: [&str; 3] = ["P", "P^⊥", "P^⊥⊥"];
    for (k, chunk) in cols.chunks(10).enumerate() {
        if k > 0 {
            out.line("");
        }
        let width = chunk
            .iter()
            .flat_map(|c| c.iter().map(|s| s.chars().count()))
            .max()
            .unwrap_or(0);
        for (row, head) in HEADS.iter().enumerate() {
            if row > 0 {
                let rule = vec!["-".repeat(width); chunk.len()];
                out.line(&format!("{}-+-{}", "-".repeat(5), rule.join("-+-")));
            }
            let cells: Vec<String> = chunk.iter().map(|c| pad(&c[row], width)).collect();
            out.line(&format!("{} | {}", pad(head, 5), cells.join(" | ")));
        }
    }
}

pub fn report_table(out: &mut Out, reports: &[TheoremReport]) {
    let width = reports.iter().map(|r| r.id.chars().count()).max().unwrap_or(0);
    let mut counts = [0usize; 5];
    for r in reports {
        counts[status_rank(r.status)] += 1;
        out.line(&format!(
            "{}  {}  {}",
            pad(r.status.as_str(), 18),
            pad(&r.id, width),
            r.detail
        ));
        out.line(&format!("    instance: {}", r.instance));
        if !r.scope.is_empty() {
            out.line(&format!("    scope: {}", r.scope));
        }
        if let Some(w) = &r.witness {
            let sets: Vec<String> = w
                .sets
                .iter()
                .map(|s| format!("{} = {{{}}}", s.name, s.members.join(",")))
                .collect();
            out.line(&format!("    witness ({}): {}", w.check, sets.join("; ")));
            if let Some(p) = w.param {
                out.line(&format!("    parameter: {p}"));
            }
            if !w.note.is_empty() {
                out.line(&format!("    note: {}", w.note));
            }
            out.line(&format!(
                "    lattice: {}  factors: {}",
                w.lattice.trim_end().replace('\n', "; "),
                w.factors.join("; ")
            ));
        }
    }
    let names = ["pass", "fail", "hypothesis-not-met", "refuted", "budget-exceeded"];
    let summary: Vec<String> = names
        .iter()
        .zip(counts)
        .filter(|(_, c)| *c > 0)
        .map(|(n, c)| format!("{c} {n}"))
        .collect();
    out.line(&format!("# {} reports: {}", reports.len(), summary.join(", ")));
}

fn status_rank(s: Status) -> usize {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::HypothesisNotMet => 2,
        Status::Refuted => 3,
        Status::BudgetExceeded => 4,
    }
}
