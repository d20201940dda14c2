//! Human and JSON renderings of check and stats results.

use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use holcheck::kernel::Sequent;
use holcheck::macros::TrustPolicy;
use holcheck::syntax::Printer;
use holcheck::theory::{check_theorem, CheckOptions, ItemKind, Outcome, Theory, TheoryCheckReport};
use serde_json::{json, Value};

/// Prints a conclusion the way the theorem's own statement would be written.
fn show(thy: &Theory, index: usize, seq: &Sequent) -> String {
    let sig = thy.signature_before(index);
    match &thy.items()[index].kind {
        ItemKind::Theorem { vars, .. } => Printer::new(sig).with_ctx(vars).sequent(seq),
        _ => Printer::new(sig).sequent(seq),
    }
    .unwrap_or_else(|_| seq.to_string())
}

pub fn print_check_human(out: &mut String, file: &Path, r: &TheoryCheckReport) {
    let _ = writeln!(out, "theory {} ({})", r.theory, file.display());
    let width = r.theorems.iter().map(|t| t.name.len()).max().unwrap_or(0);
    for t in &r.theorems {
        let _ = match &t.outcome {
            Outcome::Ok(c) => {
                let gaps = if c.gaps.is_empty() {
                    String::new()
                } else {
                    format!(", {} gap(s)", c.gaps.len())
                };
                writeln!(
                    out,
                    "  ok      {:width$}  {} steps, {} trusted, {} expanded{gaps}",
                    t.name, c.steps_checked, c.macro_steps_trusted, c.macro_steps_expanded
                )
            }
            Outcome::Failed(e) => writeln!(out, "  FAILED  {:width$}  {e}", t.name),
            Outcome::Skipped => writeln!(out, "  skipped {:width$}", t.name),
        };
    }
    let _ = writeln!(
        out,
        "{}: {} passed, {} failed, {} skipped; {} steps, {} trusted, {} expanded, {} gaps",
        r.theory,
        r.passed(),
        r.failed(),
        r.skipped(),
        r.total_steps(),
        r.macro_steps_trusted(),
        r.macro_steps_expanded(),
        r.total_gaps()
    );
}

fn theory_json(file: &Path, thy: &Theory, r: &TheoryCheckReport) -> Value {
    let theorems: Vec<Value> = r
        .theorems
        .iter()
        .map(|t| match &t.outcome {
            Outcome::Ok(c) => json!({
                "name": t.name,
                "index": t.index,
                "status": "ok",
                "conclusion": show(thy, t.index, &c.conclusion),
                "steps_checked": c.steps_checked,
                "macro_steps_trusted": c.macro_steps_trusted,
                "macro_steps_expanded": c.macro_steps_expanded,
                "gaps": c.gaps.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            Outcome::Failed(e) => json!({
                "name": t.name,
                "index": t.index,
                "status": "failed",
                "error": e,
            }),
            Outcome::Skipped => json!({
                "name": t.name,
                "index": t.index,
                "status": "skipped",
            }),
        })
        .collect();
    json!({
        "theory": r.theory,
        "file": file.display().to_string(),
        "ok": r.is_ok(),
        "theorems": theorems,
        "totals": {
            "passed": r.passed(),
            "failed": r.failed(),
            "skipped": r.skipped(),
            "steps_checked": r.total_steps(),
            "macro_steps_trusted": r.macro_steps_trusted(),
            "macro_steps_expanded": r.macro_steps_expanded(),
            "gaps": r.total_gaps(),
        },
        "theorems_with_gaps": r.theorems_with_gaps(),
    })
}

pub fn check_json(reports: &[(PathBuf, Arc<Theory>, TheoryCheckReport)], trust: u32) -> Value {
    let theories: Vec<Value> = reports.iter().map(|(f, t, r)| theory_json(f, t, r)).collect();
    json!({
        "trust": trust,
        "ok": reports.iter().all(|(_, _, r)| r.is_ok()),
        "theories": theories,
    })
}

/// Size of one theorem's proof as written and when fully expanded.
pub struct TheoremStats {
    pub name: String,
    pub items: usize,
    pub macro_items: usize,
    /// Steps checked at the configured trust level.
    pub steps: usize,
    /// Steps checked with every macro expanded.
    pub expanded_steps: usize,
    pub error: Option<String>,
}

impl TheoremStats {
    pub fn ratio(&self) -> f64 {
        if self.steps == 0 {
            1.0
        } else {
            self.expanded_steps as f64 / self.steps as f64
        }
    }
}

pub fn theorem_stats(thy: &Theory, opts: &CheckOptions) -> Vec<TheoremStats> {
    let full = CheckOptions {
        trust: TrustPolicy::new(0),
        ..*opts
    };
    let mut rows = Vec::new();
    for (index, item) in thy.items().iter().enumerate() {
        let ItemKind::Theorem { proof, .. } = &item.kind else {
            continue;
        };
        let macro_items = proof.items.iter().filter(|i| opts.macros.get(&i.rule).is_some()).count();
        let mut row = TheoremStats {
            name: item.name.clone(),
            items: proof.items.len(),
            macro_items,
            steps: 0,
            expanded_steps: 0,
            error: None,
        };
        match check_theorem(thy, index, opts).and_then(|a| Ok((a, check_theorem(thy, index, &full)?))) {
            Ok((at_trust, expanded)) => {
                row.steps = at_trust.steps_checked;
                row.expanded_steps = expanded.steps_checked;
            }
            Err(e) => row.error = Some(e),
        }
        rows.push(row);
    }
    rows
}

pub fn print_stats_human(theory: &str, trust: u32, rows: &[TheoremStats]) -> String {
    let mut out = String::new();
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max("theorem".len());
    let _ = writeln!(out, "theory {theory}, trust {trust}");
    let _ = writeln!(
        out,
        "{:width$}  {:>6}  {:>6}  {:>8}  {:>9}  {:>8}",
        "theorem", "items", "macros", "steps", "expanded", "ratio"
    );
    for r in rows {
        let _ = match &r.error {
            None => writeln!(
                out,
                "{:width$}  {:>6}  {:>6}  {:>8}  {:>9}  {:>8.2}",
                r.name,
                r.items,
                r.macro_items,
                r.steps,
                r.expanded_steps,
                r.ratio()
            ),
            Some(e) => writeln!(out, "{:width$}  FAILED: {e}", r.name),
        };
    }
    out
}

pub fn stats_json(theory: &str, trust: u32, rows: &[TheoremStats]) -> Value {
    let theorems: Vec<Value> = rows
        .iter()
        .map(|r| match &r.error {
            None => json!({
                "name": r.name,
                "items": r.items,
                "macro_items": r.macro_items,
                "steps": r.steps,
                "expanded_steps": r.expanded_steps,
                "ratio": r.ratio(),
            }),
            Some(e) => json!({
                "name": r.name,
                "items": r.items,
                "macro_items": r.macro_items,
                "error": e,
            }),
        })
        .collect();
    json!({
        "theory": theory,
        "trust": trust,
        "theorems": theorems,
    })
}
