use super::{schematize, ItemKind, Theory};
use crate::kernel::Sequent;
use crate::macros::{builtin_macros, MacroRegistry, TrustPolicy};
use crate::proof::{check_linear_proof, CheckReport, Env, DEFAULT_BUDGET};

#[derive(Clone, Copy)]
pub struct CheckOptions<'a> {
    pub trust: TrustPolicy,
    /// Treat `sorry` steps as failures.
    pub no_gaps: bool,
    /// Stop at the first failing theorem; later ones are reported skipped.
    pub fail_fast: bool,
    pub budget: usize,
    pub macros: &'a MacroRegistry,
}

impl Default for CheckOptions<'_> {
    fn default() -> Self {
        CheckOptions {
            trust: TrustPolicy::default(),
            no_gaps: false,
            fail_fast: false,
            budget: DEFAULT_BUDGET,
            macros: builtin_macros(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Ok(CheckReport),
    Failed(String),
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub name: String,
    pub index: usize,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryCheckReport {
    pub theory: String,
    pub theorems: Vec<TheoremReport>,
}

impl TheoryCheckReport {
    pub fn passed(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Ok(_)))
    }

    pub fn failed(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Failed(_)))
    }

    pub fn skipped(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Skipped))
    }

    pub fn is_ok(&self) -> bool {
        self.failed() == 0 && self.skipped() == 0
    }

    fn count(&self, f: impl Fn(&Outcome) -> bool) -> usize {
        self.theorems.iter().filter(|t| f(&t.outcome)).count()
    }

    fn reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.theorems.iter().filter_map(|t| match &t.outcome {
            Outcome::Ok(r) => Some(r),
            _ => None,
        })
    }

    pub fn total_steps(&self) -> usize {
        self.reports().map(|r| r.steps_checked).sum()
    }

    pub fn total_gaps(&self) -> usize {
        self.reports().map(|r| r.gaps.len()).sum()
    }

    /// Names of accepted theorems whose proofs contain `sorry`.
    pub fn theorems_with_gaps(&self) -> Vec<&str> {
        self.theorems
            .iter()
            .filter(|t| matches!(&t.outcome, Outcome::Ok(r) if !r.gaps.is_empty()))
            .map(|t| t.name.as_str())
            .collect()
    }

    pub fn macro_steps_trusted(&self) -> usize {
        self.reports().map(|r| r.macro_steps_trusted).sum()
    }

    pub fn macro_steps_expanded(&self) -> usize {
        self.reports().map(|r| r.macro_steps_expanded).sum()
    }
}

/// Checks the proof of theorem item `index` against its statement.
pub fn check_theorem(thy: &Theory, index: usize, opts: &CheckOptions) -> Result<CheckReport, String> {
    let item = &thy.items()[index];
    let ItemKind::Theorem {
        vars,
        prop,
        proof,
        num_gaps,
        ..
    } = &item.kind
    else {
        return Err(format!("item `{}` is not a theorem", item.name));
    };
    let env = Env::new(thy)
        .with_macros(opts.macros)
        .with_vars(vars.clone())
        .with_budget(opts.budget)
        .before_item(index);
    let report = check_linear_proof(proof, &env, opts.trust).map_err(|e| e.to_string())?;
    let stated = Sequent::concl(prop.clone());
    if report.conclusion != stated && report.conclusion != Sequent::concl(schematize(prop, vars)) {
        return Err(format!(
            "proof concludes {} but the theorem states {}",
            report.conclusion, stated
        ));
    }
    if let Some(n) = num_gaps {
        if *n as usize != report.gaps.len() {
            return Err(format!("declares {n} gaps but the proof has {}", report.gaps.len()));
        }
    }
    if opts.no_gaps && !report.gaps.is_empty() {
        let ids: Vec<String> = report.gaps.iter().map(ToString::to_string).collect();
        return Err(format!("proof has gaps at {}", ids.join(", ")));
    }
    Ok(report)
}

/// Checks every theorem of `thy` in order.
pub fn check_theory(thy: &Theory, opts: &CheckOptions) -> TheoryCheckReport {
    let mut theorems = Vec::new();
    let mut stop = false;
    for (index, item) in thy.items().iter().enumerate() {
        if !matches!(item.kind, ItemKind::Theorem { .. }) {
            continue;
        }
        let outcome = if stop {
            Outcome::Skipped
        } else {
            match check_theorem(thy, index, opts) {
                Ok(r) => Outcome::Ok(r),
                Err(e) => {
                    stop = opts.fail_fast;
                    Outcome::Failed(e)
                }
            }
        };
        theorems.push(TheoremReport {
            name: item.name.clone(),
            index,
            outcome,
        });
    }
    TheoryCheckReport {
        theory: thy.name.clone(),
        theorems,
    }
}
