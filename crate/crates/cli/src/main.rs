//! `holcheck`: check, expand and measure HOL theory files.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use holcheck::macros::TrustPolicy;
use holcheck::proof::{expand_fully, linearize, to_dag, Env, DEFAULT_BUDGET};
use holcheck::theory::{check_theory, to_json_string, CheckOptions, ItemKind, Loader, Theory, TheoryError};

use report::{check_json, print_check_human, print_stats_human, stats_json, theorem_stats};

#[derive(Parser)]
#[command(name = "holcheck", version, about = "Checker for HOL theory files with proof macros")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Trust macros whose level is at most N instead of expanding them.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    trust: u32,

    /// Fail theorems whose proofs contain `sorry` steps.
    #[arg(long, global = true)]
    no_gaps: bool,

    /// Stop checking a theory at its first failing theorem.
    #[arg(long, global = true)]
    fail_fast: bool,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Human)]
    report: ReportFormat,

    /// Directory searched for imported theories; may be repeated.
    #[arg(long = "path", global = true, value_name = "DIR")]
    path: Vec<PathBuf>,

    /// Rewriting step budget for conversions.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_name = "N")]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check every theorem of the given theories.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Replace a theorem's proof by its fully macro-expanded form.
    Expand {
        file: PathBuf,
        theorem: String,
        /// Where to write the resulting theory (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare proof sizes at the configured trust level with full expansion.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Human,
    Json,
}

const EXIT_FAILED: u8 = 1;
const EXIT_LOAD: u8 = 2;

/// Import search path: `--path` directories, then `HOLCHECK_PATH`. The
/// loader appends each input file's own directory.
fn search_path(cli: &Cli) -> Vec<PathBuf> {
    let mut dirs = cli.path.clone();
    if let Some(env) = std::env::var_os("HOLCHECK_PATH") {
        dirs.extend(std::env::split_paths(&env).filter(|p| !p.as_os_str().is_empty()));
    }
    dirs
}

fn load(cli: &Cli, file: &Path) -> Result<Arc<Theory>, TheoryError> {
    Loader::new(search_path(cli)).load_file(file)
}

fn options(cli: &Cli) -> CheckOptions<'static> {
    CheckOptions {
        trust: TrustPolicy::new(cli.trust),
        no_gaps: cli.no_gaps,
        fail_fast: cli.fail_fast,
        budget: cli.budget,
        ..CheckOptions::default()
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes());
}

fn cmd_check(cli: &Cli, files: &[PathBuf]) -> u8 {
    let opts = options(cli);
    let mut code = 0;
    let mut reports = Vec::new();
    for file in files {
        let thy = match load(cli, file) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                code = EXIT_LOAD;
                continue;
            }
        };
        let report = check_theory(&thy, &opts);
        if !report.is_ok() && code == 0 {
            code = EXIT_FAILED;
        }
        reports.push((file.clone(), thy, report));
    }
    match cli.report {
        ReportFormat::Human => {
            let mut s = String::new();
            for (file, _, r) in &reports {
                print_check_human(&mut s, file, r);
            }
            emit(&s);
        }
        ReportFormat::Json => {
            let v = check_json(&reports, cli.trust);
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes")));
        }
    }
    code
}

fn cmd_expand(cli: &Cli, file: &Path, theorem: &str, output: Option<&Path>) -> u8 {
    let thy = match load(cli, file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_LOAD;
        }
    };
    let expanded = (|| -> Result<String, String> {
        let (index, item) = thy.item(theorem).ok_or_else(|| format!("no theorem named `{theorem}`"))?;
        let ItemKind::Theorem { vars, proof, .. } = &item.kind else {
            return Err(format!("item `{theorem}` is not a proved theorem"));
        };
        let env = Env::new(&thy)
            .with_vars(vars.clone())
            .with_budget(cli.budget)
            .before_item(index);
        let dag = to_dag(proof, &env).map_err(|e| format!("{theorem}: {e}"))?;
        if !dag.has_macros() {
            return to_json_string(&thy).map_err(|e| e.to_string());
        }
        let full = expand_fully(&dag, &env).map_err(|e| format!("{theorem}: {e}"))?;
        let linear = linearize(&full, &env).map_err(|e| format!("{theorem}: {e}"))?;
        let mut out = (*thy).clone();
        out.set_proof(index, linear).map_err(|e| e.to_string())?;
        to_json_string(&out).map_err(|e| e.to_string())
    })();
    let text = match expanded {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILED;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAILED;
            }
        }
        None => emit(&text),
    }
    0
}

fn cmd_stats(cli: &Cli, file: &Path) -> u8 {
    let thy = match load(cli, file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_LOAD;
        }
    };
    let rows = theorem_stats(&thy, &options(cli));
    let code = if rows.iter().any(|r| r.error.is_some()) { EXIT_FAILED } else { 0 };
    match cli.report {
        ReportFormat::Human => emit(&print_stats_human(&thy.name, cli.trust, &rows)),
        ReportFormat::Json => {
            let v = stats_json(&thy.name, cli.trust, &rows);
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes")));
        }
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check { files } => cmd_check(&cli, files),
        Command::Expand { file, theorem, output } => cmd_expand(&cli, file, theorem, output.as_deref()),
        Command::Stats { file } => cmd_stats(&cli, file),
    };
    ExitCode::from(code)
}
