//! Rewrites theory files in canonical form: `canonicalize FILE...`.
//! Imports are resolved from each file's own directory.

use std::path::PathBuf;
use std::process::ExitCode;

use holcheck::theory::{load_theory, save_theory};

fn main() -> ExitCode {
    let mut code = ExitCode::SUCCESS;
    for arg in std::env::args_os().skip(1) {
        let path = PathBuf::from(arg);
        match load_theory(&path, &[]).and_then(|thy| save_theory(&thy, &path)) {
            Ok(()) => println!("{}", path.display()),
            Err(e) => {
                eprintln!("error: {e}");
                code = ExitCode::FAILURE;
            }
        }
    }
    code
}
