#![allow(dead_code)]

pub mod dag;
pub mod gen;
pub mod macro_inputs;
pub mod match_oracle;
pub mod named;
pub mod rule_cases;

use std::path::PathBuf;
use std::sync::Arc;

use holcheck::theory::{load_theory, Theory};

pub fn theories_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../theories")
}

pub fn fixture(name: &str) -> Arc<Theory> {
    let path = theories_dir().join(format!("{name}.json"));
    load_theory(&path, &[]).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}
