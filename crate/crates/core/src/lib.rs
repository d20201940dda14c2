//! A checker for higher-order logic proofs stored as JSON theory files,
//! with proof macros that can be trusted or expanded into primitive steps.

pub mod conv;
pub mod kernel;
pub mod macros;
pub mod numeral;
pub mod proof;
pub mod syntax;
pub mod theory;
