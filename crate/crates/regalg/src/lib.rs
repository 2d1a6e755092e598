//! Reports for the `regalg` command line: enumeration, invariants,
//! pairwise verdicts, family classification and the verification suites.

pub mod commands;
pub mod output;
pub mod verify;

pub use commands::{DrcSelection, Family};
pub use output::{render, Format, Report};
pub use verify::{Suite, VerifyConfig};
