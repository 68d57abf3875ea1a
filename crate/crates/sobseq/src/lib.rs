//! IO, file formats, verification suites and demo scenarios for the
//! `sobseq-core` sequence-space library. The `sobseq` binary in this crate
//! exposes everything on the command line with machine-readable output.

pub mod demos;
pub mod error;
pub mod jsonl;
pub mod schema;
pub mod verify;

pub use error::{exit_code, CliError};
pub use sobseq_core as core;
