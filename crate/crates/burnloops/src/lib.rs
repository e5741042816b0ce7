//! Verification harness, report formats and CLI plumbing for the Burn loop
//! families. The algebra lives in `burnloops-core`; this crate adds the
//! claim/report machinery, the five theorem verifiers, the Cayley-table text
//! format and the command-line interface.

pub mod cayley;
pub mod cli;
pub mod report;
pub mod verify;
