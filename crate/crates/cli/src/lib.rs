//! Scan harness and verification suite behind the `dpsym` binary.

#![forbid(unsafe_code)]

pub mod scan;
pub mod suite;
