//! Command-line harness for the `supertree` structures.

pub mod bench;
pub mod exec;
pub mod script;
