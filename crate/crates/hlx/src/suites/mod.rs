//! Verification suites behind the subcommands and the acceptance tests.

pub mod blocks;
pub mod checks;
pub mod cp0;
pub mod identities;
pub mod lattice;
pub mod paper;
pub mod steinberg;
pub mod tpd;
