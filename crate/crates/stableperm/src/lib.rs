//! Files, command line, and the verification suites built on
//! `stableperm-core`.

pub mod cli;
pub mod grace;
pub mod io;
pub mod numeric;
pub mod report;
pub mod suites;
