//! Library side of the `latpoly` binary: the census file format, the report
//! model, the subcommand implementations, and the self-check battery.

pub mod census_io;
pub mod check;
pub mod commands;
pub mod report;
