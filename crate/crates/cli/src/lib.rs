//! Library half of the `qwalk` binary: argument types, file formats and
//! the command runners, exposed so integration tests can drive the exact
//! code paths the binary uses.

pub mod args;
pub mod error;
pub mod io;
pub mod run;

pub use error::CliError;
