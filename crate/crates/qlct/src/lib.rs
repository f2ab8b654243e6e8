//! File formats, the `qlct` command line and the verification ledger for
//! [`qlct_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod verify;

pub use error::{exit, CliError};
