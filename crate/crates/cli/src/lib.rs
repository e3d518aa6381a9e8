//! Support code for the `arcfact` binary: argument resolution, exit codes and
//! the reproduction suite.

pub mod input;
pub mod repro;

use arcfact_core::Error;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_LIMIT: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// Exit status for an error that aborted a command.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceLimit { .. } => EXIT_LIMIT,
        Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}
