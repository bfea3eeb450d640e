//! Command-line front end. Exit codes: 0 success, 2 malformed input,
//! 3 polynomial or data preconditions, 4 group too large, 10 several
//! candidate groups remain, 11 no candidate remains.

pub mod args;
pub mod commands;
pub mod resolve;

use clap::Parser;
use frobchar::Error;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;
pub const EXIT_MULTIPLE: i32 = 10;
pub const EXIT_NONE: i32 = 11;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GroupTooLarge { .. } => EXIT_TOO_LARGE,
        Error::ConstantPolynomial
        | Error::NotSquarefree
        | Error::Ramified(_)
        | Error::NotPrime(_)
        | Error::NotInRestrictionImage
        | Error::Verification(_)
        | Error::Orthogonality(_)
        | Error::ClassMap(_)
        | Error::ClassIndex(_) => EXIT_PRECONDITION,
        Error::Parse(_)
        | Error::Invalid(_)
        | Error::DegreeBoundTooSmall(_)
        | Error::VariableOutOfRange(_)
        | Error::Dimension(_)
        | Error::UnknownGroup(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_USAGE,
    }
}

/// Result of one invocation.
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses and runs a full argument vector (program name first).
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Invocation {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::run(cli.command) {
        Ok(out) => Invocation {
            code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(e) => Invocation {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
