//! Command-line front end: series evaluation, quadrature oracles, identity
//! verification sweeps and operator spectra. [`run`] is the whole program;
//! the `xi` binary only forwards its arguments and exit code.

pub mod args;
pub mod error;
pub mod eval;
pub mod operator;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;

/// Version stamped into reports: `$XI_BUILD_DESCRIBE` at build time (for
/// example the output of `git describe`), else the package version.
pub const TOOL_VERSION: &str = match option_env!("XI_BUILD_DESCRIBE") {
    Some(v) => v,
    None => env!("CARGO_PKG_VERSION"),
};

/// Version of the JSON report and export layouts.
pub const SCHEMA_VERSION: u32 = 1;

pub fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Eval(a) => eval::cmd_eval(a, stdout),
        Command::Oracle(c) => eval::cmd_oracle(c, stdout),
        Command::Verify(a) => verify::cmd_verify(a, stdout),
        Command::Kernel(a) => operator::cmd_kernel(a, stdout),
        Command::Spectrum(a) => operator::cmd_spectrum(a, stdout),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        // Reader went away (e.g. `| head`): stop quietly like other filters.
        Err(error::CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => error::EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
