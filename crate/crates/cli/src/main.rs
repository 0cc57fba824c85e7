use std::process::ExitCode;

use clap::Parser;
use neumann_cli::{emit, run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Usage errors are operational; 2 is reserved for failed verdicts.
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let code = match run(&cli).and_then(|r| emit(&r, cli.output.as_deref()).map(|_| r.exit_code())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code as u8)
}
