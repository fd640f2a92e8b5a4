use std::process::ExitCode;

use clap::Parser;
use matalg_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.render(cli.global.format));
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("matalg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
