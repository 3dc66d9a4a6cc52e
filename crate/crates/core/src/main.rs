use std::io::{stderr, stdout};
use std::process::ExitCode;

use clap::Parser;
use clawdel::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, &mut stdout().lock(), &mut stderr().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("clawdel: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
