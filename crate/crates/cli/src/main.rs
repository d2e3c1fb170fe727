use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cylknot_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on its own for parse errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
