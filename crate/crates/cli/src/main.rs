use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ncpoly_cli::{run, Cli, Outcome, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Outcome::Usage.code() as u8),
            };
        }
    };
    let cfg = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(Outcome::Usage.code() as u8);
        }
    };
    let report = run(&cli.command, &cfg);
    let out = report.render(cfg.json);
    if report.outcome == Outcome::Usage && !cfg.json {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    ExitCode::from(report.exit_code() as u8)
}
