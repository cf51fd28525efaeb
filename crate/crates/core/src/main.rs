use std::process::ExitCode;

use clap::Parser;
use qseq::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let mut code = outcome.code;
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("cannot write {}: {e}", path.display());
                code = EXIT_INPUT;
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(code as u8)
}
