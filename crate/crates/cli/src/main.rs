use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use homolift::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    if code == 0 || code == 1 {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    ExitCode::from(code)
}
