use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use drw_cli::commands::{render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = render(&cli);
    let mut stdout = std::io::stdout().lock();
    if code == 0 {
        let _ = stdout.write_all(out.as_bytes());
    } else {
        let _ = stdout.flush();
        eprint!("{out}");
    }
    ExitCode::from(code as u8)
}
