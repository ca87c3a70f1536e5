use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use planepart_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out, &mut io::stderr());
    let flushed = out.flush();
    match result.and(flushed.map_err(|e| planepart_cli::CliError::Failure(e.to_string()))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
