use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use ghz_games_cli::{dispatch, Cli, CliError, Format, RunConfig};

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli)?;
    if cfg.force {
        eprintln!("warning: --force disables every size and work guard; this run may exhaust memory or time");
    }
    if cfg.format == Format::Csv {
        // CSV has no room for metadata, so the resolved config goes to the log
        eprintln!("config: {}", serde_json::to_string(&cfg)?);
    }
    let mut out: Box<dyn Write> = match &cli.output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let written = dispatch(&cfg, &mut out)?;
    if let Some(path) = &cli.output.out {
        eprintln!("wrote {written} bytes to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
