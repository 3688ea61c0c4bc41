use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use tatehh_cli::error::CliError;
use tatehh_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<u8> {
    let out = run(cli)?;
    let text = out.render(cli.global.format, cli.global.table.as_deref())?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing to stdout")?,
    }
    for c in out.report.failed() {
        eprintln!("property failed: {}: {}", c.name, c.detail);
    }
    Ok(out.exit_code() as u8)
}
