//! Command-line front end: `simulate --config <path> [--experiment <preset>]
//! [--out <dir>] [--set key=value ...]`.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for runtime errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hom_core::runner::{execute, parse_config_with};
use hom_core::Error;

#[derive(Debug, Parser)]
#[command(name = "simulate", version, about = "Two-photon interference delay scans")]
struct Cli {
    /// Key-value configuration file. Without it the preset defaults apply.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset: fig3a, fig3b, fig4, fig5, fig6a, fig6b or custom.
    #[arg(long)]
    experiment: Option<String>,
    /// Output directory (overrides `output.dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override a configuration key, e.g. `--set scan.points=200`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn overrides(cli: &Cli) -> Result<Vec<(String, String)>, Error> {
    let mut out = Vec::new();
    if let Some(e) = &cli.experiment {
        out.push(("experiment".to_string(), e.clone()));
    }
    for pair in &cli.set {
        let Some((k, v)) = pair.split_once('=') else {
            return Err(Error::config(pair, "expected KEY=VALUE"));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    if let Some(dir) = &cli.out {
        out.push(("output.dir".to_string(), dir.display().to_string()));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let text = match &cli.config {
        Some(path) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read config {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => String::new(),
    };

    let config = match overrides(&cli).and_then(|o| parse_config_with(&text, &o)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match execute(&config) {
        Ok((_, files)) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config_error() { 2 } else { 3 })
        }
    }
}
