use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use wgr::cli::{self, Mode};

/// Stationary spectra and time evolution of a waveguide with two side-coupled resonators.
#[derive(Parser)]
#[command(name = "wgr", version)]
struct Args {
    /// Computation to run.
    #[arg(value_enum)]
    mode: ModeArg,
    /// Configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Prefix for all output files.
    #[arg(long, default_value = "wgr")]
    out: String,
    /// Worker threads for grid evaluation.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Spectrum,
    Dos,
    Heatmap,
    Evolve,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Spectrum => Mode::Spectrum,
            ModeArg::Dos => Mode::Dos,
            ModeArg::Heatmap => Mode::Heatmap,
            ModeArg::Evolve => Mode::Evolve,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = std::fs::read_to_string(&args.config)
        .map_err(wgr::Error::from)
        .and_then(|text| cli::parse_config_for_mode(&text, Some(args.mode.into())))
        .and_then(|config| {
            let config = config
                .with_output(args.out.clone())
                .with_workers(args.workers);
            cli::run(&config)
        });
    match result {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("wgr: {e}");
            ExitCode::FAILURE
        }
    }
}
