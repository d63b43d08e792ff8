use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abphase_cli::config::{seed_from_env, OutputConfig};
use abphase_cli::{exit, exit_code_for, parse_config, run, write_outputs, Config, ConfigError};
use abphase_core::scenarios::run_wang_check;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "abphase",
    version,
    about = "Configuration-space Aharonov-Bohm phase simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenarios described by a JSON config.
    Run {
        config: PathBuf,
        /// Override the config's json output path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the config's csv output path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the built-in reproduction suite.
    Suite {
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Print the suite config instead of running it.
        #[arg(long)]
        print_config: bool,
    },
    /// Can a superconducting shield follow a pulse of this duration?
    Wang {
        /// Pulse duration, s.
        #[arg(long)]
        pulse: f64,
        /// Critical temperature, K.
        #[arg(long)]
        tc: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(match cli.command {
        Command::Run { config, json, csv } => run_file(&config, json, csv),
        Command::Suite {
            json,
            csv,
            print_config,
        } => {
            let config = Config::reproduction_suite();
            if print_config {
                println!("{}", config.to_json());
                exit::REPRODUCED
            } else {
                execute(&config, json, csv)
            }
        }
        Command::Wang { pulse, tc } => wang(pulse, tc),
    })
}

fn run_file(path: &Path, json: Option<PathBuf>, csv: Option<PathBuf>) -> u8 {
    let parsed = std::fs::read(path)
        .map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
        .and_then(|bytes| parse_config(&bytes));
    match parsed {
        Ok(config) => {
            let OutputConfig { json: j, csv: c } = &config.output;
            let json = json.or_else(|| j.as_ref().map(PathBuf::from));
            let csv = csv.or_else(|| c.as_ref().map(PathBuf::from));
            execute(&config, json, csv)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            exit::CONFIG
        }
    }
}

fn execute(config: &Config, json: Option<PathBuf>, csv: Option<PathBuf>) -> u8 {
    if let Err(e) = seed_from_env() {
        eprintln!("error: {e}");
        return exit::CONFIG;
    }
    let outcome = match run(config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e.source);
        }
    };
    print!("{}", outcome.report.to_text(Some(&outcome.timings)));
    if let Err(e) = write_outputs(&outcome.report, json.as_deref(), csv.as_deref()) {
        eprintln!("error: writing report: {e}");
        return exit::CONFIG;
    }
    if outcome.report.all_reproduced() {
        exit::REPRODUCED
    } else {
        exit::VIOLATED
    }
}

fn wang(pulse: f64, tc: f64) -> u8 {
    match run_wang_check(pulse, tc) {
        Ok(w) => {
            println!("pulse duration        {:.6e} s", w.pulse_duration);
            println!("critical temperature  {:.6} K", w.critical_temperature);
            println!("pulse frequency 1/τ   {:.6e} Hz", w.frequency);
            println!("threshold kT_c/ħ      {:.6e} Hz", w.threshold);
            println!("ratio                 {:.17}", w.ratio);
            if w.shield_transparent {
                println!("shield transparent: the pulse is too fast for the superconductor to follow");
            } else {
                println!("shield effective: the superconductor follows the pulse");
            }
            exit::REPRODUCED
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit::CONFIG
        }
    }
}
