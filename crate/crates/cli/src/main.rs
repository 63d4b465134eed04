use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand};

use diaglab_cli::{presets, run_target, OutputFormat};
use diaglab_core::config::{CensusModeChoice, Overrides};
use diaglab_core::ErrorKind;

#[derive(Parser)]
#[command(
    name = "diaglab",
    version,
    about = "Diagonalization over generator-backed lists, ordering censuses, and set-size audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in preset or a definition file
    Run {
        /// Preset name or path of a definition file
        target: String,
        /// Replace every diagonal step's horizon
        #[arg(long)]
        horizon: Option<u64>,
        /// Replace every induction, profile, and audit window
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        /// Replace every census step's sample count
        #[arg(long)]
        samples: Option<u64>,
        /// Replace every census step's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Replace every induction step's search bound
        #[arg(long = "search-bound")]
        search_bound: Option<u64>,
        /// Replace every census step's mode
        #[arg(long, value_parser = parse_mode)]
        mode: Option<CensusModeChoice>,
        /// Output format
        #[arg(long, default_value = "table", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// List the built-in presets
    ListPresets,
}

fn parse_mode(text: &str) -> Result<CensusModeChoice, String> {
    CensusModeChoice::parse(text)
        .ok_or_else(|| format!("'{text}' is not a census mode (auto, full, prefix, sampled)"))
}

fn parse_format(text: &str) -> Result<OutputFormat, String> {
    OutputFormat::parse(text).ok_or_else(|| format!("'{text}' is not a format (table, machine)"))
}

/// Writes to stdout, treating a closed pipe as a normal early exit rather
/// than a panic, so `diaglab ... | head` behaves like other tools.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn execute(command: Command) -> diaglab_core::Result<()> {
    match command {
        Command::Run {
            target,
            horizon,
            n_max,
            samples,
            seed,
            search_bound,
            mode,
            format,
        } => {
            let overrides = Overrides {
                horizon,
                n_max,
                samples,
                seed,
                search_bound,
                mode,
            };
            let report = run_target(&target, &overrides)?;
            let text = match format {
                OutputFormat::Table => diaglab_cli::render_table(&report),
                OutputFormat::Machine => diaglab_cli::render_machine(&report),
            };
            emit(&text);
            Ok(())
        }
        Command::ListPresets => {
            let mut listing = String::new();
            for preset in presets::PRESETS {
                listing.push_str(&format!("{:24} {}\n", preset.name, preset.summary));
            }
            emit(&listing);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            match error.kind() {
                ErrorKind::Input => ExitCode::from(1),
                ErrorKind::Refusal => ExitCode::from(2),
            }
        }
    }
}
