use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use wspec_cli::commands::{
    self, ConstructArgs, Family, InputFormat, MinMwsArgs, Order, OutFormat, QuantityArg,
    SearchArgs, WeightSpec,
};
use wspec_core::search::DEFAULT_SEARCH_BUDGET;

#[derive(Parser, Debug)]
#[command(
    name = "wspec",
    version,
    about = "Linear codes with extremal weight spectra"
)]
struct Cli {
    /// Output style: readable text or the JSON result document.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Doc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from one of the explicit constructions.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        /// Field size; implied by a custom weight table.
        #[arg(long)]
        q: Option<u64>,
        /// Length, for the FWS families.
        #[arg(long)]
        n: Option<u64>,
        /// Weight used to check the spectrum (defaults to the family's own).
        #[arg(long)]
        weight: Option<WeightSpec>,
        #[arg(long, value_enum, default_value_t = OutFormat::Matrix)]
        out_format: OutFormat,
        /// Write the matrix or multiset here instead of after the summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight spectrum of a code read from a file.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        weight: WeightSpec,
        #[arg(long, value_enum, default_value_t = InputFormat::Matrix)]
        input_format: InputFormat,
        /// Field size; required for multiset input.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Largest spectrum size over all [n,k]_q codes.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        weight: WeightSpec,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Order::Forward)]
        order: Order,
    },
    /// Known bounds on L, M or N.
    Bounds {
        #[arg(value_enum)]
        quantity: QuantityArg,
        #[arg(long)]
        weight: WeightSpec,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Recompute a published table and compare row by row.
    Table {
        name: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Shortest length with an MWS code, by searching upward.
    MinMws {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        weight: WeightSpec,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Order::Forward)]
        order: Order,
    },
}

fn run(command: Command) -> anyhow::Result<commands::Outcome> {
    match command {
        Command::Construct {
            family,
            k,
            q,
            n,
            weight,
            out_format,
            out,
        } => commands::construct(&ConstructArgs {
            family,
            k,
            q,
            n,
            weight,
            out_format,
            out,
        }),
        Command::Spectrum {
            file,
            weight,
            input_format,
            q,
        } => commands::spectrum(&file, input_format, q, &weight),
        Command::Search {
            n,
            k,
            q,
            weight,
            jobs,
            budget,
            order,
        } => commands::search(&SearchArgs {
            n,
            k,
            q,
            weight,
            jobs,
            budget,
            order,
        }),
        Command::Bounds {
            quantity,
            weight,
            k,
            q,
            n,
        } => commands::bounds(quantity, &weight, k, q, n),
        Command::Table { name, jobs, budget } => commands::table(&name, jobs, budget),
        Command::MinMws {
            k,
            q,
            weight,
            n_max,
            jobs,
            budget,
            order,
        } => commands::min_mws(&MinMwsArgs {
            k,
            q,
            weight,
            n_max,
            jobs,
            budget,
            order,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut outcome = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed();
    outcome.document.timing.elapsed_ms = elapsed.as_millis();
    let rendered = match cli.format {
        Format::Text => format!("{}elapsed {:.3}s\n", outcome.text, elapsed.as_secs_f64()),
        Format::Doc => format!("{}\n", outcome.document.to_json()),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
