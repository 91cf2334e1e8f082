//! Command-line front end: bounds, tables, exact search, constructions,
//! code-file verification, and separator expansion.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 search ended by the
//! time limit, 4 verification failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fewdist::polymethod::DEFAULT_TERM_GUARD;
use output::OutputFormat;

#[derive(Parser)]
#[command(
    name = "fewdist",
    version,
    about = "Bounds, constructions, and exact search for binary codes with few distances"
)]
struct Cli {
    /// Reserved for future randomized features; nothing consumes it yet.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every upper bound for one (n, D)
    Bound {
        /// Code length n
        #[arg(short = 'n', long = "length")]
        length: usize,
        /// Comma-separated strictly increasing distances, e.g. 2,4
        #[arg(short = 'd', long = "distances")]
        distances: String,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Tabulate the generic s-distance bounds over a range of lengths
    Table {
        /// Length or inclusive range, e.g. 6 or 6..8
        #[arg(short = 'n', long = "length", value_name = "A..B")]
        length: String,
        /// Number of distances s
        #[arg(short = 's', long = "num-distances")]
        num_distances: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Exact maximum code size by branch-and-bound clique search
    Search {
        #[arg(short = 'n', long = "length")]
        length: usize,
        #[arg(short = 'd', long = "distances")]
        distances: String,
        /// Abort after this many seconds, reporting the best code found
        #[arg(long, value_name = "SECONDS")]
        time_limit: Option<f64>,
        /// Parallel workers; the optimum value is thread-independent
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Print the witness code block (parses as a code file)
        #[arg(long)]
        emit_witness: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Build a construction and emit its code file
    Construct {
        /// One of: constant-weight, golay23
        kind: String,
        #[arg(short = 'n', long = "length")]
        length: Option<usize>,
        /// Weight of the constant-weight construction
        #[arg(short = 's', long = "num-distances")]
        num_distances: Option<usize>,
        /// Adjoin the zero word (constant-weight, even s only)
        #[arg(long)]
        adjoin_zero: bool,
        /// Write the code file here instead of stdout
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Check a code file: distance set, diagonal evaluation matrix,
    /// independence rank, and size against the bounds
    Verify {
        /// Code file path
        path: PathBuf,
        /// Claimed distance set to check containment against
        #[arg(short = 'd', long = "distances")]
        distances: Option<String>,
        /// Monomial guard for the independence rank computation
        #[arg(long, default_value_t = DEFAULT_TERM_GUARD)]
        max_terms: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Expand a word's separator polynomial into monomials
    Expand {
        /// Code length n; defaults to the word's length
        #[arg(short = 'n', long = "length")]
        length: Option<usize>,
        #[arg(short = 'd', long = "distances")]
        distances: String,
        /// The word v, as a bit string such as 0110
        #[arg(short = 'v', long = "word")]
        word: String,
        #[arg(long, default_value_t = DEFAULT_TERM_GUARD)]
        max_terms: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound {
            length,
            distances,
            format,
        } => commands::bound(*length, distances, *format),
        Command::Table {
            length,
            num_distances,
            format,
        } => commands::table(length, *num_distances, *format),
        Command::Search {
            length,
            distances,
            time_limit,
            threads,
            emit_witness,
            format,
        } => commands::search(
            *length,
            distances,
            *time_limit,
            *threads,
            *emit_witness,
            *format,
        ),
        Command::Construct {
            kind,
            length,
            num_distances,
            adjoin_zero,
            output,
            format,
        } => commands::construct(
            kind,
            *length,
            *num_distances,
            *adjoin_zero,
            output.clone(),
            *format,
        ),
        Command::Verify {
            path,
            distances,
            max_terms,
            format,
        } => commands::verify(path, distances.as_deref(), *max_terms, *format),
        Command::Expand {
            length,
            distances,
            word,
            max_terms,
            format,
        } => commands::expand(*length, distances, word, *max_terms, *format),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
