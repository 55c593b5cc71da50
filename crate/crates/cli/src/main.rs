use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quartet_cli::{
    cmd_count, cmd_distance, cmd_monotonic, cmd_newick, cmd_table, cmd_topology, cmd_verify,
    write_file, CliError, CountRoute, TableFormat,
};
use quartet_core::LeafOrder;

/// Quartet distance between prefix- and suffix-ordered complete binary trees.
#[derive(Parser)]
#[command(name = "quartet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    BruteFull,
    Closed,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Prefix,
    Suffix,
}

#[derive(Subcommand)]
enum Command {
    /// Exact distance and ratio for a range of n.
    Table {
        #[arg(long, default_value_t = 3)]
        nmin: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Cross-check brute force, summation and closed forms; exits 1 on mismatch.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count tuples satisfying an event expression such as `(P01|P23)&(S01|S23)`.
    Count {
        #[arg(long)]
        event: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Prefix and suffix pairings of four labels.
    Topology {
        #[arg(long)]
        labels: String,
    },
    /// Export the complete tree on n-bit labels in Newick form.
    Newick {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        order: Order,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quartet distance between two Newick files.
    Distance {
        #[arg(long)]
        tree1: PathBuf,
        #[arg(long)]
        tree2: PathBuf,
    },
    /// Check that the ratio decreases in n; exits 1 on failure.
    Monotonic {
        #[arg(long, default_value_t = 128)]
        nmax: u32,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Table { nmin, nmax, format } => {
            let format = match format {
                Format::Tsv => TableFormat::Tsv,
                Format::Json => TableFormat::Json,
            };
            print!("{}", cmd_table(nmin, nmax, format)?);
        }
        Command::Verify { n, brute, out } => {
            let report = cmd_verify(n, brute)?;
            emit(&report.to_json()?, out.as_ref())?;
            if !report.overall_pass {
                return Ok(1);
            }
        }
        Command::Count { event, n, method } => {
            let route = match method {
                Method::Brute => CountRoute::Brute,
                Method::BruteFull => CountRoute::BruteFull,
                Method::Closed => CountRoute::Closed,
                Method::Sum => CountRoute::Sum,
            };
            println!("{}", cmd_count(&event, n, route)?.value);
        }
        Command::Topology { labels } => print!("{}", cmd_topology(&labels)?),
        Command::Newick { n, order, out } => {
            let order = match order {
                Order::Prefix => LeafOrder::Prefix,
                Order::Suffix => LeafOrder::Suffix,
            };
            emit(&cmd_newick(n, order)?, out.as_ref())?;
        }
        Command::Distance { tree1, tree2 } => println!("{}", cmd_distance(&tree1, &tree2)?),
        Command::Monotonic { nmax } => {
            let report = cmd_monotonic(nmax)?;
            print!("{}", report.render());
            if !report.pass() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
