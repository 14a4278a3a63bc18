use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squarewalk::group::DEFAULT_MAX_ORDER;
use squarewalk_cli::{
    analyze_csv, analyze_text, resolve_group, run_analyze, run_simulate, run_table, simulate_csv,
    simulate_text, table_csv, table_text, to_json, CliError, NumberFormat,
};

/// Convergence of the squaring random walk on finite permutation groups.
#[derive(Parser)]
#[command(name = "squarewalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact distance-to-uniform profile, asymptotics and convergence predicates.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Largest step count in the profile.
        #[arg(long = "n", visible_alias = "n-max", default_value_t = 20)]
        n: u32,
        /// Add brute-force convolution columns.
        #[arg(long)]
        oracle: bool,
    },
    /// Monte Carlo walks compared with the exact distribution.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Steps per walk.
        #[arg(long = "n", default_value_t = 20)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        chains: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Character table with Frobenius-Schur indicators.
    Table {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Zoo group such as C7, D4, S4, A5, Q8, C2xC4 or symmetric:4.
    #[arg(long, conflicts_with = "generators", required_unless_present = "generators")]
    group: Option<String>,
    /// Generators in cycle notation, e.g. "(0 1)(2 3), (0 1 2)".
    #[arg(long)]
    generators: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write CSV/text numbers with this many decimal places instead of 15 significant digits.
    #[arg(long)]
    fixed: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl Common {
    fn number_format(&self) -> NumberFormat {
        self.fixed.map_or(NumberFormat::Significant, NumberFormat::Fixed)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { common, n, oracle } => {
            let spec = resolve_group(common.group.as_deref(), common.generators.as_deref())?;
            let report = run_analyze(&spec, n, oracle, common.max_order)?;
            let fmt = common.number_format();
            Ok(match common.format {
                Format::Json => to_json(&report),
                Format::Csv => analyze_csv(&report, fmt),
                Format::Text => analyze_text(&report, fmt),
            })
        }
        Command::Simulate {
            common,
            n,
            chains,
            seed,
        } => {
            let spec = resolve_group(common.group.as_deref(), common.generators.as_deref())?;
            let report = run_simulate(&spec, n, chains, seed, common.max_order)?;
            let fmt = common.number_format();
            Ok(match common.format {
                Format::Json => to_json(&report),
                Format::Csv => simulate_csv(&report, fmt),
                Format::Text => simulate_text(&report, fmt),
            })
        }
        Command::Table { common } => {
            let spec = resolve_group(common.group.as_deref(), common.generators.as_deref())?;
            let doc = run_table(&spec, common.max_order)?;
            let fmt = common.number_format();
            Ok(match common.format {
                Format::Json => to_json(&doc),
                Format::Csv => table_csv(&doc, fmt),
                Format::Text => table_text(&doc, fmt),
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
