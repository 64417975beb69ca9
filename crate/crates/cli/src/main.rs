//! `latpoly` — exact spread-out lattice-polymer computations at the command
//! line: return-probability tables, continuum constants, exhaustive polymer
//! censuses, critical-point reports, and a self-check battery.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latpoly_cli::{census_io, check, commands, report};
use latpoly_core::kernel::Norm;
use latpoly_core::{Error as CoreError, PolymerModel};

use report::Format;

#[derive(Parser)]
#[command(
    name = "latpoly",
    version,
    about = "Spread-out lattice trees and animals: exact convolutions, enumeration, critical-point estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_parser = parse_format, default_value = "table")]
    format: String,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for decimal renderings
    #[arg(long, default_value_t = 15)]
    digits: usize,
}

fn parse_format(s: &str) -> Result<String, String> {
    match s {
        "json" | "csv" | "table" => Ok(s.to_string()),
        other => Err(format!("unknown format '{other}' (json, csv or table)")),
    }
}

fn format_of(args: &OutputArgs) -> Format {
    match args.format.as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        _ => Format::Table,
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact return-probability table D^{*n}(o) with tail sums
    Kernel {
        /// Dimension (>= 1)
        #[arg(long)]
        d: u32,
        /// Spread-out range (>= 1)
        #[arg(long = "L")]
        l: u32,
        /// Table length
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        /// Neighbourhood norm
        #[arg(long, value_parser = census_io::parse_norm, default_value = "linf")]
        norm: Norm,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continuum convolution table, expansion constants, and predicted
    /// critical fugacities
    Constants {
        /// Dimension (constants need d >= 5; proven for d > 8)
        #[arg(long)]
        d: u32,
        /// Series truncation
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        /// Inclusive range of spread-out parameters, e.g. 1..8
        #[arg(long = "l-range", value_parser = parse_l_range)]
        l_range: Option<(u32, u32)>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate polymers containing the origin and write a census file
    Enumerate {
        /// Polymer family: lt (trees) or la (animals)
        #[arg(long, value_parser = census_io::parse_model)]
        model: PolymerModel,
        #[arg(long)]
        d: u32,
        #[arg(long = "L")]
        l: u32,
        #[arg(long = "max-vertices")]
        max_vertices: u32,
        #[arg(long, value_parser = census_io::parse_norm, default_value = "linf")]
        norm: Norm,
        /// Enumeration budget in neighbour probes (0 = default)
        #[arg(long, default_value_t = 0)]
        budget: u64,
        /// Census file destination (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a census file, solve the fixed point, and report the
    /// decomposition, ratio estimates and diagnostics
    Critical {
        /// Census file produced by `enumerate`
        #[arg(long)]
        from: PathBuf,
        /// Fixed-point residual tolerance
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Convolution-table length behind the leading-order rows
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        /// Budget for the two-point re-enumeration (0 = default)
        #[arg(long, default_value_t = 0)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the cross-module identity and oracle suites
    Check {
        /// Output format (table or json)
        #[arg(long, value_parser = parse_format, default_value = "table")]
        format: String,
    },
}

fn parse_l_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound '{a}'"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound '{b}'"))?;
    if a == 0 || b < a {
        return Err(format!("need 1 <= A <= B, got {a}..{b}"));
    }
    if b - a >= 64 {
        return Err(format!("range {a}..{b} too wide (max 64 values)"));
    }
    Ok((a, b))
}

enum CliError {
    Core(CoreError),
    Io(String),
    Parse(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            // resource budget exhaustion is distinguishable for callers
            CliError::Core(CoreError::BudgetExceeded { .. }) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

fn write_output(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Kernel {
            d,
            l,
            nmax,
            norm,
            output,
        } => {
            let report = commands::cmd_kernel(d, l, nmax, norm, output.digits)?;
            write_output(
                &report.render(format_of(&output), output.digits),
                &output.out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants {
            d,
            nmax,
            l_range,
            output,
        } => {
            let l_values: Vec<u32> = match l_range {
                Some((a, b)) => (a..=b).collect(),
                None => vec![1, 2, 4, 8],
            };
            if (5..=8).contains(&d) {
                eprintln!(
                    "warning: d = {d} is below the proven dimension (d > 8); \
                     the series converge but the expansion is formal here"
                );
            }
            let report = commands::cmd_constants(d, nmax, &l_values, output.digits)?;
            write_output(
                &report.render(format_of(&output), output.digits),
                &output.out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            model,
            d,
            l,
            max_vertices,
            norm,
            budget,
            out,
        } => {
            let text = commands::cmd_enumerate(model, d, l, norm, max_vertices, budget)?;
            write_output(&text, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical {
            from,
            tol,
            nmax,
            budget,
            output,
        } => {
            let text = fs::read_to_string(&from)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", from.display())))?;
            let census = census_io::parse(&text).map_err(CliError::Parse)?;
            let report = commands::cmd_critical(&census, tol, nmax, budget, output.digits)?;
            write_output(
                &report.render(format_of(&output), output.digits),
                &output.out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { format } => {
            let outcomes = check::run_all();
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if format == "json" {
                let checks: Vec<serde_json::Value> = outcomes
                    .iter()
                    .map(|o| {
                        serde_json::json!({
                            "name": o.name,
                            "passed": o.passed,
                            "detail": o.detail,
                        })
                    })
                    .collect();
                let root = serde_json::json!({
                    "schema_version": report::SCHEMA_VERSION,
                    "command": "check",
                    "passed": failed == 0,
                    "checks": checks,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&root).expect("serializable")
                );
            } else {
                for o in &outcomes {
                    let tag = if o.passed { "ok  " } else { "FAIL" };
                    println!("{tag}  {:<32}  {}", o.name, o.detail);
                }
                println!("\n{} checks, {} failed", outcomes.len(), failed);
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
