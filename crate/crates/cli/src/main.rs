use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilcone::groups::DEFAULT_BUDGET;
use nilcone_cli::{census, orbit_of, verify, CliError, Cone, Options, Suite};

/// Orbit counts, brute-force verification and point classification for the
/// ordinary, enhanced and exotic nilpotent cones over finite fields.
#[derive(Parser)]
#[command(name = "nilcone", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// State budget for every orbit or group search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Run past the default size bounds.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One row per orbit with its polynomial count, plus a totals footer.
    Census {
        #[arg(long, value_enum)]
        cone: Cone,
        #[arg(short = 'n')]
        n: usize,
        /// Field orders to evaluate at (repeatable).
        #[arg(long = "q")]
        q: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Size (the symbolic suite covers every size up to n).
        #[arg(short = 'n')]
        n: usize,
        #[arg(long = "q", default_value_t = 2)]
        q: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Classify the point in an enhanced or exotic point file; exits 1 if
    /// orbit search disagrees with the invariants.
    OrbitOf {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serialising a JSON value") + "\n"
}

fn unsupported(format: Format, command: &str) -> CliError {
    let name = format.to_possible_value().expect("no skipped variants").get_name().to_string();
    CliError::Input(format!("{command} does not support --format {name}"))
}

/// Output text and whether every check passed.
fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let opts = Options { budget: cli.budget, force: cli.force };
    match cli.command {
        Command::Census { cone, n, q, format } => {
            let c = census(cone, n, &q, &opts)?;
            match format {
                Format::Json => Ok((json(&c.to_json()), true)),
                Format::Csv => Ok((c.to_csv()?, true)),
                Format::Text => Err(unsupported(format, "census")),
            }
        }
        Command::Verify { suite, n, q, format } => {
            let r = verify(suite, n, q, &opts)?;
            match format {
                Format::Json => Ok((json(&r.to_json()), r.passed())),
                Format::Text => Ok((r.to_text(), r.passed())),
                Format::Csv => Err(unsupported(format, "verify")),
            }
        }
        Command::OrbitOf { file, format } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
            let (cone, report) = orbit_of(&text, &opts)?;
            let agreed = report.bfs_verified != Some(false);
            match format {
                Format::Text => Ok((format!("cone {cone}\n{}", report.to_text()), agreed)),
                Format::Json => {
                    let mut v = report.to_json();
                    v["cone"] = cone.to_string().into();
                    Ok((json(&v), agreed))
                }
                Format::Csv => Err(unsupported(format, "orbit-of")),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
