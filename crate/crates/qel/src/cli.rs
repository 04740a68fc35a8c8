//! Argument parsing and dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};

use qel_core::catalog::Catalog;
use qel_core::probe::ProbeConfig;

use crate::commands::{self, CommandError};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "qel", version, about = "Secant defects, Y_x towers and Cremona constraints for LQEL varieties")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit the structured JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Root seed for generic-point probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Prime modulus for probes (default 2^61 - 1).
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Probe trials per quantity.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: u32,
    /// Worker threads for `verify all` (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Browse the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Compute every invariant of a model and compare with its claims.
    Verify {
        /// Model name, model file, or `all`.
        target: String,
    },
    /// Secant defect of a model.
    Defect { model: String },
    /// Dimension of the second fundamental form.
    Iiform { model: String },
    /// Quadrics containing a model.
    Quadrics { model: String },
    /// Point-count estimate of dim Y_x (heuristic).
    YxDim {
        model: String,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u64>,
    },
    /// The Y_x tower of a pair (n, delta) or of a catalog model.
    Tower {
        model: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Necessary conditions for an LQEL-manifold with given invariants.
    Admissible {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        ambient: Option<u32>,
    },
    /// Re-derive the classification lists.
    Enumerate {
        list: ListKind,
        #[arg(long, default_value_t = 1000)]
        nmax: u32,
    },
    /// Centers of special Cremona transformations of type (2, d).
    Cremona {
        /// `d1,d2`
        #[arg(long = "type", value_delimiter = ',', num_args = 1)]
        kind: Vec<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Special Cremona transformations of P^(2n+1).
    #[command(name = "cremona-2nplus1")]
    Cremona2nPlus1,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show {
        model: String,
    },
    /// Print a model in the text format.
    Export {
        model: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ListKind {
    HighDefect,
    HalfDefect,
}

/// What a run prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
}

fn render(report: &Report, json: bool) -> Outcome {
    let stdout = if json { report.to_json() } else { report.to_table() };
    Outcome { code: report.verdict.exit_code(), stdout, stderr: String::new() }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let g = &cli.global;
    let cfg = ProbeConfig { seed: g.seed, trials: g.trials, prime: g.prime };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(g.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return failure(2, e.to_string()),
    };
    let catalog = Catalog::standard();
    let outcome = if let Command::Catalog { action: CatalogAction::Export { model } } = &cli.command {
        commands::catalog_export(&catalog, model).map(|text| Outcome { code: 0, stdout: text, stderr: String::new() })
    } else {
        pool.install(|| dispatch(&cli.command, &catalog, &cfg)).map(|report| render(&report, g.json))
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => return failure(e.exit_code(), e.to_string()),
    };
    match &g.output {
        Some(path) => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..outcome },
            Err(e) => failure(2, format!("cannot write {}: {e}", path.display())),
        },
        None => outcome,
    }
}

fn dispatch(command: &Command, catalog: &Catalog, cfg: &ProbeConfig) -> Result<Report, CommandError> {
    match command {
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list(catalog),
            CatalogAction::Show { model } => commands::catalog_show(catalog, model),
            CatalogAction::Export { .. } => unreachable!("handled before dispatch"),
        },
        Command::Verify { target } => commands::verify(catalog, target, cfg),
        Command::Defect { model } => commands::defect(catalog, model, cfg),
        Command::Iiform { model } => commands::iiform(catalog, model, cfg),
        Command::Quadrics { model } => commands::quadrics(catalog, model, cfg),
        Command::YxDim { model, primes } => commands::yx_dim(catalog, model, primes, cfg),
        Command::Tower { model, n, delta } => match (model, n, delta) {
            (Some(name), None, None) => commands::tower_of_model(catalog, name, cfg),
            (None, Some(n), Some(d)) => commands::tower(catalog, *n, *d, None, cfg),
            _ => Err(CommandError::Input("tower needs either a model name or both --n and --delta".into())),
        },
        Command::Admissible { n, delta, ambient } => commands::admissible(*n, *delta, *ambient),
        Command::Enumerate { list, nmax } => match list {
            ListKind::HighDefect => commands::enumerate_high_defect(),
            ListKind::HalfDefect => commands::enumerate_half_defect(*nmax),
        },
        Command::Cremona { kind, nmax } => match kind.as_slice() {
            [d1, d2] => commands::cremona(*d1, *d2, *nmax),
            _ => Err(CommandError::Input("--type takes two degrees, e.g. --type 2,4".into())),
        },
        Command::Cremona2nPlus1 => commands::cremona_2n_plus_1(),
    }
}
