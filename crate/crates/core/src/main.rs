use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sgk::cli::{self, OutFormat, Overrides};
use sgk::lattice::DEFAULT_CAP;

#[derive(Parser)]
#[command(
    name = "sgk",
    version,
    about = "Semi-graded Koszulity, Hilbert series and classification of finitely presented algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Base field: Q or Fp:p.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Parameter binding name=value; repeatable.
    #[arg(long = "param", global = true)]
    params: Vec<String>,
    /// Worker threads for per-degree parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Out::Json)]
    out: Out,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in presentations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Relation-shape flags of a presentation.
    Classify { target: String },
    /// Truncated Hilbert series of the filtration.
    Hilbert {
        target: String,
        #[arg(long)]
        degree: usize,
        /// Grading weights, e.g. 1,1,2.
        #[arg(long)]
        weights: Option<String>,
        /// Compare against the product of 1/(1-t^w) over the weights.
        #[arg(long)]
        check_closed_form: bool,
    },
    /// Distributivity of L_j for 2 <= j <= jmax.
    Koszul {
        target: String,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Stop at the first degree that is not distributive.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Check h(t) P(-t) = 1 with P(t) = (1+t)^n, plus low-degree Tor counts.
    Poincare {
        target: String,
        #[arg(long)]
        degree: usize,
        /// Degree bound for the Tor_2 counts.
        #[arg(long, default_value_t = 4)]
        tor_degree: usize,
    },
    /// Write table1.csv and table2.csv into a directory.
    Tables {
        out_dir: PathBuf,
        #[arg(long, default_value_t = 4)]
        jmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Degree bound for the Poincare-series checks.
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Relations file for a row without printed relations: row=path; repeatable.
        #[arg(long = "supply")]
        supply: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().context("configuring --jobs")?;
    }
    let format = match cli.global.out {
        Out::Json => OutFormat::Json,
        Out::Csv => OutFormat::Csv,
    };
    let params = cli.global.params.iter().map(|p| cli::parse_param(p)).collect::<Result<Vec<_>, _>>()?;
    let mut ov = Overrides { field: cli.global.field.clone(), params, weights: None };
    let cache = std::env::var_os("SGK_CACHE_DIR").map(PathBuf::from);
    let report = match &cli.command {
        Command::Catalog { action: CatalogAction::List } => cli::cmd_catalog_list(args),
        Command::Catalog { action: CatalogAction::Show { name } } => cli::cmd_catalog_show(args, name)?,
        Command::Classify { target } => cli::cmd_classify(args, &cli::resolve(target, &ov)?),
        Command::Hilbert { target, degree, weights, check_closed_form } => {
            ov.weights = weights.as_deref().map(cli::parse_weights).transpose()?;
            let p = cli::resolve(target, &ov)?;
            cli::cmd_hilbert(args, &p, *degree, *check_closed_form, cache.as_deref())?
        }
        Command::Koszul { target, jmax, cap, fail_fast } => {
            let p = cli::resolve(target, &ov)?;
            cli::cmd_koszul(args, &p, *jmax, *cap, *fail_fast)?
        }
        Command::Poincare { target, degree, tor_degree } => {
            let p = cli::resolve(target, &ov)?;
            cli::cmd_poincare(args, &p, *degree, *tor_degree, cache.as_deref())?
        }
        Command::Tables { out_dir, jmax, cap, degree, supply } => {
            let mut supplied = BTreeMap::new();
            for s in supply {
                let (k, v) = s.split_once('=').with_context(|| format!("--supply expects row=path, got `{s}`"))?;
                supplied.insert(k.to_string(), PathBuf::from(v));
            }
            cli::cmd_tables(args, out_dir, *jmax, *cap, *degree, cli.global.field.as_deref(), &supplied)?
        }
    };
    print!("{}", report.render(format)?);
    Ok(())
}
