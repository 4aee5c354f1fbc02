//! `torfan`: dual Newton fans, Hilbert bases, regular refinements, profiles,
//! Gröbner fans, jet equations and catalog verification from the shell.

mod commands;
mod render;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "torfan", version, about = "Toric embedded resolutions of surface singularities")]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FamilyParams {
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dual Newton fan of a polynomial with per-cone Hilbert bases.
    Dnp {
        poly: String,
        /// Emit only the fan JSON (input for `render`).
        #[arg(long)]
        fan: bool,
    },
    /// Hilbert basis of a cone such as "<(0,1,0),(0,0,1),(6,8,9)>".
    Hilbert { cone: String },
    /// Regular refinement of the dual Newton fan with determinant certificates.
    Resolve {
        poly: String,
        /// Rays to refine by (JSON list of triples or "(a,b,c),..."); default: the Hilbert bases.
        #[arg(long)]
        rays: Option<PathBuf>,
    },
    /// Profiles of a cone or of every maximal cone of a polynomial's fan.
    Profile {
        input: String,
        /// Vectors to test for profile membership.
        #[arg(long)]
        vectors: Option<PathBuf>,
    },
    /// Gröbner fan restricted to the octant.
    Groebner {
        poly: String,
        /// Only the non-monomial cones.
        #[arg(long)]
        tropical: bool,
    },
    /// Jet equations F_0..F_m.
    Jets {
        poly: String,
        #[arg(long = "m")]
        order: usize,
    },
    /// Catalog of singularity families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// End-to-end verification of a catalog family.
    Verify {
        family: String,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Where the embedded valuations (or Hilbert-basis vectors) sit in the Gröbner fan.
    GroebnerMeet {
        family: String,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// SVG cross-section of a fan in the plane x+y+z=1.
    /// Requires `--out <file.svg>`.
    Render { fan: PathBuf },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show {
        family: String,
        #[command(flatten)]
        params: FamilyParams,
    },
}

/// How a command ended, mapped onto the exit-code contract.
pub enum Failure {
    Input(String),
    Verification,
}

impl From<torfan::Error> for Failure {
    fn from(e: torfan::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("TORFAN_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Input(format!("TORFAN_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let out = cli.out;
    match cli.command {
        Command::Dnp { poly, fan } => commands::dnp(&poly, fan, out.as_deref()),
        Command::Hilbert { cone } => commands::hilbert(&cone, out.as_deref()),
        Command::Resolve { poly, rays } => commands::resolve(&poly, rays.as_deref(), out.as_deref()),
        Command::Profile { input, vectors } => {
            commands::profile(&input, vectors.as_deref(), out.as_deref())
        }
        Command::Groebner { poly, tropical } => commands::groebner(&poly, tropical, out.as_deref()),
        Command::Jets { poly, order } => commands::jets(&poly, order, out.as_deref()),
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list(out.as_deref()),
            CatalogAction::Show { family, params } => {
                commands::catalog_show(&family, &params, out.as_deref())
            }
        },
        Command::Verify { family, params } => commands::verify(&family, &params, out.as_deref()),
        Command::GroebnerMeet { family, params } => {
            commands::groebner_meet(&family, &params, out.as_deref())
        }
        Command::Render { fan } => {
            let svg = out.ok_or_else(|| Failure::Input("render needs --out <file.svg>".into()))?;
            commands::render(&fan, &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
