//! Command-line front end. Exit codes: 0 pass, 1 check failure, 2 invalid
//! input, 3 non-polynomial fixed-point sum.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "twistmc",
    version,
    about = "Localized twisted motivic Chern classes and stable-envelope checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Source {
    /// Built-in example: p1, p2-cell, p1xp1-cell, blowup-demo.
    #[arg(long, conflicts_with = "model")]
    pub example: Option<String>,
    /// Model file in JSON form.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Slope of a built-in example: `p/q`, or `a,b` for p1xp1-cell.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Cell (p2-cell: e1, e2, e3) or corner (p1xp1-cell: 00, i0, 0i, ii).
    #[arg(long)]
    pub cell: Option<String>,
    /// Dimension of blowup-demo.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SlopeMode {
    /// Built-in non-lattice slope of the example.
    Generic,
    /// The slope given with --lambda.
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Print localized twisted classes at one or all fixed points.
    Compute {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        point: Option<String>,
    },
    /// Run the stable-envelope axiom checks and emit a JSON report.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        slope: Option<SlopeMode>,
        /// Chamber cocharacter, comma separated; overrides the model's.
        #[arg(long, allow_hyphen_values = true)]
        chamber: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blow up all directions of the demo chart and test twist invariance.
    BlowupTest {
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Inclusive range `a..b` of exceptional twists.
        #[arg(long)]
        s: Option<String>,
    },
    /// χ(ℙ^{r-1}, O(m)) by localization, as a character.
    Chi {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Theta and delta series checks.
    Elliptic {
        /// Truncation order; 8 for identities and 12 for numeric limits by default.
        #[arg(long)]
        order: Option<usize>,
        /// Symmetry, antisymmetry, periodicity and the theta relation.
        #[arg(long)]
        identities: bool,
        /// Numeric limit protocol, e.g. `--limit d=1/2 x=2`.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        limit: Option<Vec<String>>,
        /// Compare elliptic and motivic restrictions on the line, e.g.
        /// `--mc lambda=1/2 t=2 y=0.3`.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        mc: Option<Vec<String>>,
        /// q values for the numeric protocols, decreasing.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1e-2, 1e-3, 1e-4])]
        q: Vec<f64>,
        /// Print a coefficient: q0, q1, ...
        #[arg(long)]
        show: Option<String>,
    },
    /// Parse and validate a model file.
    Validate {
        #[arg(long)]
        model: PathBuf,
        /// Print the canonical form.
        #[arg(long)]
        canonical: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { source, point } => commands::compute(&source, point.as_deref()),
        Command::Check {
            source,
            slope,
            chamber,
            out,
        } => commands::check(&source, slope, chamber.as_deref(), out.as_deref()),
        Command::BlowupTest { r, s } => commands::blowup_test(r, s.as_deref()),
        Command::Chi { r, m } => commands::chi(r, m),
        Command::Elliptic {
            order,
            identities,
            limit,
            mc,
            q,
            show,
        } => commands::elliptic(
            order,
            identities,
            limit.as_deref(),
            mc.as_deref(),
            &q,
            show.as_deref(),
        ),
        Command::Validate { model, canonical } => commands::validate(&model, canonical),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
