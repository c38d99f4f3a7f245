use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qpol", version, about = "Checks representations of the quantum matrix-space algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Algebra: `sym` (symmetric matrices) or `mat2`.
    #[arg(long, global = true, default_value = "sym")]
    pub algebra: String,

    #[arg(long, global = true)]
    pub q: Option<f64>,

    /// Exact rational q such as `1/2`; symbolic checks use it directly.
    #[arg(long = "q-exact", global = true)]
    pub q_exact: Option<String>,

    /// Truncation of every `l2(Z+)` factor.
    #[arg(long, global = true, default_value_t = 8)]
    pub trunc: usize,

    /// Pass threshold for residuals; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Record wall-clock time in the report. Off by default so reports
    /// stay byte-identical between runs.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintingArg {
    Corrected,
    AsPrinted,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Text,
    Json,
}

/// Which representation to build.
#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    /// `pi1`..`pi5`, `f0`/`f1`/`f2`, `fock`, or a composite such as `F1:pi`
    /// or `F0:pi:eps`.
    #[arg(long)]
    pub rep: String,

    /// Comma-separated phases of a catalog series.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub phases: Vec<f64>,

    /// Torus angles applied to the result.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub angles: Vec<f64>,

    #[arg(long, value_enum, default_value_t = PrintingArg::Corrected)]
    pub printing: PrintingArg,

    /// Degree bound of a Fock module.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Interior residual of every defining relation.
    Verify(RepArgs),

    /// Canonical normal form of an expression.
    NormalForm { expr: String },

    /// Decide `lhs = rhs` in the algebra.
    Identity {
        #[arg(required_unless_present = "transport")]
        lhs: Option<String>,

        #[arg(required_unless_present = "transport")]
        rhs: Option<String>,

        /// Decide the transport identities of the pair `z21 z21*, z22 z22*`.
        #[arg(long)]
        transport: bool,
    },

    /// Gram matrices of the Fock module and its comparison with the fifth
    /// series.
    Fock {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },

    /// Coaction composites: residual suite and fingerprint.
    Compose {
        /// A single composite such as `F1:pi`; every composite of the
        /// algebra when omitted.
        #[arg(long)]
        rep: Option<String>,

        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        angles: Vec<f64>,

        /// Also fingerprint each composite of the full list.
        #[arg(long)]
        fingerprint: bool,
    },

    /// Classify points of the plane under the orbit dynamics.
    Orbit {
        #[arg(long, allow_negative_numbers = true)]
        x1: Option<f64>,

        #[arg(long, allow_negative_numbers = true)]
        x2: Option<f64>,

        #[arg(long)]
        classify: bool,

        /// Also report `orbit_point(seed, m, n)`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        steps: Vec<i32>,

        /// Classify this many random seeds in the unit square.
        #[arg(long)]
        sweep: Option<usize>,

        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,

        #[arg(long, default_value_t = 20)]
        window: u32,

        /// Fail unless every classified point lands in this class.
        #[arg(long)]
        expect: Option<String>,
    },

    /// Joint spectrum of the diagonal family and its orbit class.
    Spectrum(RepArgs),

    /// Fingerprints, equivalence, irreducibility and the composite claims.
    Analyze {
        #[command(flatten)]
        target: AnalyzeTarget,

        /// Compare the representation with this one.
        #[arg(long)]
        against: Option<String>,

        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        against_phases: Vec<f64>,

        /// Decide every composite claim.
        #[arg(long)]
        claims: bool,

        /// Run the operator identities on the joint eigenspaces.
        #[arg(long)]
        checks: bool,

        /// Every check the tool knows, at the given q and truncation.
        #[arg(long)]
        full: bool,
    },

    /// Write one generator's matrix in coordinate form and read it back.
    Export {
        #[command(flatten)]
        rep: RepArgs,

        #[arg(long)]
        generator: String,

        #[arg(long, value_enum, default_value_t = Encoding::Json)]
        encoding: Encoding,

        /// File for the matrix; it is embedded in the report otherwise.
        #[arg(long)]
        to: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AnalyzeTarget {
    #[arg(long)]
    pub rep: Option<String>,

    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub phases: Vec<f64>,

    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub angles: Vec<f64>,

    #[arg(long, default_value_t = 4)]
    pub degree: usize,
}
