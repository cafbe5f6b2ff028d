use clap::{Args, Parser, Subcommand, ValueEnum};

/// Expert-vote inductive probabilities for one-sided and bilateral
/// hypotheses in monotone likelihood ratio models.
///
/// Intervals are written `(a,b)`, `[a,b]`, `(a,b]` or `[a,b)`, with `inf`
/// and `-inf` for unbounded ends; pieces of a union are joined by `u`, as in
/// `(-inf,0)u(1,2]`. `{}` is the empty set.
#[derive(Debug, Parser)]
#[command(name = "expert-vote", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vote (q0, q1) for one hypothesis at one realization.
    Vote(VoteArgs),
    /// CDF of the inductive distribution of θ on a grid.
    Inductive(InductiveArgs),
    /// Symmetric and compatible bilateral votes for three nested normal
    /// hypotheses at x = 2.18.
    DemoSchervish,
    /// Run the model, limit, uniformity and expert checks.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// N(θ, σ²), θ real.
    Normal,
    /// Gamma with shape --shape and scale --scale-mult·θ, θ > 0.
    Gamma,
    /// Noncentral beta of the second kind with --p, --q (or --k, --l), θ ≥ 0.
    /// For a noncentral F statistic W pass x = (k/l)·W and θ = λ²/2.
    Ncbeta,
    /// Noncentral chi-square with one degree of freedom, parameter λ ≥ 0.
    Chi2,
    /// Ghost-parameter ANOVA pair: --p, --q (or --k, --l), --t, --u.
    Anova,
    /// Normal mean with unknown variance: --n, --mean, --s2.
    Student,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long)]
    pub shape: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub scale_mult: f64,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Numerator degrees of freedom; sets p = k/2.
    #[arg(long)]
    pub k: Option<f64>,
    /// Denominator degrees of freedom; sets q = l/2.
    #[arg(long)]
    pub l: Option<f64>,
    /// Restrict the parameter interval, e.g. `(0,1]`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta_domain: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub mean: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,

    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub series_tail: Option<f64>,
    #[arg(long)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VoteArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Θ₀ = (b, ∞) against Θ₁ = (−∞, b].
    #[arg(long, allow_hyphen_values = true)]
    pub one_sided: Option<f64>,
    /// Θ₀ = [a, b] (compatible votes), given as `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub bilateral: Option<String>,
    /// Θ₀ = [c − λ₁, c + λ₁] with the symmetric normal vote.
    #[arg(long, allow_hyphen_values = true)]
    pub symmetric_c: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub lambda1: f64,
    /// ANOVA: Θ₀ = [0, θ].
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct InductiveArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Comma-separated parameter values.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Also check this rule, given as its set {φ = 1}, on N(θ, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub rule: Option<String>,
    /// Boundary θ₁ for the rule check.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub boundary: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Draws per uniformity check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}
