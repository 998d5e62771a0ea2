//! Flag definitions for all subcommands.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Simulate two two-level atoms sharing one cavity mode: atom 1 resonant,
/// atom 2 dispersive. Emits CSV datasets of purity and inversion traces.
#[derive(Debug, Parser)]
#[command(name = "duojc", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Purity-deficit trace ζ(t) of one subsystem (CSV: t,zeta).
    Purity {
        /// Subsystem to trace out to.
        #[arg(long, value_enum, default_value_t = SubsystemArg::Atom1)]
        subsystem: SubsystemArg,
        #[arg(long, value_enum, default_value_t = SourceArg::Analytic)]
        source: SourceArg,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Atom-1 inversion trace ⟨σ_z⟩(t) (CSV: t,inversion).
    Inversion {
        #[arg(long, value_enum, default_value_t = SourceArg::Analytic)]
        source: SourceArg,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form vs brute-force ζ₁ comparison
    /// (CSV: t,zeta1_analytic,zeta1_numeric,delta; summary on stderr).
    Compare {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dispersive-approximation validity ratio √(n+1)·λ/|δ| with a
    /// PASS/WARN verdict at the conventional 0.1 threshold.
    Validity {
        /// Dipole coupling constant λ of the eliminated transition.
        #[arg(long)]
        lambda_dipole: f64,
        /// Photon number at which to evaluate the ratio.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 50.0)]
        delta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reference purity datasets (CSV: t,zeta1,zeta2) for λ₁ = 1 with
    /// λ₂ = 0.2 (dataset 1) or λ₂ = 0.5 (dataset 2); vacuum field, atom 1
    /// excited, atom 2 balanced. Needs no other flags.
    Figure {
        /// Which dataset: 1 (λ₂ = 0.2) or 2 (λ₂ = 0.5).
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        figure: u8,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
        #[arg(long, default_value_t = 2001)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubsystemArg {
    Atom1,
    Atom2,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    /// Closed-form ζ expressions (vacuum field + excited atom 1 only).
    ClosedForm,
    /// Block-diagonal closed-form evolution plus partial trace.
    Analytic,
    /// Eigendecomposition propagation plus partial trace.
    Numeric,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Resonant coupling rate λ₁ of atom 1 (> 0).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda1: f64,
    /// Dispersive rate λ₂ of atom 2 (≥ 0).
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    pub lambda2: f64,
    /// Detuning δ = ω₂ − ω.
    #[arg(long, default_value_t = 50.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Cavity frequency ω (with --omega2, overrides --delta).
    #[arg(long, requires = "omega2", allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Atom-2 frequency ω₂ (with --omega, overrides --delta).
    #[arg(long, requires = "omega", allow_negative_numbers = true)]
    pub omega2: Option<f64>,
    /// Fock-ladder truncation (≥ 1).
    #[arg(long, default_value_t = 15)]
    pub n_max: usize,
    /// Numeric tolerance for invariant checks.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Initial field: `vacuum`, `fock:<n>`, or a comma-separated amplitude
    /// list (complex entries like `0.6`, `0.8i`, `0.5+0.5i`).
    #[arg(long, default_value = "vacuum")]
    pub field: String,
    /// Initial atom 1: `g`, `e`, `superposition`, or `<amp_g>,<amp_e>`.
    #[arg(long, default_value = "e")]
    pub atom1: String,
    /// Initial atom 2: `g`, `e`, `superposition`, or `<amp_g>,<amp_e>`.
    #[arg(long, default_value = "superposition")]
    pub atom2: String,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// First grid time (scaled units λ₁t).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t_start: f64,
    /// Last grid time.
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    pub t_end: f64,
    /// Number of grid points (≥ 2, endpoints included).
    #[arg(long, default_value_t = 2001)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Decimal digits in emitted numbers.
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
}
