//! Command-line front end: scenario configuration, dataset emission, and
//! oracle comparison reports.
//!
//! Exit codes: 0 on success, 2 for configuration errors (bad flags, bad
//! amplitudes, impossible scenario/source combinations), 3 for numeric
//! failures (truncation leaks, eigensolver trouble, unwritable output).

mod args;
mod emit;
mod parse;

use std::process::ExitCode;

use clap::Parser;

use duojc::{
    dispersive_validity, trace_inversion, trace_purity, ModelParams, QubitState, Scenario,
    Subsystem, TimeGrid, TraceSource,
};

use args::{Cli, Command, GridArgs, ScenarioArgs, SourceArg, SubsystemArg};

#[derive(Debug)]
pub enum AppError {
    Config(String),
    Numeric(String),
    /// Downstream reader closed the pipe; not a failure.
    ClosedPipe,
}

impl AppError {
    /// Library errors raised while interpreting flags.
    pub fn config(e: duojc::Error) -> Self {
        AppError::Config(e.to_string())
    }

    /// Library errors raised while computing; an unsupported scenario is
    /// still the user's configuration, not a numeric failure.
    pub fn runtime(e: duojc::Error) -> Self {
        match e {
            duojc::Error::UnsupportedScenario => AppError::Config(e.to_string()),
            other => AppError::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            AppError::ClosedPipe
        } else {
            AppError::Numeric(format!("output failed: {e}"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout (exit 0) and usage
            // diagnostics to stderr (exit 2)
            return ExitCode::from(if e.use_stderr() {
                let _ = e.print();
                2
            } else {
                let _ = e.print();
                0
            });
        }
    };
    match run(cli.command) {
        Ok(()) | Err(AppError::ClosedPipe) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn source_of(arg: SourceArg) -> TraceSource {
    match arg {
        SourceArg::ClosedForm => TraceSource::ClosedForm,
        SourceArg::Analytic => TraceSource::Analytic,
        SourceArg::Numeric => TraceSource::Numeric,
    }
}

fn subsystem_of(arg: SubsystemArg) -> Subsystem {
    match arg {
        SubsystemArg::Atom1 => Subsystem::Atom1,
        SubsystemArg::Atom2 => Subsystem::Atom2,
        SubsystemArg::Field => Subsystem::Field,
    }
}

fn build_scenario(params: &args::ParamArgs, scenario: &ScenarioArgs) -> Result<Scenario, AppError> {
    let params = parse::parse_params(params)?;
    let field = parse::parse_field(&scenario.field, params.n_max)?;
    let atom1 = parse::parse_atom(&scenario.atom1, "atom1")?;
    let atom2 = parse::parse_atom(&scenario.atom2, "atom2")?;
    Scenario::new(params, field, atom1, atom2).map_err(AppError::config)
}

fn build_grid(grid: &GridArgs) -> Result<TimeGrid, AppError> {
    TimeGrid::new(grid.t_start, grid.t_end, grid.steps).map_err(AppError::config)
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Purity {
            subsystem,
            source,
            params,
            scenario,
            grid,
            output,
        } => {
            let scenario = build_scenario(&params, &scenario)?;
            let grid = build_grid(&grid)?;
            let trace = trace_purity(source_of(source), subsystem_of(subsystem), &grid, &scenario)
                .map_err(AppError::runtime)?;
            let rows = grid.times().zip(trace.values).map(|(t, z)| vec![t, z]);
            let mut out = emit::writer(output.output.as_deref())?;
            emit::write_csv(&mut out, "t,zeta", rows, output.precision)?;
            Ok(())
        }
        Command::Inversion {
            source,
            params,
            scenario,
            grid,
            output,
        } => {
            let scenario = build_scenario(&params, &scenario)?;
            let grid = build_grid(&grid)?;
            let values =
                trace_inversion(source_of(source), &grid, &scenario).map_err(AppError::runtime)?;
            let rows = grid.times().zip(values).map(|(t, v)| vec![t, v]);
            let mut out = emit::writer(output.output.as_deref())?;
            emit::write_csv(&mut out, "t,inversion", rows, output.precision)?;
            Ok(())
        }
        Command::Compare {
            params,
            scenario,
            grid,
            output,
        } => {
            let scenario = build_scenario(&params, &scenario)?;
            let grid = build_grid(&grid)?;
            let analytic = trace_purity(TraceSource::Analytic, Subsystem::Atom1, &grid, &scenario)
                .map_err(AppError::runtime)?;
            let numeric = trace_purity(TraceSource::Numeric, Subsystem::Atom1, &grid, &scenario)
                .map_err(AppError::runtime)?;
            let deltas: Vec<f64> = analytic
                .values
                .iter()
                .zip(&numeric.values)
                .map(|(a, b)| (a - b).abs())
                .collect();
            let max = deltas.iter().copied().fold(0.0, f64::max);
            let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
            let rows = grid
                .times()
                .zip(analytic.values.iter().zip(&numeric.values).zip(&deltas))
                .map(|(t, ((a, b), d))| vec![t, *a, *b, *d]);
            let mut out = emit::writer(output.output.as_deref())?;
            emit::write_csv(
                &mut out,
                "t,zeta1_analytic,zeta1_numeric,delta",
                rows,
                output.precision,
            )?;
            eprintln!("max |delta| = {max:.3e}, mean = {mean:.3e}");
            Ok(())
        }
        Command::Validity {
            lambda_dipole,
            n,
            delta,
            output,
        } => {
            let params = ModelParams::new(1.0, 0.0, delta).map_err(AppError::config)?;
            let ratio = dispersive_validity(&params, lambda_dipole, n).map_err(AppError::config)?;
            let verdict = if ratio < 0.1 { "PASS" } else { "WARN" };
            let mut out = emit::writer(output.output.as_deref())?;
            use std::io::Write;
            writeln!(out, "{ratio:.prec$} {verdict}", prec = output.precision)?;
            out.flush()?;
            Ok(())
        }
        Command::Figure {
            figure,
            t_end,
            steps,
            output,
        } => {
            let lambda2 = if figure == 1 { 0.2 } else { 0.5 };
            let params = ModelParams::new(1.0, lambda2, 50.0).map_err(AppError::config)?;
            let scenario = Scenario::vacuum_excited(params, QubitState::balanced());
            let grid = TimeGrid::new(0.0, t_end, steps).map_err(AppError::config)?;
            let zeta1 = trace_purity(TraceSource::ClosedForm, Subsystem::Atom1, &grid, &scenario)
                .map_err(AppError::runtime)?;
            let zeta2 = trace_purity(TraceSource::ClosedForm, Subsystem::Atom2, &grid, &scenario)
                .map_err(AppError::runtime)?;
            let rows = grid
                .times()
                .zip(zeta1.values.iter().zip(&zeta2.values))
                .map(|(t, (z1, z2))| vec![t, *z1, *z2]);
            let mut out = emit::writer(output.output.as_deref())?;
            emit::write_csv(&mut out, "t,zeta1,zeta2", rows, output.precision)?;
            Ok(())
        }
    }
}
