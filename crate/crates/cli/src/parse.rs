//! Turn flag strings into model states.

use num_complex::Complex64 as C64;

use duojc::{FieldState, ModelParams, QubitState};

use crate::args::ParamArgs;
use crate::AppError;

pub fn parse_params(args: &ParamArgs) -> Result<ModelParams, AppError> {
    let params = ModelParams::new(args.lambda1, args.lambda2, args.delta)
        .map_err(AppError::config)?
        .with_n_max(args.n_max)
        .map_err(AppError::config)?
        .with_tol(args.tol)
        .map_err(AppError::config)?;
    match (args.omega, args.omega2) {
        (Some(omega), Some(omega2)) => params
            .with_frequencies(omega, omega2)
            .map_err(AppError::config),
        _ => Ok(params),
    }
}

fn parse_complex(token: &str, flag: &str) -> Result<C64, AppError> {
    token.trim().parse::<C64>().map_err(|_| {
        AppError::Config(format!(
            "--{flag}: malformed amplitude `{token}` (examples: 0.6, 0.8i, 0.5+0.5i)"
        ))
    })
}

pub fn parse_atom(arg: &str, flag: &str) -> Result<QubitState, AppError> {
    match arg.trim() {
        "g" => Ok(QubitState::ground()),
        "e" => Ok(QubitState::excited()),
        "superposition" => Ok(QubitState::balanced()),
        other => {
            let parts: Vec<&str> = other.split(',').collect();
            if parts.len() != 2 {
                return Err(AppError::Config(format!(
                    "--{flag}: expected `g`, `e`, `superposition`, or two amplitudes `a,b`, got `{other}`"
                )));
            }
            let amp_g = parse_complex(parts[0], flag)?;
            let amp_e = parse_complex(parts[1], flag)?;
            QubitState::new(amp_g, amp_e).map_err(AppError::config)
        }
    }
}

pub fn parse_field(arg: &str, n_max: usize) -> Result<FieldState, AppError> {
    let arg = arg.trim();
    if arg == "vacuum" {
        return Ok(FieldState::vacuum(n_max));
    }
    if let Some(n) = arg.strip_prefix("fock:") {
        let n: usize = n.parse().map_err(|_| {
            AppError::Config(format!("--field: malformed photon number in `{arg}`"))
        })?;
        return FieldState::fock(n, n_max).map_err(|_| {
            AppError::Config(format!(
                "--field: fock:{n} does not fit a ladder truncated at n_max = {n_max}"
            ))
        });
    }
    let mut amps = arg
        .split(',')
        .map(|tok| parse_complex(tok, "field"))
        .collect::<Result<Vec<C64>, AppError>>()?;
    if amps.len() > n_max + 1 {
        return Err(AppError::Config(format!(
            "--field: {} amplitudes exceed the ladder size n_max + 1 = {}",
            amps.len(),
            n_max + 1
        )));
    }
    amps.resize(n_max + 1, C64::new(0.0, 0.0));
    FieldState::new(amps).map_err(AppError::config)
}
