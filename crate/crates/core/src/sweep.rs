//! Observable traces over time grids: purity, inversion, and period
//! estimation.
//!
//! Traces can be produced by three interchangeable engines: the closed-form
//! purity expressions (fastest, restricted to the vacuum-field
//! atom-1-excited scenario), the block-diagonal analytic evolution, and the
//! brute-force matrix propagation. Agreement between them is what the
//! acceptance suite certifies.

use crate::analytic::{
    evolve_analytic, rho1_closed, rhof_closed, zeta1_closed, zeta2_closed, Theta,
};
use crate::density::partial_trace;
use crate::error::{Error, Result};
use crate::hilbert::{FieldState, ProductState, QubitState, Subsystem};
use crate::numeric::{build_hamiltonian, HamiltonianKind, Propagator};
use crate::params::ModelParams;

/// Uniform time grid over [t_start, t_end] with `steps` points inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if t_start < 0.0 || !t_start.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t_start",
                value: t_start,
                constraint: "t_start >= 0",
            });
        }
        if t_end <= t_start || !t_end.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: t_end,
                constraint: "t_end > t_start",
            });
        }
        if steps < 2 {
            return Err(Error::InvalidParameter {
                name: "steps",
                value: steps as f64,
                constraint: "steps >= 2",
            });
        }
        Ok(Self {
            t_start,
            t_end,
            steps,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / (self.steps - 1) as f64
    }

    pub fn at(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.at(k))
    }
}

impl Default for TimeGrid {
    /// 2001 points over scaled time [0, 20]: fine enough to resolve the
    /// strongest modulation the model produces with sub-percent period
    /// error.
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: 20.0,
            steps: 2001,
        }
    }
}

/// Which engine computes a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSource {
    /// Closed-form ζ expressions; only for the vacuum-field atom-1-excited
    /// scenario.
    ClosedForm,
    /// Block-diagonal analytic evolution plus partial trace.
    Analytic,
    /// Eigendecomposition propagation plus partial trace.
    Numeric,
}

/// Initial condition plus model parameters for a run.
#[derive(Debug, Clone)]
pub struct Scenario {
    params: ModelParams,
    field: FieldState,
    atom1: QubitState,
    atom2: QubitState,
}

impl Scenario {
    pub fn new(
        params: ModelParams,
        field: FieldState,
        atom1: QubitState,
        atom2: QubitState,
    ) -> Result<Self> {
        if field.n_max() != params.n_max {
            return Err(Error::DimensionMismatch {
                expected: params.n_max + 1,
                actual: field.n_max() + 1,
            });
        }
        Ok(Self {
            params,
            field,
            atom1,
            atom2,
        })
    }

    /// The scenario the closed forms are written for: vacuum field, atom 1
    /// excited, atom 2 anywhere.
    pub fn vacuum_excited(params: ModelParams, atom2: QubitState) -> Self {
        let field = FieldState::vacuum(params.n_max);
        Self {
            params,
            field,
            atom1: QubitState::excited(),
            atom2,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn product(&self) -> ProductState {
        ProductState::new(self.field.clone(), self.atom1.clone(), self.atom2.clone())
    }

    /// True when the closed-form reduced states apply: all field weight on
    /// |0⟩ and all atom-1 weight on |e⟩ (arbitrary phases allowed).
    pub fn supports_closed_form(&self) -> bool {
        let vac = 1.0 - self.field.amps()[0].norm_sqr() <= self.params.tol;
        let excited = self.atom1.amp_g().norm_sqr() <= self.params.tol;
        vac && excited
    }
}

/// Time-gridded purity-deficit record for one subsystem.
#[derive(Debug, Clone)]
pub struct PurityTrace {
    pub subsystem: Subsystem,
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

/// ζ_subsystem(t_k) over the grid, computed by the chosen engine.
pub fn trace_purity(
    source: TraceSource,
    subsystem: Subsystem,
    grid: &TimeGrid,
    scenario: &Scenario,
) -> Result<PurityTrace> {
    let params = &scenario.params;
    let values = match source {
        TraceSource::ClosedForm => {
            if !scenario.supports_closed_form() {
                return Err(Error::UnsupportedScenario);
            }
            let theta = Theta::from_params(params);
            match subsystem {
                Subsystem::Atom1 => grid
                    .times()
                    .map(|t| zeta1_closed(t, theta, params.lambda1))
                    .collect(),
                Subsystem::Atom2 => {
                    let a2 = scenario.atom2.amp_g().norm();
                    let b2 = scenario.atom2.amp_e().norm();
                    grid.times()
                        .map(|t| zeta2_closed(t, theta, a2, b2, params.lambda1))
                        .collect()
                }
                Subsystem::Field => grid
                    .times()
                    .map(|t| rhof_closed(t, params).purity_deficit())
                    .collect(),
            }
        }
        TraceSource::Analytic => {
            let init = scenario.product();
            let mut values = Vec::with_capacity(grid.steps());
            for t in grid.times() {
                let psi = evolve_analytic(&init, t, params)?;
                values.push(partial_trace(&psi, subsystem).purity_deficit());
            }
            values
        }
        TraceSource::Numeric => {
            let h = build_hamiltonian(HamiltonianKind::InteractionPicture, params, None)?;
            let prop = Propagator::new(&h)?;
            let psi0 = scenario.product().joint();
            let mut values = Vec::with_capacity(grid.steps());
            for t in grid.times() {
                let psi = prop.apply(&psi0, t)?;
                values.push(partial_trace(&psi, subsystem).purity_deficit());
            }
            values
        }
    };
    Ok(PurityTrace {
        subsystem,
        grid: grid.clone(),
        values,
    })
}

/// Atom-1 inversion ⟨σ_z⟩ ∈ [−1, 1] over the grid.
pub fn trace_inversion(
    source: TraceSource,
    grid: &TimeGrid,
    scenario: &Scenario,
) -> Result<Vec<f64>> {
    let params = &scenario.params;
    match source {
        TraceSource::ClosedForm => {
            if !scenario.supports_closed_form() {
                return Err(Error::UnsupportedScenario);
            }
            grid.times()
                .map(|t| rho1_closed(t, params).expectation_sigma_z())
                .collect()
        }
        TraceSource::Analytic => {
            let init = scenario.product();
            grid.times()
                .map(|t| {
                    let psi = evolve_analytic(&init, t, params)?;
                    partial_trace(&psi, Subsystem::Atom1).expectation_sigma_z()
                })
                .collect()
        }
        TraceSource::Numeric => {
            let h = build_hamiltonian(HamiltonianKind::InteractionPicture, params, None)?;
            let prop = Propagator::new(&h)?;
            let psi0 = scenario.product().joint();
            grid.times()
                .map(|t| {
                    let psi = prop.apply(&psi0, t)?;
                    partial_trace(&psi, Subsystem::Atom1).expectation_sigma_z()
                })
                .collect()
        }
    }
}

/// Dominant period of a strictly periodic trace with one local minimum per
/// period, from the spacing of successive minima with parabolic refinement.
/// Accuracy is bounded by twice the grid spacing (far better on smooth
/// traces).
pub fn estimate_period(values: &[f64], grid: &TimeGrid) -> Result<f64> {
    if values.len() != grid.steps() {
        return Err(Error::DimensionMismatch {
            expected: grid.steps(),
            actual: values.len(),
        });
    }
    let mut minima = Vec::new();
    for i in 1..values.len() - 1 {
        if values[i] < values[i - 1] && values[i] <= values[i + 1] {
            minima.push(refine_minimum(values, grid, i));
        }
    }
    if minima.len() < 2 {
        return Err(Error::TooFewMinima {
            found: minima.len(),
        });
    }
    Ok((minima[minima.len() - 1] - minima[0]) / (minima.len() - 1) as f64)
}

/// Vertex of the parabola through the minimum sample and its neighbors.
fn refine_minimum(values: &[f64], grid: &TimeGrid, i: usize) -> f64 {
    let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
    let denom = a - 2.0 * b + c;
    if denom.abs() < 1e-300 {
        return grid.at(i);
    }
    let offset = 0.5 * (a - c) / denom;
    grid.at(i) + offset * grid.dt()
}
