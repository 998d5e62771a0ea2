//! Two two-level atoms sharing one lossless cavity mode: atom 1 exchanges
//! excitations with the field on resonance while far-detuned atom 2 only
//! shifts the field's phase, photon by photon.
//!
//! The model lives in the rotating frame, where the Hamiltonian is
//!
//! ```text
//! H_I = (δ + λ₂ n̂) σ_z⁽²⁾ + λ₁ (â† σ₋⁽¹⁾ + σ₊⁽¹⁾ â),
//! ```
//!
//! with λ₁ the resonant coupling, λ₂ the dispersive rate, and δ = ω₂ − ω
//! the detuning of atom 2. Even though atom 2 never trades energy with the
//! field, it drags atom 1's vacuum Rabi oscillation from λ₁ up to
//! Δ₁ = √(λ₁² + λ₂²/4) and imprints a slow modulation on every subsystem's
//! purity. The crate computes this dynamics two independent ways — a
//! block-diagonal closed form ([`analytic`]) and brute-force matrix
//! propagation ([`numeric`]) — and cross-checks them everywhere, so that
//! each route serves as the other's oracle.
//!
//! Module map:
//! - [`hilbert`]: states, basis ordering, tensor products;
//! - [`density`]: density matrices, partial traces, purity;
//! - [`analytic`]: closed-form evolution, reduced states, ζ formulas;
//! - [`numeric`]: explicit Hamiltonians, eigendecomposition propagation,
//!   frame changes, dispersive-vs-two-dipole comparison;
//! - [`sweep`]: time-gridded purity/inversion traces and period estimation.
//!
//! Everything is an immutable value and every operation is a pure function;
//! grid points and parameter sets can be evaluated from any number of
//! threads without synchronization.

pub mod analytic;
pub mod density;
pub mod error;
pub mod hilbert;
pub mod numeric;
pub mod params;
pub mod sweep;

pub use analytic::{
    coefficients, evolve_analytic, rabi_frequency, rho1_closed, rho2_closed, rhof_closed,
    zeta1_closed, zeta2_closed, CoefficientQuad, Theta,
};
pub use density::{partial_trace, partial_trace_density, trace_out, DensityMatrix};
pub use error::{Error, Result};
pub use hilbert::{
    joint_index, product_state, AtomLevel, FieldState, JointKet, ProductState, QubitState,
    Subsystem,
};
pub use numeric::{
    build_hamiltonian, compare_dispersive_vs_exact, dispersive_validity, excitation_expectation,
    frame_transform, propagate, DispersiveComparison, FrameDirection, HamiltonianKind,
    Lambda2Mapping, OperatorMatrix, Propagator,
};
pub use params::{ModelParams, NORM_SLACK};
pub use sweep::{
    estimate_period, trace_inversion, trace_purity, PurityTrace, Scenario, TimeGrid, TraceSource,
};
