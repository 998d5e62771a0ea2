//! Closed-form time evolution and reduced states.
//!
//! With atom 1 on resonance, the interaction-picture Hamiltonian
//!
//! ```text
//! H_I = (δ + λ₂ n̂) σ_z⁽²⁾ + λ₁ (â† σ₋⁽¹⁾ + σ₊⁽¹⁾ â)
//! ```
//!
//! (σ_z⁽²⁾ with eigenvalues ±1; see the Hamiltonian-builder docs for why)
//! splits into 2×2 blocks labelled by the conserved excitation number
//! N = n + [atom 1 excited] and by the frozen atom-2 level. Each block
//! {|N−1,e₁,s₂⟩, |N,g₁,s₂⟩} rotates at the shifted Rabi rate
//!
//! ```text
//! Δ_N = √(λ₂²/4 + N λ₁²)
//! ```
//!
//! under a common phase e^{∓i(δ+λ₂(N−1/2))t} (− for s₂ = e, + for s₂ = g).
//! This module evaluates those blocks directly, along with the closed-form
//! reduced density matrices and purity deficits for the special initial
//! condition "vacuum field, atom 1 excited, atom 2 anywhere".
//!
//! The top Fock rung |n_max, e₁⟩ has nowhere to rotate to inside the
//! truncated ladder and evolves phase-only, exactly like the truncated
//! matrix Hamiltonian; initial population there beyond `tol` is reported as
//! a truncation leak instead of being silently distorted.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::hilbert::{joint_index, AtomLevel, JointKet, ProductState};
use crate::params::ModelParams;

/// Dimensionless coupling ratio Θ = λ₂/(2λ₁) that controls every closed
/// form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theta {
    value: f64,
}

impl Theta {
    pub fn new(value: f64) -> Result<Self> {
        if value < 0.0 || !value.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value,
                constraint: "theta >= 0",
            });
        }
        Ok(Self { value })
    }

    pub fn from_params(params: &ModelParams) -> Self {
        Self {
            value: params.theta(),
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }
}

/// Shifted Rabi rate Δ_n = √(λ₂²/4 + n λ₁²) of the n-excitation block.
///
/// Strictly increasing in n and bounded below by λ₂/2.
pub fn rabi_frequency(n: usize, params: &ModelParams) -> f64 {
    let half = 0.5 * params.lambda2;
    (half * half + n as f64 * params.lambda1 * params.lambda1).sqrt()
}

/// sin(ωt)/ω, finite at ω → 0 (series below |ωt| = 1e−4).
fn sin_over(omega: f64, t: f64) -> f64 {
    let x = omega * t;
    if x.abs() < 1e-4 {
        let x2 = x * x;
        t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        x.sin() / omega
    }
}

/// The four amplitudes of the excitation family at index n: the states
/// |n−1,e₁,e₂⟩, |n,g₁,e₂⟩, |n,e₁,g₂⟩, |n+1,g₁,g₂⟩.
///
/// (c1, c2) live in the N = n block with atom 2 excited; (c3, c4) in the
/// N = n+1 block with atom 2 in the ground state. |c1|²+|c2|² and
/// |c3|²+|c4|² are separately conserved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientQuad {
    pub c1: C64,
    pub c2: C64,
    pub c3: C64,
    pub c4: C64,
}

/// Evolved family amplitudes at time `t` for a product initial state.
///
/// At t = 0 this reduces to (A_{n−1}b₁b₂, A_n a₁b₂, A_n b₁a₂, A_{n+1}a₁a₂).
pub fn coefficients(
    n: usize,
    t: f64,
    init: &ProductState,
    params: &ModelParams,
) -> CoefficientQuad {
    let a1 = init.atom1().amp_g();
    let b1 = init.atom1().amp_e();
    let a2 = init.atom2().amp_g();
    let b2 = init.atom2().amp_e();
    let a = |k: isize| init.field().amp_or_zero(k);
    let ni = n as isize;

    let i = C64::i();
    let half = 0.5 * params.lambda2;

    let d_n = rabi_frequency(n, params);
    let s_n = sin_over(d_n, t);
    let cos_n = (d_n * t).cos();
    let g_n = params.lambda1 * (n as f64).sqrt();

    let d_n1 = rabi_frequency(n + 1, params);
    let s_n1 = sin_over(d_n1, t);
    let cos_n1 = (d_n1 * t).cos();
    let g_n1 = params.lambda1 * ((n + 1) as f64).sqrt();

    CoefficientQuad {
        c1: (cos_n + i * half * s_n) * a(ni - 1) * b1 * b2 - i * g_n * s_n * a(ni) * a1 * b2,
        c2: (cos_n - i * half * s_n) * a(ni) * a1 * b2 - i * g_n * s_n * a(ni - 1) * b1 * b2,
        c3: (cos_n1 - i * half * s_n1) * a(ni) * b1 * a2 - i * g_n1 * s_n1 * a(ni + 1) * a1 * a2,
        c4: (cos_n1 + i * half * s_n1) * a(ni + 1) * a1 * a2 - i * g_n1 * s_n1 * a(ni) * b1 * a2,
    }
}

/// Evolve a decoupled initial state for time `t` under the block-diagonal
/// closed form.
///
/// Fails with [`Error::TruncationLeak`] when the initial state puts more
/// than `tol` population on |n_max, e₁⟩, whose partner state |n_max+1, g₁⟩
/// lies outside the truncated ladder.
pub fn evolve_analytic(init: &ProductState, t: f64, params: &ModelParams) -> Result<JointKet> {
    let n_max = init.field().n_max();
    if n_max != params.n_max {
        return Err(Error::DimensionMismatch {
            expected: 4 * (params.n_max + 1),
            actual: 4 * (n_max + 1),
        });
    }
    let a1 = init.atom1().amp_g();
    let b1 = init.atom1().amp_e();
    let top = init.field().amps()[n_max] * b1;
    if top.norm_sqr() > params.tol {
        return Err(Error::TruncationLeak {
            population: top.norm_sqr(),
            n_max,
        });
    }

    let dim = 4 * (n_max + 1);
    let mut amps = DVector::from_element(dim, C64::new(0.0, 0.0));
    let i = C64::i();
    let half = 0.5 * params.lambda2;

    // sign = +1 for atom 2 excited, -1 for atom 2 in the ground state
    for (s2, sign, w2) in [
        (AtomLevel::Excited, 1.0, init.atom2().amp_e()),
        (AtomLevel::Ground, -1.0, init.atom2().amp_g()),
    ] {
        if w2.norm_sqr() == 0.0 {
            continue;
        }
        // N = 0: |0, g₁, s₂⟩ only picks up its diagonal phase ±δ
        let phase0 = C64::from_polar(1.0, -sign * params.delta * t);
        amps[joint_index(0, AtomLevel::Ground, s2)] += w2 * init.field().amps()[0] * a1 * phase0;

        // rotating blocks N = 1..=n_max
        for big_n in 1..=n_max {
            let u0 = init.field().amps()[big_n - 1] * b1 * w2;
            let v0 = init.field().amps()[big_n] * a1 * w2;
            if u0.norm_sqr() == 0.0 && v0.norm_sqr() == 0.0 {
                continue;
            }
            let delta_n = rabi_frequency(big_n, params);
            let s = sin_over(delta_n, t);
            let cos = (delta_n * t).cos();
            let h = -sign * half; // traceless diagonal of the block
            let g = params.lambda1 * (big_n as f64).sqrt();
            let common = sign * (params.delta + params.lambda2 * (big_n as f64 - 0.5));
            let phase = C64::from_polar(1.0, -common * t);

            let u_t = phase * ((cos - i * h * s) * u0 - i * g * s * v0);
            let v_t = phase * ((cos + i * h * s) * v0 - i * g * s * u0);
            amps[joint_index(big_n - 1, AtomLevel::Excited, s2)] += u_t;
            amps[joint_index(big_n, AtomLevel::Ground, s2)] += v_t;
        }

        // top rung |n_max, e₁, s₂⟩: phase-only inside the truncation
        let top_amp = init.field().amps()[n_max] * b1 * w2;
        if top_amp.norm_sqr() > 0.0 {
            let e = sign * (params.delta + params.lambda2 * n_max as f64);
            amps[joint_index(n_max, AtomLevel::Excited, s2)] +=
                top_amp * C64::from_polar(1.0, -e * t);
        }
    }

    JointKet::from_amplitudes(n_max, amps)
}

/// Closed-form reduced state of atom 1 for the vacuum-field, atom-1-excited
/// initial condition: diag(λ₁² sin²Δ₁t/Δ₁², cos²Δ₁t + λ₂²sin²Δ₁t/4Δ₁²) over
/// (g, e). The trace is 1 identically.
pub fn rho1_closed(t: f64, params: &ModelParams) -> DensityMatrix {
    let d1 = rabi_frequency(1, params);
    let s2 = ((d1 * t).sin() / d1).powi(2);
    let p_e = (d1 * t).cos().powi(2) + 0.25 * params.lambda2 * params.lambda2 * s2;
    let p_g = params.lambda1 * params.lambda1 * s2;
    diag2(p_g, p_e)
}

/// Closed-form reduced state of atom 2 for the same initial condition.
///
/// Populations stay frozen at (|a₂|², |b₂|²); the coherence is multiplied by
/// D(t)·e^{2i(δ+λ₂/2)t} with |D(t)|² = 1 − 4Θ²sin⁴(Δ₁t)/(1+Θ²)².
pub fn rho2_closed(t: f64, a2: C64, b2: C64, params: &ModelParams) -> Result<DensityMatrix> {
    let atom2 = crate::hilbert::QubitState::new(a2, b2)?;
    let (a2, b2) = (atom2.amp_g(), atom2.amp_e());
    let i = C64::i();
    let d1 = rabi_frequency(1, params);
    let cos = C64::new((d1 * t).cos(), 0.0);
    let s = (d1 * t).sin() / d1;
    let half = 0.5 * params.lambda2;

    let d = (cos - i * half * s).powi(2) + params.lambda1 * params.lambda1 * s * s;
    let rot = C64::from_polar(1.0, 2.0 * (params.delta + half) * t);
    let coherence = d * rot * a2 * b2.conj();

    let mut m = DMatrix::from_element(2, 2, C64::new(0.0, 0.0));
    m[(0, 0)] = C64::new(a2.norm_sqr(), 0.0);
    m[(1, 1)] = C64::new(b2.norm_sqr(), 0.0);
    m[(0, 1)] = coherence;
    m[(1, 0)] = coherence.conj();
    DensityMatrix::new(m, crate::params::DEFAULT_TOL)
}

/// Closed-form reduced state of the field for the same initial condition:
/// supported on |0⟩ and |1⟩, mirroring atom 1 with e ↔ 0 and g ↔ 1.
pub fn rhof_closed(t: f64, params: &ModelParams) -> DensityMatrix {
    let d1 = rabi_frequency(1, params);
    let s2 = ((d1 * t).sin() / d1).powi(2);
    let p0 = (d1 * t).cos().powi(2) + 0.25 * params.lambda2 * params.lambda2 * s2;
    let p1 = params.lambda1 * params.lambda1 * s2;
    let dim = params.n_max + 1;
    let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    m[(0, 0)] = C64::new(p0, 0.0);
    m[(1, 1)] = C64::new(p1, 0.0);
    DensityMatrix::new(m, crate::params::DEFAULT_TOL)
        .expect("closed-form field state is a valid density matrix")
}

/// Closed-form purity deficit of atom 1: ζ₁ = 2p(1−p) with
/// p = sin²(√(1+Θ²)λ₁t)/(1+Θ²). Ranges over [0, 1/2].
pub fn zeta1_closed(t: f64, theta: Theta, lambda1: f64) -> f64 {
    let th2 = theta.value() * theta.value();
    let p = (((1.0 + th2).sqrt() * lambda1 * t).sin().powi(2)) / (1.0 + th2);
    2.0 * p * (1.0 - p)
}

/// Closed-form purity deficit of atom 2:
/// ζ₂ = 8a₂²b₂²Θ²sin⁴(√(1+Θ²)λ₁t)/(1+Θ²)², for real amplitude magnitudes
/// with a₂² + b₂² = 1. Identically zero when Θ = 0 or either amplitude
/// vanishes.
pub fn zeta2_closed(t: f64, theta: Theta, a2: f64, b2: f64, lambda1: f64) -> f64 {
    let th2 = theta.value() * theta.value();
    let s = ((1.0 + th2).sqrt() * lambda1 * t).sin();
    8.0 * a2 * a2 * b2 * b2 * th2 * s.powi(4) / ((1.0 + th2) * (1.0 + th2))
}

fn diag2(p_g: f64, p_e: f64) -> DensityMatrix {
    let mut m = DMatrix::from_element(2, 2, C64::new(0.0, 0.0));
    m[(0, 0)] = C64::new(p_g, 0.0);
    m[(1, 1)] = C64::new(p_e, 0.0);
    DensityMatrix::new(m, crate::params::DEFAULT_TOL)
        .expect("closed-form populations form a valid density matrix")
}
