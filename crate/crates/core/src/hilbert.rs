//! States on the joint Hilbert space of one truncated field mode and two
//! two-level atoms.
//!
//! The joint basis is |n⟩⊗|s₁⟩⊗|s₂⟩ with n = 0..n_max and s ∈ {g, e},
//! flattened n-major, then atom 1, then atom 2:
//!
//! ```text
//! index(n, s1, s2) = 4n + 2·[s1 = e] + [s2 = e]
//! ```
//!
//! Every matrix and vector in the crate uses this ordering. States are
//! immutable after construction and normalized by construction: a norm off
//! by at most [`NORM_SLACK`] is
//! renormalized,
//! anything worse is rejected.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::NORM_SLACK;

/// One of the two atomic levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomLevel {
    Ground,
    Excited,
}

impl AtomLevel {
    /// Basis index: 0 for |g⟩, 1 for |e⟩.
    pub fn index(self) -> usize {
        match self {
            AtomLevel::Ground => 0,
            AtomLevel::Excited => 1,
        }
    }
}

/// One of the three subsystems of the joint space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    Field,
    Atom1,
    Atom2,
}

impl Subsystem {
    /// Hilbert-space dimension of the subsystem at truncation `n_max`.
    pub fn dim(self, n_max: usize) -> usize {
        match self {
            Subsystem::Field => n_max + 1,
            Subsystem::Atom1 | Subsystem::Atom2 => 2,
        }
    }
}

/// Flattened joint-basis index for |n, s₁, s₂⟩.
pub fn joint_index(n: usize, s1: AtomLevel, s2: AtomLevel) -> usize {
    4 * n + 2 * s1.index() + s2.index()
}

/// Decompose a flat joint index into (n, s₁, s₂) as raw indices.
pub(crate) fn split_index(idx: usize) -> (usize, usize, usize) {
    (idx / 4, (idx / 2) % 2, idx % 2)
}

fn normalized(amps: Vec<C64>) -> Result<Vec<C64>> {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_SLACK {
        return Err(Error::NotNormalized {
            norm,
            max_dev: NORM_SLACK,
        });
    }
    Ok(amps.into_iter().map(|a| a / norm).collect())
}

/// Pure state of one atom, amplitudes on (|g⟩, |e⟩).
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    amp_g: C64,
    amp_e: C64,
}

impl QubitState {
    pub fn new(amp_g: C64, amp_e: C64) -> Result<Self> {
        let amps = normalized(vec![amp_g, amp_e])?;
        Ok(Self {
            amp_g: amps[0],
            amp_e: amps[1],
        })
    }

    pub fn ground() -> Self {
        Self {
            amp_g: C64::new(1.0, 0.0),
            amp_e: C64::new(0.0, 0.0),
        }
    }

    pub fn excited() -> Self {
        Self {
            amp_g: C64::new(0.0, 0.0),
            amp_e: C64::new(1.0, 0.0),
        }
    }

    /// Equal-weight superposition (|g⟩ + |e⟩)/√2.
    pub fn balanced() -> Self {
        let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { amp_g: r, amp_e: r }
    }

    pub fn amp_g(&self) -> C64 {
        self.amp_g
    }

    pub fn amp_e(&self) -> C64 {
        self.amp_e
    }

    pub fn amp(&self, level: AtomLevel) -> C64 {
        match level {
            AtomLevel::Ground => self.amp_g,
            AtomLevel::Excited => self.amp_e,
        }
    }
}

/// Pure state of the cavity mode on the truncated Fock ladder |0⟩..|n_max⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    amps: Vec<C64>,
}

impl FieldState {
    /// Amplitudes A_0..A_n_max; the vector length fixes the truncation.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self {
            amps: normalized(amps)?,
        })
    }

    /// Vacuum |0⟩ on a ladder truncated at `n_max`.
    pub fn vacuum(n_max: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); n_max + 1];
        amps[0] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// Number state |n⟩ on a ladder truncated at `n_max`.
    pub fn fock(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::DimensionMismatch {
                expected: n_max + 1,
                actual: n + 1,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); n_max + 1];
        amps[n] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    /// Amplitude A_k, or zero outside the ladder (including k < 0).
    pub fn amp_or_zero(&self, k: isize) -> C64 {
        if k < 0 || k as usize >= self.amps.len() {
            C64::new(0.0, 0.0)
        } else {
            self.amps[k as usize]
        }
    }
}

/// Decoupled initial state: field ⊗ atom 1 ⊗ atom 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    field: FieldState,
    atom1: QubitState,
    atom2: QubitState,
}

impl ProductState {
    pub fn new(field: FieldState, atom1: QubitState, atom2: QubitState) -> Self {
        Self {
            field,
            atom1,
            atom2,
        }
    }

    pub fn field(&self) -> &FieldState {
        &self.field
    }

    pub fn atom1(&self) -> &QubitState {
        &self.atom1
    }

    pub fn atom2(&self) -> &QubitState {
        &self.atom2
    }

    /// Expand the product into joint amplitudes.
    pub fn joint(&self) -> JointKet {
        product_state(&self.field, &self.atom1, &self.atom2)
    }
}

/// Normalized state on the joint space, amplitudes in the documented basis
/// ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct JointKet {
    amps: DVector<C64>,
    n_max: usize,
}

impl JointKet {
    /// Wrap raw joint amplitudes; length must be 4(n_max + 1) and the norm
    /// must be within the repairable slack of 1.
    pub fn from_amplitudes(n_max: usize, amps: DVector<C64>) -> Result<Self> {
        let dim = 4 * (n_max + 1);
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: amps.len(),
            });
        }
        let v = normalized(amps.iter().copied().collect())?;
        Ok(Self {
            amps: DVector::from_vec(v),
            n_max,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, n: usize, s1: AtomLevel, s2: AtomLevel) -> C64 {
        self.amps[joint_index(n, s1, s2)]
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &JointKet) -> C64 {
        self.amps.dotc(&other.amps)
    }

    /// Largest entrywise amplitude difference from `other`.
    pub fn max_amp_diff(&self, other: &JointKet) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Assemble the joint state A_n · amp(s₁) · amp(s₂) from decoupled factors.
pub fn product_state(field: &FieldState, atom1: &QubitState, atom2: &QubitState) -> JointKet {
    let n_max = field.n_max();
    let dim = 4 * (n_max + 1);
    let mut amps = DVector::from_element(dim, C64::new(0.0, 0.0));
    for (n, &a_n) in field.amps().iter().enumerate() {
        for s1 in [AtomLevel::Ground, AtomLevel::Excited] {
            for s2 in [AtomLevel::Ground, AtomLevel::Excited] {
                amps[joint_index(n, s1, s2)] = a_n * atom1.amp(s1) * atom2.amp(s2);
            }
        }
    }
    JointKet::from_amplitudes(n_max, amps).expect("product of normalized factors is normalized")
}
