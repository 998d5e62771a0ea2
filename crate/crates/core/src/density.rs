//! Density matrices, partial traces, and state purity.
//!
//! A [`DensityMatrix`] is validated at construction: Hermitian within a
//! tolerance, unit trace, and no eigenvalue below the floor −tol (exact
//! positive semidefiniteness is too brittle under floating point). The
//! purity deficit ζ = 1 − Tr ρ² is 0 for pure states and positive for mixed
//! ones; for a pure joint state it witnesses entanglement across any
//! bipartition.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{split_index, JointKet, Subsystem};
use crate::params::DEFAULT_TOL;

/// Hermitian, unit-trace, positive-semidefinite (within tolerance) matrix
/// for any subsystem or for the joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validate and wrap a matrix. All three invariants are checked against
    /// `tol`: hermiticity, trace 1, eigenvalue floor ≥ −tol.
    pub fn new(entries: DMatrix<C64>, tol: f64) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: dim.max(1),
                actual: entries.ncols(),
            });
        }
        let herm_dev = (&entries - entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm_dev > tol {
            return Err(Error::NotHermitian { max_dev: herm_dev });
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::NonUnitTrace { trace: trace.re });
        }
        let eig = nalgebra::SymmetricEigen::try_new(entries.clone(), f64::EPSILON, 50_000)
            .ok_or(Error::EigendecompositionFailed { dim })?;
        let min = eig
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::NegativeEigenvalue { eigenvalue: min });
        }
        Ok(Self { dim, entries })
    }

    /// Projector |ψ⟩⟨ψ| onto a normalized amplitude vector; the same norm
    /// policy as the state constructors applies.
    pub fn pure(amps: &[C64]) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > crate::params::NORM_SLACK {
            return Err(Error::NotNormalized {
                norm,
                max_dev: crate::params::NORM_SLACK,
            });
        }
        let v = DVector::from_iterator(amps.len(), amps.iter().map(|a| a / norm));
        let m = &v * v.adjoint();
        Self::new(m, DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// Purity deficit ζ = 1 − Tr ρ², clamped at 0 against rounding noise.
    /// Tr ρ² = Σ|ρ_ij|² for a Hermitian matrix.
    pub fn purity_deficit(&self) -> f64 {
        let tr2: f64 = self.entries.iter().map(|z| z.norm_sqr()).sum();
        (1.0 - tr2).max(0.0)
    }

    /// Inversion ⟨σ_z⟩ = ρ_ee − ρ_gg on the conventional ±1 scale. Defined
    /// for 2×2 matrices in the (g, e) basis only.
    pub fn expectation_sigma_z(&self) -> Result<f64> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: self.dim,
            });
        }
        Ok(self.entries[(1, 1)].re - self.entries[(0, 0)].re)
    }

    /// Largest entrywise difference from `other`.
    pub fn max_entry_diff(&self, other: &DensityMatrix) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Index of the kept factor and of the traced-out remainder for a flat joint
/// index, when keeping a single subsystem.
fn split_keep(idx: usize, keep: Subsystem) -> (usize, usize) {
    let (n, s1, s2) = split_index(idx);
    match keep {
        Subsystem::Field => (n, 2 * s1 + s2),
        Subsystem::Atom1 => (s1, 2 * n + s2),
        Subsystem::Atom2 => (s2, 2 * n + s1),
    }
}

/// Reduced density matrix of one subsystem of a pure joint state.
pub fn partial_trace(ket: &JointKet, keep: Subsystem) -> DensityMatrix {
    let kd = keep.dim(ket.n_max());
    let rd = ket.dim() / kd;
    reduce_pure(ket.as_vector(), |idx| split_keep(idx, keep), kd, rd)
}

/// Reduced density matrix of the *pair* of subsystems complementary to
/// `remove`, e.g. `trace_out(ψ, Atom1)` keeps field ⊗ atom 2.
pub fn trace_out(ket: &JointKet, remove: Subsystem) -> DensityMatrix {
    let rd = remove.dim(ket.n_max());
    let kd = ket.dim() / rd;
    // keep-index of the complementary pair is the rest-index of `remove`
    reduce_pure(
        ket.as_vector(),
        |idx| {
            let (r, k) = split_keep(idx, remove);
            (k, r)
        },
        kd,
        rd,
    )
}

fn reduce_pure(
    amps: &DVector<C64>,
    split: impl Fn(usize) -> (usize, usize),
    keep_dim: usize,
    rest_dim: usize,
) -> DensityMatrix {
    // scatter amplitudes into a (keep, rest) table, then contract the rest
    let mut table = DMatrix::from_element(keep_dim, rest_dim, C64::new(0.0, 0.0));
    for idx in 0..amps.len() {
        let (k, r) = split(idx);
        table[(k, r)] = amps[idx];
    }
    let rho = &table * table.adjoint();
    DensityMatrix::new(rho, DEFAULT_TOL).expect("reduction of a normalized pure state")
}

/// Reduced density matrix of one subsystem of a joint-space density matrix
/// (dimension 4(n_max + 1)); works for mixed states.
pub fn partial_trace_density(
    rho: &DensityMatrix,
    n_max: usize,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    let full = 4 * (n_max + 1);
    if rho.dim() != full {
        return Err(Error::DimensionMismatch {
            expected: full,
            actual: rho.dim(),
        });
    }
    let kd = keep.dim(n_max);
    let mut out = DMatrix::from_element(kd, kd, C64::new(0.0, 0.0));
    for i in 0..full {
        let (ki, ri) = split_keep(i, keep);
        for j in 0..full {
            let (kj, rj) = split_keep(j, keep);
            if ri == rj {
                out[(ki, kj)] += rho.entry(i, j);
            }
        }
    }
    DensityMatrix::new(out, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{joint_index, product_state, FieldState, QubitState};
    use approx::assert_abs_diff_eq;

    fn bell_like(n_max: usize) -> JointKet {
        // (|0,g,g⟩ + |1,e,g⟩)/√2: field and atom 1 maximally entangled
        let dim = 4 * (n_max + 1);
        let mut amps = DVector::from_element(dim, C64::new(0.0, 0.0));
        let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[joint_index(
            0,
            crate::hilbert::AtomLevel::Ground,
            crate::hilbert::AtomLevel::Ground,
        )] = r;
        amps[joint_index(
            1,
            crate::hilbert::AtomLevel::Excited,
            crate::hilbert::AtomLevel::Ground,
        )] = r;
        JointKet::from_amplitudes(n_max, amps).unwrap()
    }

    #[test]
    fn entangled_pair_reduces_to_maximally_mixed_qubit() {
        let rho = partial_trace(&bell_like(2), Subsystem::Atom1);
        assert_abs_diff_eq!(rho.entry(0, 0).re, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.entry(1, 1).re, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.entry(0, 1).norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.purity_deficit(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn product_state_reduces_to_pure_projectors() {
        let ket = product_state(
            &FieldState::vacuum(3),
            &QubitState::balanced(),
            &QubitState::excited(),
        );
        for keep in [Subsystem::Field, Subsystem::Atom1, Subsystem::Atom2] {
            let rho = partial_trace(&ket, keep);
            assert_abs_diff_eq!(rho.purity_deficit(), 0.0, epsilon = 1e-13);
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn purity_deficit_examples() {
        let pure = DensityMatrix::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(pure.purity_deficit(), 0.0, epsilon = 1e-15);

        let mixed = DensityMatrix::new(
            DMatrix::from_diagonal(&DVector::from_vec(vec![
                C64::new(0.5, 0.0),
                C64::new(0.5, 0.0),
            ])),
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(mixed.purity_deficit(), 0.5, epsilon = 1e-15);

        let skew = DensityMatrix::new(
            DMatrix::from_diagonal(&DVector::from_vec(vec![
                C64::new(0.9, 0.0),
                C64::new(0.1, 0.0),
            ])),
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(skew.purity_deficit(), 0.18, epsilon = 1e-15);
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        // trace 2
        let double = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ]));
        assert!(matches!(
            DensityMatrix::new(double, 1e-10),
            Err(Error::NonUnitTrace { .. })
        ));
        // non-Hermitian
        let mut skew = DMatrix::from_element(2, 2, C64::new(0.0, 0.0));
        skew[(0, 0)] = C64::new(1.0, 0.0);
        skew[(0, 1)] = C64::new(0.3, 0.0);
        assert!(matches!(
            DensityMatrix::new(skew, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
        // Hermitian, unit trace, but an eigenvalue below the floor
        let neg = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.2, 0.0),
            C64::new(-0.2, 0.0),
        ]));
        assert!(matches!(
            DensityMatrix::new(neg, 1e-10),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn sigma_z_expectation_on_basis_states() {
        let e = DensityMatrix::pure(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let g = DensityMatrix::pure(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(e.expectation_sigma_z().unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.expectation_sigma_z().unwrap(), -1.0, epsilon = 1e-15);

        let mixed = DensityMatrix::new(
            DMatrix::from_diagonal(&DVector::from_vec(vec![
                C64::new(0.5, 0.0),
                C64::new(0.5, 0.0),
            ])),
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(mixed.expectation_sigma_z().unwrap(), 0.0, epsilon = 1e-15);

        let big = partial_trace(&bell_like(2), Subsystem::Field);
        assert!(big.expectation_sigma_z().is_err());
    }

    #[test]
    fn complementary_bipartitions_share_purity_deficit() {
        let ket = bell_like(2);
        let one = partial_trace(&ket, Subsystem::Atom1);
        let pair = trace_out(&ket, Subsystem::Atom1);
        assert_eq!(pair.dim(), 2 * 3);
        assert_abs_diff_eq!(one.purity_deficit(), pair.purity_deficit(), epsilon = 1e-12);
    }

    #[test]
    fn density_partial_trace_matches_pure_route() {
        let ket = bell_like(1);
        let joint = DensityMatrix::pure(ket.as_vector().as_slice()).unwrap();
        for keep in [Subsystem::Field, Subsystem::Atom1, Subsystem::Atom2] {
            let from_dm = partial_trace_density(&joint, 1, keep).unwrap();
            let from_ket = partial_trace(&ket, keep);
            assert!(from_dm.max_entry_diff(&from_ket) < 1e-13);
        }
        // wrong n_max is a dimension error
        assert!(partial_trace_density(&joint, 2, Subsystem::Field).is_err());
    }
}
