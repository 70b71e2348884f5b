//! The Bloch projection `Φ(ρ)_a = tr(ρ T_a)` and its inverse.
//!
//! For `N = 2` with the Pauli basis this is the usual Bloch vector:
//! `(2 Re(α*β), 2 Im(α*β), |α|² − |β|²)` for `|ψ⟩ = α|0⟩ + β|1⟩`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::linalg::{c64, CMatrix, DensityMatrix, GeneratorBasis, PureState};
use crate::{Error, Result};

/// Residues above this in `Im ⟨T_a⟩` indicate a non-Hermitian generator.
const IMAG_TOL: f64 = 1e-12;
/// Reconstructions with an eigenvalue below this lie outside the state body.
const STATE_BODY_FLOOR: f64 = -1e-8;

/// Real expectation-value vector of a state in `ℝ^(N²−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    n: usize,
    components: DVector<f64>,
}

impl BlochVector {
    /// Builds a vector for Hilbert dimension `n` from `n² − 1` components.
    pub fn new(n: usize, components: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n, "n >= 2"));
        }
        if components.len() != n * n - 1 {
            return Err(Error::DimensionMismatch { left: components.len(), right: n * n - 1 });
        }
        Ok(Self { n, components: DVector::from_vec(components) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &DVector<f64> {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components.norm()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.components.dot(&other.components)
    }
}

/// Norm of the Bloch vector of any pure state in `ℂ^n`, `√(2(n−1)/n)`.
pub fn pure_norm_bound(n: usize) -> f64 {
    (2.0 * (n as f64 - 1.0) / n as f64).sqrt()
}

/// Anything with a Hilbert dimension and expectation values.
pub trait Projectable {
    fn dimension(&self) -> usize;
    fn expectation_of(&self, op: &CMatrix) -> Complex64;
}

impl Projectable for PureState {
    fn dimension(&self) -> usize {
        self.n()
    }
    fn expectation_of(&self, op: &CMatrix) -> Complex64 {
        self.expectation(op)
    }
}

impl Projectable for DensityMatrix {
    fn dimension(&self) -> usize {
        self.n()
    }
    fn expectation_of(&self, op: &CMatrix) -> Complex64 {
        self.expectation(op)
    }
}

/// `Φ(state)_a = ⟨T_a⟩`.
pub fn bloch_project<S: Projectable + ?Sized>(state: &S, basis: &GeneratorBasis) -> Result<BlochVector> {
    if state.dimension() != basis.n() {
        return Err(Error::DimensionMismatch { left: state.dimension(), right: basis.n() });
    }
    let components = basis
        .generators()
        .iter()
        .map(|t| {
            let e = state.expectation_of(t);
            if e.im.abs() > IMAG_TOL {
                Err(Error::NonRealExpectation(e.im))
            } else {
                Ok(e.re)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlochVector { n: basis.n(), components: DVector::from_vec(components) })
}

pub fn bloch_norm(v: &BlochVector) -> f64 {
    v.norm()
}

/// `tr(ρ²)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.expectation(rho.matrix()).re
}

/// `ρ = I/N + ½ Σ_a v_a T_a`.
///
/// Vectors outside the state body (any eigenvalue below `−1e−8`) are
/// rejected rather than clamped.
pub fn reconstruct_density(v: &BlochVector, basis: &GeneratorBasis) -> Result<DensityMatrix> {
    if v.n() != basis.n() {
        return Err(Error::DimensionMismatch { left: v.n(), right: basis.n() });
    }
    let n = basis.n();
    let mut rho = CMatrix::identity(n, n).unscale(n as f64);
    for (t, &va) in basis.generators().iter().zip(v.components().iter()) {
        rho += t * c64(0.5 * va, 0.0);
    }
    let min_eig = rho.symmetric_eigenvalues().min();
    if min_eig < STATE_BODY_FLOOR {
        return Err(Error::NotAState(format!(
            "Bloch vector of norm {:.6} reconstructs to eigenvalue {min_eig:e}",
            v.norm()
        )));
    }
    Ok(DensityMatrix::from_hermitian_unchecked(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gell_mann_basis, haar_pure_state, pauli_basis, RngSeed};

    fn plus() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(DVector::from_vec(vec![c64(h, 0.0), c64(h, 0.0)])).unwrap()
    }

    fn assert_components(v: &BlochVector, want: &[f64], tol: f64) {
        for (a, (&x, &y)) in v.components().iter().zip(want).enumerate() {
            assert!((x - y).abs() < tol, "component {a}: {x} vs {y}");
        }
    }

    #[test]
    fn projection_examples() {
        let p = pauli_basis();
        let zero = PureState::basis(2, 0).unwrap();
        assert_components(&bloch_project(&zero, &p).unwrap(), &[0.0, 0.0, 1.0], 1e-15);
        assert_components(&bloch_project(&plus(), &p).unwrap(), &[1.0, 0.0, 0.0], 1e-15);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert_components(&bloch_project(&mixed, &p).unwrap(), &[0.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn amplitude_formulas() {
        // (2 Re(α*β), 2 Im(α*β), |α|² − |β|²) for a generic state.
        let mut rng = RngSeed(9).rng();
        let p = pauli_basis();
        for _ in 0..100 {
            let psi = haar_pure_state(2, &mut rng).unwrap();
            let (a, b) = (psi.amplitudes()[0], psi.amplitudes()[1]);
            let ab = a.conj() * b;
            let want = [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()];
            assert_components(&bloch_project(&psi, &p).unwrap(), &want, 1e-14);
        }
    }

    #[test]
    fn pure_and_density_inputs_agree() {
        let mut rng = RngSeed(10).rng();
        let b3 = gell_mann_basis(3).unwrap();
        let psi = haar_pure_state(3, &mut rng).unwrap();
        let v1 = bloch_project(&psi, &b3).unwrap();
        let v2 = bloch_project(&psi.density(), &b3).unwrap();
        assert!((v1.components() - v2.components()).norm() < 1e-14);
    }

    #[test]
    fn norms() {
        let p = pauli_basis();
        let zero = PureState::basis(2, 0).unwrap();
        let one = PureState::basis(2, 1).unwrap();
        assert!((bloch_norm(&bloch_project(&zero, &p).unwrap()) - 1.0).abs() < 1e-15);
        let mm = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(bloch_norm(&bloch_project(&mm, &p).unwrap()), 0.0);
        let rho = DensityMatrix::mixture(0.75, &zero.density(), &one.density()).unwrap();
        // Oracle: |2p − 1| = tr(ρσ_z) for a diagonal state.
        let oracle = (rho.matrix()[(0, 0)] - rho.matrix()[(1, 1)]).re.abs();
        assert!((oracle - 0.5).abs() < 1e-15);
        assert!((bloch_norm(&bloch_project(&rho, &p).unwrap()) - oracle).abs() < 1e-15);
    }

    #[test]
    fn purity_examples() {
        let zero = PureState::basis(2, 0).unwrap();
        let one = PureState::basis(2, 1).unwrap();
        assert!((purity(&zero.density()) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed(2).unwrap()) - 0.5).abs() < 1e-15);
        let rho = DensityMatrix::mixture(0.75, &zero.density(), &one.density()).unwrap();
        // Oracle: Σ λ² = 0.75² + 0.25².
        let direct: f64 = rho.eigenvalues().iter().map(|l| l * l).sum();
        assert!((direct - 0.625).abs() < 1e-14);
        assert!((purity(&rho) - 0.625).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_examples() {
        let p = pauli_basis();
        let up = reconstruct_density(&BlochVector::new(2, vec![0.0, 0.0, 1.0]).unwrap(), &p).unwrap();
        assert!((up.matrix() - PureState::basis(2, 0).unwrap().density().matrix()).norm() < 1e-15);
        let centre = reconstruct_density(&BlochVector::new(2, vec![0.0; 3]).unwrap(), &p).unwrap();
        assert!((centre.matrix() - CMatrix::identity(2, 2).unscale(2.0)).norm() < 1e-15);
        let outside = BlochVector::new(2, vec![2.0, 0.0, 0.0]).unwrap();
        assert!(matches!(reconstruct_density(&outside, &p), Err(Error::NotAState(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let zero3 = PureState::basis(3, 0).unwrap();
        assert!(matches!(
            bloch_project(&zero3, &pauli_basis()),
            Err(Error::DimensionMismatch { left: 3, right: 2 })
        ));
        assert!(BlochVector::new(2, vec![0.0; 8]).is_err());
    }
}
