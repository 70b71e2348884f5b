use nalgebra::DVector;
use num_complex::Complex64;

use super::matrix::{c64, CMatrix, MatrixPredicates};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;
const EIGEN_FLOOR: f64 = -1e-10;

/// A normalized vector in `ℂ^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wraps amplitudes whose squared moduli already sum to one.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0, "n >= 1"));
        }
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn from_unnormalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotAState("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm) })
    }

    /// Computational basis vector `|index⟩` in `ℂ^n`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidParameter(format!("basis index {index} >= {n}")));
        }
        let mut amplitudes = DVector::zeros(n);
        amplitudes[index] = c64(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// `⟨ψ|op|ψ⟩`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        let v = op * &self.amplitudes;
        self.amplitudes.dotc(&v)
    }

    /// `U|ψ⟩` for a unitary `U`.
    pub fn evolved(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.n() || u.ncols() != self.n() {
            return Err(Error::DimensionMismatch { left: u.nrows(), right: self.n() });
        }
        if !u.is_unitary(1e-10) {
            return Err(Error::NotSpecialUnitary("evolution operator is not unitary".into()));
        }
        Ok(Self { amplitudes: u * &self.amplitudes })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { matrix: &self.amplitudes * self.amplitudes.adjoint() }
    }
}

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidDimension(0, "n >= 1"));
        }
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::NotAState("matrix is not Hermitian".into()));
        }
        let trace = matrix.trace();
        if (trace - c64(1.0, 0.0)).norm() > HERMITIAN_TOL {
            return Err(Error::NotAState(format!("trace {trace} != 1")));
        }
        let min_eig = matrix.symmetric_eigenvalues().min();
        if min_eig < EIGEN_FLOOR {
            return Err(Error::NotAState(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_hermitian_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    /// `I/n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0, "n >= 1"));
        }
        Ok(Self { matrix: CMatrix::identity(n, n).unscale(n as f64) })
    }

    /// `p ρ₁ + (1 − p) ρ₂`.
    pub fn mixture(p: f64, first: &DensityMatrix, second: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("mixing weight {p} outside [0, 1]")));
        }
        if first.n() != second.n() {
            return Err(Error::DimensionMismatch { left: first.n(), right: second.n() });
        }
        Ok(Self { matrix: first.matrix.scale(p) + second.matrix.scale(1.0 - p) })
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> DVector<f64> {
        self.matrix.symmetric_eigenvalues()
    }

    /// `tr(ρ op)`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        super::matrix::trace_product(&self.matrix, op)
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.density()
    }
}
