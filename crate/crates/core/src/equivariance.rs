//! The adjoint representation `Ad: SU(N) → SO(N²−1)`.
//!
//! `R(U)_ij = ½ tr(T_i · U T_j U†)` acts on column vectors, so that
//! `Φ(Uψ) = R(U) Φ(ψ)`. The row-convention matrix defined by
//! `U T_i U† = Σ_j R'_ij T_j` is its transpose.

use nalgebra::{DMatrix, Vector3};

use crate::linalg::{c64, pauli_basis, trace_product, CMatrix, GeneratorBasis, MatrixPredicates, PureState, RMatrix};
use crate::projection::bloch_project;
use crate::{Error, Result};

const SU_TOL: f64 = 1e-10;
const ROTATION_TOL: f64 = 1e-10;
const REAL_TOL: f64 = 1e-10;

/// A proper orthogonal matrix acting on the emergent space.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    matrix: RMatrix,
}

impl Rotation {
    /// Validates `RᵀR = I` (Frobenius, 1e−10) and `det R = 1` (1e−10).
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        let r = Rotation { matrix };
        let (orth, det) = (r.orthogonality_residual(), r.determinant_residual());
        if orth > ROTATION_TOL || det > ROTATION_TOL {
            return Err(Error::InvalidParameter(format!(
                "not in SO(d): |RᵀR − I| = {orth:e}, |det − 1| = {det:e}"
            )));
        }
        Ok(r)
    }

    pub fn identity(d: usize) -> Self {
        Rotation { matrix: RMatrix::identity(d, d) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    /// `‖RᵀR − I‖_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let d = self.dim();
        (self.matrix.transpose() * &self.matrix - RMatrix::identity(d, d)).norm()
    }

    /// `|det R − 1|`.
    pub fn determinant_residual(&self) -> f64 {
        (self.matrix.determinant() - 1.0).abs()
    }

    pub fn apply(&self, v: &nalgebra::DVector<f64>) -> nalgebra::DVector<f64> {
        &self.matrix * v
    }

    /// Frobenius distance to another rotation.
    pub fn distance(&self, other: &Rotation) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }
}

fn check_special_unitary(u: &CMatrix, n: usize) -> Result<()> {
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch { left: u.nrows(), right: n });
    }
    if !u.is_unitary(SU_TOL) {
        return Err(Error::NotSpecialUnitary("U†U != I".into()));
    }
    let det = u.determinant();
    if (det - c64(1.0, 0.0)).norm() > SU_TOL {
        return Err(Error::NotSpecialUnitary(format!("det = {det}")));
    }
    Ok(())
}

/// `R(U)` in the given generator frame.
pub fn adjoint_rotation(u: &CMatrix, basis: &GeneratorBasis) -> Result<Rotation> {
    check_special_unitary(u, basis.n())?;
    let uh = u.adjoint();
    let conjugated: Vec<CMatrix> = basis.generators().iter().map(|t| u * t * &uh).collect();
    let d = basis.len();
    let mut m = DMatrix::zeros(d, d);
    for (i, ti) in basis.generators().iter().enumerate() {
        for (j, cj) in conjugated.iter().enumerate() {
            let z = trace_product(ti, cj) * 0.5;
            if z.im.abs() > REAL_TOL {
                return Err(Error::NonRealExpectation(z.im));
            }
            m[(i, j)] = z.re;
        }
    }
    Rotation::new(m)
}

/// `‖Φ(Uψ) − R(U) Φ(ψ)‖`.
pub fn equivariance_residual(u: &CMatrix, psi: &PureState, basis: &GeneratorBasis) -> Result<f64> {
    let r = adjoint_rotation(u, basis)?;
    let before = bloch_project(psi, basis)?;
    let after = bloch_project(&psi.evolved(u)?, basis)?;
    Ok((after.components() - r.apply(before.components())).norm())
}

/// `(R(U), R(−U))` in the Pauli frame; the two agree because the sign cancels
/// in `U T U†`.
pub fn covering_check(u: &CMatrix) -> Result<(Rotation, Rotation)> {
    let basis = pauli_basis();
    let minus_u = -u.clone();
    Ok((adjoint_rotation(u, &basis)?, adjoint_rotation(&minus_u, &basis)?))
}

/// `‖R(U₁U₂) − R(U₁)R(U₂)‖_F`.
pub fn homomorphism_residual(u1: &CMatrix, u2: &CMatrix, basis: &GeneratorBasis) -> Result<f64> {
    let r12 = adjoint_rotation(&(u1 * u2), basis)?;
    let r1 = adjoint_rotation(u1, basis)?;
    let r2 = adjoint_rotation(u2, basis)?;
    Ok((r12.matrix() - r1.matrix() * r2.matrix()).norm())
}

/// Spin-½ exponential `exp(−i θ/2 n̂·σ) = cos(θ/2) I − i sin(θ/2) n̂·σ`.
///
/// Its adjoint rotation is the rotation by `θ` about `axis`.
pub fn su2_from_axis_angle(axis: &Vector3<f64>, angle: f64) -> Result<CMatrix> {
    let norm = axis.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::InvalidParameter("rotation axis must be a non-zero vector".into()));
    }
    let n = axis / norm;
    let p = pauli_basis();
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let n_sigma = p.generator(0) * c64(n.x, 0.0) + p.generator(1) * c64(n.y, 0.0) + p.generator(2) * c64(n.z, 0.0);
    Ok(CMatrix::identity(2, 2) * c64(c, 0.0) + n_sigma * c64(0.0, -s))
}
