use super::matrix::{trace_product, CMatrix, MatrixPredicates};
use crate::{Error, Result};

const ALGEBRA_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-12;

/// Killing form of `su(n)`, `κ(x, y) = 2n · tr(xy)`.
///
/// Inputs must be anti-Hermitian and traceless; a Hermitian generator `T`
/// enters as `iT`. With Pauli matrices this gives `κ(iσ_i, iσ_j) = −8 δ_ij`.
pub fn killing_form(x: &CMatrix, y: &CMatrix, n: usize) -> Result<f64> {
    for m in [x, y] {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch { left: m.nrows(), right: n });
        }
        if !m.is_anti_hermitian(ALGEBRA_TOL) {
            return Err(Error::InvalidAlgebraElement { n, reason: "not anti-Hermitian" });
        }
        if !m.is_traceless(ALGEBRA_TOL) {
            return Err(Error::InvalidAlgebraElement { n, reason: "not traceless" });
        }
    }
    let value = trace_product(x, y) * (2.0 * n as f64);
    if value.im.abs() > IMAG_TOL * (1.0 + value.re.abs()) {
        return Err(Error::NonRealExpectation(value.im));
    }
    Ok(value.re)
}
