use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `tr(a·b)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Structural predicates on square complex matrices.
///
/// Tolerances are absolute and compared against the largest entrywise
/// deviation. Non-square matrices fail every predicate.
pub trait MatrixPredicates {
    fn is_hermitian(&self, tol: f64) -> bool;
    fn is_anti_hermitian(&self, tol: f64) -> bool;
    fn is_unitary(&self, tol: f64) -> bool;
    fn is_traceless(&self, tol: f64) -> bool;
}

fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

impl MatrixPredicates for CMatrix {
    fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && max_abs_diff(self, &self.adjoint()) <= tol
    }

    fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.is_square() && max_abs_diff(self, &(-self.adjoint())) <= tol
    }

    fn is_unitary(&self, tol: f64) -> bool {
        self.is_square()
            && max_abs_diff(&(self.adjoint() * self), &identity(self.nrows())) <= tol
    }

    fn is_traceless(&self, tol: f64) -> bool {
        self.is_square() && self.trace().norm() <= tol
    }
}
