use nalgebra::{ComplexField, DMatrix};

/// Default relative cut for [`numerical_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Singular values in non-increasing order. Empty input gives an empty list.
pub fn singular_values<T>(m: &DMatrix<T>) -> Vec<f64>
where
    T: ComplexField<RealField = f64>,
{
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values strictly above `tol × σ_max`.
///
/// The zero matrix and the empty matrix have rank 0.
pub fn numerical_rank<T>(m: &DMatrix<T>, tol: f64) -> usize
where
    T: ComplexField<RealField = f64>,
{
    rank_of_spectrum(&singular_values(m), tol)
}

pub(crate) fn rank_of_spectrum(sv: &[f64], tol: f64) -> usize {
    let Some(&max) = sv.first() else { return 0 };
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// `cols − numerical_rank`.
pub fn kernel_dimension<T>(m: &DMatrix<T>, tol: f64) -> usize
where
    T: ComplexField<RealField = f64>,
{
    m.ncols() - numerical_rank(m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, pauli_basis, CMatrix, RMatrix, RngSeed};
    use rand::Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn simple_ranks() {
        assert_eq!(numerical_rank(&RMatrix::identity(3, 3), 1e-10), 3);
        let rows = RMatrix::from_row_slice(3, 3, &[0.6, 0.8, 0.0, 0.6, 0.8, 0.0, 0.6, 0.8, 0.0]);
        assert_eq!(numerical_rank(&rows, 1e-10), 1);
        assert_eq!(numerical_rank(&RMatrix::zeros(4, 4), 1e-10), 0);
        assert_eq!(numerical_rank(&RMatrix::zeros(0, 3), 1e-10), 0);
    }

    #[test]
    fn gaussian_tall_matrix_has_full_column_rank() {
        let mut rng = RngSeed(5).rng();
        for _ in 0..20 {
            let m = RMatrix::from_fn(10, 3, |_, _| rng.sample(StandardNormal));
            assert_eq!(numerical_rank(&m, 1e-10), 3);
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_dimension(&RMatrix::zeros(4, 4), 1e-10), 4);
        assert_eq!(kernel_dimension(&CMatrix::identity(5, 5), 1e-10), 0);
        let m = pauli_basis().generator(2) + CMatrix::identity(2, 2);
        assert_eq!(kernel_dimension(&m, 1e-10), 1);
        let rect = CMatrix::from_row_slice(1, 3, &[c64(1.0, 1.0), c64(0.0, 0.0), c64(2.0, 0.0)]);
        assert_eq!(kernel_dimension(&rect, 1e-10), 2);
    }
}
