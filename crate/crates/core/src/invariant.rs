//! Dimension of the SU(2)-invariant subspace of `(ℂ²)^⊗k`.
//!
//! Two independent routes: the Catalan number `C_{k/2}` (zero for odd `k`),
//! and the joint kernel of the total-spin operators `S_x, S_y, S_z`,
//! obtained from the SVD of their vertical stack.

use crate::linalg::{c64, singular_values, CMatrix, RMatrix};
use crate::{Error, Result};

/// Largest valence for which the dense spin operators are built.
pub const K_MAX: usize = 12;
/// Default relative singular-value cut for the kernel.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-8;

/// `C_m = (2m)! / (m! (m+1)!)`, exact.
pub fn catalan(m: u32) -> Result<u64> {
    let mut c: u128 = 1;
    for j in 0..m as u128 {
        // C_{j+1} = C_j · 2(2j+1) / (j+2); the division is exact.
        c = c
            .checked_mul(2 * (2 * j + 1))
            .ok_or_else(|| Error::Overflow(format!("catalan({m})")))?
            / (j + 2);
        if c > u64::MAX as u128 {
            return Err(Error::Overflow(format!("catalan({m})")));
        }
    }
    Ok(c as u64)
}

/// `C_{k/2}` for even `k`, `0` for odd `k`.
pub fn invariant_dimension_formula(k: u32) -> Result<u64> {
    if k % 2 == 1 {
        Ok(0)
    } else {
        catalan(k / 2)
    }
}

/// `[S_x, S_y, S_z]` on `(ℂ²)^⊗k`, with `S_a = Σ_i I ⊗ … ⊗ σ_a/2 ⊗ … ⊗ I`.
///
/// Site `i` (1-based) is bit `k − i` of the computational basis index, which
/// matches the Kronecker ordering `I^{⊗(i−1)} ⊗ X ⊗ I^{⊗(k−i)}`. Entries are
/// written directly from the bit pattern rather than through Kronecker products.
pub fn total_spin_operators(k: usize) -> Result<[CMatrix; 3]> {
    if k == 0 {
        return Err(Error::InvalidParameter("valence must be >= 1".into()));
    }
    if k > K_MAX {
        return Err(Error::ResourceLimit { k, max: K_MAX });
    }
    let dim = 1usize << k;
    let mut sx = CMatrix::zeros(dim, dim);
    let mut sy = CMatrix::zeros(dim, dim);
    let mut sz = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut z = 0.0;
        for site in 0..k {
            let mask = 1usize << (k - 1 - site);
            let up = b & mask == 0;
            let flipped = b ^ mask;
            z += if up { 0.5 } else { -0.5 };
            sx[(flipped, b)] += c64(0.5, 0.0);
            // σ_y|0⟩ = i|1⟩, σ_y|1⟩ = −i|0⟩.
            sy[(flipped, b)] += if up { c64(0.0, 0.5) } else { c64(0.0, -0.5) };
        }
        sz[(b, b)] = c64(z, 0.0);
    }
    Ok([sx, sy, sz])
}

/// Complex stack `[S_x; S_y; S_z]`, `3·2^k × 2^k`.
pub fn stacked_spin_operators(k: usize) -> Result<CMatrix> {
    let ops = total_spin_operators(k)?;
    let dim = 1usize << k;
    let mut stack = CMatrix::zeros(3 * dim, dim);
    for (a, op) in ops.iter().enumerate() {
        stack.view_mut((a * dim, 0), (dim, dim)).copy_from(op);
    }
    Ok(stack)
}

/// Real stack `[S_x; −i S_y; S_z]`.
///
/// `S_x`, `S_z` are real and `S_y` is purely imaginary in the computational
/// basis, so this matrix is real. Its Gram matrix is `S_x² + S_y² + S_z²`,
/// the same as for the complex stack, hence identical singular values and
/// kernel dimension at a fraction of the SVD cost.
pub fn real_stacked_spin_operators(k: usize) -> Result<RMatrix> {
    let ops = total_spin_operators(k)?;
    let dim = 1usize << k;
    let mut stack = RMatrix::zeros(3 * dim, dim);
    for (a, op) in ops.iter().enumerate() {
        let real = if a == 1 { op.map(|z| z.im) } else { op.map(|z| z.re) };
        stack.view_mut((a * dim, 0), (dim, dim)).copy_from(&real);
    }
    Ok(stack)
}

/// Outcome of the numeric/closed-form comparison at one valence.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSectorReport {
    pub k: usize,
    pub formula_dim: u64,
    pub numeric_dim: u64,
    /// Largest discarded singular value relative to `σ_max` (0 when nothing is discarded).
    pub max_residual: f64,
    /// Smallest retained over largest discarded singular value; infinite when
    /// the kernel is empty or the discarded values are exact zeros.
    pub gap_ratio: f64,
}

impl InvariantSectorReport {
    pub fn agrees(&self) -> bool {
        self.formula_dim == self.numeric_dim
    }
}

/// Kernel dimension of the stacked `3·2^k × 2^k` spin operator, cut at
/// `tol × σ_max`.
pub fn invariant_dimension_numeric(k: usize, tol: f64) -> Result<InvariantSectorReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let stack = real_stacked_spin_operators(k)?;
    let sv = singular_values(&stack);
    let max = sv.first().copied().unwrap_or(0.0);
    let cut = tol * max;
    let (retained, discarded): (Vec<f64>, Vec<f64>) = sv.iter().partition(|&&s| s > cut);
    let numeric_dim = (stack.ncols() - retained.len()) as u64;
    let largest_discarded = discarded.iter().copied().fold(0.0, f64::max);
    let smallest_retained = retained.iter().copied().fold(f64::INFINITY, f64::min);
    let gap_ratio = if largest_discarded == 0.0 { f64::INFINITY } else { smallest_retained / largest_discarded };
    let max_residual = if max > 0.0 { largest_discarded / max } else { 0.0 };
    Ok(InvariantSectorReport {
        k,
        formula_dim: invariant_dimension_formula(k as u32)?,
        numeric_dim,
        max_residual,
        gap_ratio,
    })
}

/// Orthonormal basis (as columns) of the invariant subspace.
pub fn invariant_subspace_basis(k: usize, tol: f64) -> Result<CMatrix> {
    let stack = stacked_spin_operators(k)?;
    let svd = stack.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let max = svd.singular_values.max();
    let rows: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= tol * max)
        .collect();
    let dim = 1usize << k;
    Ok(CMatrix::from_fn(dim, rows.len(), |r, c| v_t[(rows[c], r)].conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_special_unitary, pauli_basis, RngSeed};

    /// Textbook Kronecker-sum construction, used as an oracle.
    fn kron_spin(k: usize, a: usize) -> CMatrix {
        let half = pauli_basis().generator(a).scale(0.5);
        let id = CMatrix::identity(2, 2);
        let dim = 1 << k;
        let mut total = CMatrix::zeros(dim, dim);
        for i in 0..k {
            let mut term = CMatrix::identity(1, 1);
            for j in 0..k {
                term = term.kronecker(if i == j { &half } else { &id });
            }
            total += term;
        }
        total
    }

    #[test]
    fn catalan_values() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (m, &w) in want.iter().enumerate() {
            assert_eq!(catalan(m as u32).unwrap(), w);
        }
        // Direct factorial oracle for small m.
        let fact = |n: u64| (1..=n).product::<u64>();
        for m in 0..10u64 {
            assert_eq!(catalan(m as u32).unwrap(), fact(2 * m) / (fact(m) * fact(m + 1)));
        }
        assert_eq!(catalan(35).unwrap(), 3_116_285_494_907_301_262);
        assert!(catalan(36).is_ok());
        assert!(matches!(catalan(40), Err(Error::Overflow(_))));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(invariant_dimension_formula(4).unwrap(), 2);
        assert_eq!(invariant_dimension_formula(2).unwrap(), 1);
        assert_eq!(invariant_dimension_formula(3).unwrap(), 0);
        assert_eq!(invariant_dimension_formula(0).unwrap(), 1);
    }

    #[test]
    fn spin_operators_match_kronecker_oracle() {
        for k in 1..=5 {
            let ops = total_spin_operators(k).unwrap();
            for (a, op) in ops.iter().enumerate() {
                assert!((op - kron_spin(k, a)).norm() < 1e-14, "k={k} a={a}");
            }
        }
        let [_, _, sz1] = total_spin_operators(1).unwrap();
        assert!((sz1 - pauli_basis().generator(2).scale(0.5)).norm() == 0.0);
        let [_, _, sz2] = total_spin_operators(2).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| sz2[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn spin_commutators() {
        for k in 1..=6 {
            let [sx, sy, sz] = total_spin_operators(k).unwrap();
            let comm = &sx * &sy - &sy * &sx;
            assert!((comm - sz.map(|z| z * c64(0.0, 1.0))).norm() < 1e-12);
        }
    }

    #[test]
    fn real_and_complex_stacks_share_singular_values() {
        for k in 1..=6 {
            let complex = singular_values(&stacked_spin_operators(k).unwrap());
            let real = singular_values(&real_stacked_spin_operators(k).unwrap());
            assert_eq!(complex.len(), real.len());
            for (a, b) in complex.iter().zip(&real) {
                assert!((a - b).abs() < 1e-12, "k={k}: {a} vs {b}");
            }
            assert_eq!(
                crate::linalg::kernel_dimension(&stacked_spin_operators(k).unwrap(), DEFAULT_KERNEL_TOL) as u64,
                invariant_dimension_numeric(k, DEFAULT_KERNEL_TOL).unwrap().numeric_dim
            );
        }
    }

    #[test]
    fn resource_limit() {
        assert!(matches!(total_spin_operators(K_MAX + 1), Err(Error::ResourceLimit { .. })));
        assert!(total_spin_operators(0).is_err());
    }

    #[test]
    fn numeric_examples() {
        for (k, want) in [(1, 0), (2, 1), (3, 0), (4, 2), (5, 0), (6, 5)] {
            let r = invariant_dimension_numeric(k, DEFAULT_KERNEL_TOL).unwrap();
            assert_eq!(r.numeric_dim, want, "k={k}");
            assert!(r.agrees());
            assert!(r.gap_ratio > 1e6);
        }
    }

    #[test]
    fn invariant_projector_commutes_with_tensor_power() {
        let mut rng = RngSeed(31).rng();
        for k in [2, 4, 6] {
            let basis = invariant_subspace_basis(k, DEFAULT_KERNEL_TOL).unwrap();
            assert_eq!(basis.ncols() as u64, invariant_dimension_formula(k as u32).unwrap());
            let proj = &basis * basis.adjoint();
            for _ in 0..5 {
                let u = haar_special_unitary(2, &mut rng).unwrap();
                let mut power = CMatrix::identity(1, 1);
                for _ in 0..k {
                    power = power.kronecker(&u);
                }
                let comm = &proj * &power - &power * &proj;
                assert!(comm.norm() < 1e-8, "k={k}");
            }
        }
    }
}
