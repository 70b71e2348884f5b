use super::matrix::{c64, trace_product, CMatrix, MatrixPredicates, RMatrix};
use crate::{Error, Result};

/// An ordered basis of traceless Hermitian generators of `su(n)`,
/// normalized so that `tr(T_a T_b) = 2 δ_ab`.
///
/// For `n = 2` this is `(σ_x, σ_y, σ_z)` in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    n: usize,
    generators: Vec<CMatrix>,
}

impl GeneratorBasis {
    /// Hilbert-space dimension `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, `N² − 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.generators[a]
    }

    /// Real part of `tr(T_a T_b)`; equals `2I` for a valid basis.
    pub fn gram_matrix(&self) -> RMatrix {
        let d = self.len();
        RMatrix::from_fn(d, d, |a, b| {
            trace_product(&self.generators[a], &self.generators[b]).re
        })
    }

    /// The basis `V T_a V†` for a unitary `V`.
    ///
    /// This is another valid generator basis: conjugation preserves
    /// hermiticity, tracelessness and the trace inner product.
    pub fn conjugated(&self, v: &CMatrix) -> Result<GeneratorBasis> {
        if v.nrows() != self.n || v.ncols() != self.n {
            return Err(Error::DimensionMismatch { left: v.nrows(), right: self.n });
        }
        if !v.is_unitary(1e-10) {
            return Err(Error::NotSpecialUnitary("frame change is not unitary".into()));
        }
        let vh = v.adjoint();
        let generators = self.generators.iter().map(|t| v * t * &vh).collect();
        Ok(GeneratorBasis { n: self.n, generators })
    }
}

/// `(σ_x, σ_y, σ_z)` with `σ_z = diag(1, −1)`.
pub fn pauli_basis() -> GeneratorBasis {
    let zero = c64(0.0, 0.0);
    let one = c64(1.0, 0.0);
    let i = c64(0.0, 1.0);
    let sx = CMatrix::from_row_slice(2, 2, &[zero, one, one, zero]);
    let sy = CMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]);
    let sz = CMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]);
    GeneratorBasis { n: 2, generators: vec![sx, sy, sz] }
}

/// Generalized Gell-Mann matrices for `su(n)`.
///
/// Order: all symmetric off-diagonal generators `|j⟩⟨k| + |k⟩⟨j|` (pairs
/// `j < k` in lexicographic order), then all antisymmetric ones
/// `−i|j⟩⟨k| + i|k⟩⟨j|` in the same pair order, then the `n − 1` diagonal
/// generators `√(2/(l(l+1))) (Σ_{j<l} |j⟩⟨j| − l |l⟩⟨l|)` for `l = 1..n`.
/// At `n = 2` this yields exactly the Pauli matrices.
pub fn gell_mann_basis(n: usize) -> Result<GeneratorBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "n >= 2"));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect();
    let mut generators = Vec::with_capacity(n * n - 1);
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = c64(1.0, 0.0);
        m[(k, j)] = c64(1.0, 0.0);
        generators.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(n, n);
        m[(j, k)] = c64(0.0, -1.0);
        m[(k, j)] = c64(0.0, 1.0);
        generators.push(m);
    }
    for l in 1..n {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = c64(scale, 0.0);
        }
        m[(l, l)] = c64(-(l as f64) * scale, 0.0);
        generators.push(m);
    }
    Ok(GeneratorBasis { n, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a * b - b * a
    }

    #[test]
    fn pauli_conventions() {
        let p = pauli_basis();
        let [sx, sy, sz] = [p.generator(0), p.generator(1), p.generator(2)];
        assert_eq!(sz[(0, 0)], c64(1.0, 0.0));
        assert_eq!(sz[(1, 1)], c64(-1.0, 0.0));
        assert_eq!(trace_product(sx, sy), c64(0.0, 0.0));
        let expected = sz.map(|z| z * c64(0.0, 2.0));
        assert!((commutator(sx, sy) - expected).norm() < 1e-15);
    }

    #[test]
    fn pauli_product_rule() {
        // σ_i σ_j = δ_ij I + i ε_ijk σ_k
        let p = pauli_basis();
        let eps = |i: usize, j: usize, k: usize| -> f64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                let lhs = p.generator(i) * p.generator(j);
                let mut rhs = if i == j { CMatrix::identity(2, 2) } else { CMatrix::zeros(2, 2) };
                for k in 0..3 {
                    rhs += p.generator(k).map(|z| z * c64(0.0, eps(i, j, k)));
                }
                assert!((lhs - rhs).norm() < 1e-15, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn gell_mann_reduces_to_pauli() {
        assert_eq!(gell_mann_basis(2).unwrap(), pauli_basis());
    }

    #[test]
    fn gell_mann_counts_and_gram() {
        for n in 2..=5 {
            let b = gell_mann_basis(n).unwrap();
            assert_eq!(b.len(), n * n - 1);
            for t in b.generators() {
                assert!(t.is_hermitian(1e-12));
                assert!(t.is_traceless(1e-12));
            }
            // Full complex Gram, computed directly from the products.
            for (a, ta) in b.generators().iter().enumerate() {
                for (c, tc) in b.generators().iter().enumerate() {
                    let g = (ta * tc).trace();
                    let want = if a == c { 2.0 } else { 0.0 };
                    assert!((g - c64(want, 0.0)).norm() < 1e-12, "n={n} a={a} b={c}");
                }
            }
        }
        assert_eq!(gell_mann_basis(3).unwrap().len(), 8);
        assert_eq!(gell_mann_basis(4).unwrap().len(), 15);
    }

    #[test]
    fn gell_mann_rejects_small_n() {
        assert!(matches!(gell_mann_basis(1), Err(Error::InvalidDimension(1, _))));
        assert!(gell_mann_basis(0).is_err());
    }

    #[test]
    fn conjugated_basis_stays_orthonormal() {
        let p = pauli_basis();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = CMatrix::from_row_slice(2, 2, &[c64(h, 0.), c64(0., h), c64(0., h), c64(h, 0.)]);
        let q = p.conjugated(&v).unwrap();
        assert!((q.gram_matrix() - RMatrix::identity(3, 3) * 2.0).norm() < 1e-12);
        assert!(p.conjugated(&CMatrix::identity(2, 2).scale(2.0)).is_err());
    }
}
