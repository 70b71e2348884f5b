//! Why only `N = 2` yields a sphere of directions.
//!
//! For `SU(N)` the Bloch image lives in `ℝ^(N²−1)` and pure states sit on a
//! sphere `S^(N²−2)` of radius `√(2(N−1)/N)`, but the image of `ℂP^(N−1)` is
//! only `2(N−1)`-dimensional. The two agree exactly when `N = 2`.

use nalgebra::DVector;
use rand::Rng;

use crate::linalg::{c64, gell_mann_basis, haar_pure_state, numerical_rank, GeneratorBasis, PureState, RMatrix};
use crate::projection::{bloch_project, pure_norm_bound};
use crate::{Error, Result};

/// Central-difference step on the real amplitude coordinates.
pub const FD_STEP: f64 = 1e-6;
/// Relative singular-value cut separating tangent directions from gauge/noise.
pub const DEFAULT_TANGENT_TOL: f64 = 1e-7;
/// Base points used by [`exclusion_report`].
pub const REPORT_SAMPLES: usize = 10;

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "n >= 2"));
    }
    Ok(())
}

/// Number of generators that an equivariant, non-degenerate target must carry.
pub fn min_equivariant_dimension(n: usize) -> Result<usize> {
    check_n(n)?;
    Ok(n * n - 1)
}

/// Bloch vector of the normalized state with amplitudes `x[..n] + i x[n..]`.
fn chart(x: &DVector<f64>, basis: &GeneratorBasis) -> Result<DVector<f64>> {
    let n = basis.n();
    let amps = DVector::from_fn(n, |j, _| c64(x[j], x[n + j]));
    let psi = PureState::from_unnormalized(amps)?;
    Ok(bloch_project(&psi, basis)?.components().clone())
}

/// Rank of the finite-difference Jacobian of `x ↦ Φ(ψ(x)/‖ψ(x)‖)` at `psi`.
///
/// The chart has `2n` real coordinates; global phase and overall scale are
/// exact null directions, so a generic point has rank `2(n − 1)`.
pub fn jacobian_rank_at(psi: &PureState, basis: &GeneratorBasis, tol: f64) -> Result<usize> {
    let n = basis.n();
    if psi.n() != n {
        return Err(Error::DimensionMismatch { left: psi.n(), right: n });
    }
    let x0 = DVector::from_fn(2 * n, |j, _| {
        if j < n {
            psi.amplitudes()[j].re
        } else {
            psi.amplitudes()[j - n].im
        }
    });
    let mut jac = RMatrix::zeros(basis.len(), 2 * n);
    for j in 0..2 * n {
        let mut fwd = x0.clone();
        let mut bwd = x0.clone();
        fwd[j] += FD_STEP;
        bwd[j] -= FD_STEP;
        let col = (chart(&fwd, basis)? - chart(&bwd, basis)?) / (2.0 * FD_STEP);
        jac.set_column(j, &col);
    }
    Ok(numerical_rank(&jac, tol))
}

/// Tangent rank at each of `samples` Haar base points.
pub fn tangent_ranks<R: Rng + ?Sized>(n: usize, samples: usize, rng: &mut R, tol: f64) -> Result<Vec<usize>> {
    check_n(n)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let basis = gell_mann_basis(n)?;
    (0..samples)
        .map(|_| jacobian_rank_at(&haar_pure_state(n, rng)?, &basis, tol))
        .collect()
}

/// Maximum tangent rank of the pure-state image over `samples` base points.
pub fn image_tangent_rank<R: Rng + ?Sized>(n: usize, samples: usize, rng: &mut R, tol: f64) -> Result<usize> {
    Ok(tangent_ranks(n, samples, rng, tol)?.into_iter().max().unwrap_or(0))
}

/// Largest `|‖Φ(ψ)‖ − √(2(n−1)/n)|` over `samples` Haar pure states.
pub fn pure_norm_constant<R: Rng + ?Sized>(n: usize, samples: usize, rng: &mut R) -> Result<f64> {
    check_n(n)?;
    let basis = gell_mann_basis(n)?;
    let expected = pure_norm_bound(n);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let v = bloch_project(&haar_pure_state(n, rng)?, &basis)?;
        worst = worst.max((v.norm() - expected).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionReport {
    pub n: usize,
    /// `n² − 1`.
    pub generator_count: usize,
    /// Observed real dimension of the pure-state image, `2(n − 1)` generically.
    pub image_tangent_rank: usize,
    /// Dimension of the sphere `S^(n²−2)` containing the pure-state image.
    pub sphere_dim: usize,
    /// Radius of that sphere, `√(2(n−1)/n)`.
    pub pure_norm: f64,
    /// Largest sampled deviation of a pure-state norm from `pure_norm`.
    pub pure_norm_deviation: f64,
    /// The pure-state image fills its sphere.
    pub is_directional_only: bool,
}

pub fn exclusion_report<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ExclusionReport> {
    let generator_count = min_equivariant_dimension(n)?;
    debug_assert_eq!(generator_count, gell_mann_basis(n)?.len());
    let image_tangent_rank = image_tangent_rank(n, REPORT_SAMPLES, rng, DEFAULT_TANGENT_TOL)?;
    let pure_norm_deviation = pure_norm_constant(n, REPORT_SAMPLES, rng)?;
    let sphere_dim = generator_count - 1;
    Ok(ExclusionReport {
        n,
        generator_count,
        image_tangent_rank,
        sphere_dim,
        pure_norm: pure_norm_bound(n),
        pure_norm_deviation,
        is_directional_only: image_tangent_rank == sphere_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RngSeed;

    #[test]
    fn generator_counts() {
        assert_eq!(min_equivariant_dimension(2).unwrap(), 3);
        assert_eq!(min_equivariant_dimension(3).unwrap(), 8);
        assert_eq!(min_equivariant_dimension(4).unwrap(), 15);
        assert_eq!(min_equivariant_dimension(4).unwrap(), gell_mann_basis(4).unwrap().len());
        assert!(min_equivariant_dimension(1).is_err());
    }

    #[test]
    fn tangent_ranks_are_two_n_minus_two() {
        let mut rng = RngSeed(41).rng();
        for (n, want) in [(2, 2), (3, 4), (4, 6)] {
            let ranks = tangent_ranks(n, 10, &mut rng, DEFAULT_TANGENT_TOL).unwrap();
            assert!(ranks.iter().all(|&r| r == want), "n={n}: {ranks:?}");
        }
    }

    #[test]
    fn norm_constants() {
        let mut rng = RngSeed(42).rng();
        assert!((pure_norm_bound(2) - 1.0).abs() < 1e-15);
        assert!((pure_norm_bound(3) - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((pure_norm_bound(4) - 1.5f64.sqrt()).abs() < 1e-15);
        for n in 2..=4 {
            assert!(pure_norm_constant(n, 50, &mut rng).unwrap() < 1e-10);
        }
    }

    #[test]
    fn reports() {
        let mut rng = RngSeed(43).rng();
        let r2 = exclusion_report(2, &mut rng).unwrap();
        assert!(r2.is_directional_only);
        assert_eq!((r2.image_tangent_rank, r2.sphere_dim), (2, 2));
        let r3 = exclusion_report(3, &mut rng).unwrap();
        assert!(!r3.is_directional_only);
        assert_eq!((r3.image_tangent_rank, r3.sphere_dim), (4, 7));
        let r5 = exclusion_report(5, &mut rng).unwrap();
        assert_eq!((r5.image_tangent_rank, r5.sphere_dim), (8, 23));
        assert!(!r5.is_directional_only);
    }

    #[test]
    fn bad_arguments() {
        let mut rng = RngSeed(44).rng();
        assert!(image_tangent_rank(1, 3, &mut rng, DEFAULT_TANGENT_TOL).is_err());
        assert!(image_tangent_rank(2, 0, &mut rng, DEFAULT_TANGENT_TOL).is_err());
    }
}
