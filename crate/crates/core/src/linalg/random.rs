//! Seeded sampling of Haar-random states and special unitaries.
//!
//! Every random stream in the crate is a ChaCha8 generator whose 256-bit key
//! is `seed ‖ domain ‖ 0…0` (little-endian) and whose stream id is a task
//! index. Distinct experiments use distinct `domain` values and each trial
//! uses its own index, so results do not depend on execution order.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{c64, CMatrix, MatrixPredicates};
use super::state::PureState;
use crate::{Error, Result};

pub type StreamRng = ChaCha8Rng;

/// Master seed for a reproducible run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Independent stream for `(domain, index)`.
    pub fn stream(self, domain: u64, index: u64) -> StreamRng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.0.to_le_bytes());
        key[8..16].copy_from_slice(&domain.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        rng
    }

    pub fn rng(self) -> StreamRng {
        self.stream(0, 0)
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

/// Pure state drawn from the unitarily invariant (Fubini–Study) measure.
pub fn haar_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState> {
    if n == 0 {
        return Err(Error::InvalidDimension(0, "n >= 1"));
    }
    loop {
        let v = DVector::from_fn(n, |_, _| complex_gaussian(rng));
        // A zero draw has probability zero; retry rather than fail.
        if v.norm() > 0.0 {
            return PureState::from_unnormalized(v);
        }
    }
}

/// Haar-distributed element of `SU(n)`.
///
/// QR of a complex Ginibre matrix, with the phases of `diag(R)` absorbed
/// into `Q` so the result is Haar on `U(n)`, then the global phase fixed so
/// that `det = 1`.
pub fn haar_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "n >= 2"));
    }
    let z = CMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let correction = Complex64::from_polar(1.0, -det.arg() / n as f64);
    q.iter_mut().for_each(|x| *x *= correction);
    debug_assert!(q.is_unitary(1e-10));
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let seed = RngSeed(42);
        let a: Vec<u64> = (0..4).map(|_| seed.stream(1, 3).random()).collect();
        let b: Vec<u64> = (0..4).map(|_| seed.stream(1, 3).random()).collect();
        assert_eq!(a, b);
        let x: u64 = seed.stream(1, 3).random();
        let y: u64 = seed.stream(1, 4).random();
        let z: u64 = seed.stream(2, 3).random();
        let w: u64 = RngSeed(43).stream(1, 3).random();
        assert!(x != y && x != z && x != w);
    }

    #[test]
    fn haar_state_is_normalized() {
        let mut rng = RngSeed(7).rng();
        for n in 1..=5 {
            let psi = haar_pure_state(n, &mut rng).unwrap();
            assert!((psi.amplitudes().norm_squared() - 1.0).abs() < 1e-12);
        }
        assert!(haar_pure_state(0, &mut rng).is_err());
    }

    #[test]
    fn haar_unitary_is_special_unitary() {
        let mut rng = RngSeed(11).rng();
        for n in 2..=4 {
            for _ in 0..20 {
                let u = haar_special_unitary(n, &mut rng).unwrap();
                assert!(u.is_unitary(1e-12), "n={n}");
                assert!((u.determinant() - c64(1.0, 0.0)).norm() < 1e-10);
                let cols = u.adjoint() * &u;
                assert!((cols - CMatrix::identity(n, n)).norm() < 1e-12);
            }
        }
        assert!(haar_special_unitary(1, &mut rng).is_err());
    }
}
