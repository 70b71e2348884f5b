use blochdim::equivariance::{adjoint_rotation, su2_from_axis_angle};
use blochdim::experiments::{run_bloch_coverage, run_saturation, AxisMoments, MOMENT_Z_LIMIT};
use blochdim::linalg::{
    haar_pure_state, haar_special_unitary, numerical_rank, pauli_basis, DensityMatrix, RMatrix, RngSeed,
    DEFAULT_RANK_TOL,
};
use blochdim::projection::{bloch_project, reconstruct_density, BlochVector};
use nalgebra::Vector3;
use proptest::prelude::*;

fn low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> RMatrix {
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = RngSeed(seed).rng();
    let mut draw = |r, c| RMatrix::from_fn(r, c, |_, _| StandardNormal.sample(&mut rng));
    draw(rows, rank) * draw(rank, cols)
}

fn random_orthogonal(d: usize, seed: u64) -> RMatrix {
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = RngSeed(seed).stream(99, 0);
    RMatrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng)).qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_survives_row_permutation_and_rotation(
        rows in 2usize..9, cols in 2usize..9, rank in 1usize..5, seed in any::<u64>(), shift in 0usize..8,
    ) {
        let rank = rank.min(rows).min(cols);
        let m = low_rank(rows, cols, rank, seed);
        prop_assert_eq!(numerical_rank(&m, DEFAULT_RANK_TOL), rank);

        let perm = RMatrix::from_fn(rows, rows, |i, j| if j == (i + shift) % rows { 1.0 } else { 0.0 });
        prop_assert_eq!(numerical_rank(&(&perm * &m), DEFAULT_RANK_TOL), rank);

        let q = random_orthogonal(cols, seed ^ 0x5a5a);
        prop_assert_eq!(numerical_rank(&(&m * &q), DEFAULT_RANK_TOL), rank);
    }

    #[test]
    fn projection_is_affine_in_the_state(p in 0.0f64..=1.0, seed in any::<u64>()) {
        let basis = pauli_basis();
        let mut rng = RngSeed(seed).rng();
        let a = haar_pure_state(2, &mut rng).unwrap().density();
        let b = haar_pure_state(2, &mut rng).unwrap().density();
        let mix = DensityMatrix::mixture(p, &a, &b).unwrap();
        let va = bloch_project(&a, &basis).unwrap();
        let vb = bloch_project(&b, &basis).unwrap();
        let vm = bloch_project(&mix, &basis).unwrap();
        let expected = va.components() * p + vb.components() * (1.0 - p);
        prop_assert!((vm.components() - expected).amax() < 1e-12);
    }

    #[test]
    fn reconstruction_inverts_projection_inside_the_ball(
        theta in 0.0f64..std::f64::consts::PI, phi in 0.0f64..std::f64::consts::TAU, r in 0.0f64..=1.0,
    ) {
        let basis = pauli_basis();
        let v = vec![r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()];
        let bv = BlochVector::new(2, v.clone()).unwrap();
        let rho = reconstruct_density(&bv, &basis).unwrap();
        let back = bloch_project(&rho, &basis).unwrap();
        for (x, y) in back.components().iter().zip(&v) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn axis_angle_rotation_matches_rodrigues(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0, az in -1.0f64..1.0, angle in -6.0f64..6.0, seed in any::<u64>(),
    ) {
        let axis = Vector3::new(ax, ay, az);
        prop_assume!(axis.norm() > 1e-3);
        let n = axis.normalize();
        let basis = pauli_basis();
        let u = su2_from_axis_angle(&axis, angle).unwrap();
        let r = adjoint_rotation(&u, &basis).unwrap();

        let psi = haar_pure_state(2, &mut RngSeed(seed).rng()).unwrap();
        let v = bloch_project(&psi, &basis).unwrap();
        let v3 = Vector3::new(v.components()[0], v.components()[1], v.components()[2]);
        let expected = v3 * angle.cos() + n.cross(&v3) * angle.sin() + n * n.dot(&v3) * (1.0 - angle.cos());

        let rotated = bloch_project(&psi.evolved(&u).unwrap(), &basis).unwrap();
        let via_r = r.apply(v.components());
        for i in 0..3 {
            prop_assert!((rotated.components()[i] - expected[i]).abs() < 1e-10);
            prop_assert!((via_r[i] - expected[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn haar_unitaries_are_special(n in 2usize..6, seed in any::<u64>()) {
        let u = haar_special_unitary(n, &mut RngSeed(seed).rng()).unwrap();
        let id = RMatrix::identity(n, n);
        let gram = u.adjoint() * &u;
        prop_assert!((gram.map(|z| z.re) - id).amax() < 1e-12);
        prop_assert!((u.determinant() - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn haar_bloch_moments_match_uniform_sphere() {
    let basis = pauli_basis();
    let mut rng = RngSeed(2024).rng();
    let mut axes: [Vec<f64>; 3] = Default::default();
    for _ in 0..10_000 {
        let v = bloch_project(&haar_pure_state(2, &mut rng).unwrap(), &basis).unwrap();
        for (axis, x) in axes.iter_mut().zip(v.components().iter()) {
            axis.push(*x);
        }
    }
    for axis in &axes {
        let m = AxisMoments::from_samples(axis);
        assert!(m.is_uniform_like(MOMENT_Z_LIMIT), "{m:?}");
    }
}

#[test]
fn records_are_deterministic_in_the_seed() {
    let a = run_bloch_coverage(50, 0.5, RngSeed(3)).unwrap();
    let b = run_bloch_coverage(50, 0.5, RngSeed(3)).unwrap();
    let c = run_bloch_coverage(50, 0.5, RngSeed(4)).unwrap();
    assert_eq!(a.tables, b.tables);
    assert_ne!(a.tables, c.tables);

    let s1 = run_saturation(&[4, 6], 5, RngSeed(9)).unwrap();
    let s2 = run_saturation(&[6, 4], 5, RngSeed(9)).unwrap();
    assert_eq!(s1.tables, s2.tables);
}
