//! Cross-checks of the structured-matrix layer against entrywise dense
//! oracles: matrix actions, spectral solves, the grid-sample eigenvalue
//! identity, and Frobenius distances are each recomputed from first
//! principles and compared.

mod common;

use common::{circulant_apply, distance, naive_dft, norm, toeplitz_apply};
use num_complex::Complex64;
use proptest::prelude::*;
use toepcirc::rng::SplitMix64;
use toepcirc::{CirculantMatrix, DenseMatrix, GeneratingFunction, ToeplitzMatrix};

/// A random Hermitian-consistent diagonal head: real `t_0`, complex decay
/// beyond. The 1/(k+1)² damping keeps the implied matrices well scaled
/// without forcing definiteness — the action tests don't need it.
fn random_head(len: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = SplitMix64::new(seed);
    let mut head = rng.complex_normal_vector(len);
    head[0] = Complex64::new(head[0].re.abs() + 1.0, 0.0);
    for (k, t) in head.iter_mut().enumerate().skip(1) {
        *t = *t / ((k + 1) * (k + 1)) as f64;
    }
    head
}

fn catalog_symbol(choice: u8) -> GeneratingFunction {
    match choice % 5 {
        0 => GeneratingFunction::constant(2.5).unwrap(),
        1 => GeneratingFunction::shifted_cosine(2.0, 1.0).unwrap(),
        2 => GeneratingFunction::kms(0.5).unwrap(),
        3 => GeneratingFunction::pseries(2.0, 4.0).unwrap(),
        _ => GeneratingFunction::band(&[0.25, 0.5, 2.0, 0.5, 0.25]).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn toeplitz_action_matches_entrywise_oracle(
        n in 1usize..48,
        band in 1usize..8,
        seed in 0u64..1_000_000,
    ) {
        let mut head = random_head(band.min(n), seed);
        head.resize(n, Complex64::new(0.0, 0.0));
        let full: Vec<Complex64> = head
            .iter()
            .rev()
            .map(|t| t.conj())
            .chain(head.iter().skip(1).cloned())
            .collect();
        let t = ToeplitzMatrix::from_diagonals(&full).unwrap();
        let v = SplitMix64::new(seed ^ 0xabcd).complex_normal_vector(n);
        let fast = t.matvec(&v).unwrap();
        let slow = toeplitz_apply(&head, &v);
        prop_assert!(distance(&fast, &slow) / norm(&slow).max(1.0) < 1e-11);
    }

    #[test]
    fn circulant_action_matches_entrywise_oracle(n in 1usize..48, seed in 0u64..1_000_000) {
        let top = SplitMix64::new(seed).complex_normal_vector(n);
        let c = CirculantMatrix::from_top_row(&top).unwrap();
        let v = SplitMix64::new(seed ^ 0x1234).complex_normal_vector(n);
        let fast = c.matvec(&v).unwrap();
        let slow = circulant_apply(&top, &v);
        prop_assert!(distance(&fast, &slow) / norm(&slow).max(1.0) < 1e-11);
    }

    #[test]
    fn circulant_solve_inverts_its_own_action(n in 1usize..48, seed in 0u64..1_000_000) {
        // Diagonally dominant top row keeps the spectrum away from zero.
        let mut top = SplitMix64::new(seed).complex_normal_vector(n);
        top[0] += Complex64::new(3.0 * n as f64, 0.0);
        let c = CirculantMatrix::from_top_row(&top).unwrap();
        let b = SplitMix64::new(seed ^ 0x77).complex_normal_vector(n);
        let x = c.solve(&b).unwrap();
        let back = c.matvec(&x).unwrap();
        prop_assert!(distance(&back, &b) / norm(&b) < 1e-11);
    }

    /// The associated circulant's top row must regenerate the grid-sample
    /// spectrum through the quadratic-time reference transform, and its
    /// dense form must have exactly those numbers as Hermitian eigenvalues —
    /// two reconstruction routes that never touch the cached spectrum.
    #[test]
    fn associated_circulant_spectrum_survives_independent_reconstruction(
        n in 2usize..48,
        choice in 0u8..5,
    ) {
        let f = catalog_symbol(choice);
        let c = CirculantMatrix::associated(&f, n).unwrap();
        let grid = f.sample_grid(n).unwrap();

        let via_naive = naive_dft(c.top_row(), -1);
        for (j, (lambda, sample)) in via_naive.iter().zip(&grid).enumerate() {
            prop_assert!(lambda.im.abs() < 1e-11 * sample.abs().max(1.0), "im leak at j={}", j);
            prop_assert!(
                (lambda.re - sample).abs() <= 1e-11 * sample.abs().max(1.0),
                "n={} j={} naive={} sample={}", n, j, lambda.re, sample
            );
        }

        let mut dense_eigs = c.to_dense().hermitian_eigenvalues().unwrap();
        dense_eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut sorted_grid = grid.clone();
        sorted_grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (lambda, sample) in dense_eigs.iter().zip(&sorted_grid) {
            prop_assert!((lambda - sample).abs() <= 1e-11 * sample.abs().max(1.0));
        }
    }

    #[test]
    fn frobenius_distance_matches_dense_subtraction(n in 2usize..32, choice in 0u8..5) {
        let f = catalog_symbol(choice);
        let t = ToeplitzMatrix::from_symbol(&f, n).unwrap();
        let c = CirculantMatrix::associated(&f, n).unwrap();
        let (absolute, relative) = t.frobenius_distance(&c).unwrap();

        let td = t.to_dense().unwrap();
        let cd = c.to_dense();
        let mut diff_sq = 0.0;
        for i in 0..n {
            for j in 0..n {
                diff_sq += (td.get(i, j) - cd.get(i, j)).norm_sqr();
            }
        }
        let oracle_abs = diff_sq.sqrt();
        prop_assert!((absolute - oracle_abs).abs() < 1e-10 * oracle_abs.max(1.0));
        let oracle_rel = oracle_abs / td.frobenius_norm();
        prop_assert!((relative - oracle_rel).abs() < 1e-10 * oracle_rel.max(1.0));
    }

    #[test]
    fn dense_toeplitz_solve_agrees_with_lu_on_dense_copy(
        n in 2usize..24,
        choice in 0u8..5,
        seed in 0u64..1_000_000,
    ) {
        let f = catalog_symbol(choice);
        let t = ToeplitzMatrix::from_symbol(&f, n).unwrap();
        let b = SplitMix64::new(seed).complex_normal_vector(n);
        let x = t.solve_dense(&b).unwrap();
        let oracle = t.to_dense().unwrap().lu_solve(&b).unwrap();
        prop_assert!(distance(&x, &oracle) / norm(&oracle).max(1.0) < 1e-10);
    }
}

/// Circulant algebra: product and sum of two circulants stay circulant with
/// pointwise-combined spectra, checked against dense multiplication.
#[test]
fn circulant_algebra_matches_dense_operations() {
    let n = 12;
    let a_top = SplitMix64::new(11).complex_normal_vector(n);
    let b_top = SplitMix64::new(12).complex_normal_vector(n);
    let a = CirculantMatrix::from_top_row(&a_top).unwrap();
    let b = CirculantMatrix::from_top_row(&b_top).unwrap();

    let product = a.multiply(&b).unwrap();
    let dense_product = a.to_dense().multiply(&b.to_dense()).unwrap();
    let sum = a.add(&b).unwrap();

    for i in 0..n {
        for j in 0..n {
            assert!((product.to_dense().get(i, j) - dense_product.get(i, j)).norm() < 1e-10);
            let expected_sum = a.to_dense().get(i, j) + b.to_dense().get(i, j);
            assert!((sum.to_dense().get(i, j) - expected_sum).norm() < 1e-12);
        }
    }
}

/// The reported condition number of a Hermitian positive definite Toeplitz
/// matrix must match the dense eigenvalue extremes, on both the dense path
/// (small n) and the iterative path (forced by a large order).
#[test]
fn condition_number_agrees_with_dense_spectrum() {
    let f = GeneratingFunction::kms(0.5).unwrap();
    for n in [8usize, 37, 64] {
        let t = ToeplitzMatrix::from_symbol(&f, n).unwrap();
        let report = t.condition_number().unwrap();
        let eigs = t.to_dense().unwrap().hermitian_eigenvalues().unwrap();
        let lo = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let oracle = hi / lo;
        assert!(
            (report.kappa - oracle).abs() < 1e-6 * oracle,
            "n={n} kappa={} oracle={oracle}",
            report.kappa
        );
    }
}

/// Toeplitz from a symbol and from the explicit mirrored diagonal list must
/// be the same matrix.
#[test]
fn symbol_and_diagonal_constructions_coincide() {
    let f = GeneratingFunction::band(&[0.25, 0.5, 2.0, 0.5, 0.25]).unwrap();
    let n = 10;
    let from_symbol = ToeplitzMatrix::from_symbol(&f, n).unwrap();
    let head = f.coefficients_one_sided(n);
    let full: Vec<Complex64> = head
        .iter()
        .rev()
        .map(|t| t.conj())
        .chain(head.iter().skip(1).cloned())
        .collect();
    let from_diagonals = ToeplitzMatrix::from_diagonals(&full).unwrap();
    for k in -(n as i64 - 1)..n as i64 {
        assert!((from_symbol.diagonal(k) - from_diagonals.diagonal(k)).norm() < 1e-15);
    }
}

/// Hermitian eigensolver oracle check on a matrix whose spectrum is known in
/// closed form: the symmetric second-difference matrix has eigenvalues
/// 2 − 2cos(kπ/(n+1)).
#[test]
fn dense_eigensolver_reproduces_second_difference_spectrum() {
    let n = 16;
    let m = DenseMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(2.0, 0.0)
        } else if i.abs_diff(j) == 1 {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .unwrap();
    let mut eigs = m.hermitian_eigenvalues().unwrap();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (k, lambda) in eigs.iter().enumerate() {
        let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
        assert!((lambda - exact).abs() < 1e-12, "k={k}");
    }
}
