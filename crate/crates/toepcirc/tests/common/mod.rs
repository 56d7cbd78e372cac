//! Independent oracles for the integration suites: everything here is
//! written from first principles (quadratic-time transforms, entrywise dense
//! constructions) so agreement with the library is meaningful evidence.
#![allow(dead_code)] // each test binary uses a different slice of this module

use num_complex::Complex64;
use std::f64::consts::PI;

/// Quadratic-time reference DFT: `out[k] = Σ_j v[j] · e^(sign·2πi·jk/n)`,
/// with the angle reduced modulo one turn before evaluation for accuracy.
pub fn naive_dft(v: &[Complex64], sign: i32) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &x) in v.iter().enumerate() {
                let turns = ((j * k) % n) as f64 / n as f64;
                acc += x * Complex64::from_polar(1.0, sign as f64 * 2.0 * PI * turns);
            }
            acc
        })
        .collect()
}

/// Dense Toeplitz action computed entrywise from a one-sided diagonal head
/// (`head[k]` is `t_k` for `k ≥ 0`; negative offsets mirror conjugately).
pub fn toeplitz_apply(head: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let t = |d: i64| -> Complex64 {
        let a = d.unsigned_abs() as usize;
        if a >= head.len() {
            Complex64::new(0.0, 0.0)
        } else if d >= 0 {
            head[a]
        } else {
            head[a].conj()
        }
    };
    (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &x) in v.iter().enumerate() {
                acc += t(i as i64 - j as i64) * x;
            }
            acc
        })
        .collect()
}

/// Dense circulant action computed entrywise from the top row:
/// `A[i][j] = top[(j − i) mod n]`.
pub fn circulant_apply(top: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &x) in v.iter().enumerate() {
                acc += top[(n + j - i) % n] * x;
            }
            acc
        })
        .collect()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
