//! Dense complex matrices used as reference oracles: pivoted LU solving and
//! Hermitian eigenvalues via Householder tridiagonalization + implicit-shift
//! QL. Everything here is O(n²)–O(n³) and exists to check the structured
//! fast paths, not to compete with them.

use num_complex::Complex64;

use crate::error::{check_vector, Error, Result};
use crate::par::{for_each_row, map_indexed};

/// Fraction of the Frobenius norm below which an LU pivot counts as singular.
const PIVOT_FLOOR_REL: f64 = 1e-14;

/// QL sweeps allowed per eigenvalue before giving up.
const QL_MAX_SWEEPS: usize = 64;

/// Row-major n×n complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Zero matrix of order `n` (≥ 1).
    pub fn zeros(n: usize) -> Result<DenseMatrix> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(DenseMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        })
    }

    /// Builds entry (i, j) from `entry(i, j)`.
    pub fn from_fn<F>(n: usize, entry: F) -> Result<DenseMatrix>
    where
        F: Fn(usize, usize) -> Complex64 + Sync,
    {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let rows = map_indexed(n, 8 * n, |i| {
            (0..n).map(|j| entry(i, j)).collect::<Vec<_>>()
        });
        Ok(DenseMatrix {
            n,
            data: rows.concat(),
        })
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry (i, j); panics on out-of-range indices like slice indexing.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// Sets entry (i, j).
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// √(Σ|a_ij|²).
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Dense matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        check_vector(v)?;
        Ok(map_indexed(self.n, 8 * self.n, |i| {
            let row = self.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, x) in row.iter().zip(v) {
                acc += a * x;
            }
            acc
        }))
    }

    /// Dense matrix product.
    pub fn multiply(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let rows = map_indexed(n, 8 * n * n, |i| {
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
            out
        });
        Ok(DenseMatrix {
            n,
            data: rows.concat(),
        })
    }

    /// Largest deviation from Hermitian symmetry, max |a_ij − conj(a_ji)|.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Solves A·x = b by LU with partial pivoting. Pivots smaller than
    /// 1e-14·‖A‖_F are treated as singular.
    pub fn lu_solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: b.len(),
            });
        }
        check_vector(&self.data)?;
        check_vector(b)?;
        let n = self.n;
        let floor = PIVOT_FLOOR_REL * self.frobenius_norm();
        let mut a = self.data.clone();
        let mut x = b.to_vec();

        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = a[col * n + col].norm();
            for r in col + 1..n {
                let mag = a[r * n + col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag <= floor {
                return Err(Error::SingularPivot {
                    pivot: pivot_mag,
                    floor,
                    column: col,
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                x.swap(col, pivot_row);
            }
            let pivot = a[col * n + col];
            let pivot_tail: Vec<Complex64> = a[col * n + col + 1..(col + 1) * n].to_vec();
            let rhs_pivot = x[col];
            let factors: Vec<Complex64> =
                (col + 1..n).map(|r| a[r * n + col] / pivot).collect();
            let (_, below) = a.split_at_mut((col + 1) * n);
            for_each_row(below, n, |r, row| {
                let factor = factors[r];
                row[col] = Complex64::new(0.0, 0.0);
                for (dst, src) in row[col + 1..].iter_mut().zip(&pivot_tail) {
                    *dst -= factor * src;
                }
            });
            for (r, factor) in factors.iter().enumerate() {
                x[col + 1 + r] -= factor * rhs_pivot;
            }
        }

        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= a[i * n + j] * x[j];
            }
            x[i] = acc / a[i * n + i];
        }
        Ok(x)
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// Householder reflections reduce the matrix to Hermitian tridiagonal
    /// form; a diagonal unitary similarity then makes the off-diagonal real
    /// (only its magnitudes are kept), and implicit-shift QL finishes on the
    /// real symmetric tridiagonal pair (d, e).
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        check_vector(&self.data)?;
        let scale = self.frobenius_norm().max(1.0);
        let defect = self.hermitian_defect();
        if defect > 1e-10 * scale {
            return Err(Error::NotHermitian(format!(
                "matrix deviates from Hermitian symmetry by {defect:.3e}"
            )));
        }
        let n = self.n;
        if n == 1 {
            return Ok(vec![self.data[0].re]);
        }
        let mut a = self.data.clone();
        let mut d = vec![0.0f64; n];
        let mut e = vec![0.0f64; n];

        for k in 0..n - 2 {
            // x = column k below the diagonal; reflect it onto ±‖x‖ e_0.
            let mut xnorm_sq = 0.0;
            for i in k + 1..n {
                xnorm_sq += a[i * n + k].norm_sqr();
            }
            let xnorm = xnorm_sq.sqrt();
            e[k + 1] = xnorm;
            if xnorm == 0.0 {
                continue;
            }
            let x0 = a[(k + 1) * n + k];
            let phase = if x0.norm() > 0.0 {
                x0 / x0.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            // u = x + phase·‖x‖·e_0, normalized into the reflector v.
            let mut v = vec![Complex64::new(0.0, 0.0); n - k - 1];
            for i in k + 1..n {
                v[i - k - 1] = a[i * n + k];
            }
            v[0] += phase * xnorm;
            let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if vnorm == 0.0 {
                continue;
            }
            for z in &mut v {
                *z /= vnorm;
            }

            // p = B v over the trailing block B = A[k+1.., k+1..].
            let m = n - k - 1;
            let base = k + 1;
            let p = map_indexed(m, 8 * m, |i| {
                let row = &a[(base + i) * n + base..(base + i) * n + n];
                let mut acc = Complex64::new(0.0, 0.0);
                for (b, vj) in row.iter().zip(&v) {
                    acc += b * vj;
                }
                acc
            });
            // c = v† p is real for Hermitian B; w = p − c v gives
            // H B H = B − 2 v w† − 2 w v†.
            let c: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
            let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - c * vi).collect();

            let (_, tail) = a.split_at_mut(base * n);
            for_each_row(tail, n, |i, row| {
                let vi = v[i];
                let wi = w[i];
                for j in 0..m {
                    row[base + j] -= 2.0 * (vi * w[j].conj() + wi * v[j].conj());
                }
            });
        }

        e[n - 1] = a[(n - 1) * n + n - 2].norm();
        for i in 0..n {
            d[i] = a[i * n + i].re;
        }
        tridiagonal_eigenvalues(&mut d, &mut e)?;
        Ok(d)
    }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix with diagonal `d`
/// and subdiagonal `e` (`e[0]` unused). Overwrites `d` with eigenvalues,
/// ascending.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    // Shift the subdiagonal down for the classic in-place sweep layout.
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut sweeps = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence { iterations: sweeps });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Symmetric tridiagonal with diagonal 2 and off-diagonal 0.5.
    fn tridiag(n: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, |i, j| {
            if i == j {
                re(2.0)
            } else if i.abs_diff(j) == 1 {
                re(0.5)
            } else {
                re(0.0)
            }
        })
        .unwrap()
    }

    fn lcg_complex(n: usize, seed: u64) -> Vec<Complex64> {
        let mut state = seed | 1;
        (0..n)
            .map(|_| {
                let mut next = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
                };
                Complex64::new(next(), next())
            })
            .collect()
    }

    #[test]
    fn lu_solves_the_reference_tridiagonal_system() {
        let t = tridiag(4);
        let b = [re(1.0), re(0.0), re(0.0), re(0.0)];
        let x = t.lu_solve(&b).unwrap();
        let scale = 1.0 / 26.125;
        let want = [14.0 * scale, -3.75 * scale, scale, -0.25 * scale];
        for (got, want) in x.iter().zip(&want) {
            assert_relative_eq!(got.re, want, epsilon = 1e-14);
            assert_relative_eq!(got.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn lu_residual_on_random_diagonally_dominant_system() {
        let n = 40;
        let noise = lcg_complex(n * n, 99);
        let a = DenseMatrix::from_fn(n, |i, j| {
            let z = noise[i * n + j];
            if i == j {
                re(6.0) + z + z.conj()
            } else {
                z
            }
        })
        .unwrap();
        let b = lcg_complex(n, 3);
        let x = a.lu_solve(&b).unwrap();
        let residual = a.matvec(&x).unwrap();
        let mut err = 0.0f64;
        let mut bnorm = 0.0f64;
        for (r, want) in residual.iter().zip(&b) {
            err += (r - want).norm_sqr();
            bnorm += want.norm_sqr();
        }
        assert!((err / bnorm).sqrt() <= 1e-11);
    }

    #[test]
    fn lu_detects_singularity() {
        let a = DenseMatrix::from_fn(3, |i, _| re(i as f64 + 1.0)).unwrap();
        let b = [re(1.0), re(1.0), re(1.0)];
        assert!(matches!(
            a.lu_solve(&b),
            Err(Error::SingularPivot { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_reference_tridiagonal() {
        // Eigenvalues of tridiag(0.5, 2, 0.5) at order 4: 2 + cos(k*pi/5).
        let eig = tridiag(4).hermitian_eigenvalues().unwrap();
        let mut want: Vec<f64> = (1..=4).map(|k| 2.0 + (k as f64 * PI / 5.0).cos()).collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in eig.iter().zip(&want) {
            assert_relative_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenvalues_of_complex_two_by_two() {
        let mut a = DenseMatrix::zeros(2).unwrap();
        a.set(0, 0, re(2.0));
        a.set(0, 1, Complex64::new(1.0, -1.0));
        a.set(1, 0, Complex64::new(1.0, 1.0));
        a.set(1, 1, re(3.0));
        let eig = a.hermitian_eigenvalues().unwrap();
        assert_relative_eq!(eig[0], 1.0, epsilon = 1e-13);
        assert_relative_eq!(eig[1], 4.0, epsilon = 1e-13);
    }

    #[test]
    fn eigenvalue_sums_match_trace_identities() {
        let n = 24;
        let noise = lcg_complex(n * n, 41);
        let a = DenseMatrix::from_fn(n, |i, j| {
            let upper = noise[i.min(j) * n + i.max(j)];
            if i == j {
                re(upper.re)
            } else if i < j {
                upper
            } else {
                upper.conj()
            }
        })
        .unwrap();
        let eig = a.hermitian_eigenvalues().unwrap();
        let trace: f64 = (0..n).map(|i| a.get(i, i).re).sum();
        let frob_sq: f64 = a.frobenius_norm().powi(2);
        assert_relative_eq!(eig.iter().sum::<f64>(), trace, epsilon = 1e-10);
        assert_relative_eq!(
            eig.iter().map(|l| l * l).sum::<f64>(),
            frob_sq,
            max_relative = 1e-10
        );
        for w in eig.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut a = DenseMatrix::zeros(2).unwrap();
        a.set(0, 1, re(1.0));
        assert!(matches!(
            a.hermitian_eigenvalues(),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn matvec_and_multiply_basics() {
        let a = tridiag(4);
        let v = [re(1.0), re(0.0), re(0.0), re(0.0)];
        let av = a.matvec(&v).unwrap();
        assert_eq!(av[0], re(2.0));
        assert_eq!(av[1], re(0.5));
        assert_eq!(av[2], re(0.0));

        let id = DenseMatrix::from_fn(4, |i, j| re((i == j) as u8 as f64)).unwrap();
        assert_eq!(a.multiply(&id).unwrap(), a);
        assert!(a.matvec(&[re(1.0)]).is_err());
    }
}
