//! Circulant matrices with entries C(i, j) = c_{(j-i) mod n}, diagonalized
//! by the unitary DFT matrix F (F_{mj} = e^{-2πimj/n}/√n) as
//! `C = F diag(ψ) F†` with `ψ_m = Σ_k c_k e^{-2πimk/n}`. Solving,
//! multiplying and adding all run in O(n log n) through the cached spectrum.
//!
//! The two structured constructors implement the symbol machinery:
//! [`CirculantMatrix::associated`] samples a generating function on the
//! uniform grid (its eigenvalues are exactly those samples), and
//! [`CirculantMatrix::from_sequence`] builds the same object from a finite
//! Hermitian coefficient list via the identity
//! `ψ_j = Σ_k t_k e^{2πijk/n} + Σ_k t_{-k} e^{-2πijk/n} - t_0`.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::dft::unnormalized_dft;
use crate::error::{check_vector, Error, Result};
use crate::symbol::{grid_values_from_head, hermitian_head_from_full, GeneratingFunction};

/// Spectrum entries smaller than this fraction of the largest one make the
/// matrix numerically singular for solving.
const SPECTRUM_FLOOR_REL: f64 = 1e-14;

/// Circulant matrix: top row plus its cached DFT spectrum.
#[derive(Debug, Clone)]
pub struct CirculantMatrix {
    n: usize,
    top_row: Vec<Complex64>,
    eigenvalues: Vec<Complex64>,
}

impl CirculantMatrix {
    /// From the top row `c_0..c_{n-1}`; the spectrum is computed and cached.
    pub fn from_top_row(top_row: &[Complex64]) -> Result<CirculantMatrix> {
        check_vector(top_row)?;
        let eigenvalues = unnormalized_dft(top_row, -1)?;
        Ok(CirculantMatrix {
            n: top_row.len(),
            top_row: top_row.to_vec(),
            eigenvalues,
        })
    }

    /// From the spectrum `ψ_0..ψ_{n-1}`; the top row is its scaled inverse
    /// transform.
    pub fn from_eigenvalues(eigenvalues: &[Complex64]) -> Result<CirculantMatrix> {
        check_vector(eigenvalues)?;
        let n = eigenvalues.len();
        let mut top_row = unnormalized_dft(eigenvalues, 1)?;
        for c in &mut top_row {
            *c /= n as f64;
        }
        Ok(CirculantMatrix {
            n,
            top_row,
            eigenvalues: eigenvalues.to_vec(),
        })
    }

    /// The associated circulant of a symbol at dimension n: eigenvalues are
    /// exactly the grid samples f(2πj/n), and the top row is their scaled
    /// inverse transform c_k = (1/n) Σ_j f(2πj/n) e^{2πijk/n}.
    pub fn associated(f: &GeneratingFunction, n: usize) -> Result<CirculantMatrix> {
        let samples = f.sample_grid(n)?;
        spectrum_from_real_samples(&samples)
    }

    /// The associated circulant of the truncated symbol carried by a full
    /// Hermitian coefficient list `t_-(n-1)..t_{n-1}` (length 2n-1), without
    /// constructing the symbol: grid values come from one length-n transform
    /// of the one-sided head.
    pub fn from_sequence(full: &[Complex64]) -> Result<CirculantMatrix> {
        let head = hermitian_head_from_full(full)?;
        let n = head.len();
        let samples = grid_values_from_head(&head, n)?;
        spectrum_from_real_samples(&samples)
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Top row `c_0..c_{n-1}`.
    pub fn top_row(&self) -> &[Complex64] {
        &self.top_row
    }

    /// Cached spectrum `ψ_0..ψ_{n-1}` (unitary-DFT order).
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Smallest and largest spectrum magnitudes.
    fn spectrum_range(&self) -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = 0.0f64;
        for psi in &self.eigenvalues {
            let m = psi.norm();
            min = min.min(m);
            max = max.max(m);
        }
        (min, max)
    }

    /// Solves C·x = b as `F diag(1/ψ) F† b` in O(n log n).
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: b.len(),
            });
        }
        let (min_abs, max_abs) = self.spectrum_range();
        let floor = SPECTRUM_FLOOR_REL * max_abs;
        if min_abs <= floor {
            return Err(Error::SingularCirculant { min_abs, floor });
        }
        let mut spectrum = unnormalized_dft(b, 1)?;
        for (s, psi) in spectrum.iter_mut().zip(&self.eigenvalues) {
            *s /= psi;
        }
        let mut x = unnormalized_dft(&spectrum, -1)?;
        let scale = 1.0 / self.n as f64;
        for z in &mut x {
            *z *= scale;
        }
        Ok(x)
    }

    /// C·v as `F diag(ψ) F† v` in O(n log n).
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let mut spectrum = unnormalized_dft(v, 1)?;
        for (s, psi) in spectrum.iter_mut().zip(&self.eigenvalues) {
            *s *= psi;
        }
        let mut out = unnormalized_dft(&spectrum, -1)?;
        let scale = 1.0 / self.n as f64;
        for z in &mut out {
            *z *= scale;
        }
        Ok(out)
    }

    /// Product of two circulants: spectra multiply pointwise (so the factors
    /// commute).
    pub fn multiply(&self, other: &CirculantMatrix) -> Result<CirculantMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let spectrum: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| a * b)
            .collect();
        CirculantMatrix::from_eigenvalues(&spectrum)
    }

    /// Sum of two circulants: top rows and spectra add entrywise.
    pub fn add(&self, other: &CirculantMatrix) -> Result<CirculantMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let top_row: Vec<Complex64> = self
            .top_row
            .iter()
            .zip(&other.top_row)
            .map(|(a, b)| a + b)
            .collect();
        let eigenvalues: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CirculantMatrix {
            n: self.n,
            top_row,
            eigenvalues,
        })
    }

    /// Materializes C(i, j) = c_{(j-i) mod n} (each row is the right cyclic
    /// shift of the one above).
    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n;
        DenseMatrix::from_fn(n, |i, j| self.top_row[(n + j - i) % n]).expect("n >= 1")
    }
}

/// Shared tail of the structured constructors: strictly positive real grid
/// samples become the spectrum, the scaled inverse transform the top row.
fn spectrum_from_real_samples(samples: &[f64]) -> Result<CirculantMatrix> {
    if let Some(index) = samples.iter().position(|v| *v <= 0.0 || !v.is_finite()) {
        return Err(Error::NonPositiveSample {
            index,
            value: samples[index],
        });
    }
    let eigenvalues: Vec<Complex64> =
        samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let n = eigenvalues.len();
    let mut top_row = unnormalized_dft(&eigenvalues, 1)?;
    for c in &mut top_row {
        *c /= n as f64;
    }
    Ok(CirculantMatrix {
        n,
        top_row,
        eigenvalues,
    })
}
