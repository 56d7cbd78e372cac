//! Hermitian Toeplitz matrices T with entry (i, j) = t_{i-j}, built from a
//! symbol's Fourier coefficients or from an explicit diagonal list.
//!
//! The matrix is stored as its 2n-1 diagonals. Matrix–vector products embed
//! T in a power-of-two circulant and cost O(n log n); solving goes through
//! the dense pivoted-LU oracle (capped), and the condition number comes from
//! a dense Hermitian eigensolve for moderate n or from power/inverse
//! iteration with a circulant-preconditioned conjugate-gradient core beyond
//! that.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::circulant::CirculantMatrix;
use crate::dense::DenseMatrix;
use crate::dft::unnormalized_dft;
use crate::error::{check_vector, Error, Result};
use crate::rng::SplitMix64;
use crate::symbol::{hermitian_head_from_full, GeneratingFunction};

/// Largest order the dense LU/materialization oracles accept.
pub const DENSE_SOLVE_CAP: usize = 4096;

/// Largest order solved by dense eigendecomposition inside
/// [`ToeplitzMatrix::condition_number`]; beyond it the iterative path runs.
pub const DENSE_EIG_CAP: usize = 1024;

/// Iterative condition-number budget: this many matvecs per matrix order.
const MATVEC_BUDGET_FACTOR: usize = 10;

/// Per-step Rayleigh-quotient change below which power iteration stops
/// early.
const POWER_DONE_REL: f64 = 1e-11;

/// Per-step change the power-iteration estimate must reach by the cap; a
/// clustered top of the spectrum turns the final climb harmonic, so the
/// estimate is accepted once steps are this small.
const POWER_ACCEPT_REL: f64 = 1e-7;

/// Rayleigh-quotient change at which inverse iteration counts as converged.
const INVERSE_DONE_REL: f64 = 1e-9;

/// Relative residual target for the inner conjugate-gradient solves.
const CG_RESIDUAL_REL: f64 = 1e-8;

/// Shifted preconditioner spectra are floored at this fraction of their
/// largest entry to stay positive definite.
const PRECOND_FLOOR_REL: f64 = 1e-8;

/// Initial gap between the inverse-iteration shift and the symbol minimum,
/// relative to the symbol's scale.
const SHIFT_MARGIN_REL: f64 = 1e-9;

/// Fixed seed for the deterministic iteration start vector.
const START_SEED: u64 = 0x7031_5EED;

/// How the condition number was obtained, with the supporting estimates.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    /// λ_max / λ_min.
    pub kappa: f64,
    /// "dense" (full eigensolve) or "iterative" (power/inverse iteration).
    pub method: &'static str,
    /// Smallest eigenvalue (estimate from below never crosses f_min).
    pub lambda_min: f64,
    /// Largest eigenvalue.
    pub lambda_max: f64,
    /// f_max/f_min when the matrix carries its generating symbol.
    pub symbol_ratio: Option<f64>,
}

/// Hermitian Toeplitz matrix with optional back-reference to its symbol.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    n: usize,
    /// t_{-(n-1)}..t_{n-1}; index d + (n-1) holds t_d.
    diagonals: Vec<Complex64>,
    symbol: Option<GeneratingFunction>,
    /// Spectrum of the power-of-two circulant embedding, built on first use.
    embedding: OnceLock<Vec<Complex64>>,
}

impl ToeplitzMatrix {
    /// T_n(f) with diagonals t_k = fourier_coefficient(f, k), |k| ≤ n-1.
    pub fn from_symbol(f: &GeneratingFunction, n: usize) -> Result<ToeplitzMatrix> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let head = f.coefficients_one_sided(n);
        Ok(ToeplitzMatrix {
            n,
            diagonals: mirror_head(&head),
            symbol: Some(f.clone()),
            embedding: OnceLock::new(),
        })
    }

    /// From the full diagonal list `t_-(n-1)..t_{n-1}` (length 2n-1,
    /// Hermitian-symmetric). The stored diagonals are canonicalized so that
    /// t_{-k} is exactly conj(t_k).
    pub fn from_diagonals(full: &[Complex64]) -> Result<ToeplitzMatrix> {
        let head = hermitian_head_from_full(full)?;
        Ok(ToeplitzMatrix {
            n: head.len(),
            diagonals: mirror_head(&head),
            symbol: None,
            embedding: OnceLock::new(),
        })
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// t_k, zero outside |k| ≤ n-1.
    pub fn diagonal(&self, k: i64) -> Complex64 {
        let idx = k + self.n as i64 - 1;
        if (0..self.diagonals.len() as i64).contains(&idx) {
            self.diagonals[idx as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// All diagonals `t_-(n-1)..t_{n-1}`.
    pub fn diagonals(&self) -> &[Complex64] {
        &self.diagonals
    }

    /// The generating symbol, when this matrix was built from one.
    pub fn symbol(&self) -> Option<&GeneratingFunction> {
        self.symbol.as_ref()
    }

    /// Entry (i, j) = t_{i-j}.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.diagonal(i as i64 - j as i64)
    }

    /// Dense materialization (order capped like the dense solver).
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        if self.n > DENSE_SOLVE_CAP {
            return Err(Error::DenseCapExceeded {
                n: self.n,
                cap: DENSE_SOLVE_CAP,
            });
        }
        DenseMatrix::from_fn(self.n, |i, j| self.entry(i, j))
    }

    /// Spectrum of the circulant embedding used by [`Self::matvec`].
    fn embedding_spectrum(&self) -> &[Complex64] {
        self.embedding.get_or_init(|| {
            let n = self.n;
            let big = (2 * n - 1).next_power_of_two().max(1);
            let mut top = vec![Complex64::new(0.0, 0.0); big];
            top[0] = self.diagonal(0);
            for k in 1..n {
                top[k] = self.diagonal(-(k as i64));
                top[big - k] = self.diagonal(k as i64);
            }
            unnormalized_dft(&top, -1).expect("finite diagonals")
        })
    }

    /// T·v in O(n log n) via the power-of-two circulant embedding.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        check_vector(v)?;
        let spectrum = self.embedding_spectrum();
        let big = spectrum.len();
        let mut padded = vec![Complex64::new(0.0, 0.0); big];
        padded[..self.n].copy_from_slice(v);
        let mut fwd = unnormalized_dft(&padded, 1)?;
        for (z, psi) in fwd.iter_mut().zip(spectrum) {
            *z *= psi;
        }
        let mut out = unnormalized_dft(&fwd, -1)?;
        let scale = 1.0 / big as f64;
        out.truncate(self.n);
        for z in &mut out {
            *z *= scale;
        }
        Ok(out)
    }

    /// Reference solve by pivoted dense LU; order capped at
    /// [`DENSE_SOLVE_CAP`].
    pub fn solve_dense(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.n > DENSE_SOLVE_CAP {
            return Err(Error::DenseCapExceeded {
                n: self.n,
                cap: DENSE_SOLVE_CAP,
            });
        }
        self.to_dense()?.lu_solve(b)
    }

    /// √(Σ_k (n-|k|)|t_k|²) from the diagonal structure, O(n).
    pub fn frobenius_norm(&self) -> f64 {
        let n = self.n as i64;
        let mut acc = 0.0;
        for k in -(n - 1)..=(n - 1) {
            acc += (n - k.abs()) as f64 * self.diagonal(k).norm_sqr();
        }
        acc.sqrt()
    }

    /// ‖C − T‖_F and ‖C − T‖_F/‖T‖_F accumulated per diagonal in O(n),
    /// without materializing either matrix: on diagonal d the circulant
    /// carries c_{(-d) mod n} against the Toeplitz t_d, with multiplicity
    /// n - |d|.
    pub fn frobenius_distance(&self, c: &CirculantMatrix) -> Result<(f64, f64)> {
        if c.order() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: c.order(),
            });
        }
        let n = self.n as i64;
        let top = c.top_row();
        let mut acc = 0.0;
        for d in -(n - 1)..=(n - 1) {
            let wrapped = ((-d).rem_euclid(n)) as usize;
            let diff = (top[wrapped] - self.diagonal(d)).norm_sqr();
            acc += (n - d.abs()) as f64 * diff;
        }
        let abs = acc.sqrt();
        Ok((abs, abs / self.frobenius_norm()))
    }

    /// Condition number of a Hermitian positive definite Toeplitz matrix:
    /// dense eigensolve up to [`DENSE_EIG_CAP`], otherwise power iteration
    /// for λ_max and circulant-preconditioned conjugate-gradient inverse
    /// iteration for λ_min under a 10·n matvec budget.
    pub fn condition_number(&self) -> Result<ConditionReport> {
        let symbol_ratio = self.symbol.as_ref().map(|f| f.condition_ratio());
        if self.n <= DENSE_EIG_CAP {
            let eig = self.to_dense()?.hermitian_eigenvalues()?;
            let lambda_min = eig[0];
            let lambda_max = eig[eig.len() - 1];
            if lambda_min <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "matrix is not positive definite: smallest eigenvalue {lambda_min:.6e}"
                )));
            }
            return Ok(ConditionReport {
                kappa: lambda_max / lambda_min,
                method: "dense",
                lambda_min,
                lambda_max,
                symbol_ratio,
            });
        }
        self.condition_number_iterative(symbol_ratio)
    }

    fn condition_number_iterative(
        &self,
        symbol_ratio: Option<f64>,
    ) -> Result<ConditionReport> {
        let budget = MATVEC_BUDGET_FACTOR * self.n;
        let mut used = 0usize;

        // Power iteration for λ_max. The Rayleigh quotient of any unit
        // vector stays inside [λ_min, λ_max], so the estimate is always a
        // sound lower bound on λ_max; once the top of the spectrum clusters
        // the climb turns harmonic, so after the cap the estimate is
        // accepted as long as its per-step drift is already negligible.
        let mut v = SplitMix64::new(START_SEED).complex_normal_vector(self.n);
        normalize(&mut v);
        let power_cap = budget / 2;
        let mut lambda_max = f64::NAN;
        let mut prev = f64::NAN;
        let mut change = f64::INFINITY;
        while used < power_cap {
            let mut w = self.matvec(&v)?;
            used += 1;
            let rq = dot_re(&v, &w);
            change = (rq - prev).abs();
            lambda_max = rq;
            if change <= POWER_DONE_REL * rq.abs() {
                break;
            }
            prev = rq;
            normalize(&mut w);
            v = w;
        }
        if !(change <= POWER_ACCEPT_REL * lambda_max.abs()) {
            return Err(Error::IterationBudget {
                matvecs: used,
                lambda_min: f64::NAN,
                lambda_max,
            });
        }

        let lambda_min = match self.smallest_eigenvalue_shifted(budget, &mut used) {
            Ok(value) => value,
            Err(Error::IterationBudget {
                matvecs,
                lambda_min,
                ..
            }) => {
                return Err(Error::IterationBudget {
                    matvecs,
                    lambda_min,
                    lambda_max,
                })
            }
            Err(e) => return Err(e),
        };
        if lambda_min <= 0.0 || lambda_min > lambda_max {
            return Err(Error::IterationBudget {
                matvecs: used,
                lambda_min,
                lambda_max,
            });
        }
        Ok(ConditionReport {
            kappa: lambda_max / lambda_min,
            method: "iterative",
            lambda_min,
            lambda_max,
            symbol_ratio,
        })
    }

    /// λ_min by inverse iteration on T - σI, solved with conjugate gradient
    /// preconditioned by the shifted associated circulant. When the symbol
    /// is known, σ sits just below f_min < λ_min, which separates the bottom
    /// eigenvalue cluster at its own scale and makes the outer iteration
    /// converge in a handful of steps; without a symbol, σ starts at zero
    /// and tightens from successive Rayleigh quotients. The returned value
    /// is a Rayleigh quotient, hence always an upper bound on λ_min.
    fn smallest_eigenvalue_shifted(&self, budget: usize, used: &mut usize) -> Result<f64> {
        let base = self.circulant_preconditioner();
        let mut margin = self
            .symbol
            .as_ref()
            .map(|f| SHIFT_MARGIN_REL * (f.f_max() - f.f_min()).abs().max(f.f_min().abs()));
        let mut sigma = match (&self.symbol, &margin) {
            (Some(f), Some(m)) => f.f_min() - m,
            _ => 0.0,
        };
        let mut precond = shifted_circulant(base.as_ref(), sigma);

        let mut y = SplitMix64::new(START_SEED ^ 0xFF).complex_normal_vector(self.n);
        normalize(&mut y);
        let mut prev = f64::NAN;
        let mut rq = f64::NAN;
        let mut outers = 0usize;
        let mut widenings = 0u32;
        loop {
            match self.cg_shifted(&y, sigma, precond.as_ref(), budget, used)? {
                CgOutcome::Solved(z) => {
                    y = z;
                    normalize(&mut y);
                }
                CgOutcome::OutOfBudget => {
                    return Err(Error::IterationBudget {
                        matvecs: *used,
                        lambda_min: rq,
                        lambda_max: f64::NAN,
                    });
                }
                CgOutcome::IndefiniteDirection => {
                    widenings += 1;
                    if widenings > 6 {
                        return Err(Error::IterationBudget {
                            matvecs: *used,
                            lambda_min: rq,
                            lambda_max: f64::NAN,
                        });
                    }
                    match (&self.symbol, &mut margin) {
                        (Some(f), Some(m)) => {
                            *m *= 64.0;
                            sigma = f.f_min() - *m;
                        }
                        _ if rq.is_finite() => {
                            sigma = rq - 2.0 * (rq - sigma).max(1e-12 * rq.abs());
                        }
                        _ => {
                            return Err(Error::InvalidArgument(
                                "matrix is not positive definite: conjugate gradient \
                                 met a non-positive curvature direction"
                                    .to_string(),
                            ));
                        }
                    }
                    precond = shifted_circulant(base.as_ref(), sigma);
                    continue;
                }
            }
            if *used >= budget {
                return Err(Error::IterationBudget {
                    matvecs: *used,
                    lambda_min: rq,
                    lambda_max: f64::NAN,
                });
            }
            let w = self.matvec(&y)?;
            *used += 1;
            outers += 1;
            rq = dot_re(&y, &w);
            if outers >= 2 && (rq - prev).abs() <= INVERSE_DONE_REL * rq.abs() {
                return Ok(rq);
            }
            if self.symbol.is_none() && outers >= 2 {
                // Rayleigh-quotient-guided tightening; overshoot retreats
                // through the indefinite-direction branch above.
                let proposed = rq - 3.0 * (prev - rq).abs() - 1e-9 * rq.abs();
                if proposed > sigma {
                    sigma = proposed;
                    precond = shifted_circulant(base.as_ref(), sigma);
                }
            }
            prev = rq;
        }
    }

    /// Circulant preconditioner seed: the associated circulant when the
    /// symbol is known, otherwise the sequence circulant of the stored
    /// diagonals; None if neither has a positive grid spectrum.
    fn circulant_preconditioner(&self) -> Option<CirculantMatrix> {
        if let Some(f) = &self.symbol {
            if let Ok(c) = CirculantMatrix::associated(f, self.n) {
                return Some(c);
            }
        }
        CirculantMatrix::from_sequence(&self.diagonals).ok()
    }

    /// Conjugate gradient on (T - σI)·x = b. Each iteration costs one
    /// Toeplitz matvec, drawn from the shared budget; a non-positive
    /// curvature direction reports back instead of erroring so the caller
    /// can widen the shift.
    fn cg_shifted(
        &self,
        b: &[Complex64],
        sigma: f64,
        precond: Option<&CirculantMatrix>,
        budget: usize,
        used: &mut usize,
    ) -> Result<CgOutcome> {
        let apply_m = |r: &[Complex64]| -> Result<Vec<Complex64>> {
            match precond {
                Some(c) => c.solve(r),
                None => Ok(r.to_vec()),
            }
        };
        let tol = CG_RESIDUAL_REL * norm(b);
        let mut x = vec![Complex64::new(0.0, 0.0); self.n];
        let mut r = b.to_vec();
        let mut d = apply_m(&r)?;
        let mut delta = dot_re(&r, &d);
        if !(delta > 0.0) {
            return Ok(CgOutcome::IndefiniteDirection);
        }
        while norm(&r) > tol {
            if *used >= budget {
                return Ok(CgOutcome::OutOfBudget);
            }
            let mut q = self.matvec(&d)?;
            *used += 1;
            for (qi, di) in q.iter_mut().zip(&d) {
                *qi -= sigma * di;
            }
            let dq = dot_re(&d, &q);
            if !(dq > 0.0) {
                return Ok(CgOutcome::IndefiniteDirection);
            }
            let alpha = delta / dq;
            for ((xi, di), (ri, qi)) in x.iter_mut().zip(&d).zip(r.iter_mut().zip(&q)) {
                *xi += alpha * di;
                *ri -= alpha * qi;
            }
            let s = apply_m(&r)?;
            let delta_new = dot_re(&r, &s);
            if !(delta_new > 0.0) {
                if norm(&r) <= tol {
                    break;
                }
                return Ok(CgOutcome::IndefiniteDirection);
            }
            let beta = delta_new / delta;
            delta = delta_new;
            for (di, si) in d.iter_mut().zip(&s) {
                *di = si + beta * *di;
            }
        }
        Ok(CgOutcome::Solved(x))
    }
}

/// Inner conjugate-gradient result, letting the caller adjust the shift.
enum CgOutcome {
    Solved(Vec<Complex64>),
    IndefiniteDirection,
    OutOfBudget,
}

/// Positive definite circulant preconditioner for T - σI: the base
/// circulant's spectrum shifted by σ and floored away from zero.
fn shifted_circulant(base: Option<&CirculantMatrix>, sigma: f64) -> Option<CirculantMatrix> {
    let base = base?;
    let shifted: Vec<f64> = base.eigenvalues().iter().map(|p| p.re - sigma).collect();
    let max = shifted.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return None;
    }
    let floor = PRECOND_FLOOR_REL * max;
    let spectrum: Vec<Complex64> = shifted
        .iter()
        .map(|&s| Complex64::new(s.max(floor), 0.0))
        .collect();
    CirculantMatrix::from_eigenvalues(&spectrum).ok()
}

/// Full diagonal list from a one-sided head, mirrored conjugate-symmetric.
fn mirror_head(head: &[Complex64]) -> Vec<Complex64> {
    let n = head.len();
    let mut full = vec![Complex64::new(0.0, 0.0); 2 * n - 1];
    for (k, t) in head.iter().enumerate() {
        full[n - 1 + k] = *t;
        full[n - 1 - k] = t.conj();
    }
    full
}

fn dot_re(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let s = norm(v);
    if s > 0.0 {
        for z in v.iter_mut() {
            *z /= s;
        }
    }
}
