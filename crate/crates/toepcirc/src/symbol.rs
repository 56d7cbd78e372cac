//! Generating functions (symbols): strictly positive, continuous, 2π-periodic
//! real functions whose Fourier coefficients populate Toeplitz diagonals.
//!
//! The catalog covers the parametric families used throughout the crate
//! (constant, shifted cosine, Kac–Murdock–Szegő, p-series, band) plus
//! finite coefficient sequences produced by truncation. Every kind carries
//! its spectral interval `[f_min, f_max]`: exact in closed form for the
//! parametric families, estimated by dense sampling plus golden-section
//! refinement for band/sequence kinds (flagged via
//! [`GeneratingFunction::has_estimated_extrema`]).
//!
//! Fourier coefficients come from closed forms; an independent trapezoid
//! quadrature route ([`GeneratingFunction::fourier_coefficient_quadrature`])
//! exists for cross-checking. The quadrature grid size is tail-aware: it
//! grows until the aliasing error (which for the trapezoid rule on periodic
//! integrands is exactly the coefficient tail at multiples of the grid size)
//! drops below ~5e-11, capped at 2^22 points.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dft::unnormalized_dft;
use crate::error::{Error, Result};
use crate::par::map_indexed;
use crate::special::{eta, zeta, CosineSeries};

/// Grammar for symbol strings accepted by [`GeneratingFunction::from_str`],
/// quoted verbatim in CLI help text.
pub const SYMBOL_GRAMMAR: &str = "\
SYMBOL GRAMMAR
  const:A            constant A                 (requires A > 0)
  cos:A,B            A + B*cos(x)               (requires A > |B|)
  kms:R              (1-R^2)/(1-2R*cos(x)+R^2)  (requires 0 < R < 1)
  pseries:P,T0       T0 + 2*sum_k cos(k*x)/k^P  (requires P > 1, T0 > 2*zeta(P))
  band:C-r,...,C0,...,Cr
                     sum_k C_k e^(ikx): odd-length mirror-symmetric real list
                     (requires min over x > 0)";

/// Golden-section refinement stops once the bracket is this narrow.
const GOLDEN_TOL: f64 = 1e-12;

/// Dense-sampling resolution for estimated extrema.
const EXTREMA_GRID: usize = 1 << 16;

/// Target aliasing error for the quadrature fallback, and the hard cap on
/// its grid size (slow-tailed symbols near p = 1 may saturate the cap).
const QUAD_TARGET: f64 = 5e-11;
const QUAD_GRID_CAP: usize = 1 << 22;

/// The parametric families plus finite coefficient sequences.
#[derive(Debug, Clone)]
pub enum SymbolKind {
    /// f(x) = a.
    Constant { value: f64 },
    /// f(x) = a + b cos x with a > |b|.
    ShiftedCosine { offset: f64, amplitude: f64 },
    /// Kac–Murdock–Szegő: f(x) = (1-ρ²)/(1-2ρcos x+ρ²), coefficients ρ^|k|.
    KacMurdockSzego { rho: f64 },
    /// f(x) = t0 + 2 Σ_{k≥1} cos(kx)/k^p with p > 1 and t0 > 2ζ(p).
    PSeries { p: f64, t0: f64, series: CosineSeries },
    /// Trigonometric polynomial with real mirror-symmetric coefficients;
    /// stores the one-sided head t_0..t_r.
    Band { head: Vec<f64> },
    /// Finite Hermitian-symmetric coefficient sequence (typically a truncated
    /// symbol); stores the one-sided head t_0..t_K with t_0 real.
    SampledSequence { head: Vec<Complex64> },
}

/// A strictly positive symbol together with its spectral interval and an
/// optional global rescale factor.
#[derive(Debug, Clone)]
pub struct GeneratingFunction {
    kind: SymbolKind,
    f_min: f64,
    f_max: f64,
    estimated_extrema: bool,
    scale: f64,
}

impl GeneratingFunction {
    /// Constant symbol `value` (> 0).
    pub fn constant(value: f64) -> Result<GeneratingFunction> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::SymbolDomain(format!(
                "constant symbol must be positive and finite, got {value}"
            )));
        }
        Ok(GeneratingFunction {
            kind: SymbolKind::Constant { value },
            f_min: value,
            f_max: value,
            estimated_extrema: false,
            scale: 1.0,
        })
    }

    /// `offset + amplitude*cos(x)`; positivity requires `offset > |amplitude|`.
    pub fn shifted_cosine(offset: f64, amplitude: f64) -> Result<GeneratingFunction> {
        if !offset.is_finite() || !amplitude.is_finite() || offset <= amplitude.abs() {
            return Err(Error::SymbolDomain(format!(
                "shifted cosine requires offset > |amplitude|, got offset {offset}, amplitude {amplitude}"
            )));
        }
        Ok(GeneratingFunction {
            kind: SymbolKind::ShiftedCosine { offset, amplitude },
            f_min: offset - amplitude.abs(),
            f_max: offset + amplitude.abs(),
            estimated_extrema: false,
            scale: 1.0,
        })
    }

    /// Kac–Murdock–Szegő symbol with parameter `0 < rho < 1`.
    pub fn kms(rho: f64) -> Result<GeneratingFunction> {
        if !rho.is_finite() || rho <= 0.0 || rho >= 1.0 {
            return Err(Error::SymbolDomain(format!(
                "Kac-Murdock-Szego parameter must lie in (0, 1), got {rho}"
            )));
        }
        Ok(GeneratingFunction {
            kind: SymbolKind::KacMurdockSzego { rho },
            f_min: (1.0 - rho) / (1.0 + rho),
            f_max: (1.0 + rho) / (1.0 - rho),
            estimated_extrema: false,
            scale: 1.0,
        })
    }

    /// Coefficients `t_0 = t0`, `t_k = |k|^-p`; positivity requires
    /// `t0 > 2*zeta(p)`.
    ///
    /// The extrema are exact: the derivative -2 Σ sin(kx)/k^(p-1) is a sine
    /// series with convex coefficients decreasing to zero, hence
    /// single-signed on (0, π), so the symbol decreases monotonically from
    /// `t0 + 2ζ(p)` at 0 to `t0 - 2η(p)` at π.
    ///
    /// `p` must be an exact integer or at least 1e-6 away from one: the
    /// singular expansion behind the evaluator loses all precision when two
    /// of its terms nearly cancel.
    pub fn pseries(p: f64, t0: f64) -> Result<GeneratingFunction> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::SymbolDomain(format!(
                "p-series exponent must exceed 1, got {p}"
            )));
        }
        let nearest = p.round();
        if p != nearest && (p - nearest).abs() < 1e-6 {
            return Err(Error::SymbolDomain(format!(
                "p-series exponent {p} is within 1e-6 of integer {nearest}; \
                 evaluation would be catastrophically ill-conditioned \
                 (use the exact integer instead)"
            )));
        }
        let zp = zeta(p);
        if !t0.is_finite() || t0 <= 2.0 * zp {
            return Err(Error::SymbolDomain(format!(
                "p-series offset must exceed 2*zeta(p) = {:.12} for positivity, got {t0}",
                2.0 * zp
            )));
        }
        let series = CosineSeries::new(p);
        let f_min = t0 + 2.0 * series.at_pi();
        let f_max = t0 + 2.0 * series.at_zero();
        debug_assert!((f_min - (t0 - 2.0 * eta(p))).abs() < 1e-12 * f_min.abs());
        Ok(GeneratingFunction {
            kind: SymbolKind::PSeries { p, t0, series },
            f_min,
            f_max,
            estimated_extrema: false,
            scale: 1.0,
        })
    }

    /// Band symbol from the full real coefficient list `t_-r..t_r` (odd
    /// length, mirror-symmetric). Extrema are estimated by dense sampling.
    pub fn band(full_band: &[f64]) -> Result<GeneratingFunction> {
        if full_band.is_empty() {
            return Err(Error::EmptyInput);
        }
        if full_band.len() % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "band coefficient list must have odd length t_-r..t_r, got {} entries",
                full_band.len()
            )));
        }
        if let Some(i) = full_band.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        let r = full_band.len() / 2;
        for k in 1..=r {
            if full_band[r - k] != full_band[r + k] {
                return Err(Error::NotHermitian(format!(
                    "band coefficients must mirror: t_-{k} = {} but t_{k} = {}",
                    full_band[r - k],
                    full_band[r + k]
                )));
            }
        }
        let head: Vec<f64> = full_band[r..].to_vec();
        let complex_head: Vec<Complex64> =
            head.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let (f_min, f_max) = estimate_extrema(&complex_head)?;
        if f_min <= 0.0 {
            return Err(Error::SymbolDomain(format!(
                "band symbol is not strictly positive: estimated minimum {f_min:.6e}"
            )));
        }
        Ok(GeneratingFunction {
            kind: SymbolKind::Band { head },
            f_min,
            f_max,
            estimated_extrema: true,
            scale: 1.0,
        })
    }

    /// Degree-K trigonometric polynomial from a full Hermitian-symmetric
    /// coefficient list `t_-K..t_K` — the truncated symbol built from the
    /// coefficients available at dimension K+1. Extrema are estimated by
    /// dense sampling; an estimated minimum ≤ 0 is an error (the associated
    /// circulant would be singular or indefinite).
    pub fn truncated_symbol(full: &[Complex64]) -> Result<GeneratingFunction> {
        let head = hermitian_head_from_full(full)?;
        let (f_min, f_max) = estimate_extrema(&head)?;
        if f_min <= 0.0 {
            return Err(Error::SymbolDomain(format!(
                "truncated symbol is not strictly positive: estimated minimum {f_min:.6e}"
            )));
        }
        Ok(GeneratingFunction {
            kind: SymbolKind::SampledSequence { head },
            f_min,
            f_max,
            estimated_extrema: true,
            scale: 1.0,
        })
    }

    /// The symbol kind (read-only).
    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    /// Smallest symbol value (exact or estimated, times the rescale factor).
    pub fn f_min(&self) -> f64 {
        self.scale * self.f_min
    }

    /// Largest symbol value (exact or estimated, times the rescale factor).
    pub fn f_max(&self) -> f64 {
        self.scale * self.f_max
    }

    /// μ = f_max/f_min, the symbol's own condition ratio (scale-invariant).
    pub fn condition_ratio(&self) -> f64 {
        self.f_max / self.f_min
    }

    /// True when `f_min`/`f_max` came from sampling rather than closed form.
    pub fn has_estimated_extrema(&self) -> bool {
        self.estimated_extrema
    }

    /// Half-bandwidth r such that t_k = 0 for |k| > r, when finite.
    pub fn band_radius(&self) -> Option<usize> {
        match &self.kind {
            SymbolKind::Constant { .. } => Some(0),
            SymbolKind::ShiftedCosine { .. } => Some(1),
            SymbolKind::Band { head } => Some(head.len() - 1),
            SymbolKind::SampledSequence { head } => Some(head.len() - 1),
            SymbolKind::KacMurdockSzego { .. } | SymbolKind::PSeries { .. } => None,
        }
    }

    /// Same symbol multiplied by `factor` (> 0).
    pub fn rescaled(&self, factor: f64) -> Result<GeneratingFunction> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "rescale factor must be positive and finite, got {factor}"
            )));
        }
        let mut out = self.clone();
        out.scale *= factor;
        Ok(out)
    }

    /// Same symbol divided by its maximum, so the spectrum lies in [1/μ, 1].
    pub fn rescaled_to_unit_max(&self) -> GeneratingFunction {
        let mut out = self.clone();
        out.scale /= self.f_max();
        out
    }

    /// f(λ) for λ ∈ [0, 2π]; out-of-range (or non-finite) λ is rejected
    /// rather than wrapped so caller bugs surface.
    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        if !(0.0..=TAU).contains(&lambda) {
            return Err(Error::OutOfDomain(lambda));
        }
        Ok(self.eval_periodic(lambda))
    }

    /// Evaluation with periodic wrapping; internal use only.
    fn eval_periodic(&self, lambda: f64) -> f64 {
        let x = lambda.rem_euclid(TAU);
        let raw = match &self.kind {
            SymbolKind::Constant { value } => *value,
            SymbolKind::ShiftedCosine { offset, amplitude } => offset + amplitude * x.cos(),
            SymbolKind::KacMurdockSzego { rho } => {
                (1.0 - rho * rho) / (1.0 - 2.0 * rho * x.cos() + rho * rho)
            }
            SymbolKind::PSeries { t0, series, .. } => t0 + 2.0 * series.eval(x),
            SymbolKind::Band { head } => {
                let mut acc = head[0];
                for (k, c) in head.iter().enumerate().skip(1) {
                    acc += 2.0 * c * (k as f64 * x).cos();
                }
                acc
            }
            SymbolKind::SampledSequence { head } => eval_sequence_head(head, x),
        };
        self.scale * raw
    }

    /// Fourier coefficient t_k from the closed form of each kind.
    pub fn fourier_coefficient(&self, k: i64) -> Complex64 {
        let a = k.unsigned_abs() as usize;
        let raw = match &self.kind {
            SymbolKind::Constant { value } => {
                Complex64::new(if a == 0 { *value } else { 0.0 }, 0.0)
            }
            SymbolKind::ShiftedCosine { offset, amplitude } => Complex64::new(
                match a {
                    0 => *offset,
                    1 => amplitude / 2.0,
                    _ => 0.0,
                },
                0.0,
            ),
            SymbolKind::KacMurdockSzego { rho } => Complex64::new(rho.powi(a as i32), 0.0),
            SymbolKind::PSeries { p, t0, .. } => Complex64::new(
                if a == 0 { *t0 } else { (a as f64).powf(-p) },
                0.0,
            ),
            SymbolKind::Band { head } => {
                Complex64::new(head.get(a).copied().unwrap_or(0.0), 0.0)
            }
            SymbolKind::SampledSequence { head } => {
                let t = head.get(a).copied().unwrap_or_default();
                if k < 0 {
                    t.conj()
                } else {
                    t
                }
            }
        };
        self.scale * raw
    }

    /// One-sided coefficient head `t_0..t_{len-1}` (rescale applied).
    pub fn coefficients_one_sided(&self, len: usize) -> Vec<Complex64> {
        (0..len as i64).map(|k| self.fourier_coefficient(k)).collect()
    }

    /// t_k by composite trapezoid quadrature of `evaluate` — the independent
    /// route used to cross-check the closed forms. The grid size is the
    /// larger of 64·max(|k|,1) (rounded up to a power of two) and a
    /// kind-specific bound that pushes the aliasing error below ~5e-11,
    /// capped at 2^22 points.
    pub fn fourier_coefficient_quadrature(&self, k: i64) -> Complex64 {
        let m = self.quadrature_points(k);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let x = TAU * j as f64 / m as f64;
            let angle = -TAU * (k.rem_euclid(m as i64) as f64) * j as f64 / m as f64;
            acc += self.eval_periodic(x) * Complex64::new(angle.cos(), angle.sin());
        }
        acc / m as f64
    }

    /// Grid size for the quadrature fallback (see above).
    fn quadrature_points(&self, k: i64) -> usize {
        let a = k.unsigned_abs() as usize;
        let base = (64 * a.max(1)).next_power_of_two();
        let tail_bound = match &self.kind {
            SymbolKind::Constant { .. } | SymbolKind::ShiftedCosine { .. } => 1,
            SymbolKind::Band { head } => (a + head.len()).next_power_of_two(),
            SymbolKind::SampledSequence { head } => (a + head.len()).next_power_of_two(),
            SymbolKind::KacMurdockSzego { rho } => {
                // rho^(M-|k|) <= target  =>  M >= |k| + ln(target)/ln(rho)
                let need = a as f64 + QUAD_TARGET.ln() / rho.ln();
                (need.max(1.0) as usize).next_power_of_two()
            }
            SymbolKind::PSeries { p, .. } => {
                // Aliased tail ~ 2 zeta(p) M^-p <= target.
                let need = (2.0 * zeta(*p) / QUAD_TARGET).powf(1.0 / p);
                (need.max(1.0).min(QUAD_GRID_CAP as f64) as usize).next_power_of_two()
            }
        };
        base.max(tail_bound).min(QUAD_GRID_CAP)
    }

    /// Grid samples (f(2πj/n))_{j=0..n-1} — the associated circulant's
    /// eigenvalues.
    pub fn sample_grid(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let cost = match &self.kind {
            SymbolKind::Constant { .. }
            | SymbolKind::ShiftedCosine { .. }
            | SymbolKind::KacMurdockSzego { .. } => 8,
            SymbolKind::PSeries { .. } => 512,
            SymbolKind::Band { head } => 8 * head.len(),
            SymbolKind::SampledSequence { head } => 8 * head.len(),
        };
        Ok(map_indexed(n, cost, |j| {
            self.eval_periodic(TAU * j as f64 / n as f64)
        }))
    }

    /// Partial Parseval sums: `lhs = Σ_{|k|≤K} |t_k|²` from the closed-form
    /// coefficients, `rhs = (1/2π)∫f²` by quadrature. As K grows, lhs
    /// increases to rhs.
    pub fn parseval_check(&self, cap_k: usize) -> (f64, f64) {
        let mut lhs = self.fourier_coefficient(0).norm_sqr();
        for k in 1..=cap_k as i64 {
            lhs += self.fourier_coefficient(k).norm_sqr()
                + self.fourier_coefficient(-k).norm_sqr();
        }
        let m = 1usize << 16;
        let grid = self.sample_grid(m).expect("nonzero grid");
        let rhs = grid.iter().map(|v| v * v).sum::<f64>() / m as f64;
        (lhs, rhs)
    }

    /// Σ_{|k| > cutoff} |t_k|², in closed form per kind.
    pub fn coefficient_tail_sq(&self, cutoff: usize) -> f64 {
        let s2 = self.scale * self.scale;
        match &self.kind {
            SymbolKind::Constant { .. } => 0.0,
            SymbolKind::ShiftedCosine { amplitude, .. } => {
                if cutoff == 0 {
                    s2 * amplitude * amplitude / 2.0
                } else {
                    0.0
                }
            }
            SymbolKind::KacMurdockSzego { rho } => {
                // 2 Σ_{k>N} ρ^{2k} = 2 ρ^{2(N+1)} / (1-ρ²)
                let q = rho * rho;
                s2 * 2.0 * q.powi(cutoff as i32 + 1) / (1.0 - q)
            }
            SymbolKind::PSeries { p, .. } => {
                // 2 (ζ(2p) - Σ_{k≤N} k^{-2p}), partial sum taken smallest-first.
                let mut partial = 0.0;
                for k in (1..=cutoff).rev() {
                    partial += (k as f64).powf(-2.0 * p);
                }
                s2 * 2.0 * (zeta(2.0 * p) - partial).max(0.0)
            }
            SymbolKind::Band { head } => {
                let mut sum = 0.0;
                for (k, c) in head.iter().enumerate().skip(cutoff + 1) {
                    let _ = k;
                    sum += 2.0 * c * c;
                }
                s2 * sum
            }
            SymbolKind::SampledSequence { head } => {
                let mut sum = 0.0;
                for t in head.iter().skip(cutoff + 1) {
                    sum += 2.0 * t.norm_sqr();
                }
                s2 * sum
            }
        }
    }

    /// Canonical string form (parseable by `from_str` for parametric kinds).
    pub fn label(&self) -> String {
        let base = match &self.kind {
            SymbolKind::Constant { value } => format!("const:{value}"),
            SymbolKind::ShiftedCosine { offset, amplitude } => {
                format!("cos:{offset},{amplitude}")
            }
            SymbolKind::KacMurdockSzego { rho } => format!("kms:{rho}"),
            SymbolKind::PSeries { p, t0, .. } => format!("pseries:{p},{t0}"),
            SymbolKind::Band { head } => {
                let mut full: Vec<String> =
                    head.iter().rev().map(|c| c.to_string()).collect();
                full.extend(head.iter().skip(1).map(|c| c.to_string()));
                format!("band:{}", full.join(","))
            }
            SymbolKind::SampledSequence { head } => format!("sampled:{}", head.len() - 1),
        };
        if self.scale == 1.0 {
            base
        } else {
            format!("{base}|scale:{}", self.scale)
        }
    }
}

impl fmt::Display for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for GeneratingFunction {
    type Err = Error;

    /// Parses the grammar in [`SYMBOL_GRAMMAR`]. Malformed strings yield
    /// `InvalidArgument` (a usage problem); well-formed strings with
    /// out-of-range parameters yield `SymbolDomain`.
    fn from_str(s: &str) -> Result<GeneratingFunction> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!(
                "symbol spec '{s}' is missing ':'; expected kind:params"
            )))?;
        let values: Vec<f64> = args
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidArgument(format!(
                        "symbol spec '{s}': '{tok}' is not a number"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let expect = |n: usize| -> Result<()> {
            if values.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "symbol kind '{kind}' takes {n} parameter(s), got {}",
                    values.len()
                )))
            }
        };
        match kind {
            "const" => {
                expect(1)?;
                GeneratingFunction::constant(values[0])
            }
            "cos" => {
                expect(2)?;
                GeneratingFunction::shifted_cosine(values[0], values[1])
            }
            "kms" => {
                expect(1)?;
                GeneratingFunction::kms(values[0])
            }
            "pseries" => {
                expect(2)?;
                GeneratingFunction::pseries(values[0], values[1])
            }
            "band" => GeneratingFunction::band(&values),
            other => Err(Error::InvalidArgument(format!(
                "unknown symbol kind '{other}' (expected const, cos, kms, pseries, or band)"
            ))),
        }
    }
}

/// Validates a full coefficient list `t_-K..t_K` (odd length, finite,
/// Hermitian-symmetric with real center) and returns the one-sided head
/// `t_0..t_K`.
pub(crate) fn hermitian_head_from_full(full: &[Complex64]) -> Result<Vec<Complex64>> {
    if full.is_empty() {
        return Err(Error::EmptyInput);
    }
    if full.len() % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "coefficient list must have odd length t_-K..t_K, got {} entries",
            full.len()
        )));
    }
    if let Some(i) = full.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite { index: i });
    }
    let cap = full.len() / 2;
    let center = full[cap];
    if center.im.abs() > 1e-12 * (1.0 + center.re.abs()) {
        return Err(Error::NotHermitian(format!(
            "t_0 must be real, got imaginary part {:.3e}",
            center.im
        )));
    }
    for k in 1..=cap {
        let diff = (full[cap - k] - full[cap + k].conj()).norm();
        if diff > 1e-12 * (1.0 + full[cap + k].norm()) {
            return Err(Error::NotHermitian(format!(
                "t_-{k} must equal conj(t_{k}); difference has magnitude {diff:.3e}"
            )));
        }
    }
    let mut head: Vec<Complex64> = full[cap..].to_vec();
    head[0] = Complex64::new(center.re, 0.0);
    Ok(head)
}

/// Direct evaluation of `t_0 + 2 Σ_{k≥1} Re(t_k e^{ikx})` with exact angles.
fn eval_sequence_head(head: &[Complex64], x: f64) -> f64 {
    let mut acc = head[0].re;
    for (k, t) in head.iter().enumerate().skip(1) {
        let angle = k as f64 * x;
        acc += 2.0 * (t.re * angle.cos() - t.im * angle.sin());
    }
    acc
}

/// Values of the symbol with one-sided head `t_0..t_K` on the uniform m-grid
/// via one length-m transform: f(2πj/m) = 2·Re(Σ_k t_k e^{2πijk/m}) - t_0.
/// Requires K < m.
pub(crate) fn grid_values_from_head(head: &[Complex64], m: usize) -> Result<Vec<f64>> {
    if head.is_empty() {
        return Err(Error::EmptyInput);
    }
    if head.len() > m {
        return Err(Error::DimensionMismatch {
            left: head.len(),
            right: m,
        });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    buf[..head.len()].copy_from_slice(head);
    let spectrum = unnormalized_dft(&buf, 1)?;
    let t0 = head[0].re;
    Ok(spectrum.iter().map(|z| 2.0 * z.re - t0).collect())
}

/// Golden-section minimization of `f` on `[a, b]`; returns the best value.
fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}

/// Extrema of a finite Hermitian head: dense grid scan (via one FFT) plus
/// golden-section refinement around the discrete extremes.
fn estimate_extrema(head: &[Complex64]) -> Result<(f64, f64)> {
    let m = EXTREMA_GRID.max((2 * head.len()).next_power_of_two());
    let values = grid_values_from_head(head, m)?;
    let mut i_min = 0;
    let mut i_max = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[i_min] {
            i_min = i;
        }
        if *v > values[i_max] {
            i_max = i;
        }
    }
    let h = TAU / m as f64;
    let eval = |x: f64| eval_sequence_head(head, x.rem_euclid(TAU));
    let x_min = i_min as f64 * h;
    let x_max = i_max as f64 * h;
    let refined_min = golden_min(&eval, x_min - h, x_min + h).min(values[i_min]);
    let refined_max = -golden_min(&|x| -eval(x), x_max - h, x_max + h);
    Ok((refined_min, refined_max.max(values[i_max])))
}
