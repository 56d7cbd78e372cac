//! Statevector emulation of the quantum circulant solver: Fourier transform,
//! eigenvalue oracle with optional fixed-point value register, controlled
//! rotation, post-selection (or explicit Grover reflections), and inverse
//! transform. The ancilla registers are never materialized — every stage is
//! an analytic map on the n-dimensional state — so the emulation is exact up
//! to the value-register quantization it models.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::circulant::CirculantMatrix;
use crate::dft::unnormalized_dft;
use crate::error::{check_vector, Error, Result};
use crate::symbol::GeneratingFunction;
use crate::textfmt::{json_float, json_string};

/// Unit-norm state on a power-of-two dimension.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    qubits: u32,
}

impl StateVector {
    /// Normalizes `v` into a state; the length must be a power of two.
    fn new(v: Vec<Complex64>) -> Result<StateVector> {
        let n = v.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let norm = l2_norm(&v);
        if norm <= 0.0 {
            return Err(Error::ZeroState);
        }
        let amplitudes = v.into_iter().map(|z| z / norm).collect();
        Ok(StateVector {
            amplitudes,
            qubits: n.trailing_zeros(),
        })
    }

    /// The amplitudes (unit 2-norm).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// log2 of the dimension.
    pub fn qubit_count(&self) -> u32 {
        self.qubits
    }

    /// State dimension n = 2^qubits.
    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    /// |⟨self|other⟩| — 1 exactly when the states agree up to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }
}

/// Amplitude-encodes `b`: checks the dimension and returns b/‖b‖₂.
pub fn prepare_state(b: &[Complex64]) -> Result<StateVector> {
    check_vector(b)?;
    StateVector::new(b.to_vec())
}

/// Where the eigenvalue oracle reads its values from.
#[derive(Debug, Clone)]
pub enum OracleSource {
    /// Grid samples of a generating function.
    Symbol(GeneratingFunction),
    /// A finite Hermitian coefficient list `t_-K..t_K`: the oracle serves
    /// the truncated-symbol grid values rescaled by their maximum so the
    /// spectrum lands in (0, 1].
    Sequence(Vec<Complex64>),
}

impl OracleSource {
    /// Report label: "symbol" or "wiener".
    pub fn mode(&self) -> &'static str {
        match self {
            OracleSource::Symbol(_) => "symbol",
            OracleSource::Sequence(_) => "wiener",
        }
    }
}

/// Amplitude-amplification accounting mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Amplification {
    /// Success probability plus the repeat count ⌈π/(4·arcsin √p)⌉.
    Analytic,
    /// k explicit reflection pairs about the flagged subspace.
    Grover(u32),
}

/// Pipeline knobs; `Default` runs exact values with analytic accounting and
/// the source-appropriate rotation constant.
#[derive(Debug, Clone)]
pub struct EmulationConfig {
    /// Rotation constant m; must satisfy m ≤ min oracle value. `None` picks
    /// the symbol minimum (scaled by 0.99 when the extrema are estimates),
    /// capped at the smallest quantized oracle value.
    pub m: Option<f64>,
    /// Fractional bits of the fixed-point value register; 0 = exact values.
    pub value_register_bits: u32,
    pub amplification: Amplification,
}

impl Default for EmulationConfig {
    fn default() -> EmulationConfig {
        EmulationConfig {
            m: None,
            value_register_bits: 0,
            amplification: Amplification::Analytic,
        }
    }
}

/// Everything a pipeline run reports.
#[derive(Debug, Clone)]
pub struct EmulationReport {
    pub n: usize,
    pub qubits: u32,
    /// "symbol" or "wiener".
    pub mode: &'static str,
    /// Rotation constant actually used.
    pub m: f64,
    pub bits: u32,
    /// p = Σ_j m²|b'_j|²/f_j² — the flagged mass before amplification.
    pub success_probability: f64,
    /// ⌈π/(4·arcsin √p)⌉ under analytic accounting, ⌈1/p_amplified⌉ under
    /// Grover reflections.
    pub expected_repeats: f64,
    pub grover_iterations: Option<u32>,
    /// Flagged mass measured after the reflection pairs (Grover mode only).
    pub amplified_probability: Option<f64>,
    pub gate_count: u64,
    /// |⟨output | normalized circulant solve⟩|.
    pub fidelity_vs_classical: f64,
    pub output_state: StateVector,
}

impl EmulationReport {
    /// JSON document with the fixed field set; `output_state` is included
    /// only for n ≤ 4096.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push('{');
        out.push_str(&format!("\"n\":{},", self.n));
        out.push_str(&format!("\"q\":{},", self.qubits));
        out.push_str(&format!("\"mode\":{},", json_string(self.mode)));
        out.push_str(&format!("\"m\":{},", json_float(self.m)));
        out.push_str(&format!("\"bits\":{},", self.bits));
        out.push_str(&format!(
            "\"success_probability\":{},",
            json_float(self.success_probability)
        ));
        out.push_str(&format!(
            "\"expected_repeats\":{},",
            json_float(self.expected_repeats)
        ));
        match self.grover_iterations {
            Some(k) => out.push_str(&format!("\"grover_iterations\":{k},")),
            None => out.push_str("\"grover_iterations\":null,"),
        }
        match self.amplified_probability {
            Some(p) => out.push_str(&format!("\"amplified_probability\":{},", json_float(p))),
            None => out.push_str("\"amplified_probability\":null,"),
        }
        out.push_str(&format!("\"gate_count\":{},", self.gate_count));
        out.push_str(&format!(
            "\"fidelity_vs_classical\":{}",
            json_float(self.fidelity_vs_classical)
        ));
        if self.n <= 4096 {
            out.push_str(",\"output_state\":[");
            for (i, z) in self.output_state.amplitudes().iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!("[{},{}]", json_float(z.re), json_float(z.im)));
            }
            out.push(']');
        }
        out.push('}');
        out
    }
}

/// The eigenvalues the oracle serves at dimension n: grid samples of the
/// symbol (or of the rescaled truncated symbol in wiener mode), rounded to
/// `bits` fractional bits of full-scale fixed point (bits = 0 keeps exact
/// values). Values that are not strictly positive — before or after
/// rounding — are an error rather than clamped, because a clamped
/// eigenvalue silently corrupts the solution.
pub fn oracle_values(source: &OracleSource, n: usize, bits: u32) -> Result<Vec<f64>> {
    let (mut values, full_scale) = match source {
        OracleSource::Symbol(f) => (f.sample_grid(n)?, f.f_max()),
        OracleSource::Sequence(full) => {
            let hat = GeneratingFunction::truncated_symbol(full)?;
            let scale = 1.0 / hat.f_max();
            let mut values = hat.sample_grid(n)?;
            for v in &mut values {
                *v *= scale;
            }
            (values, 1.0)
        }
    };
    if bits > 0 {
        let unit = full_scale * 0.5f64.powi(bits as i32);
        for v in &mut values {
            *v = (*v / unit).round_ties_even() * unit;
        }
    }
    if let Some(index) = values.iter().position(|v| *v <= 0.0 || !v.is_finite()) {
        return Err(Error::NonPositiveOracle {
            index,
            value: values[index],
        });
    }
    Ok(values)
}

/// Two QFTs (q Hadamards, q(q-1)/2 controlled phases, ⌊q/2⌋ swaps each)
/// plus two oracle calls and one controlled rotation, all counted as single
/// gates: 2·(q(q+1)/2 + ⌊q/2⌋) + 3. Grows Θ(q²).
pub fn gate_count_model(q: u32) -> u64 {
    let q = q as u64;
    2 * (q * (q + 1) / 2 + q / 2) + 3
}

/// Runs the five-stage solver pipeline on `b` and reports the output state
/// together with the success-probability and gate accounting.
pub fn run_pipeline(
    b: &[Complex64],
    source: &OracleSource,
    config: &EmulationConfig,
) -> Result<EmulationReport> {
    let state = prepare_state(b)?;
    let n = state.dimension();
    let bits = config.value_register_bits;
    let values = oracle_values(source, n, bits)?;
    let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);

    let m = match config.m {
        Some(m) => {
            if !(m > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "rotation constant must be positive, got {m}"
                )));
            }
            if m > min_value {
                return Err(Error::MTooLarge { m, min_value });
            }
            m
        }
        None => default_rotation_constant(source, min_value),
    };

    // Stage 1: Fourier transform. b' = F† b̂ (unitary).
    let root_n = (n as f64).sqrt();
    let mut spectral = unnormalized_dft(state.amplitudes(), 1)?;
    for z in &mut spectral {
        *z /= root_n;
    }

    // Stages 2–4: oracle, controlled rotation, post-selection. The flagged
    // branch carries amplitude b'_j·m/f_j, the unflagged branch the
    // complement; p is the flagged mass.
    let mut flagged: Vec<Complex64> = Vec::with_capacity(n);
    let mut unflagged: Vec<Complex64> = Vec::with_capacity(n);
    for (bj, fj) in spectral.iter().zip(&values) {
        let ratio = m / fj;
        flagged.push(bj * ratio);
        unflagged.push(bj * (1.0 - ratio * ratio).max(0.0).sqrt());
    }
    let success_probability: f64 = flagged.iter().map(|z| z.norm_sqr()).sum();

    let (grover_iterations, amplified_probability) = match config.amplification {
        Amplification::Analytic => (None, None),
        Amplification::Grover(k) => {
            let amplified = grover_reflect(&mut flagged, &mut unflagged, k);
            (Some(k), Some(amplified))
        }
    };

    // Stage 5: inverse transform of the (possibly amplified) flagged branch,
    // then renormalization — reflections move mass, not the flagged ray.
    let output_state = StateVector::new(unnormalized_dft(&flagged, -1)?)?;

    let classical = classical_reference(source, n, state.amplitudes())?;
    let fidelity_vs_classical = output_state.fidelity(&classical);

    let expected_repeats = match amplified_probability {
        None => {
            let theta = success_probability.min(1.0).sqrt().asin();
            (PI / (4.0 * theta)).ceil()
        }
        Some(p_amp) => (1.0 / p_amp.max(f64::MIN_POSITIVE)).ceil(),
    };

    Ok(EmulationReport {
        n,
        qubits: state.qubit_count(),
        mode: source.mode(),
        m,
        bits,
        success_probability,
        expected_repeats,
        grover_iterations,
        amplified_probability,
        gate_count: gate_count_model(state.qubit_count()),
        fidelity_vs_classical,
        output_state,
    })
}

/// Default m: the symbol minimum (0.99 of it when the extrema are
/// estimates), never above the smallest quantized oracle value; wiener mode
/// uses that smallest rescaled value directly.
fn default_rotation_constant(source: &OracleSource, min_value: f64) -> f64 {
    match source {
        OracleSource::Symbol(f) => {
            let candidate = if f.has_estimated_extrema() {
                0.99 * f.f_min()
            } else {
                f.f_min()
            };
            candidate.min(min_value)
        }
        OracleSource::Sequence(_) => min_value,
    }
}

/// The normalized circulant solve this pipeline approximates (exact oracle
/// values regardless of the configured register width).
fn classical_reference(
    source: &OracleSource,
    n: usize,
    normalized_b: &[Complex64],
) -> Result<StateVector> {
    let circulant = match source {
        OracleSource::Symbol(f) => CirculantMatrix::associated(f, n)?,
        OracleSource::Sequence(full) => {
            let hat = GeneratingFunction::truncated_symbol(full)?;
            CirculantMatrix::associated(&hat, n)?
        }
    };
    StateVector::new(circulant.solve(normalized_b)?)
}

/// k exact reflection pairs about the flagged subspace and the initial
/// state, applied in place to the joint (flagged, unflagged) statevector.
/// Returns the flagged mass afterwards.
fn grover_reflect(flagged: &mut [Complex64], unflagged: &mut [Complex64], k: u32) -> f64 {
    let initial_flagged = flagged.to_vec();
    let initial_unflagged = unflagged.to_vec();
    for _ in 0..k {
        // Reflection about the unflagged subspace: negate flagged
        // amplitudes.
        for z in flagged.iter_mut() {
            *z = -*z;
        }
        // Reflection about the initial state: v ← 2⟨Ψ|v⟩Ψ − v.
        let overlap: Complex64 = initial_flagged
            .iter()
            .zip(flagged.iter())
            .chain(initial_unflagged.iter().zip(unflagged.iter()))
            .map(|(psi, v)| psi.conj() * v)
            .sum();
        let twice = 2.0 * overlap;
        for (z, psi) in flagged.iter_mut().zip(&initial_flagged) {
            *z = twice * psi - *z;
        }
        for (z, psi) in unflagged.iter_mut().zip(&initial_unflagged) {
            *z = twice * psi - *z;
        }
    }
    flagged.iter().map(|z| z.norm_sqr()).sum()
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
