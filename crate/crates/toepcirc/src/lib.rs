//! Structured linear algebra for Hermitian Toeplitz systems generated by
//! trigonometric symbols, with a circulant substitution solver, a
//! statevector-level emulation of the corresponding quantum pipeline, and an
//! analysis layer that measures how fast the substitution error decays.

pub mod analysis;
pub mod circulant;
pub mod dense;
pub mod dft;
pub mod emulator;
pub mod error;
pub(crate) mod par;
pub mod rng;
pub mod special;
pub mod symbol;
pub mod textfmt;
pub mod toeplitz;

pub use num_complex::Complex64;
pub use analysis::{
    convergence_sweep, decompose_frobenius_error, eigenvalue_matching, rate_check_banded_rhs,
    rate_check_pseries, solution_errors, sweep_to_csv, ConvergenceRecord, ErrorDecomposition,
    RateFit, RateModel, RhsKind, Verdict, CSV_HEADER, DEFAULT_RATE_SEED, RATE_TOLERANCE_FACTOR,
};
pub use circulant::CirculantMatrix;
pub use dense::DenseMatrix;
pub use emulator::{
    gate_count_model, oracle_values, prepare_state, run_pipeline, Amplification,
    EmulationConfig, EmulationReport, OracleSource, StateVector,
};
pub use error::{Error, Result};
pub use rng::SplitMix64;
pub use symbol::{GeneratingFunction, SymbolKind, SYMBOL_GRAMMAR};
pub use toeplitz::{ConditionReport, ToeplitzMatrix};
