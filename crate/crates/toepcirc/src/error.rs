//! Error and result types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building symbols, transforming
/// vectors, factoring matrices, or running the emulator pipeline.
///
/// Each variant carries enough data to act on programmatically; [`Error::code`]
/// gives a short stable identifier used in machine-readable output.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("empty input vector")]
    EmptyInput,

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid transform sign {0}; expected +1 or -1")]
    InvalidSign(i32),

    #[error("symbol domain error: {0}")]
    SymbolDomain(String),

    #[error("evaluation point {0} lies outside [0, 2*pi]")]
    OutOfDomain(f64),

    #[error("sampled symbol value {value:.6e} at grid index {index} is not positive")]
    NonPositiveSample { index: usize, value: f64 },

    #[error("circulant spectrum is numerically singular: min |psi| = {min_abs:.6e} below floor {floor:.6e}")]
    SingularCirculant { min_abs: f64, floor: f64 },

    #[error("dense pivot {pivot:.6e} at column {column} below floor {floor:.6e}")]
    SingularPivot { pivot: f64, floor: f64, column: usize },

    #[error("matrix order {n} exceeds dense cap {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("iteration budget exhausted after {matvecs} matvecs; best bracket [{lambda_min:.6e}, {lambda_max:.6e}]")]
    IterationBudget {
        matvecs: usize,
        lambda_min: f64,
        lambda_max: f64,
    },

    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("state length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("zero vector cannot be normalized into a state")]
    ZeroState,

    #[error("rotation bound m = {m:.6e} exceeds the smallest oracle value {min_value:.6e}")]
    MTooLarge { m: f64, min_value: f64 },

    #[error("oracle value {value:.6e} at index {index} is not positive after quantization")]
    NonPositiveOracle { index: usize, value: f64 },

    #[error("coefficient list is not Hermitian-symmetric: {0}")]
    NotHermitian(String),

    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short stable identifier for machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput => "empty_input",
            Error::NonFinite { .. } => "non_finite",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidSign(_) => "invalid_sign",
            Error::SymbolDomain(_) => "symbol_domain",
            Error::OutOfDomain(_) => "out_of_domain",
            Error::NonPositiveSample { .. } => "non_positive_sample",
            Error::SingularCirculant { .. } => "singular_circulant",
            Error::SingularPivot { .. } => "singular_pivot",
            Error::DenseCapExceeded { .. } => "dense_cap_exceeded",
            Error::IterationBudget { .. } => "iteration_budget",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NotPowerOfTwo(_) => "not_power_of_two",
            Error::ZeroState => "zero_state",
            Error::MTooLarge { .. } => "m_too_large",
            Error::NonPositiveOracle { .. } => "non_positive_oracle",
            Error::NotHermitian(_) => "not_hermitian",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

/// Validates that a vector is non-empty with finite entries.
pub(crate) fn check_vector(v: &[num_complex::Complex64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, z) in v.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn vector_validation_rejects_empty_and_non_finite() {
        assert_eq!(check_vector(&[]), Err(Error::EmptyInput));
        let v = vec![Complex64::new(1.0, 0.0), Complex64::new(f64::NAN, 0.0)];
        assert_eq!(check_vector(&v), Err(Error::NonFinite { index: 1 }));
        assert!(check_vector(&[Complex64::new(0.0, -2.0)]).is_ok());
    }

    #[test]
    fn codes_are_stable() {
        assert_eq!(Error::EmptyInput.code(), "empty_input");
        assert_eq!(
            Error::MTooLarge { m: 1.0, min_value: 0.5 }.code(),
            "m_too_large"
        );
    }
}
