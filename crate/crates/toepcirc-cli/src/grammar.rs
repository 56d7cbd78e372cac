//! Argument grammars shared by every subcommand: order lists, right-hand
//! sides, and the combined help text that embeds the symbol grammar verbatim.

use std::fs;
use std::path::PathBuf;

use toepcirc::analysis::RhsKind;
use toepcirc::{Complex64, Error, GeneratingFunction, SYMBOL_GRAMMAR};

/// Grammar for `--rhs`, shown verbatim in every subcommand's help.
pub const RHS_GRAMMAR: &str = "\
RHS GRAMMAR
  basis:I            standard basis vector e_I        (requires I < n)
  random:SEED        unit-norm complex normal vector, reproducible from SEED
  banded:L           2L+1 entries 1/sqrt(2L+1) centred at floor(n/2)
                     (requires 2L+1 <= n)
  file:PATH          one complex entry per line as `re im`; '#' comments allowed
                     (solve and emulate only; length must equal n)";

/// Grammar for `--n-list`, shown verbatim in every subcommand's help.
pub const N_LIST_GRAMMAR: &str = "\
N-LIST GRAMMAR
  A:B:dyadic         powers of two from A to B inclusive (A, B powers of two)
  A:B:STEP           A, A+STEP, A+2*STEP, ... up to B inclusive";

/// Combined help appendix; one source of truth for all subcommands.
pub fn help_text() -> String {
    format!("{SYMBOL_GRAMMAR}\n\n{RHS_GRAMMAR}\n\n{N_LIST_GRAMMAR}")
}

/// A parsed `--rhs` value: either a generator family or a file of entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhsSpec {
    Kind(RhsKind),
    File(PathBuf),
}

impl RhsSpec {
    /// Label recorded in reports; mirrors the argument spelling.
    pub fn label(&self) -> String {
        match self {
            RhsSpec::Kind(kind) => kind.label(),
            RhsSpec::File(path) => format!("file:{}", path.display()),
        }
    }
}

/// Parses the `--rhs` grammar. Form errors are usage errors; range checks
/// against a concrete order happen later, inside the core builders.
pub fn parse_rhs(spec: &str) -> Result<RhsSpec, String> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("rhs spec `{spec}` must look like kind:args"))?;
    match kind {
        "basis" => rest
            .parse::<usize>()
            .map(|i| RhsSpec::Kind(RhsKind::Basis(i)))
            .map_err(|_| format!("rhs spec `{spec}`: basis index must be an integer")),
        "random" => rest
            .parse::<u64>()
            .map(|seed| RhsSpec::Kind(RhsKind::RandomFixedSeed(seed)))
            .map_err(|_| format!("rhs spec `{spec}`: seed must be a 64-bit integer")),
        "banded" => rest
            .parse::<usize>()
            .map(|half_width| RhsSpec::Kind(RhsKind::Banded(half_width)))
            .map_err(|_| format!("rhs spec `{spec}`: half-width must be an integer")),
        "file" if !rest.is_empty() => Ok(RhsSpec::File(PathBuf::from(rest))),
        _ => Err(format!(
            "unknown rhs kind `{kind}`; expected basis:I, random:SEED, banded:L, or file:PATH"
        )),
    }
}

/// Parses the `--n-list` grammar into an ascending list of orders.
pub fn parse_n_list(spec: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!(
            "n-list `{spec}` must look like A:B:dyadic or A:B:STEP"
        ));
    }
    let lo: usize = parts[0]
        .parse()
        .map_err(|_| format!("n-list `{spec}`: `{}` is not an integer", parts[0]))?;
    let hi: usize = parts[1]
        .parse()
        .map_err(|_| format!("n-list `{spec}`: `{}` is not an integer", parts[1]))?;
    if lo == 0 || hi < lo {
        return Err(format!("n-list `{spec}` needs 0 < A <= B"));
    }
    if parts[2] == "dyadic" {
        if !lo.is_power_of_two() || !hi.is_power_of_two() {
            return Err(format!(
                "n-list `{spec}`: dyadic endpoints must be powers of two"
            ));
        }
        let mut out = Vec::new();
        let mut n = lo;
        while n <= hi {
            out.push(n);
            n *= 2;
        }
        Ok(out)
    } else {
        let step: usize = parts[2]
            .parse()
            .map_err(|_| format!("n-list `{spec}`: step `{}` is not an integer", parts[2]))?;
        if step == 0 {
            return Err(format!("n-list `{spec}`: step must be positive"));
        }
        Ok((lo..=hi).step_by(step).collect())
    }
}

/// Reads a right-hand side from a file: one `re im` pair per line, blank
/// lines and `#` comments skipped.
pub fn load_rhs_file(path: &PathBuf) -> Result<Vec<Complex64>, Error> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::InvalidArgument(format!("cannot read rhs file {}: {e}", path.display()))
    })?;
    let mut out = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let re = fields.next().and_then(|t| t.parse::<f64>().ok());
        let im = fields.next().and_then(|t| t.parse::<f64>().ok());
        match (re, im, fields.next()) {
            (Some(re), Some(im), None) => out.push(Complex64::new(re, im)),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "rhs file {} line {}: expected `re im`, got `{raw}`",
                    path.display(),
                    line_no + 1
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "rhs file {} contains no entries",
            path.display()
        )));
    }
    Ok(out)
}

/// Parses `--symbol`; failures surface as domain errors because the grammar
/// and the positivity requirements both live in the core library.
pub fn parse_symbol(spec: &str) -> Result<GeneratingFunction, Error> {
    spec.parse()
}
