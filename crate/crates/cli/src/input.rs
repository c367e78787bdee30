use std::fmt;
use std::fs;
use std::path::Path;

use nestq::{Qubit, StateVector};

/// Inline amplitudes typed at four decimals are accepted when their squared norm is
/// this close to 1, then rescaled to unit length.
pub const INLINE_NORM_TOL: f64 = 1e-3;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    Verify(usize),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Verify(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Verify(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<nestq::Error> for CliError {
    fn from(e: nestq::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn parse_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("not a number: {:?}", s.trim())))
        })
        .collect()
}

/// Unit vector from typed values: rescaled when `renormalize` is set or when the
/// squared norm is within [`INLINE_NORM_TOL`] of 1.
pub fn unit_values(values: Vec<f64>, renormalize: bool) -> CliResult<Vec<f64>> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Validation("amplitudes must be finite".into()));
    }
    let sq: f64 = values.iter().map(|v| v * v).sum();
    if !renormalize && (sq - 1.0).abs() > INLINE_NORM_TOL {
        return Err(CliError::Validation(format!(
            "amplitudes have norm {:.6}, expected 1 (pass --renormalize to rescale)",
            sq.sqrt()
        )));
    }
    if sq == 0.0 {
        return Err(CliError::Validation("cannot renormalize a zero vector".into()));
    }
    let n = sq.sqrt();
    Ok(values.into_iter().map(|v| v / n).collect())
}

pub fn inline_state(text: &str, renormalize: bool) -> CliResult<StateVector> {
    let values = unit_values(parse_list(text)?, renormalize)?;
    Ok(StateVector::from_amplitudes(values, false)?)
}

pub fn qubit(a: f64, b: f64, renormalize: bool) -> CliResult<Qubit> {
    let v = unit_values(vec![a, b], renormalize)?;
    Ok(Qubit::new(v[0], v[1])?)
}

pub fn read_state(path: &Path) -> CliResult<StateVector> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    StateVector::from_json(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn four_decimal_input_is_rescaled() {
        let v = unit_values(vec![0.7071, 0.0, 0.0, 0.7071], false).unwrap();
        assert!((v[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn far_from_unit_is_rejected_unless_asked() {
        assert!(unit_values(vec![1.0, 1.0], false).is_err());
        assert!(unit_values(vec![1.0, 1.0], true).is_ok());
        assert!(unit_values(vec![0.0, 0.0], true).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_list("1,x").is_err());
        assert_eq!(parse_list(" 1, 0 ").unwrap(), vec![1.0, 0.0]);
    }
}
