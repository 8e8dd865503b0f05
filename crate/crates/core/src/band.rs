use crate::error::{Error, Result};

/// Outcome of matching a numerically diagonalized spectrum against its
/// analytic band values.
#[derive(Debug, Clone, PartialEq)]
pub struct BandReport {
    pub sites: usize,
    pub max_mismatch: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Sorts both sequences and returns the largest pairwise difference.
pub fn sorted_mismatch(mut numeric: Vec<f64>, mut analytic: Vec<f64>) -> Result<f64> {
    if numeric.len() != analytic.len() {
        return Err(Error::DimensionMismatch {
            expected: analytic.len(),
            actual: numeric.len(),
        });
    }
    numeric.sort_by(f64::total_cmp);
    analytic.sort_by(f64::total_cmp);
    Ok(numeric
        .iter()
        .zip(&analytic)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

impl BandReport {
    pub fn new(sites: usize, max_mismatch: f64, tolerance: f64) -> Self {
        Self {
            sites,
            max_mismatch,
            tolerance,
            passed: max_mismatch <= tolerance,
        }
    }
}
