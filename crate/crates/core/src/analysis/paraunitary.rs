use crate::construction::UnitCoeffPolyMatrix;
use crate::cyclotomic::{CyclotomicField, CyclotomicInt};

use super::{AnalysisError, Result};

/// First entry where `M(z) · M(z^{-1})^†` differs from `N·L·I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaunitaryDefect {
    pub row: usize,
    pub col: usize,
    /// Power of `z`, in `-(L-1)..=L-1`.
    pub lag: isize,
    pub value: String,
    pub expected: String,
}

/// Coefficients of entry `(i, k)` of `M(z) · M(z^{-1})^†`, indexed by
/// `lag + L - 1` for lags `-(L-1)..=L-1`.
pub fn paraunitary_product_entry(m: &UnitCoeffPolyMatrix, i: usize, k: usize) -> Result<Vec<CyclotomicInt>> {
    let (q, n, len) = (m.q() as usize, m.dim(), m.len());
    if i >= n || k >= n {
        return Err(AnalysisError::InvalidSequence(format!("entry ({}, {}) outside {}x{}", i, k, n, n)));
    }
    let field = CyclotomicField::get(m.q())?;
    let lags = 2 * len - 1;
    let mut counts = vec![0i64; lags * q];
    for j in 0..n {
        let (a, b) = (m.entry(i, j), m.entry(k, j));
        for (s, &ea) in a.iter().enumerate() {
            for (t, &eb) in b.iter().enumerate() {
                let lag = s + len - 1 - t;
                counts[lag * q + (ea as usize + q - eb as usize) % q] += 1;
            }
        }
    }
    counts
        .chunks(q)
        .map(|c| Ok(CyclotomicInt::from_exponent_counts(&field, c)?))
        .collect()
}

/// Scans entries in row-major order and lags in increasing order.
pub fn paraunitary_defect(m: &UnitCoeffPolyMatrix) -> Result<Option<ParaunitaryDefect>> {
    let (n, len) = (m.dim(), m.len());
    let constant = (n * len) as i64;
    for i in 0..n {
        for k in 0..n {
            for (lag, value) in paraunitary_product_entry(m, i, k)?.into_iter().enumerate() {
                let expected = if i == k && lag == len - 1 { constant } else { 0 };
                if value.as_integer() != Some(expected) {
                    return Ok(Some(ParaunitaryDefect {
                        row: i,
                        col: k,
                        lag: lag as isize - (len as isize - 1),
                        value: value.to_string(),
                        expected: expected.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn paraunitary_check(m: &UnitCoeffPolyMatrix) -> Result<bool> {
    Ok(paraunitary_defect(m)?.is_none())
}
