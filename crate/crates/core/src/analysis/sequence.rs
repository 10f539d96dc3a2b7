use std::fmt::Write as _;

use super::{AnalysisError, Result};
use crate::cyclotomic::{CyclotomicField, CyclotomicInt};

/// A `q`-ary sequence stored as root exponents: position `i` is `ζ_q^{exps[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QarySequence {
    q: u32,
    exps: Vec<u32>,
}

impl QarySequence {
    pub fn new(q: u32, exps: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(AnalysisError::InvalidSequence(format!("alphabet q = {} must be at least 2", q)));
        }
        if exps.is_empty() {
            return Err(AnalysisError::InvalidSequence("empty sequence".into()));
        }
        if let Some((i, &e)) = exps.iter().enumerate().find(|(_, &e)| e >= q) {
            return Err(AnalysisError::InvalidSequence(format!(
                "exponent {} at position {} out of range for q = {}",
                e, i, q
            )));
        }
        Ok(QarySequence { q, exps })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
}

/// Aperiodic autocorrelation `C(u) = ∑_i a_{i+u} · conj(a_i)`.
pub fn autocorrelation(a: &QarySequence, u: usize) -> Result<CyclotomicInt> {
    let len = a.len();
    if u >= len {
        return Err(AnalysisError::ShiftOutOfRange { u, len });
    }
    let field = CyclotomicField::get(a.q)?;
    let q = a.q;
    let mut counts = vec![0i64; q as usize];
    for i in 0..len - u {
        counts[((a.exps[i + u] + q - a.exps[i]) % q) as usize] += 1;
    }
    Ok(CyclotomicInt::from_exponent_counts(&field, &counts)?)
}

pub(super) fn check_family(seqs: &[QarySequence]) -> Result<(u32, usize)> {
    let first = seqs.first().ok_or(AnalysisError::EmptySet)?;
    for s in &seqs[1..] {
        if s.q != first.q {
            return Err(AnalysisError::MixedAlphabets(first.q, s.q));
        }
        if s.len() != first.len() {
            return Err(AnalysisError::MixedLengths(first.len(), s.len()));
        }
    }
    Ok((first.q, first.len()))
}

/// First shift `u ≥ 1` whose summed autocorrelation is nonzero, with its value.
///
/// This is the shift-sum form of the complementarity test, kept apart from
/// the polynomial-product form in [`super::golay_check`].
pub fn shift_sum_defect(seqs: &[QarySequence]) -> Result<Option<(usize, CyclotomicInt)>> {
    let (_, len) = check_family(seqs)?;
    for u in 1..len {
        let mut total = autocorrelation(&seqs[0], u)?;
        for s in &seqs[1..] {
            total = total.try_add(&autocorrelation(s, u)?)?;
        }
        if !total.is_zero() {
            return Ok(Some((u, total)));
        }
    }
    Ok(None)
}

/// Parses one or more blocks of the form
///
/// ```text
/// q=4 L=8
/// 0 1 2 3 0 1 2 3
/// ```
pub fn parse_sequences_text(text: &str) -> Result<Vec<QarySequence>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        let mut q = None;
        let mut len = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| AnalysisError::Parse(format!("bad header field '{}'", field)))?;
            let value: usize = value
                .parse()
                .map_err(|_| AnalysisError::Parse(format!("bad number in '{}'", field)))?;
            match key {
                "q" => q = Some(value as u32),
                "L" => len = Some(value),
                _ => return Err(AnalysisError::Parse(format!("unknown header key '{}'", key))),
            }
        }
        let (q, len) = match (q, len) {
            (Some(q), Some(l)) => (q, l),
            _ => return Err(AnalysisError::Parse(format!("header '{}' needs q= and L=", header))),
        };
        let body = lines
            .next()
            .ok_or_else(|| AnalysisError::Parse("missing exponent line".into()))?;
        let exps = body
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| AnalysisError::Parse(format!("bad exponent '{}'", t))))
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != len {
            return Err(AnalysisError::Parse(format!("expected {} exponents, found {}", len, exps.len())));
        }
        out.push(QarySequence::new(q, exps)?);
    }
    if out.is_empty() {
        return Err(AnalysisError::Parse("no sequences found".into()));
    }
    Ok(out)
}

pub fn format_sequences_text(seqs: &[QarySequence]) -> String {
    let mut out = String::new();
    for s in seqs {
        let body: Vec<String> = s.exps.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "q={} L={}", s.q, s.len());
        let _ = writeln!(out, "{}", body.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn seq(q: u32, e: &[u32]) -> QarySequence {
        QarySequence::new(q, e.to_vec()).unwrap()
    }

    // direct complex evaluation, independent of the cyclotomic layer
    fn complex_autocorrelation(a: &QarySequence, u: usize) -> Complex64 {
        let z = |e: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / a.q() as f64);
        (0..a.len() - u).map(|i| z(a.exps()[i + u]) * z(a.exps()[i]).conj()).sum()
    }

    #[test]
    fn zero_shift_is_the_length() {
        let a = seq(4, &[0, 3, 1, 2, 2]);
        assert_eq!(autocorrelation(&a, 0).unwrap().as_integer(), Some(5));
    }

    #[test]
    fn binary_example() {
        // (1, 1, 1, -1) at u = 1: 1 + 1 - 1
        let a = seq(2, &[0, 0, 0, 1]);
        assert_eq!(autocorrelation(&a, 1).unwrap().as_integer(), Some(1));
        assert!((complex_autocorrelation(&a, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn last_shift_is_a_single_term() {
        let a = seq(8, &[3, 1, 4, 1, 5]);
        let field = CyclotomicField::get(8).unwrap();
        let expected = CyclotomicInt::from_root(&field, (5 + 8 - 3) % 8).unwrap();
        assert_eq!(autocorrelation(&a, 4).unwrap(), expected);
        assert!(matches!(autocorrelation(&a, 5), Err(AnalysisError::ShiftOutOfRange { u: 5, len: 5 })));
    }

    #[test]
    fn matches_complex_oracle() {
        let a = seq(6, &[0, 5, 2, 2, 1, 4, 3, 0, 1]);
        for u in 0..a.len() {
            let exact = autocorrelation(&a, u).unwrap().to_complex();
            assert!((exact - complex_autocorrelation(&a, u)).norm() < 1e-9);
        }
    }

    #[test]
    fn validation() {
        assert!(QarySequence::new(4, vec![]).is_err());
        assert!(QarySequence::new(4, vec![4]).is_err());
        assert!(QarySequence::new(1, vec![0]).is_err());
        assert!(matches!(
            shift_sum_defect(&[seq(2, &[0, 1]), seq(4, &[0, 1])]),
            Err(AnalysisError::MixedAlphabets(2, 4))
        ));
        assert!(matches!(
            shift_sum_defect(&[seq(2, &[0, 1]), seq(2, &[0, 1, 1])]),
            Err(AnalysisError::MixedLengths(2, 3))
        ));
        assert!(matches!(shift_sum_defect(&[]), Err(AnalysisError::EmptySet)));
    }

    #[test]
    fn text_format() {
        let text = "q=4 L=4\n0 1 2 3\n\nq=4 L=4\n3 3 0 1\n";
        let seqs = parse_sequences_text(text).unwrap();
        assert_eq!(seqs, vec![seq(4, &[0, 1, 2, 3]), seq(4, &[3, 3, 0, 1])]);
        assert_eq!(format_sequences_text(&seqs), "q=4 L=4\n0 1 2 3\nq=4 L=4\n3 3 0 1\n");
        assert!(parse_sequences_text("q=4 L=3\n0 1\n").is_err());
        assert!(parse_sequences_text("q=4\n0 1\n").is_err());
        assert!(parse_sequences_text("q=2 L=2\n0 2\n").is_err());
        assert!(parse_sequences_text("").is_err());
    }
}
