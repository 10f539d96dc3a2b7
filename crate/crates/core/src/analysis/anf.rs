//! Generalized Boolean functions `f: {0,1}^v → Z_q` in algebraic normal form.
//!
//! A sequence of length `2^v` is read as the truth table of `f`, with
//! position `m` assigned `x_0 = ` most significant bit of `m`, down to
//! `x_{v-1} = ` least significant bit. A monomial is stored as a mask whose
//! bit `k` marks the presence of `x_k`.

use std::collections::BTreeMap;
use std::fmt;

use super::{AnalysisError, QarySequence, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedBooleanFunction {
    q: u32,
    vars: usize,
    terms: BTreeMap<u32, u32>,
}

impl GeneralizedBooleanFunction {
    /// Builds a function from `(mask, coefficient)` pairs. Coefficients are
    /// reduced mod `q` and repeated masks are summed.
    pub fn from_terms(q: u32, vars: usize, terms: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if q < 2 {
            return Err(AnalysisError::InvalidSequence(format!("alphabet q = {} must be at least 2", q)));
        }
        if vars > 31 {
            return Err(AnalysisError::InvalidSequence(format!("{} variables is too many", vars)));
        }
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (mask, c) in terms {
            if mask >> vars != 0 {
                return Err(AnalysisError::InvalidSequence(format!(
                    "monomial mask {:#b} uses a variable beyond x_{}",
                    mask,
                    vars.saturating_sub(1)
                )));
            }
            let slot = acc.entry(mask).or_insert(0);
            *slot = ((*slot as u64 + c as u64) % q as u64) as u32;
        }
        acc.retain(|_, c| *c != 0);
        Ok(GeneralizedBooleanFunction { q, vars, terms: acc })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u32) -> u32 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    /// Value at the assignment encoded by position `m` of the truth table.
    pub fn evaluate(&self, m: usize) -> u32 {
        let x = self.assignment(m);
        self.terms
            .iter()
            .filter(|(&mask, _)| mask & x == mask)
            .fold(0u64, |s, (_, &c)| (s + c as u64) % self.q as u64) as u32
    }

    pub fn truth_table(&self) -> QarySequence {
        let exps = (0..1usize << self.vars).map(|m| self.evaluate(m)).collect();
        QarySequence::new(self.q, exps).expect("truth table values lie in Z_q")
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    fn assignment(&self, m: usize) -> u32 {
        (0..self.vars).fold(0, |x, k| x | ((((m >> (self.vars - 1 - k)) & 1) as u32) << k))
    }

    /// Parses text such as `3x_0 + x_1 + 2x_0x_1 + 1` or
    /// `3*x_0 + x_1 + 2*x_0*x_1 + 1`. A leading `-` negates a term mod `q`.
    pub fn parse(q: u32, vars: usize, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AnalysisError::Parse("empty expression".into()));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (mask, c) = parse_term(&rest[..end], vars)?;
            let c = (c % q as u64) as u32;
            terms.push((mask, if negative { (q - c) % q } else { c }));
            if end == rest.len() {
                break;
            }
            negative = rest.as_bytes()[end] == b'-';
            rest = &rest[end + 1..];
        }
        Self::from_terms(q, vars, terms)
    }
}

fn parse_term(term: &str, vars: usize) -> Result<(u32, u64)> {
    let bad = || AnalysisError::Parse(format!("cannot parse term '{}'", term));
    if term.is_empty() {
        return Err(bad());
    }
    let digits = term.bytes().take_while(u8::is_ascii_digit).count();
    let coeff: u64 = if digits == 0 { 1 } else { term[..digits].parse().map_err(|_| bad())? };
    let mut mask = 0u32;
    for factor in term[digits..].split(['*', 'x']).filter(|f| !f.is_empty()) {
        let index: usize = factor.strip_prefix('_').unwrap_or(factor).parse().map_err(|_| bad())?;
        if index >= vars {
            return Err(AnalysisError::Parse(format!(
                "variable x_{} out of range for {} variables",
                index, vars
            )));
        }
        mask |= 1 << index;
    }
    let vars_named = term[digits..].matches('x').count();
    if vars_named != mask.count_ones() as usize {
        return Err(AnalysisError::Parse(format!("repeated or malformed variable in '{}'", term)));
    }
    Ok((mask, coeff))
}

/// Degree-major order with lexicographic variable lists inside a degree and
/// the constant term last.
fn display_key(mask: u32) -> (bool, u32, Vec<u32>) {
    let indices = (0..32).filter(|k| mask >> k & 1 == 1).collect();
    (mask == 0, mask.count_ones(), indices)
}

impl fmt::Display for GeneralizedBooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut masks: Vec<u32> = self.terms.keys().copied().collect();
        masks.sort_by_key(|&m| display_key(m));
        for (n, mask) in masks.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let c = self.terms[&mask];
            let vars: Vec<String> = (0..32).filter(|k| mask >> k & 1 == 1).map(|k| format!("x_{}", k)).collect();
            match (c, vars.is_empty()) {
                (_, true) => write!(f, "{}", c)?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                _ => write!(f, "{}*{}", c, vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Algebraic normal form of the truth table `a` (length `2^v`), computed by
/// the Möbius transform over `Z_q`.
pub fn anf(a: &QarySequence) -> Result<GeneralizedBooleanFunction> {
    let len = a.len();
    if !len.is_power_of_two() {
        return Err(AnalysisError::LengthNotPowerOfTwo(len));
    }
    let vars = len.trailing_zeros() as usize;
    let q = a.q();
    let shell = GeneralizedBooleanFunction {
        q,
        vars,
        terms: BTreeMap::new(),
    };
    let mut g = vec![0u32; len];
    for (m, &e) in a.exps().iter().enumerate() {
        g[shell.assignment(m) as usize] = e;
    }
    for k in 0..vars {
        let bit = 1usize << k;
        for s in 0..len {
            if s & bit != 0 {
                g[s] = (g[s] + q - g[s ^ bit]) % q;
            }
        }
    }
    GeneralizedBooleanFunction::from_terms(q, vars, g.into_iter().enumerate().map(|(m, c)| (m as u32, c)))
}

/// Algebraic degree of the truth table `a`.
pub fn degree(a: &QarySequence) -> Result<u32> {
    Ok(anf(a)?.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(q: u32, e: &[u32]) -> QarySequence {
        QarySequence::new(q, e.to_vec()).unwrap()
    }

    #[test]
    fn msb_is_x0() {
        // x_0 is 1 on the second half of the table
        let f = anf(&seq(2, &[0, 0, 1, 1])).unwrap();
        assert_eq!(f.to_string(), "x_0");
        let f = anf(&seq(2, &[0, 1, 0, 1])).unwrap();
        assert_eq!(f.to_string(), "x_1");
    }

    #[test]
    fn hand_worked_quaternary_example() {
        // f = 3x_0 + x_1 + 2x_0x_1 + 1 on (x_0, x_1) = 00, 01, 10, 11
        let f = anf(&seq(4, &[1, 2, 0, 3])).unwrap();
        assert_eq!(f.to_string(), "3*x_0 + x_1 + 2*x_0*x_1 + 1");
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn display_orders_by_degree_then_variables() {
        let f = GeneralizedBooleanFunction::from_terms(4, 4, [(0b0000, 2), (0b1010, 1), (0b0011, 3), (0b0100, 1), (0b1011, 2)])
            .unwrap();
        assert_eq!(f.to_string(), "x_2 + 3*x_0*x_1 + x_1*x_3 + 2*x_0*x_1*x_3 + 2");
        assert_eq!(GeneralizedBooleanFunction::from_terms(4, 2, []).unwrap().to_string(), "0");
    }

    #[test]
    fn parses_both_spellings() {
        let a = GeneralizedBooleanFunction::parse(4, 4, "3x_0 + x_1 + 2x_0x_1 + 2x_1x_3 + 1").unwrap();
        let b = GeneralizedBooleanFunction::parse(4, 4, "3*x_0 + x_1 + 2*x_0*x_1 + 2*x_1*x_3 + 1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coefficient(0b1010), 2);
        assert_eq!(GeneralizedBooleanFunction::parse(4, 2, "x_0 - x_1").unwrap().coefficient(0b10), 3);
        assert_eq!(GeneralizedBooleanFunction::parse(4, 2, "2x_0 + 2x_0").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x_4", "x_0x_0", "3 +", "y_1", "2x_"] {
            assert!(GeneralizedBooleanFunction::parse(4, 4, bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn non_power_of_two_length_rejected() {
        assert_eq!(anf(&seq(2, &[0, 1, 1])), Err(AnalysisError::LengthNotPowerOfTwo(3)));
    }

    fn table() -> impl Strategy<Value = QarySequence> {
        (prop::sample::select(vec![2u32, 3, 4, 8]), 0usize..=6).prop_flat_map(|(q, v)| {
            prop::collection::vec(0..q, 1 << v).prop_map(move |e| QarySequence::new(q, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn truth_table_round_trip(a in table()) {
            let f = anf(&a).unwrap();
            prop_assert_eq!(f.truth_table(), a.clone());
            prop_assert!(f.degree() as usize <= f.vars());
            let reparsed = GeneralizedBooleanFunction::parse(f.q(), f.vars(), &f.to_string()).unwrap();
            prop_assert_eq!(reparsed, f);
        }
    }
}
