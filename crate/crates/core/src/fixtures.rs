//! Built-in data shipped with the crate.

use crate::analysis::GeneralizedBooleanFunction;
use crate::construction::{ConstructionSpec, ReadOrder};
use crate::formats::{parse_matrix, parse_spec, FormatError};
use crate::hadamard::ButsonMatrix;

pub const EXAMPLE7_SPEC: &str = include_str!("../fixtures/example7_spec.json");
pub const EXAMPLE7_ANF: &str = include_str!("../fixtures/example7_anf.txt");
pub const H44_REP1: &str = include_str!("../fixtures/h44_rep1.json");
pub const H44_REP2: &str = include_str!("../fixtures/h44_rep2.json");
pub const H24_REP: &str = include_str!("../fixtures/h24_rep.json");

/// The reference table lists sequences highest power first.
pub const EXAMPLE7_ORDER: ReadOrder = ReadOrder::Descending;

pub fn example7_spec() -> ConstructionSpec {
    parse_spec(EXAMPLE7_SPEC).expect("bundled spec is valid")
}

/// The two inequivalent quaternary classes of order 4.
pub fn h44_representatives() -> [ButsonMatrix; 2] {
    [
        parse_matrix(H44_REP1).expect("bundled matrix is valid"),
        parse_matrix(H44_REP2).expect("bundled matrix is valid"),
    ]
}

pub fn h24_representative() -> ButsonMatrix {
    parse_matrix(H24_REP).expect("bundled matrix is valid")
}

/// One `(row, col, f)` per line of the form `r s: f`.
pub fn parse_anf_table(q: u32, vars: usize, text: &str) -> Result<Vec<(usize, usize, GeneralizedBooleanFunction)>, FormatError> {
    let bad = |line: &str| FormatError::Inconsistent(format!("bad ANF table line '{}'", line));
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let (head, body) = line.split_once(':').ok_or_else(|| bad(line))?;
            let idx: Vec<usize> = head
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(line)))
                .collect::<Result<_, _>>()?;
            match idx[..] {
                [r, s] => Ok((r, s, GeneralizedBooleanFunction::parse(q, vars, body)?)),
                _ => Err(bad(line)),
            }
        })
        .collect()
}

pub fn example7_reference_anf() -> Vec<(usize, usize, GeneralizedBooleanFunction)> {
    parse_anf_table(4, 4, EXAMPLE7_ANF).expect("bundled table parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_loads() {
        let spec = example7_spec();
        assert_eq!((spec.q(), spec.dim(), spec.depth(), spec.length()), (4, 4, 2, 16));
        assert_eq!(spec.perm(), &[1, 0]);
        let table = example7_reference_anf();
        assert_eq!(table.len(), 16);
        assert!(table.iter().all(|(_, _, f)| f.degree() == 3));
        assert_eq!(h44_representatives()[1].q(), 4);
        assert_eq!(h24_representative().dim(), 4);
    }

    #[test]
    fn table_parser_rejects_bad_lines() {
        assert!(parse_anf_table(4, 4, "0: x_0").is_err());
        assert!(parse_anf_table(4, 4, "0 0 x_0").is_err());
        assert!(parse_anf_table(4, 4, "0 0: x_9").is_err());
    }
}
