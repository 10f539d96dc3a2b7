//! JSON and text file formats.
//!
//! All writers emit keys in a fixed order and end with a newline, so equal
//! inputs give byte-identical files.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{AnalysisError, QarySequence};
use crate::construction::{ConstructionError, ConstructionSpec, ReadOrder, UnitCoeffPolyMatrix};
use crate::hadamard::{verify_butson, ButsonMatrix, HadamardError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("inconsistent file: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// `{"q": .., "N": .., "exps": [[..], ..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub q: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub exps: Vec<Vec<u32>>,
}

impl MatrixFile {
    pub fn from_matrix(h: &ButsonMatrix) -> Self {
        MatrixFile {
            q: h.q(),
            n: h.dim(),
            exps: h.rows(),
        }
    }

    pub fn to_matrix(&self) -> Result<ButsonMatrix> {
        if self.exps.len() != self.n {
            return Err(FormatError::Inconsistent(format!(
                "N = {} but {} rows given",
                self.n,
                self.exps.len()
            )));
        }
        Ok(verify_butson(&self.exps, self.q)?)
    }
}

/// `{"q", "N", "n", "perm", "hadamards"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub q: u32,
    #[serde(rename = "N")]
    pub dim: usize,
    pub n: usize,
    pub perm: Vec<usize>,
    pub hadamards: Vec<MatrixFile>,
}

impl SpecFile {
    pub fn from_spec(spec: &ConstructionSpec) -> Self {
        SpecFile {
            q: spec.q(),
            dim: spec.dim(),
            n: spec.depth(),
            perm: spec.perm().to_vec(),
            hadamards: spec.hadamards().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<ConstructionSpec> {
        let hadamards = self
            .hadamards
            .iter()
            .map(MatrixFile::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        let spec = ConstructionSpec::new(self.perm.clone(), hadamards)?;
        if (spec.q(), spec.dim(), spec.depth()) != (self.q, self.dim, self.n) {
            return Err(FormatError::Inconsistent(format!(
                "header says q = {}, N = {}, n = {} but matrices give q = {}, N = {}, n = {}",
                self.q,
                self.dim,
                self.n,
                spec.q(),
                spec.dim(),
                spec.depth()
            )));
        }
        Ok(spec)
    }
}

/// Golay set file. `rows` is the set checked by `verify`; construction output
/// adds every row and column set, the full matrix (entry `[i][j]` is the
/// coefficient list of `M_ij(z)` in increasing power) and the source spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub q: u32,
    #[serde(rename = "N")]
    pub size: usize,
    #[serde(rename = "L")]
    pub len: usize,
    pub rows: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SpecFile>,
}

impl SetFile {
    pub fn from_sequences(seqs: &[QarySequence]) -> Result<Self> {
        let first = seqs.first().ok_or(AnalysisError::EmptySet)?;
        Ok(SetFile {
            q: first.q(),
            size: seqs.len(),
            len: first.len(),
            rows: seqs.iter().map(|s| s.exps().to_vec()).collect(),
            order: None,
            sets: None,
            matrix: None,
            source: None,
        })
    }

    /// Row sets first, then column sets, each read with `order`.
    pub fn from_construction(spec: &ConstructionSpec, m: &UnitCoeffPolyMatrix, order: ReadOrder) -> Self {
        let n = m.dim();
        let row_sets = (0..n).map(|i| (0..n).map(|j| m.sequence(i, j, order)).collect::<Vec<_>>());
        let col_sets = (0..n).map(|j| (0..n).map(|i| m.sequence(i, j, order)).collect::<Vec<_>>());
        let sets: Vec<Vec<Vec<u32>>> = row_sets.chain(col_sets).collect();
        SetFile {
            q: m.q(),
            size: n,
            len: m.len(),
            rows: sets[0].clone(),
            order: Some(order.name().to_string()),
            sets: Some(sets),
            matrix: Some((0..n).map(|i| (0..n).map(|j| m.entry(i, j).to_vec()).collect()).collect()),
            source: Some(SpecFile::from_spec(spec)),
        }
    }

    fn to_set(&self, rows: &[Vec<u32>]) -> Result<Vec<QarySequence>> {
        if rows.len() != self.size {
            return Err(FormatError::Inconsistent(format!("N = {} but a set has {} sequences", self.size, rows.len())));
        }
        rows.iter()
            .map(|r| {
                if r.len() != self.len {
                    return Err(FormatError::Inconsistent(format!("L = {} but a sequence has length {}", self.len, r.len())));
                }
                Ok(QarySequence::new(self.q, r.clone())?)
            })
            .collect()
    }

    /// The `rows` set.
    pub fn sequences(&self) -> Result<Vec<QarySequence>> {
        self.to_set(&self.rows)
    }

    /// Every set in the file: `sets` when present, otherwise just `rows`.
    pub fn all_sets(&self) -> Result<Vec<Vec<QarySequence>>> {
        match &self.sets {
            Some(sets) => sets.iter().map(|s| self.to_set(s)).collect(),
            None => Ok(vec![self.sequences()?]),
        }
    }

    /// Every distinct sequence in the file in first-seen order.
    pub fn distinct_sequences(&self) -> Result<Vec<QarySequence>> {
        let mut out: Vec<QarySequence> = Vec::new();
        for s in self.all_sets()?.into_iter().flatten() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(out)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("file types serialize");
    s.push('\n');
    s
}

pub fn parse_matrix(text: &str) -> Result<ButsonMatrix> {
    serde_json::from_str::<MatrixFile>(text)?.to_matrix()
}

pub fn parse_spec(text: &str) -> Result<ConstructionSpec> {
    serde_json::from_str::<SpecFile>(text)?.to_spec()
}

pub fn parse_set_file(text: &str) -> Result<SetFile> {
    let file: SetFile = serde_json::from_str(text)?;
    file.all_sets()?;
    Ok(file)
}
