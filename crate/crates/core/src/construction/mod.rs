//! Paraunitary product construction of Golay complementary sets.
//!
//! For Hadamard matrices `H_0, …, H_n` over `(q, N)` and a permutation `π` of
//! `{0, …, n-1}` the polynomial matrix
//!
//! ```text
//! M(z) = H_0 · D(z)^{N^π(0)} · H_1 · D(z)^{N^π(1)} · … · D(z)^{N^π(n-1)} · H_n
//! D(z) = diag(1, z, …, z^{N-1})
//! ```
//!
//! has every entry of degree `N^n - 1` with unimodular coefficients, and every
//! row and column of it is a Golay set of size `N`.
//!
//! [`construct`] forms the product with exact arithmetic; [`coefficient_direct`]
//! reads a single coefficient matrix off the base-`N` digits of the power `m`.

mod lemma;

pub use lemma::{expansion_sides, lemma3_expansion_check, ExpansionSides};

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::cyclotomic::{CyclotomicError, CyclotomicField, CyclotomicInt};
use crate::hadamard::{
    apply_equivalence, representatives, verify_butson, ButsonMatrix, EquivalenceWitness, HadamardError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid construction spec: {0}")]
    InvalidSpec(String),
    #[error("coefficient of z^{power} in entry ({row}, {col}) is {value}, not a single root of unity")]
    NonUnitCoefficient {
        row: usize,
        col: usize,
        power: usize,
        value: String,
    },
    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: usize,
        found: usize,
    },
    #[error("coefficient index {m} out of range for length {len}")]
    IndexOutOfRange { m: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported alphabet q = {q}: -1 is not a q-th root of unity")]
    UnsupportedAlphabet { q: u32 },
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// Full input of the construction: `n + 1` Hadamard matrices and `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    q: u32,
    dim: usize,
    perm: Vec<usize>,
    hadamards: Vec<ButsonMatrix>,
}

impl ConstructionSpec {
    /// `perm` has length `n`; `hadamards` must hold `n + 1` matrices sharing `(q, N)`.
    pub fn new(perm: Vec<usize>, hadamards: Vec<ButsonMatrix>) -> Result<Self> {
        let n = perm.len();
        if hadamards.len() != n + 1 {
            return Err(ConstructionError::InvalidSpec(format!(
                "expected {} Hadamard matrices for n = {}, got {}",
                n + 1,
                n,
                hadamards.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(ConstructionError::InvalidSpec(format!(
                    "{:?} is not a permutation of 0..{}",
                    perm, n
                )));
            }
        }
        let (q, dim) = (hadamards[0].q(), hadamards[0].dim());
        if dim < 2 {
            return Err(ConstructionError::InvalidSpec(format!("N = {} must be at least 2", dim)));
        }
        if let Some((t, h)) = hadamards.iter().enumerate().find(|(_, h)| h.q() != q || h.dim() != dim) {
            return Err(ConstructionError::InvalidSpec(format!(
                "matrix {} is H({}, {}), expected H({}, {})",
                t,
                h.q(),
                h.dim(),
                q,
                dim
            )));
        }
        let len_ok = (dim as u128)
            .checked_pow(n as u32)
            .is_some_and(|l| l <= usize::MAX as u128 / (dim * dim) as u128);
        if !len_ok {
            return Err(ConstructionError::InvalidSpec(format!("N^n overflows for N = {}, n = {}", dim, n)));
        }
        Ok(ConstructionSpec {
            q,
            dim,
            perm,
            hadamards,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Set size `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of delay factors `n`.
    pub fn depth(&self) -> usize {
        self.perm.len()
    }

    /// Sequence length `N^n`.
    pub fn length(&self) -> usize {
        self.dim.pow(self.perm.len() as u32)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn hadamards(&self) -> &[ButsonMatrix] {
        &self.hadamards
    }

    /// Non-fatal remarks about the spec.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.dim.is_power_of_two() {
            w.push(format!(
                "N = {} is not a power of 2; the construction is only established for powers of 2",
                self.dim
            ));
        }
        w
    }
}

/// A random spec whose matrices are random equivalence transforms of the
/// built-in representatives of `H(q, N)`.
pub fn random_spec<R: Rng + ?Sized>(q: u32, dim: usize, n: usize, rng: &mut R) -> Result<ConstructionSpec> {
    let reps = representatives(q, dim)?;
    let hadamards = (0..=n)
        .map(|_| {
            let base = reps.choose(rng).expect("representatives are non-empty");
            apply_equivalence(base, &EquivalenceWitness::random(dim, q, rng))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    ConstructionSpec::new(perm, hadamards)
}

/// Base-`N` digits `d_0, …, d_{n-1}` of `m`, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitDecomposition {
    m: usize,
    base: usize,
    digits: Vec<usize>,
}

impl DigitDecomposition {
    pub fn new(m: usize, base: usize, n: usize) -> Result<Self> {
        let len = base.pow(n as u32);
        if m >= len {
            return Err(ConstructionError::IndexOutOfRange { m, len });
        }
        let mut rest = m;
        let digits = (0..n)
            .map(|_| {
                let d = rest % base;
                rest /= base;
                d
            })
            .collect();
        Ok(DigitDecomposition { m, base, digits })
    }

    pub fn value(&self) -> usize {
        self.m
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn reconstruct(&self) -> usize {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }

    /// Binary digit `k` of `m`.
    pub fn bit(&self, k: usize) -> usize {
        (self.m >> k) & 1
    }
}

/// How a coefficient array is read as a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReadOrder {
    /// Position `m` is the coefficient of `z^m`.
    #[default]
    Ascending,
    /// Position `m` is the coefficient of `z^{L-1-m}` (highest power first).
    Descending,
}

impl ReadOrder {
    pub fn name(self) -> &'static str {
        match self {
            ReadOrder::Ascending => "ascending",
            ReadOrder::Descending => "descending",
        }
    }
}

impl std::str::FromStr for ReadOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ascending" => Ok(ReadOrder::Ascending),
            "descending" => Ok(ReadOrder::Descending),
            other => Err(format!("unknown read order '{}'", other)),
        }
    }
}

/// `N × N` polynomial matrix whose coefficients are all single `q`-th roots,
/// stored as exponents. Entry `(i, j)` is a contiguous run of `L` exponents,
/// the `m`-th being the exponent of the coefficient of `z^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCoeffPolyMatrix {
    q: u32,
    dim: usize,
    len: usize,
    depth: usize,
    exps: Vec<u32>,
}

impl UnitCoeffPolyMatrix {
    /// Packs an exponent array; `entries[i][j]` is the coefficient list of entry `(i, j)`.
    pub fn from_entries(q: u32, depth: usize, entries: &[Vec<Vec<u32>>]) -> Result<Self> {
        let dim = entries.len();
        let len = entries
            .first()
            .and_then(|r| r.first())
            .map(|e| e.len())
            .ok_or_else(|| ConstructionError::DimensionMismatch("empty matrix".into()))?;
        let mut exps = Vec::with_capacity(dim * dim * len);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != dim {
                return Err(ConstructionError::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.len() != len {
                    return Err(ConstructionError::DimensionMismatch(format!(
                        "entry ({}, {}) has length {}, expected {}",
                        i,
                        j,
                        e.len(),
                        len
                    )));
                }
                if let Some((m, &x)) = e.iter().enumerate().find(|(_, &x)| x >= q) {
                    return Err(ConstructionError::NonUnitCoefficient {
                        row: i,
                        col: j,
                        power: m,
                        value: format!("exponent {} (q = {})", x, q),
                    });
                }
                exps.extend_from_slice(e);
            }
        }
        Ok(UnitCoeffPolyMatrix {
            q,
            dim,
            len,
            depth,
            exps,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sequence length `L`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of delay factors used to build the matrix.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, i: usize, j: usize, m: usize) -> u32 {
        self.exps[(i * self.dim + j) * self.len + m]
    }

    /// Coefficient exponents of entry `(i, j)` in ascending powers of `z`.
    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim + j) * self.len;
        &self.exps[start..start + self.len]
    }

    /// Entry `(i, j)` read as a sequence.
    pub fn sequence(&self, i: usize, j: usize, order: ReadOrder) -> Vec<u32> {
        let e = self.entry(i, j);
        match order {
            ReadOrder::Ascending => e.to_vec(),
            ReadOrder::Descending => e.iter().rev().copied().collect(),
        }
    }

    /// The coefficient matrix of `z^m`.
    pub fn coefficient_matrix(&self, m: usize) -> Vec<Vec<u32>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j, m)).collect())
            .collect()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Copy with one coefficient replaced; used for mutation tests.
    pub fn with_exponent(&self, i: usize, j: usize, m: usize, e: u32) -> Self {
        let mut out = self.clone();
        out.exps[(i * self.dim + j) * self.len + m] = e % self.q;
        out
    }
}

impl fmt::Display for UnitCoeffPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| self.entry(i, j).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Dense polynomial matrix with exact coefficients, used for the running product.
struct PolyMatrix {
    dim: usize,
    len: usize,
    entries: Vec<Vec<CyclotomicInt>>,
}

impl PolyMatrix {
    fn constant(field: &Arc<CyclotomicField>, h: &ButsonMatrix) -> Result<Self> {
        let dim = h.dim();
        let entries = (0..dim * dim)
            .map(|k| Ok(vec![CyclotomicInt::from_root(field, h.get(k / dim, k % dim))?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { dim, len: 1, entries })
    }

    /// `self · D(z)^shift · h`.
    fn delay_then_mul(&self, field: &Arc<CyclotomicField>, shift: usize, h: &ButsonMatrix) -> Result<Self> {
        let dim = self.dim;
        let len = self.len + (dim - 1) * shift;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = vec![CyclotomicInt::zero(field); len];
                for k in 0..dim {
                    let src = &self.entries[i * dim + k];
                    let offset = k * shift;
                    let phase = h.get(k, j);
                    for (m, c) in src.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let slot = &mut acc[m + offset];
                        *slot = slot.try_add(&c.mul_root(phase)?)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { dim, len, entries })
    }
}

/// Forms the full product and packs it after checking every coefficient is
/// a single root and every entry has degree `N^n - 1`.
pub fn construct(spec: &ConstructionSpec) -> Result<UnitCoeffPolyMatrix> {
    let shifts: Vec<usize> = spec.perm.iter().map(|&p| spec.dim.pow(p as u32)).collect();
    product_with_shifts(spec, &shifts, spec.length())
}

/// `H_0 · ∏_t D(z)^{shifts[t-1]} · H_t`, validated against `expected_len`.
///
/// With shifts that are not distinct powers of `N` several paths land on one
/// power of `z` and the unit-coefficient check fails.
fn product_with_shifts(spec: &ConstructionSpec, shifts: &[usize], expected_len: usize) -> Result<UnitCoeffPolyMatrix> {
    let field = CyclotomicField::get(spec.q)?;
    let dim = spec.dim;
    let mut acc = PolyMatrix::constant(&field, &spec.hadamards[0])?;
    for (h, &shift) in spec.hadamards[1..].iter().zip(shifts) {
        acc = acc.delay_then_mul(&field, shift, h)?;
    }
    let mut exps = Vec::with_capacity(dim * dim * expected_len);
    for i in 0..dim {
        for j in 0..dim {
            let coeffs = &acc.entries[i * dim + j];
            for (m, c) in coeffs.iter().enumerate() {
                let e = c.as_root().ok_or_else(|| ConstructionError::NonUnitCoefficient {
                    row: i,
                    col: j,
                    power: m,
                    value: c.to_string(),
                })?;
                exps.push(e);
            }
            if coeffs.len() != expected_len {
                return Err(ConstructionError::DegreeMismatch {
                    row: i,
                    col: j,
                    expected: expected_len - 1,
                    found: coeffs.len() - 1,
                });
            }
        }
    }
    Ok(UnitCoeffPolyMatrix {
        q: spec.q,
        dim,
        len: expected_len,
        depth: spec.depth(),
        exps,
    })
}

/// Coefficient matrix of `z^m` read directly off the Hadamard entries.
///
/// With `j_t` the base-`N` digit `π(t-1)` of `m`, entry `(r, s)` is the
/// product `H_0[r][j_1] · H_1[j_1][j_2] · … · H_n[j_n][s]`, i.e. the exponent
/// sum along that single path. The polynomial product is never formed.
pub fn coefficient_direct(spec: &ConstructionSpec, m: usize) -> Result<Vec<Vec<u32>>> {
    let digits = DigitDecomposition::new(m, spec.dim, spec.depth())?;
    let path: Vec<usize> = spec.perm.iter().map(|&p| digits.digits()[p]).collect();
    let q = spec.q;
    let hs = &spec.hadamards;
    let inner: u32 = path.windows(2).enumerate().fold(0, |acc, (t, w)| (acc + hs[t + 1].get(w[0], w[1])) % q);
    let n = spec.depth();
    Ok((0..spec.dim)
        .map(|r| {
            (0..spec.dim)
                .map(|s| match (path.first(), path.last()) {
                    (Some(&first), Some(&last)) => (hs[0].get(r, first) + inner + hs[n].get(last, s)) % q,
                    _ => hs[0].get(r, s),
                })
                .collect()
        })
        .collect())
}

/// Matrices `[[1, θ^c], [-θ^{-c}, 1]]` for each phase, as an `N = 2` spec.
///
/// Needs `-1` to be a `q`-th root, i.e. `q` even.
pub fn example8_pair_generator(q: u32, phases: &[u32], perm: Vec<usize>) -> Result<ConstructionSpec> {
    if !q.is_multiple_of(2) {
        return Err(ConstructionError::UnsupportedAlphabet { q });
    }
    if phases.len() != perm.len() + 1 {
        return Err(ConstructionError::InvalidSpec(format!(
            "expected {} phases for n = {}, got {}",
            perm.len() + 1,
            perm.len(),
            phases.len()
        )));
    }
    let hadamards = phases
        .iter()
        .map(|&c| {
            if c >= q {
                return Err(ConstructionError::InvalidSpec(format!("phase {} out of range for q = {}", c, q)));
            }
            let lower = (q / 2 + q - c) % q;
            Ok(verify_butson(&[vec![0, c], vec![lower, 0]], q)?)
        })
        .collect::<Result<Vec<_>>>()?;
    ConstructionSpec::new(perm, hadamards)
}
