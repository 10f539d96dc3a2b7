//! Butson-type Hadamard matrices `H(q, N)`.
//!
//! A matrix is stored as its exponent array: entry `(i, j)` stands for
//! `ζ_q^{exps[i][j]}`. Orthogonality of rows is decided exactly in
//! [`CyclotomicInt`], so validation has no tolerance.
//!
//! Equivalence follows `H1 = D1·P1·H2·P2·D2` with the fixed convention
//!
//! ```text
//! H1[i][j] = D1[i] + H2[P1[i]][P2[j]] + D2[j]   (mod q)
//! ```
//!
//! i.e. row `i` of the result is sourced from row `P1[i]` of `H2` and column
//! `j` from column `P2[j]`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::cyclotomic::{CyclotomicError, CyclotomicField, CyclotomicInt};

/// Largest dimension accepted by [`are_equivalent`].
pub const EQUIVALENCE_MAX_DIM: usize = 5;
/// Largest alphabet accepted by [`are_equivalent`].
pub const EQUIVALENCE_MAX_Q: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HadamardError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("exponent {e} at ({row}, {col}) out of range for q = {q}")]
    ExponentOutOfRange { row: usize, col: usize, e: u32, q: u32 },
    #[error("not unitary: rows {row_a} and {row_b} are not orthogonal (inner product {value})")]
    NotUnitary { row_a: usize, row_b: usize, value: String },
    #[error("no built-in representative for H({q}, {n})")]
    Unsupported { q: u32, n: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("alphabet mismatch: q = {left} vs q = {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("invalid equivalence witness: {0}")]
    InvalidWitness(String),
    #[error("equivalence search space too large for N = {n}, q = {q} (limit N <= {EQUIVALENCE_MAX_DIM}, q <= {EQUIVALENCE_MAX_Q})")]
    SearchSpaceTooLarge { n: usize, q: u32 },
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

pub type Result<T> = std::result::Result<T, HadamardError>;

/// A validated Butson-type `(q, N)` Hadamard matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ButsonMatrix {
    q: u32,
    n: usize,
    exps: Vec<u32>,
}

impl ButsonMatrix {
    /// Wraps an exponent array without checking orthogonality.
    ///
    /// Only meant for feeding deliberately corrupted input to validators.
    /// Panics if the array is not square.
    pub fn new_unchecked(q: u32, rows: Vec<Vec<u32>>) -> ButsonMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        ButsonMatrix {
            q,
            n,
            exps: rows.into_iter().flatten().map(|e| e % q).collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.exps[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.exps[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Result<ButsonMatrix> {
        let rows = (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).collect())
            .collect::<Vec<Vec<u32>>>();
        verify_butson(&rows, self.q)
    }

    /// The same matrix over a larger alphabet `q·k` (every exponent scaled by `k`).
    pub fn lift(&self, factor: u32) -> Result<ButsonMatrix> {
        let rows = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|e| e * factor).collect())
            .collect::<Vec<Vec<u32>>>();
        verify_butson(&rows, self.q * factor)
    }
}

impl fmt::Display for ButsonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Validates an exponent array as a Butson Hadamard matrix over `q`.
///
/// Every off-diagonal row inner product `∑_k ζ^{exps[a][k] - exps[b][k]}` must
/// be exactly zero; the first failing pair is reported.
pub fn verify_butson(exps: &[Vec<u32>], q: u32) -> Result<ButsonMatrix> {
    let field = CyclotomicField::get(q)?;
    let n = exps.len();
    if n == 0 {
        return Err(HadamardError::BadShape("empty matrix".into()));
    }
    for (i, row) in exps.iter().enumerate() {
        if row.len() != n {
            return Err(HadamardError::BadShape(format!(
                "row {} has {} entries, expected {}",
                i,
                row.len(),
                n
            )));
        }
        if let Some((j, &e)) = row.iter().enumerate().find(|(_, &e)| e >= q) {
            return Err(HadamardError::ExponentOutOfRange { row: i, col: j, e, q });
        }
    }
    let mut counts = vec![0i64; q as usize];
    for a in 0..n {
        for b in (a + 1)..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for k in 0..n {
                counts[((exps[a][k] + q - exps[b][k]) % q) as usize] += 1;
            }
            let ip = CyclotomicInt::from_exponent_counts(&field, &counts)?;
            if !ip.is_zero() {
                return Err(HadamardError::NotUnitary {
                    row_a: a,
                    row_b: b,
                    value: ip.to_string(),
                });
            }
        }
    }
    Ok(ButsonMatrix {
        q,
        n,
        exps: exps.iter().flatten().copied().collect(),
    })
}

/// Diagonal phases and permutations relating two equivalent matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct EquivalenceWitness {
    /// `D1`: phase exponent applied to result row `i`.
    pub row_phases: Vec<u32>,
    /// `P1`: result row `i` is taken from source row `row_perm[i]`.
    pub row_perm: Vec<usize>,
    /// `P2`: result column `j` is taken from source column `col_perm[j]`.
    pub col_perm: Vec<usize>,
    /// `D2`: phase exponent applied to result column `j`.
    pub col_phases: Vec<u32>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl EquivalenceWitness {
    pub fn identity(n: usize) -> Self {
        EquivalenceWitness {
            row_phases: vec![0; n],
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
            col_phases: vec![0; n],
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, q: u32, rng: &mut R) -> Self {
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        row_perm.shuffle(rng);
        col_perm.shuffle(rng);
        EquivalenceWitness {
            row_phases: (0..n).map(|_| rng.gen_range(0..q)).collect(),
            row_perm,
            col_perm,
            col_phases: (0..n).map(|_| rng.gen_range(0..q)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.row_perm.len()
    }

    pub fn validate(&self, q: u32) -> Result<()> {
        let n = self.row_perm.len();
        if [self.row_phases.len(), self.col_perm.len(), self.col_phases.len()]
            .iter()
            .any(|&l| l != n)
        {
            return Err(HadamardError::InvalidWitness("component lengths differ".into()));
        }
        if !is_permutation(&self.row_perm) || !is_permutation(&self.col_perm) {
            return Err(HadamardError::InvalidWitness("permutation is not a bijection".into()));
        }
        if self.row_phases.iter().chain(&self.col_phases).any(|&e| e >= q) {
            return Err(HadamardError::InvalidWitness(format!("phase out of range for q = {}", q)));
        }
        Ok(())
    }

    /// The witness mapping `apply_equivalence(H, self)` back to `H`.
    pub fn inverse(&self, q: u32) -> Self {
        let p1 = invert_permutation(&self.row_perm);
        let p2 = invert_permutation(&self.col_perm);
        EquivalenceWitness {
            row_phases: p1.iter().map(|&i| (q - self.row_phases[i]) % q).collect(),
            col_phases: p2.iter().map(|&j| (q - self.col_phases[j]) % q).collect(),
            row_perm: p1,
            col_perm: p2,
        }
    }
}

/// Computes `D1·P1·H·P2·D2` and re-validates it.
pub fn apply_equivalence(h: &ButsonMatrix, w: &EquivalenceWitness) -> Result<ButsonMatrix> {
    if w.dim() != h.n {
        return Err(HadamardError::DimensionMismatch {
            left: h.n,
            right: w.dim(),
        });
    }
    w.validate(h.q)?;
    let q = h.q;
    let rows = (0..h.n)
        .map(|i| {
            (0..h.n)
                .map(|j| (w.row_phases[i] + h.get(w.row_perm[i], w.col_perm[j]) + w.col_phases[j]) % q)
                .collect()
        })
        .collect::<Vec<Vec<u32>>>();
    verify_butson(&rows, q)
}

/// Returns the equivalent matrix with first row and column all exponent 0.
pub fn dephase(h: &ButsonMatrix) -> (ButsonMatrix, EquivalenceWitness) {
    let q = h.q;
    let n = h.n;
    let col_phases: Vec<u32> = (0..n).map(|j| (q - h.get(0, j)) % q).collect();
    let row_phases: Vec<u32> = (0..n)
        .map(|i| (2 * q - (h.get(i, 0) + col_phases[0]) % q) % q)
        .collect();
    let w = EquivalenceWitness {
        row_phases,
        row_perm: (0..n).collect(),
        col_perm: (0..n).collect(),
        col_phases,
    };
    let m = apply_equivalence(h, &w).expect("dephasing preserves the Butson property");
    (m, w)
}

/// Outcome of an exhaustive equivalence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// `apply_equivalence(h2, &witness) == h1`.
    Equivalent(EquivalenceWitness),
    /// No witness exists; `candidates` `(P1, P2, D2)` triples were examined.
    NotEquivalent { candidates: u64 },
}

impl Equivalence {
    pub fn witness(&self) -> Option<&EquivalenceWitness> {
        match self {
            Equivalence::Equivalent(w) => Some(w),
            Equivalence::NotEquivalent { .. } => None,
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Steps `digits` to the next vector in lexicographic order (last index
/// fastest); returns `false` after wrapping back to all zeros.
pub(crate) fn advance_odometer(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Decides `h1 ≃ h2` by exhaustive search.
///
/// Enumerates `(P1, P2, D2)` in lexicographic order and solves for `D1`; the
/// first hit is returned, so the witness does not depend on scheduling.
pub fn are_equivalent(h1: &ButsonMatrix, h2: &ButsonMatrix) -> Result<Equivalence> {
    if h1.q != h2.q {
        return Err(HadamardError::AlphabetMismatch { left: h1.q, right: h2.q });
    }
    if h1.n != h2.n {
        return Err(HadamardError::DimensionMismatch {
            left: h1.n,
            right: h2.n,
        });
    }
    let (n, q) = (h1.n, h1.q);
    if n > EQUIVALENCE_MAX_DIM || q > EQUIVALENCE_MAX_Q {
        return Err(HadamardError::SearchSpaceTooLarge { n, q });
    }
    let perms = permutations(n);
    let mut candidates = 0u64;
    let mut col_phases = vec![0u32; n];
    let mut row_phases = vec![0u32; n];
    for p1 in &perms {
        for p2 in &perms {
            col_phases.iter_mut().for_each(|d| *d = 0);
            loop {
                candidates += 1;
                let fits = (0..n).all(|i| {
                    let d1 = (2 * q + h1.get(i, 0) - h2.get(p1[i], p2[0]) - col_phases[0]) % q;
                    row_phases[i] = d1;
                    (1..n).all(|j| (d1 + h2.get(p1[i], p2[j]) + col_phases[j]) % q == h1.get(i, j))
                });
                if fits {
                    return Ok(Equivalence::Equivalent(EquivalenceWitness {
                        row_phases: row_phases.clone(),
                        row_perm: p1.clone(),
                        col_perm: p2.clone(),
                        col_phases: col_phases.clone(),
                    }));
                }
                if !advance_odometer(&mut col_phases, q) {
                    break;
                }
            }
        }
    }
    Ok(Equivalence::NotEquivalent { candidates })
}

/// Sylvester matrix of order `2^k` over the binary alphabet.
pub fn sylvester(k: u32) -> ButsonMatrix {
    let n = 1usize << k;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| (i & j).count_ones() % 2).collect())
        .collect::<Vec<Vec<u32>>>();
    verify_butson(&rows, 2).expect("Sylvester matrices are Hadamard")
}

/// Fourier matrix `exps[i][j] = i·j mod q` of order `q`.
pub fn fourier(q: u32) -> Result<ButsonMatrix> {
    let rows = (0..q)
        .map(|i| (0..q).map(|j| (i * j) % q).collect())
        .collect::<Vec<Vec<u32>>>();
    verify_butson(&rows, q)
}

/// Built-in dephased representatives of `H(q, N)`.
///
/// The list holds the Sylvester matrix (when `N` is a power of two and `q`
/// is even) followed by the Fourier matrix of order `N` (when `N | q`), each
/// lifted to the alphabet `q`. For `(2, 4)` this is the single binary class
/// and for `(4, 4)` the two quaternary classes. The list is not claimed to be
/// a full classification for other parameters.
pub fn representatives(q: u32, n: usize) -> Result<Vec<ButsonMatrix>> {
    if q < 2 || n == 0 {
        return Err(HadamardError::Unsupported { q, n });
    }
    let mut reps: Vec<ButsonMatrix> = Vec::new();
    if n.is_power_of_two() && q.is_multiple_of(2) {
        reps.push(sylvester(n.trailing_zeros()).lift(q / 2)?);
    }
    if (n as u64) <= q as u64 && q.is_multiple_of(n as u32) {
        let f = fourier(n as u32)?.lift(q / n as u32)?;
        if !reps.contains(&f) {
            reps.push(f);
        }
    }
    if reps.is_empty() {
        return Err(HadamardError::Unsupported { q, n });
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str], q: u32) -> ButsonMatrix {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as u32).collect())
            .collect();
        verify_butson(&rows, q).unwrap()
    }

    #[test]
    fn verifies_printed_representatives() {
        m(&["0000", "0101", "0011", "0110"], 2);
        m(&["0000", "0123", "0202", "0321"], 4);
    }

    #[test]
    fn all_ones_is_not_unitary() {
        let err = verify_butson(&[vec![0, 0], vec![0, 0]], 2).unwrap_err();
        assert!(matches!(err, HadamardError::NotUnitary { row_a: 0, row_b: 1, .. }));
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            verify_butson(&[vec![0, 0], vec![0]], 2),
            Err(HadamardError::BadShape(_))
        ));
        assert!(matches!(verify_butson(&[], 2), Err(HadamardError::BadShape(_))));
        assert!(matches!(
            verify_butson(&[vec![0, 0], vec![0, 2]], 2),
            Err(HadamardError::ExponentOutOfRange { row: 1, col: 1, e: 2, q: 2 })
        ));
    }

    #[test]
    fn representative_tables() {
        let r24 = representatives(2, 4).unwrap();
        assert_eq!(r24, vec![m(&["0000", "0101", "0011", "0110"], 2)]);
        let r44 = representatives(4, 4).unwrap();
        assert_eq!(
            r44,
            vec![
                m(&["0000", "0202", "0022", "0220"], 4),
                m(&["0000", "0123", "0202", "0321"], 4)
            ]
        );
        assert_eq!(representatives(3, 3).unwrap(), vec![m(&["000", "012", "021"], 3)]);
        assert_eq!(representatives(2, 2).unwrap().len(), 1);
        assert_eq!(representatives(2, 8).unwrap()[0].dim(), 8);
        assert!(matches!(representatives(3, 2), Err(HadamardError::Unsupported { q: 3, n: 2 })));
        assert!(matches!(representatives(2, 3), Err(HadamardError::Unsupported { .. })));
    }

    #[test]
    fn every_representative_is_dephased_and_valid() {
        for q in 2..=12u32 {
            for n in 1..=8usize {
                let Ok(reps) = representatives(q, n) else { continue };
                for h in reps {
                    let rows = h.rows();
                    verify_butson(&rows, q).unwrap();
                    assert_eq!(dephase(&h).0, h, "q = {} n = {}", q, n);
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let h = m(&["0000", "0101", "0011", "0110"], 2);
        assert_eq!(apply_equivalence(&h, &EquivalenceWitness::identity(4)).unwrap(), h);

        let mut w = EquivalenceWitness::identity(4);
        w.row_perm = vec![1, 0, 2, 3];
        assert_eq!(
            apply_equivalence(&h, &w).unwrap(),
            m(&["0101", "0000", "0011", "0110"], 2)
        );

        let f = m(&["0000", "0123", "0202", "0321"], 4);
        let mut w = EquivalenceWitness::identity(4);
        w.row_phases = vec![1, 0, 0, 0];
        assert_eq!(
            apply_equivalence(&f, &w).unwrap(),
            m(&["1111", "0123", "0202", "0321"], 4)
        );

        assert!(matches!(
            apply_equivalence(&f, &EquivalenceWitness::identity(3)),
            Err(HadamardError::DimensionMismatch { left: 4, right: 3 })
        ));
        let mut bad = EquivalenceWitness::identity(4);
        bad.col_perm = vec![0, 0, 1, 2];
        assert!(matches!(apply_equivalence(&f, &bad), Err(HadamardError::InvalidWitness(_))));
    }

    #[test]
    fn dephase_examples() {
        let f = m(&["0000", "0123", "0202", "0321"], 4);
        assert_eq!(dephase(&f), (f.clone(), EquivalenceWitness::identity(4)));

        // first row 1, i, -1, -i; the rest already has zero first column
        let g = m(&["0123", "0202", "0321", "0000"], 4);
        let (d, w) = dephase(&g);
        assert_eq!(w.col_phases, vec![0, 3, 2, 1]);
        assert!(d.row(0).iter().all(|&e| e == 0));
        assert!((0..4).all(|i| d.get(i, 0) == 0));
    }

    #[test]
    fn quaternary_classes_are_distinct() {
        let reps = representatives(4, 4).unwrap();
        match are_equivalent(&reps[0], &reps[1]).unwrap() {
            Equivalence::NotEquivalent { candidates } => assert_eq!(candidates, 24 * 24 * 256),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn binary_representative_equivalent_to_transpose() {
        // exhaustive search is the oracle here; the matrix happens to be symmetric
        let h = representatives(2, 4).unwrap().remove(0);
        let t = h.transpose().unwrap();
        let eq = are_equivalent(&h, &t).unwrap();
        let w = eq.witness().expect("transpose is equivalent");
        assert_eq!(apply_equivalence(&t, w).unwrap(), h);
        let g = apply_equivalence(&h, &EquivalenceWitness {
            row_phases: vec![1, 0, 1, 0],
            row_perm: vec![2, 0, 3, 1],
            col_perm: vec![1, 3, 0, 2],
            col_phases: vec![0, 1, 1, 0],
        })
        .unwrap();
        let gt = g.transpose().unwrap();
        let w = are_equivalent(&g, &gt).unwrap().witness().cloned().unwrap();
        assert_eq!(apply_equivalence(&gt, &w).unwrap(), g);
    }

    #[test]
    fn search_guard() {
        let h = sylvester(3);
        assert!(matches!(
            are_equivalent(&h, &h),
            Err(HadamardError::SearchSpaceTooLarge { n: 8, q: 2 })
        ));
        let f = fourier(12).unwrap();
        assert!(matches!(are_equivalent(&f, &f), Err(HadamardError::SearchSpaceTooLarge { .. })));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(
            p,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    fn random_matrix(seed: u64) -> (ButsonMatrix, ChaCha8Rng) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let choices: Vec<(u32, usize)> = vec![(2, 2), (2, 4), (4, 2), (4, 4), (3, 3), (8, 2), (8, 4), (6, 3)];
        let (q, n) = *choices.choose(&mut rng).unwrap();
        let reps = representatives(q, n).unwrap();
        let base = reps.choose(&mut rng).unwrap().clone();
        let w = EquivalenceWitness::random(n, q, &mut rng);
        (apply_equivalence(&base, &w).unwrap(), rng)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn equivalence_preserves_butson(seed in any::<u64>()) {
            let (h, mut rng) = random_matrix(seed);
            let w = EquivalenceWitness::random(h.dim(), h.q(), &mut rng);
            let g = apply_equivalence(&h, &w).unwrap();
            prop_assert!(verify_butson(&g.rows(), g.q()).is_ok());
            prop_assert_eq!(apply_equivalence(&g, &w.inverse(h.q())).unwrap(), h);
        }

        #[test]
        fn dephase_is_idempotent(seed in any::<u64>()) {
            let (h, _) = random_matrix(seed);
            let (d, w) = dephase(&h);
            prop_assert_eq!(apply_equivalence(&h, &w).unwrap(), d.clone());
            prop_assert_eq!(dephase(&d).0, d);
        }

        #[test]
        fn equivalence_is_reflexive_and_symmetric(seed in any::<u64>()) {
            let (h, mut rng) = random_matrix(seed);
            let g = apply_equivalence(&h, &EquivalenceWitness::random(h.dim(), h.q(), &mut rng)).unwrap();
            let refl = are_equivalent(&h, &h).unwrap();
            prop_assert_eq!(refl.witness().map(|w| apply_equivalence(&h, w).unwrap()), Some(h.clone()));
            let fwd = are_equivalent(&h, &g).unwrap().witness().cloned().unwrap();
            let back = are_equivalent(&g, &h).unwrap().witness().cloned().unwrap();
            prop_assert_eq!(apply_equivalence(&g, &fwd).unwrap(), h.clone());
            prop_assert_eq!(apply_equivalence(&h, &back).unwrap(), g);
        }
    }
}
