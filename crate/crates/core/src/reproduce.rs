//! Batch drivers over the bundled fixtures.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::{anf, golay_check, AnalysisError, GeneralizedBooleanFunction, QarySequence};
use crate::construction::{
    construct, example8_pair_generator, lemma3_expansion_check, ConstructionError, ReadOrder, UnitCoeffPolyMatrix,
};
use crate::cyclotomic::{CyclotomicError, CyclotomicField, CyclotomicMatrix};
use crate::fixtures::{example7_reference_anf, example7_spec, EXAMPLE7_ORDER};
use crate::hadamard::permutations;
use crate::report::Check;

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

pub type Result<T> = std::result::Result<T, ReproduceError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfComparison {
    pub row: usize,
    pub col: usize,
    pub reference: GeneralizedBooleanFunction,
    pub computed: GeneralizedBooleanFunction,
}

impl AnfComparison {
    pub fn matches(&self) -> bool {
        self.reference == self.computed
    }
}

#[derive(Debug, Clone)]
pub struct Example7Outcome {
    pub matrix: UnitCoeffPolyMatrix,
    /// `(label, result)` for the row sets followed by the column sets.
    pub sets: Vec<(String, std::result::Result<(), AnalysisError>)>,
    pub comparisons: Vec<AnfComparison>,
}

impl Example7Outcome {
    pub fn matched(&self) -> usize {
        self.comparisons.iter().filter(|c| c.matches()).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &AnfComparison> {
        self.comparisons.iter().filter(|c| !c.matches())
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut checks: Vec<Check> = self
            .sets
            .iter()
            .map(|(label, r)| match r {
                Ok(()) => Check::pass(format!("golay_check {}", label), ""),
                Err(e) => Check::fail(format!("golay_check {}", label), e.to_string()),
            })
            .collect();
        let total = self.comparisons.len();
        let mut detail = format!("{}/{} ANFs matched", self.matched(), total);
        for c in self.mismatches() {
            detail.push_str(&format!(
                "; entry ({}, {}) reference {} computed {}",
                c.row, c.col, c.reference, c.computed
            ));
        }
        checks.push(Check::new("anf table", self.matched() == total, detail));
        let degrees: Vec<u32> = self.comparisons.iter().map(|c| c.computed.degree()).collect();
        checks.push(Check::new(
            "degree 3",
            degrees.iter().all(|&d| d == 3),
            format!("degrees {:?}", degrees),
        ));
        checks
    }
}

/// Builds the bundled example, checks all row and column sets, and compares
/// every entry's ANF with the reference table.
pub fn example7() -> Result<Example7Outcome> {
    let spec = example7_spec();
    let matrix = construct(&spec)?;
    let n = matrix.dim();
    let seq = |i, j| QarySequence::new(matrix.q(), matrix.sequence(i, j, EXAMPLE7_ORDER));
    let mut sets = Vec::new();
    for (kind, transpose) in [("row", false), ("column", true)] {
        for a in 0..n {
            let set = (0..n)
                .map(|b| if transpose { seq(b, a) } else { seq(a, b) })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            sets.push((format!("{} {}", kind, a), golay_check(&set).map(|_| ())));
        }
    }
    let comparisons = example7_reference_anf()
        .into_iter()
        .map(|(row, col, reference)| {
            Ok(AnfComparison {
                row,
                col,
                reference,
                computed: anf(&seq(row, col)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Example7Outcome {
        matrix,
        sets,
        comparisons,
    })
}

/// Every binary sequence of length `len` (as exponents) that belongs to some
/// Golay pair, by exhaustive pair scan over plain `±1` integer arithmetic.
pub fn golay_pair_members(len: usize) -> BTreeSet<Vec<u32>> {
    assert!((1..=16).contains(&len), "pair scan is limited to lengths 1..=16");
    let count = 1usize << len;
    let bits = |a: usize| -> Vec<u32> { (0..len).map(|i| ((a >> i) & 1) as u32).collect() };
    let corr: Vec<Vec<i64>> = (0..count)
        .map(|a| {
            let x: Vec<i64> = bits(a).iter().map(|&b| 1 - 2 * b as i64).collect();
            (1..len).map(|u| (0..len - u).map(|i| x[i + u] * x[i]).sum()).collect()
        })
        .collect();
    let mut members = BTreeSet::new();
    for a in 0..count {
        for b in a..count {
            if corr[a].iter().zip(&corr[b]).all(|(x, y)| x + y == 0) {
                members.insert(bits(a));
                members.insert(bits(b));
            }
        }
    }
    members
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example8Outcome {
    pub pairs: usize,
    pub golay_failures: Vec<String>,
    /// Generated sequences that are absent from the exhaustive table.
    pub missing: Vec<Vec<u32>>,
    pub distinct: usize,
    pub table_size: usize,
}

impl Example8Outcome {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check::new(
                "golay_check first rows",
                self.golay_failures.is_empty(),
                if self.golay_failures.is_empty() {
                    format!("{}/{} pairs complementary", self.pairs, self.pairs)
                } else {
                    self.golay_failures.join("; ")
                },
            ),
            Check::new(
                "membership in exhaustive table",
                self.missing.is_empty(),
                format!(
                    "{} distinct sequences generated, {} missing, table holds {}",
                    self.distinct,
                    self.missing.len(),
                    self.table_size
                ),
            ),
        ]
    }
}

/// All `2^{n+1}` binary phase vectors with all `n!` orderings for `n = 3`.
pub fn example8() -> Result<Example8Outcome> {
    const Q: u32 = 2;
    const N: usize = 3;
    let table = golay_pair_members(1 << N);
    let mut golay_failures = Vec::new();
    let mut generated = BTreeSet::new();
    let mut pairs = 0;
    for mask in 0u32..1 << (N + 1) {
        let phases: Vec<u32> = (0..=N).map(|t| (mask >> t) & 1).collect();
        for perm in permutations(N) {
            let m = construct(&example8_pair_generator(Q, &phases, perm.clone())?)?;
            let pair = [0, 1]
                .iter()
                .map(|&j| QarySequence::new(Q, m.sequence(0, j, ReadOrder::Ascending)))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            pairs += 1;
            if let Err(e) = golay_check(&pair) {
                golay_failures.push(format!("phases {:?} perm {:?}: {}", phases, perm, e));
            }
            generated.extend(pair.into_iter().map(|s| s.exps().to_vec()));
        }
    }
    Ok(Example8Outcome {
        pairs,
        golay_failures,
        missing: generated.iter().filter(|s| !table.contains(*s)).cloned().collect(),
        distinct: generated.len(),
        table_size: table.len(),
    })
}

/// A random product-to-sum instance: `n ≤ 3` factors of dimension `≤ 3` with
/// integer entries in `[-5, 5]`, and a random ordering.
pub fn random_lemma3_instance<R: Rng + ?Sized>(rng: &mut R) -> (Vec<[CyclotomicMatrix; 4]>, Vec<usize>) {
    let field = CyclotomicField::get(2).expect("q = 2 is a valid field");
    let n = rng.gen_range(1..=3);
    let dim = rng.gen_range(1..=3);
    let matrix = |rng: &mut R| {
        let rows: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        CyclotomicMatrix::from_integers(&field, &rows)
    };
    let factors = (0..n)
        .map(|_| [matrix(rng), matrix(rng), matrix(rng), matrix(rng)])
        .collect();
    let mut ordering: Vec<usize> = (0..n).collect();
    ordering.shuffle(rng);
    (factors, ordering)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Outcome {
    pub total: usize,
    pub failures: Vec<String>,
}

impl Lemma3Outcome {
    pub fn checks(&self) -> Vec<Check> {
        let passed = self.total - self.failures.len();
        let mut detail = format!("{}/{} instances", passed, self.total);
        for f in &self.failures {
            detail.push_str("; ");
            detail.push_str(f);
        }
        vec![Check::new("expansion identity", self.failures.is_empty(), detail)]
    }
}

pub fn lemma3(seed: u64, count: usize) -> Lemma3Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures = (0..count)
        .filter_map(|k| {
            let (factors, ordering) = random_lemma3_instance(&mut rng);
            match lemma3_expansion_check(&factors, &ordering) {
                Ok(true) => None,
                Ok(false) => Some(format!("instance {} differs", k)),
                Err(e) => Some(format!("instance {}: {}", k, e)),
            }
        })
        .collect();
    Lemma3Outcome { total: count, failures }
}
