use super::sequence::check_family;
use super::{AnalysisError, QarySequence, Result};
use crate::construction::{ReadOrder, UnitCoeffPolyMatrix};
use crate::cyclotomic::{CyclotomicField, CyclotomicInt};

/// `N` sequences of a common length `L` whose aperiodic autocorrelations sum
/// to zero at every nonzero shift. Only obtainable through [`golay_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolaySet {
    q: u32,
    sequences: Vec<QarySequence>,
}

impl GolaySet {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Set size `N`.
    pub fn size(&self) -> usize {
        self.sequences.len()
    }

    /// Common length `L`.
    pub fn len(&self) -> usize {
        self.sequences[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequences(&self) -> &[QarySequence] {
        &self.sequences
    }

    pub fn into_sequences(self) -> Vec<QarySequence> {
        self.sequences
    }
}

/// Laurent polynomial over the group ring `Z[C_q]`: `counts[(p - low)·q + g]`
/// is the multiplicity of `ζ^g` in the coefficient of `z^p`.
struct GroupRingPoly {
    q: usize,
    low: isize,
    counts: Vec<i64>,
}

impl GroupRingPoly {
    fn zero(q: usize, low: isize, high: isize) -> Self {
        GroupRingPoly {
            q,
            low,
            counts: vec![0; (high - low + 1) as usize * q],
        }
    }

    /// Adds `A(z) · conj(A)(z^{-1})` for the unit-coefficient polynomial `A`.
    fn add_hermitian_square(&mut self, a: &[u32]) {
        let q = self.q;
        for (i, &ei) in a.iter().enumerate() {
            for (k, &ek) in a.iter().enumerate() {
                let power = i as isize - k as isize;
                let g = (ei as usize + q - ek as usize) % q;
                self.counts[(power - self.low) as usize * q + g] += 1;
            }
        }
    }

    fn coefficient(&self, field: &std::sync::Arc<CyclotomicField>, power: isize) -> Result<CyclotomicInt> {
        let start = (power - self.low) as usize * self.q;
        Ok(CyclotomicInt::from_exponent_counts(field, &self.counts[start..start + self.q])?)
    }
}

/// Exact test of `∑_i A_i(z) · conj(A_i)(z^{-1}) = L·N`.
///
/// The left side is formed as a polynomial product; on failure the smallest
/// positive power of `z` with a nonzero coefficient is reported as the shift.
pub fn golay_check(candidates: &[QarySequence]) -> Result<GolaySet> {
    let (q, len) = check_family(candidates)?;
    let field = CyclotomicField::get(q)?;
    let top = len as isize - 1;
    let mut sum = GroupRingPoly::zero(q as usize, -top, top);
    for s in candidates {
        sum.add_hermitian_square(s.exps());
    }
    let constant = sum.coefficient(&field, 0)?;
    let expected = (len * candidates.len()) as i64;
    if constant.as_integer() != Some(expected) {
        return Err(AnalysisError::NotComplementary {
            shift: 0,
            value: constant.to_string(),
        });
    }
    for power in 1..=top {
        let c = sum.coefficient(&field, power)?;
        if !c.is_zero() {
            return Err(AnalysisError::NotComplementary {
                shift: power as usize,
                value: c.to_string(),
            });
        }
    }
    Ok(GolaySet {
        q,
        sequences: candidates.to_vec(),
    })
}

/// Golay sets read off a constructed matrix: one per row and one per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub rows: Vec<GolaySet>,
    pub cols: Vec<GolaySet>,
}

impl SetFamily {
    pub fn all(&self) -> impl Iterator<Item = &GolaySet> {
        self.rows.iter().chain(&self.cols)
    }
}

pub fn extract_sets(m: &UnitCoeffPolyMatrix, order: ReadOrder) -> Result<SetFamily> {
    let n = m.dim();
    let seq = |i, j| QarySequence::new(m.q(), m.sequence(i, j, order));
    let rows = (0..n)
        .map(|i| golay_check(&(0..n).map(|j| seq(i, j)).collect::<Result<Vec<_>>>()?))
        .collect::<Result<Vec<_>>>()?;
    let cols = (0..n)
        .map(|j| golay_check(&(0..n).map(|i| seq(i, j)).collect::<Result<Vec<_>>>()?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SetFamily { rows, cols })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::shift_sum_defect;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn seq(q: u32, e: &[u32]) -> QarySequence {
        QarySequence::new(q, e.to_vec()).unwrap()
    }

    // brute-force complex sums of autocorrelations
    fn complex_defect(seqs: &[QarySequence]) -> Option<usize> {
        let q = seqs[0].q() as f64;
        let z = |e: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / q);
        (1..seqs[0].len()).find(|&u| {
            let s: Complex64 = seqs
                .iter()
                .map(|a| (0..a.len() - u).map(|i| z(a.exps()[i + u]) * z(a.exps()[i]).conj()).sum::<Complex64>())
                .sum();
            s.norm() > 1e-9
        })
    }

    #[test]
    fn binary_pair_of_length_four() {
        let pair = [seq(2, &[0, 0, 0, 1]), seq(2, &[0, 0, 1, 0])];
        assert_eq!(complex_defect(&pair), None);
        let set = golay_check(&pair).unwrap();
        assert_eq!((set.size(), set.len()), (2, 4));
    }

    #[test]
    fn all_ones_pair_fails_at_first_shift() {
        let pair = [seq(2, &[0, 0, 0, 0]), seq(2, &[0, 0, 0, 0])];
        match golay_check(&pair).unwrap_err() {
            AnalysisError::NotComplementary { shift, value } => {
                assert_eq!(shift, 1);
                assert_eq!(value, "6");
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn length_one_sets_are_trivially_complementary() {
        assert!(golay_check(&[seq(4, &[3]), seq(4, &[1])]).is_ok());
    }

    #[test]
    fn mixed_inputs_rejected() {
        assert!(matches!(golay_check(&[]), Err(AnalysisError::EmptySet)));
        assert!(matches!(
            golay_check(&[seq(2, &[0]), seq(2, &[0, 1])]),
            Err(AnalysisError::MixedLengths(1, 2))
        ));
    }

    fn family() -> impl Strategy<Value = Vec<QarySequence>> {
        (prop::sample::select(vec![2u32, 3, 4, 6, 8]), 1usize..=4, 1usize..=8).prop_flat_map(|(q, n, len)| {
            prop::collection::vec(prop::collection::vec(0..q, len), n)
                .prop_map(move |v| v.into_iter().map(|e| QarySequence::new(q, e).unwrap()).collect())
        })
    }

    proptest! {
        #[test]
        fn polynomial_and_shift_sum_forms_agree(seqs in family()) {
            let poly = golay_check(&seqs);
            let shifts = shift_sum_defect(&seqs).unwrap();
            match (&poly, &shifts) {
                (Ok(_), None) => {}
                (Err(AnalysisError::NotComplementary { shift, value }), Some((u, v))) => {
                    prop_assert_eq!(shift, u);
                    prop_assert_eq!(value, &v.to_string());
                }
                _ => prop_assert!(false, "disagreement: {:?} vs {:?}", poly, shifts),
            }
            prop_assert_eq!(poly.is_ok(), complex_defect(&seqs).is_none());
        }
    }
}
