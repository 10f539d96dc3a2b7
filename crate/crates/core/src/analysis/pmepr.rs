//! Oversampled peak-to-mean envelope power ratio.
//!
//! `|A(z)|² / L` is evaluated at the `K·L` points `z = exp(2πi·j/(K·L))` and
//! the maximum is returned. The grid maximum is a lower bound on the supremum
//! over the unit circle; the gap shrinks as `K` grows.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{AnalysisError, QarySequence, Result};

pub const DEFAULT_OVERSAMPLE: usize = 64;
pub const MIN_OVERSAMPLE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmeprMeasurement {
    pub value: f64,
    /// Grid index `j` of the maximum (smallest index on ties).
    pub argmax: usize,
    pub grid_size: usize,
}

impl PmeprMeasurement {
    /// Angle `2π·argmax / grid_size` of the maximizing point.
    pub fn argmax_angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.argmax as f64 / self.grid_size as f64
    }
}

pub fn pmepr(a: &QarySequence, oversample: usize) -> Result<PmeprMeasurement> {
    if oversample < MIN_OVERSAMPLE {
        return Err(AnalysisError::OversampleTooSmall(oversample));
    }
    let len = a.len();
    let grid = oversample * len;
    let q = a.q() as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];
    for (slot, &e) in buf.iter_mut().zip(a.exps()) {
        *slot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / q);
    }
    // the unnormalized inverse DFT evaluates ∑ a_m·exp(+2πi·jm/grid)
    FftPlanner::new().plan_fft_inverse(grid).process(&mut buf);
    let mut best = PmeprMeasurement {
        value: f64::NEG_INFINITY,
        argmax: 0,
        grid_size: grid,
    };
    for (j, v) in buf.iter().enumerate() {
        let p = v.norm_sqr() / len as f64;
        if p > best.value {
            best.value = p;
            best.argmax = j;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(q: u32, e: &[u32]) -> QarySequence {
        QarySequence::new(q, e.to_vec()).unwrap()
    }

    // direct Horner-free evaluation on the same grid
    fn direct(a: &QarySequence, k: usize) -> f64 {
        let grid = k * a.len();
        (0..grid)
            .map(|j| {
                let s: Complex64 = a
                    .exps()
                    .iter()
                    .enumerate()
                    .map(|(m, &e)| {
                        let phase = e as f64 / a.q() as f64 + (j * m) as f64 / grid as f64;
                        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
                    })
                    .sum();
                s.norm_sqr() / a.len() as f64
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn all_ones_peaks_at_length() {
        let m = pmepr(&seq(2, &[0, 0, 0, 0]), 16).unwrap();
        assert!((m.value - 4.0).abs() < 1e-9);
        assert_eq!(m.argmax, 0);
    }

    #[test]
    fn single_element_is_one() {
        assert_eq!(pmepr(&seq(4, &[3]), 4).unwrap().value, 1.0);
    }

    #[test]
    fn golay_pair_members_bounded_by_two() {
        for a in [seq(2, &[0, 0, 0, 1]), seq(2, &[0, 0, 1, 0])] {
            assert!(pmepr(&a, 64).unwrap().value <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn small_oversampling_rejected() {
        assert_eq!(pmepr(&seq(2, &[0, 1]), 3), Err(AnalysisError::OversampleTooSmall(3)));
    }

    fn arb_seq() -> impl Strategy<Value = QarySequence> {
        (prop::sample::select(vec![2u32, 3, 4, 8]), 1usize..=24).prop_flat_map(|(q, len)| {
            prop::collection::vec(0..q, len).prop_map(move |e| QarySequence::new(q, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn fft_matches_direct_evaluation(a in arb_seq(), k in 4usize..8) {
            prop_assert!((pmepr(&a, k).unwrap().value - direct(&a, k)).abs() < 1e-9);
        }

        #[test]
        fn doubling_oversampling_never_decreases(a in arb_seq(), k in 4usize..16) {
            let lo = pmepr(&a, k).unwrap().value;
            let hi = pmepr(&a, 2 * k).unwrap().value;
            prop_assert!(hi >= lo - 1e-12);
        }

        #[test]
        fn bounded_by_length(a in arb_seq()) {
            prop_assert!(pmepr(&a, 16).unwrap().value <= a.len() as f64 + 1e-9);
        }
    }
}
