//! Executable form of the product-to-sum expansion behind the direct
//! coefficient formula.
//!
//! Each factor `F_k(x_0, x_1)` is a matrix-valued function of two bits, given
//! as the quadruple `[F(0,0), F(1,0), F(0,1), F(1,1)]`. For a permutation `π`
//! of `0..n` the identity reads
//!
//! ```text
//! ∏_t (F_π(t)(0,0) + F_π(t)(1,0) + F_π(t)(0,1) + F_π(t)(1,1))
//!     = ∑_{m < 4^n} ∏_t F_π(t)(bit_{2π(t)}(m), bit_{2π(t)+1}(m))
//! ```
//!
//! with both products taken left to right in `t`.

use super::{ConstructionError, Result};
use crate::cyclotomic::CyclotomicMatrix;

/// Both sides of the expansion, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSides {
    pub product_of_sums: CyclotomicMatrix,
    pub sum_of_products: CyclotomicMatrix,
}

impl ExpansionSides {
    pub fn holds(&self) -> bool {
        self.product_of_sums == self.sum_of_products
    }
}

pub fn expansion_sides(factors: &[[CyclotomicMatrix; 4]], ordering: &[usize]) -> Result<ExpansionSides> {
    let n = factors.len();
    if n == 0 {
        return Err(ConstructionError::InvalidSpec("expansion needs at least one factor".into()));
    }
    if ordering.len() != n {
        return Err(ConstructionError::InvalidSpec(format!(
            "ordering has {} entries for {} factors",
            ordering.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    if ordering.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(ConstructionError::InvalidSpec(format!("{:?} is not a permutation", ordering)));
    }
    let dim = factors[0][0].dim();
    for (k, quad) in factors.iter().enumerate() {
        if let Some(bad) = quad.iter().find(|m| m.dim() != dim) {
            return Err(ConstructionError::DimensionMismatch(format!(
                "factor {} has a {}x{} matrix, expected {}x{}",
                k,
                bad.dim(),
                bad.dim(),
                dim,
                dim
            )));
        }
    }

    let mut lhs: Option<CyclotomicMatrix> = None;
    for &k in ordering {
        let quad = &factors[k];
        let sum = quad[1..].iter().try_fold(quad[0].clone(), |acc, m| acc.try_add(m))?;
        lhs = Some(match lhs {
            None => sum,
            Some(p) => p.try_mul(&sum)?,
        });
    }

    let mut rhs: Option<CyclotomicMatrix> = None;
    for m in 0..(1usize << (2 * n)) {
        let mut term: Option<CyclotomicMatrix> = None;
        for &k in ordering {
            // (bit 2k, bit 2k+1) indexes the quadruple as x_0 + 2·x_1
            let f = &factors[k][(m >> (2 * k)) & 3];
            term = Some(match term {
                None => f.clone(),
                Some(p) => p.try_mul(f)?,
            });
        }
        let term = term.expect("n >= 1");
        rhs = Some(match rhs {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }

    Ok(ExpansionSides {
        product_of_sums: lhs.expect("n >= 1"),
        sum_of_products: rhs.expect("4^n >= 1"),
    })
}

/// `true` iff the two sides of the expansion agree exactly.
pub fn lemma3_expansion_check(factors: &[[CyclotomicMatrix; 4]], ordering: &[usize]) -> Result<bool> {
    Ok(expansion_sides(factors, ordering)?.holds())
}
