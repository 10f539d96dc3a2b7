//! Exact arithmetic in the ring of integers `Z[ζ_q]`.
//!
//! Elements are stored as their canonical residue modulo the `q`-th
//! cyclotomic polynomial `Φ_q`, so two elements are equal exactly when their
//! coefficient vectors are equal and the zero test needs no tolerance. All
//! integer arithmetic is checked: an overflow is reported as
//! [`CyclotomicError::Overflow`], never wrapped.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("modulus q must be positive")]
    ZeroModulus,
    #[error("modulus q = {0} is not supported, need q >= 2")]
    DegenerateModulus(u32),
    #[error("root exponent {e} out of range for q = {q}")]
    ExponentOutOfRange { e: u32, q: u32 },
    #[error("mismatched moduli: {left} vs {right}")]
    MismatchedModulus { left: u32, right: u32 },
    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,
    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, CyclotomicError>;

/// Exponent `e` of the root of unity `ζ_q^e`, always reduced into `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootExponent {
    e: u32,
    q: u32,
}

impl RootExponent {
    pub fn new(e: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(CyclotomicError::ZeroModulus);
        }
        if e >= q {
            return Err(CyclotomicError::ExponentOutOfRange { e, q });
        }
        Ok(RootExponent { e, q })
    }

    /// Reduces any signed exponent modulo `q`.
    pub fn wrapping(e: i64, q: u32) -> Self {
        assert!(q > 0, "modulus must be positive");
        RootExponent {
            e: e.rem_euclid(q as i64) as u32,
            q,
        }
    }

    pub fn exponent(self) -> u32 {
        self.e
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    pub fn conj(self) -> RootExponent {
        RootExponent {
            e: (self.q - self.e) % self.q,
            q: self.q,
        }
    }
}

impl std::ops::Mul for RootExponent {
    type Output = RootExponent;

    fn mul(self, other: RootExponent) -> RootExponent {
        assert_eq!(self.q, other.q, "mismatched root moduli");
        RootExponent {
            e: (self.e + other.e) % self.q,
            q: self.q,
        }
    }
}

/// Integer polynomial with coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    q: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicPoly {
    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree of `Φ_q`, which is Euler's totient `φ(q)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for CyclotomicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{}x", a)?,
                (_, 1) => write!(f, "x^{}", k)?,
                _ => write!(f, "{}x^{}", a, k)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact quotient of `num` by the monic `den`; `None` if the remainder is nonzero.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    if num.len() < den.len() {
        return if num.iter().all(|&c| c == 0) {
            Some(vec![0])
        } else {
            None
        };
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] = rem[k + i].checked_sub(c.checked_mul(d)?)?;
        }
    }
    if rem.iter().all(|&c| c == 0) {
        Some(quot)
    } else {
        None
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or(CyclotomicError::Overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or(CyclotomicError::Overflow)?;
        }
    }
    Ok(out)
}

/// Computes `Φ_q` as `(x^q - 1) / ∏_{d | q, d < q} Φ_d`.
pub fn cyclotomic_polynomial(q: u32) -> Result<CyclotomicPoly> {
    if q == 0 {
        return Err(CyclotomicError::ZeroModulus);
    }
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    let mut den = vec![1i64];
    for d in (1..q).filter(|d| q.is_multiple_of(*d)) {
        den = poly_mul(&den, cyclotomic_polynomial(d)?.coeffs())?;
    }
    let coeffs = exact_div_monic(&num, &den).expect("cyclotomic division is exact");
    Ok(CyclotomicPoly { q, coeffs })
}

/// Arithmetic context for `Z[ζ_q]`: `Φ_q` and the reduced forms of every `x^e`.
#[derive(Debug)]
pub struct CyclotomicField {
    q: u32,
    phi: CyclotomicPoly,
    roots: Vec<Vec<i64>>,
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CyclotomicField {
    /// Returns the shared context for `q`, building it on first use.
    pub fn get(q: u32) -> Result<Arc<CyclotomicField>> {
        if q == 0 {
            return Err(CyclotomicError::ZeroModulus);
        }
        if q == 1 {
            return Err(CyclotomicError::DegenerateModulus(q));
        }
        let mut cache = field_cache().lock().unwrap_or_else(|p| p.into_inner());
        if let Some(f) = cache.get(&q) {
            return Ok(Arc::clone(f));
        }
        let field = Arc::new(Self::build(q)?);
        cache.insert(q, Arc::clone(&field));
        Ok(field)
    }

    fn build(q: u32) -> Result<Self> {
        let phi = cyclotomic_polynomial(q)?;
        let deg = phi.degree();
        let mut roots = Vec::with_capacity(q as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..q {
            roots.push(cur.clone());
            // multiply by x and fold the top coefficient back through Φ_q
            let top = cur[deg - 1];
            for k in (1..deg).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            for (c, &p) in cur.iter_mut().zip(&phi.coeffs) {
                *c = c
                    .checked_sub(top.checked_mul(p).ok_or(CyclotomicError::Overflow)?)
                    .ok_or(CyclotomicError::Overflow)?;
            }
        }
        Ok(CyclotomicField { q, phi, roots })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn polynomial(&self) -> &CyclotomicPoly {
        &self.phi
    }

    /// Number of canonical coefficients, `φ(q)`.
    pub fn rank(&self) -> usize {
        self.phi.degree()
    }

    fn root_form(&self, e: usize) -> &[i64] {
        &self.roots[e % self.q as usize]
    }
}

/// Element of `Z[ζ_q]` in canonical form.
#[derive(Clone)]
pub struct CyclotomicInt {
    field: Arc<CyclotomicField>,
    coeffs: Vec<i64>,
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.field.q == other.field.q && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicInt(q={}, {:?})", self.field.q, self.coeffs)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = CyclotomicPoly {
            q: self.field.q,
            coeffs: self.coeffs.clone(),
        };
        write!(f, "{}", poly.to_string().replace('x', "ζ"))
    }
}

fn accumulate(acc: &mut [i64], form: &[i64], scale: i64) -> Result<()> {
    if scale == 0 {
        return Ok(());
    }
    for (a, &f) in acc.iter_mut().zip(form) {
        let p = f.checked_mul(scale).ok_or(CyclotomicError::Overflow)?;
        *a = a.checked_add(p).ok_or(CyclotomicError::Overflow)?;
    }
    Ok(())
}

impl CyclotomicInt {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicInt {
            field: Arc::clone(field),
            coeffs: vec![0; field.rank()],
        }
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = k;
        z
    }

    /// Embeds `ζ_q^e`.
    pub fn from_root(field: &Arc<CyclotomicField>, e: u32) -> Result<Self> {
        if e >= field.q {
            return Err(CyclotomicError::ExponentOutOfRange { e, q: field.q });
        }
        Ok(CyclotomicInt {
            field: Arc::clone(field),
            coeffs: field.root_form(e as usize).to_vec(),
        })
    }

    /// Builds `∑_e counts[e]·ζ^e` from a raw exponent-count vector of length `q`.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Result<Self> {
        let mut acc = vec![0i64; field.rank()];
        for (e, &c) in counts.iter().enumerate() {
            accumulate(&mut acc, field.root_form(e), c)?;
        }
        Ok(CyclotomicInt {
            field: Arc::clone(field),
            coeffs: acc,
        })
    }

    /// Canonical form of an arbitrary integer polynomial in `ζ`.
    pub fn from_raw(field: &Arc<CyclotomicField>, raw: &[i64]) -> Result<Self> {
        let mut acc = vec![0i64; field.rank()];
        for (e, &c) in raw.iter().enumerate() {
            accumulate(&mut acc, field.root_form(e), c)?;
        }
        Ok(CyclotomicInt {
            field: Arc::clone(field),
            coeffs: acc,
        })
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// The exponent `e` if this element is exactly `ζ^e`.
    pub fn as_root(&self) -> Option<u32> {
        self.field
            .roots
            .iter()
            .position(|r| *r == self.coeffs)
            .map(|e| e as u32)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.q != other.field.q {
            return Err(CyclotomicError::MismatchedModulus {
                left: self.field.q,
                right: other.field.q,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(CyclotomicError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicInt {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.try_neg()?)
    }

    pub fn try_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_neg().ok_or(CyclotomicError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicInt {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let raw = poly_mul(&self.coeffs, &other.coeffs)?;
        Self::from_raw(&self.field, &raw)
    }

    /// Multiplies by `ζ^e` without a general product.
    pub fn mul_root(&self, e: u32) -> Result<Self> {
        let mut acc = vec![0i64; self.field.rank()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            accumulate(&mut acc, self.field.root_form(k + e as usize), c)?;
        }
        Ok(CyclotomicInt {
            field: Arc::clone(&self.field),
            coeffs: acc,
        })
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{q-k}`, extended linearly.
    pub fn conj(&self) -> Result<Self> {
        let q = self.field.q as usize;
        let mut acc = vec![0i64; self.field.rank()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            accumulate(&mut acc, self.field.root_form((q - k) % q), c)?;
        }
        Ok(CyclotomicInt {
            field: Arc::clone(&self.field),
            coeffs: acc,
        })
    }

    /// Numerical value under `ζ_q ↦ exp(2πi/q)`.
    pub fn to_complex(&self) -> Complex64 {
        let q = self.field.q as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / q))
            .sum()
    }
}

/// Dense square matrix over `Z[ζ_q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicMatrix {
    dim: usize,
    entries: Vec<CyclotomicInt>,
}

impl CyclotomicMatrix {
    pub fn zero(field: &Arc<CyclotomicField>, dim: usize) -> Self {
        CyclotomicMatrix {
            dim,
            entries: vec![CyclotomicInt::zero(field); dim * dim],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = CyclotomicInt::from_integer(field, 1);
        }
        m
    }

    /// Row-major construction; panics if `entries.len() != dim²`.
    pub fn from_entries(dim: usize, entries: Vec<CyclotomicInt>) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {} entries", dim * dim);
        CyclotomicMatrix { dim, entries }
    }

    pub fn from_integers(field: &Arc<CyclotomicField>, rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.iter().map(|&k| CyclotomicInt::from_integer(field, k))
            })
            .collect();
        CyclotomicMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicInt {
        &self.entries[i * self.dim + j]
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(CyclotomicError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let field = self.entries[0].field();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicInt::zero(field);
                for k in 0..n {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(CyclotomicMatrix { dim: n, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(q: u32) -> Arc<CyclotomicField> {
        CyclotomicField::get(q).unwrap()
    }

    fn root(q: u32, e: u32) -> CyclotomicInt {
        CyclotomicInt::from_root(&field(q), e).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).unwrap().coeffs(), &[1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8).unwrap().coeffs(), &[1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(0), Err(CyclotomicError::ZeroModulus));
    }

    #[test]
    fn phi6_matches_division_oracle() {
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1)), done independently here
        let den = poly_mul(&poly_mul(&[-1, 1], &[1, 1]).unwrap(), &[1, 1, 1]).unwrap();
        let oracle = exact_div_monic(&[-1, 0, 0, 0, 0, 0, 1], &den).unwrap();
        assert_eq!(oracle, vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap().coeffs(), oracle.as_slice());
        assert_eq!(cyclotomic_polynomial(6).unwrap().to_string(), "x^2 - x + 1");
    }

    #[test]
    fn phi_divides_x_q_minus_one() {
        for q in 1..=30u32 {
            let phi = cyclotomic_polynomial(q).unwrap();
            let mut num = vec![0i64; q as usize + 1];
            num[0] = -1;
            num[q as usize] = 1;
            assert!(exact_div_monic(&num, phi.coeffs()).is_some(), "q = {}", q);
            assert_eq!(*phi.coeffs().last().unwrap(), 1);
        }
        // φ(12) = 4, φ(9) = 6, φ(7) = 6
        assert_eq!(cyclotomic_polynomial(12).unwrap().degree(), 4);
        assert_eq!(cyclotomic_polynomial(9).unwrap().degree(), 6);
        assert_eq!(cyclotomic_polynomial(7).unwrap().degree(), 6);
    }

    #[test]
    fn degenerate_modulus_rejected() {
        assert_eq!(CyclotomicField::get(1).unwrap_err(), CyclotomicError::DegenerateModulus(1));
        assert_eq!(CyclotomicField::get(0).unwrap_err(), CyclotomicError::ZeroModulus);
    }

    #[test]
    fn from_root_canonical_forms() {
        assert_eq!(root(4, 0).coeffs(), &[1, 0]);
        assert_eq!(root(4, 2).coeffs(), &[-1, 0]);
        // x^5 mod (x^4 + 1) = -x
        assert_eq!(root(8, 5).coeffs(), &[0, -1, 0, 0]);
        assert!(matches!(
            CyclotomicInt::from_root(&field(4), 4),
            Err(CyclotomicError::ExponentOutOfRange { e: 4, q: 4 })
        ));
    }

    #[test]
    fn ring_operation_examples() {
        assert!(root(4, 1).try_add(&root(4, 3)).unwrap().is_zero());
        assert_eq!(root(2, 0).try_mul(&root(2, 1)).unwrap(), root(2, 1));
        assert_eq!(root(4, 1).conj().unwrap(), root(4, 3));
        assert!(matches!(
            root(4, 1).try_add(&root(8, 1)),
            Err(CyclotomicError::MismatchedModulus { left: 4, right: 8 })
        ));
    }

    #[test]
    fn zero_tests() {
        let f = field(4);
        let s = (0..4).fold(CyclotomicInt::zero(&f), |acc, e| acc.try_add(&root(4, e)).unwrap());
        assert!(s.is_zero());
        assert!(!root(2, 0).is_zero());
        assert!(root(8, 0).try_add(&root(8, 4)).unwrap().is_zero());
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for q in 2..=24u32 {
            let f = field(q);
            let s = (0..q).fold(CyclotomicInt::zero(&f), |acc, e| acc.try_add(&root(q, e)).unwrap());
            assert!(s.is_zero(), "q = {}", q);
        }
    }

    #[test]
    fn complex_embedding() {
        let z = root(4, 1).to_complex();
        assert!((z.re).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
        assert_eq!(CyclotomicInt::zero(&field(4)).to_complex(), Complex64::new(0.0, 0.0));
        let w = root(3, 1).to_complex();
        assert!((w.re + 0.5).abs() < 1e-9 && (w.im - 0.866_025_403_784_438_6).abs() < 1e-9);
    }

    #[test]
    fn overflow_is_reported() {
        let f = field(4);
        let big = CyclotomicInt::from_integer(&f, i64::MAX);
        assert_eq!(big.try_add(&big), Err(CyclotomicError::Overflow));
        assert_eq!(big.try_mul(&big), Err(CyclotomicError::Overflow));
        assert_eq!(CyclotomicInt::from_integer(&f, i64::MIN).try_neg(), Err(CyclotomicError::Overflow));
    }

    #[test]
    fn as_root_identifies_units() {
        for q in [2u32, 3, 4, 6, 8, 12] {
            for e in 0..q {
                assert_eq!(root(q, e).as_root(), Some(e));
            }
            assert_eq!(CyclotomicInt::from_integer(&field(q), 2).as_root(), None);
        }
    }

    #[test]
    fn matrix_product_small() {
        let f = field(4);
        let a = CyclotomicMatrix::from_integers(&f, &[vec![1, 2], vec![3, 4]]);
        let b = CyclotomicMatrix::from_integers(&f, &[vec![0, 1], vec![1, 0]]);
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p, CyclotomicMatrix::from_integers(&f, &[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.try_mul(&CyclotomicMatrix::identity(&f, 2)).unwrap(), a);
    }

    fn arb_element() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>)> {
        prop::sample::select(vec![2u32, 3, 4, 5, 6, 8, 9, 10, 12]).prop_flat_map(|q| {
            let n = q as usize;
            (
                Just(q),
                prop::collection::vec(-100i64..=100, n),
                prop::collection::vec(-100i64..=100, n),
            )
        })
    }

    proptest! {
        #[test]
        fn root_products_add_exponents(q in 2u32..20, e1 in 0u32..20, e2 in 0u32..20) {
            let (e1, e2) = (e1 % q, e2 % q);
            prop_assert_eq!(root(q, e1).try_mul(&root(q, e2)).unwrap(), root(q, (e1 + e2) % q));
            prop_assert_eq!(root(q, e1).mul_root(e2).unwrap(), root(q, (e1 + e2) % q));
            let (r1, r2) = (RootExponent::new(e1, q).unwrap(), RootExponent::new(e2, q).unwrap());
            prop_assert_eq!(root(q, (r1 * r2).exponent()), root(q, e1).try_mul(&root(q, e2)).unwrap());
            prop_assert_eq!(root(q, r1.conj().exponent()), root(q, e1).conj().unwrap());
            prop_assert_eq!(RootExponent::wrapping(e1 as i64 - q as i64, q), r1);
        }

        #[test]
        fn norm_is_nonnegative_real((q, a, _b) in arb_element()) {
            let x = CyclotomicInt::from_raw(&field(q), &a).unwrap();
            let n = x.try_mul(&x.conj().unwrap()).unwrap().to_complex();
            prop_assert!(n.im.abs() <= 1e-9 * (1.0 + n.re.abs()));
            prop_assert!(n.re >= -1e-9);
        }

        #[test]
        fn add_negation_is_canonical_zero((q, a, _b) in arb_element()) {
            let x = CyclotomicInt::from_raw(&field(q), &a).unwrap();
            let z = x.try_add(&x.try_neg().unwrap()).unwrap();
            prop_assert!(z.coeffs().iter().all(|&c| c == 0));
        }

        #[test]
        fn exact_and_float_products_agree((q, a, b) in arb_element()) {
            let f = field(q);
            let x = CyclotomicInt::from_raw(&f, &a).unwrap();
            let y = CyclotomicInt::from_raw(&f, &b).unwrap();
            let exact = x.try_mul(&y).unwrap().to_complex();
            let approx = x.to_complex() * y.to_complex();
            prop_assert!((exact - approx).norm() <= 1e-9 * (1.0 + approx.norm()));
        }

        #[test]
        fn raw_and_canonical_embeddings_agree((q, a, _b) in arb_element()) {
            let x = CyclotomicInt::from_raw(&field(q), &a).unwrap();
            let direct: Complex64 = a.iter().enumerate()
                .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / q as f64))
                .sum();
            // both sides carry rounding proportional to their own 1-norm
            let l1_raw: f64 = a.iter().map(|c| c.abs() as f64).sum();
            let l1_canon: f64 = x.coeffs().iter().map(|c| c.abs() as f64).sum();
            prop_assert!((x.to_complex() - direct).norm() <= 1e-12 * l1_raw.max(l1_canon).max(1.0));
        }
    }
}
