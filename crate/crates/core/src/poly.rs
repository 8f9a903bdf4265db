//! Exact coefficient vectors of products of geometric polynomials
//! `1 + x^s + x^{2s} + ... + x^{(k-1)s}`.
//!
//! Every count in this crate (constant-sum layers, VT-type code sizes) is a
//! coefficient of such a product. Coefficients never exceed the product of the
//! `k`s, so a `u128` accumulator is exact whenever that product fits; otherwise
//! the same routine runs over `BigUint`.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bound on the number of coefficients materialised at once.
pub const DEFAULT_DEGREE_CAP: usize = 10_000_000;

pub trait Count:
    Clone + Zero + One + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl<T> Count for T where T: Clone + Zero + One + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>
{}

/// `coeffs * (1 + x^step + ... + x^{(k-1) step})`, by a sliding window along
/// each residue class of `step`.
pub fn mul_geometric<T: Count>(coeffs: &[T], k: usize, step: usize) -> Vec<T> {
    assert!(k >= 1 && step >= 1);
    let len = coeffs.len() + (k - 1) * step;
    let span = k * step;
    let mut out: Vec<T> = Vec::with_capacity(len);
    for e in 0..len {
        let mut v = if e >= step {
            out[e - step].clone()
        } else {
            T::zero()
        };
        if let Some(c) = coeffs.get(e) {
            v += c;
        }
        if e >= span {
            if let Some(c) = coeffs.get(e - span) {
                v -= c;
            }
        }
        out.push(v);
    }
    out
}

/// Degree of `prod_i (1 + x^{s_i} + ... + x^{(k-1) s_i})`.
pub fn product_degree(k: usize, steps: &[usize]) -> Option<usize> {
    steps
        .iter()
        .try_fold(0usize, |acc, &s| acc.checked_add((k - 1).checked_mul(s)?))
}

/// Coefficients of `prod_i (1 + x^{s_i} + ... + x^{(k-1) s_i})`.
pub fn geometric_product<T: Count>(k: usize, steps: &[usize]) -> Vec<T> {
    steps
        .iter()
        .fold(vec![T::one()], |acc, &s| mul_geometric(&acc, k, s))
}

/// Whether `k^len` fits a `u128`, i.e. whether the fast path is exact.
fn fits_u128(k: usize, len: usize) -> bool {
    u32::try_from(len)
        .ok()
        .and_then(|l| (k as u128).checked_pow(l))
        .is_some()
}

fn check_cap(k: usize, steps: &[usize], cap: usize) -> Result<usize> {
    let degree = product_degree(k, steps).ok_or(Error::ResourceCap {
        what: "generating-function degree",
        requested: u128::MAX,
        cap: cap as u128,
    })?;
    if degree >= cap {
        return Err(Error::ResourceCap {
            what: "generating-function degree",
            requested: degree as u128 + 1,
            cap: cap as u128,
        });
    }
    Ok(degree)
}

/// Full coefficient table as arbitrary-precision integers.
pub fn product_table(k: usize, steps: &[usize], cap: usize) -> Result<CountTable> {
    check_cap(k, steps, cap)?;
    let counts = if fits_u128(k, steps.len()) {
        geometric_product::<u128>(k, steps)
            .into_iter()
            .map(BigUint::from)
            .collect()
    } else {
        geometric_product::<BigUint>(k, steps)
    };
    Ok(CountTable { counts })
}

/// A single coefficient; avoids materialising big integers for the whole table.
pub fn product_coefficient(
    k: usize,
    steps: &[usize],
    exponent: i128,
    cap: usize,
) -> Result<BigUint> {
    let degree = check_cap(k, steps, cap)?;
    if exponent < 0 || exponent > degree as i128 {
        return Ok(BigUint::zero());
    }
    let e = exponent as usize;
    if fits_u128(k, steps.len()) {
        Ok(BigUint::from(geometric_product::<u128>(k, steps)[e]))
    } else {
        Ok(geometric_product::<BigUint>(k, steps).swap_remove(e))
    }
}

/// Exponent-indexed coefficients of a generating-function product; the
/// lowest exponent is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(counts: Vec<BigUint>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn degree(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Coefficient at `exponent`, zero outside the support.
    pub fn get(&self, exponent: i128) -> BigUint {
        usize::try_from(exponent)
            .ok()
            .and_then(|e| self.counts.get(e))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn max(&self) -> BigUint {
        self.counts.iter().max().cloned().unwrap_or_default()
    }

    /// Every exponent attaining the maximum, ascending.
    pub fn argmax(&self) -> Vec<usize> {
        let m = self.max();
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == m)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate()
    }

    /// `(exponent, count)` pairs as `u64` when every count fits.
    pub fn to_u64_pairs(&self) -> Option<Vec<(usize, u64)>> {
        self.counts
            .iter()
            .enumerate()
            .map(|(e, c)| c.to_u64().map(|c| (e, c)))
            .collect()
    }
}
