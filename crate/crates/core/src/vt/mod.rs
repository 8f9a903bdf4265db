//! Codes defined by a single linear equation over the integers,
//! `sum_i a_i x_i = a` with `x` in `Q^n`.
//!
//! [`LinearCode`] is the general form. [`power`] holds the family with
//! coefficients `(ell + 1)^i`, whose sizes are coefficients of
//! `prod_i f(x^{(ell+1)^i})`, `f(x) = 1 + x + ... + x^{q-1}`, and whose
//! received words decode through the `(ell + 1)`-ary digits of the syndrome.
//! [`window`] holds the offset windows on which that family is optimal,
//! the size bounds and the recurrence checker.

pub mod power;
pub mod window;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::code::{CodeMode, CodeParams, Codebook, Symbol, Word};
use crate::error::{Error, Result};
use crate::poly::{product_table, CountTable, DEFAULT_DEGREE_CAP};

pub use power::{
    alpha, decode_power, gamma, gamma_max, gamma_sequence, gamma_table, gamma_table_capped,
    power_coeffs, s_n, GammaMax, PowerCodeSpec,
};
pub use window::{
    extension_conditions_hold, la_u_bounds, optimal_window, recurrence_violation, residue_count,
    verify_recurrence, window_sequence, LaBounds, OptimalWindow, WindowRule,
};

/// Visits every `v` in `[lo, hi]^n` with `sum coeffs_i v_i == target`, in
/// lexicographic order. The visitor returns `false` to stop early.
fn solve_in_box(
    coeffs: &[i64],
    lo: i64,
    hi: i64,
    target: i128,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) {
    let n = coeffs.len();
    // reach[i] = (min, max) of sum_{j >= i} a_j v_j
    let mut reach = vec![(0i128, 0i128); n + 1];
    for i in (0..n).rev() {
        let a = i128::from(coeffs[i]);
        let (x, y) = (a * i128::from(lo), a * i128::from(hi));
        reach[i] = (reach[i + 1].0 + x.min(y), reach[i + 1].1 + x.max(y));
    }
    if target < reach[0].0 || target > reach[0].1 {
        return;
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        rem: i128,
        coeffs: &[i64],
        lo: i64,
        hi: i64,
        reach: &[(i128, i128)],
        cur: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if i == coeffs.len() {
            return if rem == 0 { visit(cur) } else { true };
        }
        let a = i128::from(coeffs[i]);
        let (rmin, rmax) = reach[i + 1];
        // need rmin <= rem - a v <= rmax
        let (vlo, vhi) = if a > 0 {
            (
                Integer::div_ceil(&(rem - rmax), &a),
                Integer::div_floor(&(rem - rmin), &a),
            )
        } else {
            (
                Integer::div_ceil(&(rem - rmin), &a),
                Integer::div_floor(&(rem - rmax), &a),
            )
        };
        let vlo = vlo.max(i128::from(lo));
        let vhi = vhi.min(i128::from(hi));
        let mut v = vlo;
        while v <= vhi {
            cur.push(v as i64);
            let go_on = rec(i + 1, rem - a * v, coeffs, lo, hi, reach, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
            v += 1;
        }
        true
    }

    rec(
        0,
        target,
        coeffs,
        lo,
        hi,
        &reach,
        &mut Vec::with_capacity(n),
        visit,
    );
}

/// A nonzero `v` in `[-ell, ell]^n` or `[0, 2 ell]^n` on the hyperplane
/// `sum a_i v_i = 0`, if any.
pub fn hyperplane_witness(coeffs: &[i64], ell: u32) -> Option<Vec<i64>> {
    let ell = i64::from(ell);
    let mut found = None;
    for (lo, hi) in [(-ell, ell), (0, 2 * ell)] {
        solve_in_box(coeffs, lo, hi, 0, &mut |v| {
            if v.iter().any(|&x| x != 0) {
                found = Some(v.to_vec());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Sufficient condition for every constant to give a code correcting all
/// unidirectional errors of level `ell`: the hyperplane `sum a_i v_i = 0`
/// meets `[-ell, ell]^n` and `[0, 2 ell]^n` only at zero.
pub fn is_uec_hyperplane(coeffs: &[i64], ell: u32) -> bool {
    hyperplane_witness(coeffs, ell).is_none()
}

/// `{x in Q^n : sum a_i x_i = a}` with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    params: CodeParams,
    coeffs: Vec<i64>,
    constant: i64,
}

impl LinearCode {
    pub fn new(params: CodeParams, coeffs: Vec<i64>, constant: i64) -> Result<Self> {
        if coeffs.len() != params.n() {
            return Err(Error::LengthMismatch {
                expected: params.n(),
                found: coeffs.len(),
            });
        }
        if let Some(i) = coeffs.iter().position(|&a| a == 0) {
            return Err(Error::InvalidArgument(format!("coefficient {i} is zero")));
        }
        Ok(Self {
            params,
            coeffs,
            constant,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    pub fn value(&self, word: &Word) -> i128 {
        self.coeffs
            .iter()
            .zip(word.iter())
            .map(|(&a, &x)| i128::from(a) * i128::from(x))
            .sum()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.params.check_word(word).is_ok() && self.value(word) == i128::from(self.constant)
    }

    /// Smallest and largest achievable `sum a_i x_i`.
    pub fn value_range(&self) -> (i128, i128) {
        value_range(&self.coeffs, self.params.q())
    }

    /// All solutions, by depth-first search over coordinates with the
    /// achievable remainder interval pruning each branch. Lexicographic.
    pub fn enumerate(&self) -> Codebook {
        let words = self.solutions(i128::from(self.constant));
        Codebook::from_sorted_unchecked(self.params, CodeMode::Uec, words)
    }

    fn solutions(&self, target: i128) -> Vec<Word> {
        let mut words = Vec::new();
        solve_in_box(
            &self.coeffs,
            0,
            i64::from(self.params.q()) - 1,
            target,
            &mut |v| {
                words.push(v.iter().map(|&s| s as Symbol).collect::<Vec<_>>().into());
                true
            },
        );
        words
    }

    pub fn is_empty(&self) -> bool {
        let mut any = false;
        solve_in_box(
            &self.coeffs,
            0,
            i64::from(self.params.q()) - 1,
            i128::from(self.constant),
            &mut |_| {
                any = true;
                false
            },
        );
        !any
    }

    /// Number of codewords for every constant at once.
    pub fn distribution(&self) -> Result<ValueDistribution> {
        value_distribution(&self.params, &self.coeffs, DEFAULT_DEGREE_CAP)
    }

    /// Complements the coordinates with negative coefficients,
    /// `x_i -> q - 1 - x_i`. The map is an involution between this code and
    /// [`aec_to_uec`] of it.
    pub fn complement_negative(&self, word: &Word) -> Word {
        let top = self.params.max_symbol() as Symbol;
        word.iter()
            .zip(&self.coeffs)
            .map(|(&x, &a)| if a < 0 { top - x } else { x })
            .collect::<Vec<_>>()
            .into()
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(
            f,
            "{} coeffs=({}) a={}",
            self.params,
            coeffs.join(","),
            self.constant
        )
    }
}

fn value_range(coeffs: &[i64], q: u32) -> (i128, i128) {
    let top = i128::from(q) - 1;
    coeffs.iter().fold((0, 0), |(lo, hi), &a| {
        let v = i128::from(a) * top;
        (lo + v.min(0), hi + v.max(0))
    })
}

/// Codeword counts for every constant: `table[e]` solutions for
/// `sum a_i x_i = offset + e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDistribution {
    pub offset: i128,
    pub table: CountTable,
}

impl ValueDistribution {
    pub fn count(&self, constant: i128) -> BigUint {
        self.table.get(constant - self.offset)
    }
}

/// Distribution of `sum a_i x_i` over `Q^n`. A negative coefficient
/// contributes `a_i (q-1) + |a_i| y_i`, so the counts are those of the
/// all-positive product shifted by the sum of the minima.
pub fn value_distribution(
    params: &CodeParams,
    coeffs: &[i64],
    cap: usize,
) -> Result<ValueDistribution> {
    let steps: Vec<usize> = coeffs
        .iter()
        .map(|&a| {
            usize::try_from(a.unsigned_abs())
                .map_err(|_| Error::InvalidArgument("coefficient too large".into()))
        })
        .collect::<Result<_>>()?;
    let table = product_table(params.q() as usize, &steps, cap)?;
    Ok(ValueDistribution {
        offset: value_range(coeffs, params.q()).0,
        table,
    })
}

/// Maps a code to one with all-positive coefficients of the same size:
/// coefficients become `|a_i|` and the constant `a - s (q - 1)`, where `s` is
/// the sum of the negative coefficients. When the input corrects all
/// asymmetric errors the output corrects all unidirectional ones.
pub fn aec_to_uec(code: &LinearCode) -> LinearCode {
    let s: i64 = code.coeffs.iter().filter(|&&a| a < 0).sum();
    LinearCode {
        params: code.params,
        coeffs: code.coeffs.iter().map(|a| a.abs()).collect(),
        constant: code.constant - s * i64::from(code.params.max_symbol()),
    }
}

/// `{z in Q^n : sum a_i z_i = a (mod 2 ell S + 1)}`, `S = sum a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCode {
    params: CodeParams,
    coeffs: Vec<i64>,
    residue: i64,
    modulus: i64,
}

impl CongruenceCode {
    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn contains(&self, word: &Word) -> bool {
        if self.params.check_word(word).is_err() {
            return false;
        }
        let v: i128 = self
            .coeffs
            .iter()
            .zip(word.iter())
            .map(|(&a, &x)| i128::from(a) * i128::from(x))
            .sum();
        v.mod_floor(&i128::from(self.modulus)) == i128::from(self.residue)
    }

    /// Union of the exact-equation codes for every admissible value.
    pub fn enumerate(&self) -> Codebook {
        let (lo, hi) = value_range(&self.coeffs, self.params.q());
        let m = i128::from(self.modulus);
        let mut t = lo + (i128::from(self.residue) - lo).mod_floor(&m);
        let mut words = Vec::new();
        while t <= hi {
            solve_in_box(
                &self.coeffs,
                0,
                i64::from(self.params.q()) - 1,
                t,
                &mut |v| {
                    words.push(Word::from(
                        v.iter().map(|&s| s as Symbol).collect::<Vec<_>>(),
                    ));
                    true
                },
            );
            t += m;
        }
        words.sort_unstable();
        Codebook::from_sorted_unchecked(self.params, CodeMode::Uec, words)
    }
}

/// Relaxes the equation of `code` to a congruence modulo `2 ell S + 1`.
/// Requires positive coefficients whose hyperplane avoids both error boxes.
pub fn congruence_variant(code: &LinearCode) -> Result<CongruenceCode> {
    if code.coeffs.iter().any(|&a| a <= 0) {
        return Err(Error::InvalidArgument(
            "congruence variant needs positive coefficients".into(),
        ));
    }
    if let Some(v) = hyperplane_witness(&code.coeffs, code.params.ell()) {
        return Err(Error::InvalidArgument(format!(
            "hyperplane contains the error pattern {v:?}"
        )));
    }
    let s: i64 = code.coeffs.iter().sum();
    let modulus = 2 * i64::from(code.params.ell()) * s + 1;
    Ok(CongruenceCode {
        params: code.params,
        coeffs: code.coeffs.clone(),
        residue: code.constant.mod_floor(&modulus),
        modulus,
    })
}

/// Single-equation code for `A x B`: the coefficients of `B` are scaled by
/// `M = sum |a_i| (q - 1) + 1` and appended to those of `A`, the constant is
/// `a + M b`.
pub fn direct_product(a: &LinearCode, b: &LinearCode) -> Result<LinearCode> {
    let (pa, pb) = (a.params, b.params);
    if pa.q() != pb.q() || pa.ell() != pb.ell() {
        return Err(Error::InvalidArgument(format!(
            "alphabets differ: {pa} vs {pb}"
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument(
            "direct product needs non-empty codes".into(),
        ));
    }
    let overflow = || Error::InvalidArgument("product coefficients overflow".into());
    let top = i64::from(pa.max_symbol());
    let m = a
        .coeffs
        .iter()
        .try_fold(0i64, |acc, &c| {
            acc.checked_add(c.checked_abs()?.checked_mul(top)?)
        })
        .and_then(|s| s.checked_add(1))
        .ok_or_else(overflow)?;
    let mut coeffs = a.coeffs.clone();
    for &c in &b.coeffs {
        coeffs.push(c.checked_mul(m).ok_or_else(overflow)?);
    }
    let constant = b
        .constant
        .checked_mul(m)
        .and_then(|x| x.checked_add(a.constant))
        .ok_or_else(overflow)?;
    LinearCode::new(pa.with_len(pa.n() + pb.n())?, coeffs, constant)
}

/// Best constant for fixed coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub constant: i128,
    pub size: BigUint,
}

/// Scans every constant in the achievable interval and returns the largest
/// code. Among ties the constant closest to the centre of the interval wins,
/// the smaller one if two are equally close.
pub fn best_constant_scan(params: &CodeParams, coeffs: &[i64]) -> Result<ScanResult> {
    if coeffs.len() != params.n() {
        return Err(Error::LengthMismatch {
            expected: params.n(),
            found: coeffs.len(),
        });
    }
    let is_power = coeffs
        .iter()
        .enumerate()
        .all(|(i, &a)| Some(a) == i64::from(params.ell() + 1).checked_pow(i as u32));
    let dist = if is_power {
        ValueDistribution {
            offset: 0,
            table: gamma_table(params)?,
        }
    } else {
        value_distribution(params, coeffs, DEFAULT_DEGREE_CAP)?
    };
    let (lo, hi) = value_range(coeffs, params.q());
    let centre2 = lo + hi;
    let best = dist.table.max();
    let constant = dist
        .table
        .argmax()
        .into_iter()
        .map(|e| e as i128 + dist.offset)
        .min_by_key(|&c| ((2 * c - centre2).abs(), c))
        .unwrap_or(0);
    Ok(ScanResult {
        constant,
        size: best,
    })
}
