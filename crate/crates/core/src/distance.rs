//! The asymmetric and unidirectional distances and the pairwise validity
//! criteria they induce.
//!
//! A code corrects all asymmetric errors of level `ell` iff every pair of
//! distinct codewords has `dmax >= ell + 1`, and all unidirectional errors iff
//! `du >= 2 ell + 1`. It detects all unidirectional errors iff every distinct
//! pair is incomparable or has `dmax >= ell + 1`.

use crate::code::{CodeMode, Codebook, Symbol, Word};
use crate::error::{Error, Result};

fn same_len(x: &Word, y: &Word) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

pub(crate) fn dmax_raw(x: &[Symbol], y: &[Symbol]) -> u32 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| u32::from(a.abs_diff(b)))
        .max()
        .unwrap_or(0)
}

pub(crate) fn comparable_raw(x: &[Symbol], y: &[Symbol]) -> bool {
    let mut x_ge = true;
    let mut y_ge = true;
    for (&a, &b) in x.iter().zip(y) {
        x_ge &= a >= b;
        y_ge &= b >= a;
        if !x_ge && !y_ge {
            return false;
        }
    }
    true
}

pub(crate) fn du_raw(x: &[Symbol], y: &[Symbol]) -> u32 {
    let d = dmax_raw(x, y);
    if comparable_raw(x, y) {
        d
    } else {
        2 * d
    }
}

/// Largest coordinate-wise absolute difference.
pub fn dmax(x: &Word, y: &Word) -> Result<u32> {
    same_len(x, y)?;
    Ok(dmax_raw(x, y))
}

/// True iff `x >= y` or `y >= x` coordinate-wise.
pub fn comparable(x: &Word, y: &Word) -> Result<bool> {
    same_len(x, y)?;
    Ok(comparable_raw(x, y))
}

/// `dmax` for comparable pairs, `2 dmax` otherwise. Not a metric.
pub fn du(x: &Word, y: &Word) -> Result<u32> {
    same_len(x, y)?;
    Ok(du_raw(x, y))
}

fn all_pairs(c: &Codebook, ok: impl Fn(&[Symbol], &[Symbol]) -> bool) -> bool {
    let words = c.words();
    words
        .iter()
        .enumerate()
        .all(|(i, x)| words[i + 1..].iter().all(|y| ok(x, y)))
}

/// Whether two distinct words may both belong to a code of `mode`.
pub(crate) fn compatible_raw(mode: CodeMode, ell: u32, x: &[Symbol], y: &[Symbol]) -> bool {
    match mode {
        CodeMode::Aec => dmax_raw(x, y) > ell,
        CodeMode::Uec => du_raw(x, y) > 2 * ell,
        CodeMode::Ued => !comparable_raw(x, y) || dmax_raw(x, y) > ell,
    }
}

fn all_compatible(c: &Codebook, mode: CodeMode) -> bool {
    let ell = c.params().ell();
    all_pairs(c, |x, y| compatible_raw(mode, ell, x, y))
}

pub fn is_aec(c: &Codebook) -> bool {
    all_compatible(c, CodeMode::Aec)
}

pub fn is_uec(c: &Codebook) -> bool {
    all_compatible(c, CodeMode::Uec)
}

pub fn is_ued(c: &Codebook) -> bool {
    all_compatible(c, CodeMode::Ued)
}
