//! Offset windows on which `gamma_n(r)` reaches `ceil(q/(ell+1))^{n-1}`,
//! the size bounds for single-equation codes, and linear recurrence checks.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::code::CodeParams;
use crate::error::{Error, Result};

/// Number of symbols in `[0, q-1]` congruent to `e` modulo `f`, for
/// `0 <= e < f`: `ceil(q/f)` when `e < q mod f`, else `floor(q/f)`.
pub fn residue_count(q: u32, e: u32, f: u32) -> u32 {
    if e < q % f {
        q.div_ceil(f)
    } else {
        q / f
    }
}

/// Which construction produced a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum WindowRule {
    /// `ell + 1` divides `q`.
    Divisible,
    /// `q = 2m(ell+1) + 2c + 1 + delta`.
    Decomposed { m: u32, c: u32, delta: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OptimalWindow {
    pub u: i64,
    pub v: i64,
    #[serde(flatten)]
    pub rule: WindowRule,
}

impl OptimalWindow {
    pub fn contains(&self, r: i64) -> bool {
        (self.u..=self.v).contains(&r)
    }
}

/// The windows `[u_k, v_k]` for `k = 1..=n`, or `None` when neither
/// construction applies to `(q, ell)`.
pub fn window_sequence(q: u32, ell: u32, n: usize) -> Option<(Vec<(i64, i64)>, WindowRule)> {
    let l1 = i64::from(ell) + 1;
    let a = i64::from((q - 1) / 2);
    if q.is_multiple_of(ell + 1) {
        let mut out = vec![(-a, a)];
        for _ in 1..n {
            let (u, v) = *out.last().unwrap();
            out.push((
                l1.checked_mul(u)?.checked_add(a)?,
                l1.checked_mul(v)?.checked_sub(a)?,
            ));
        }
        return Some((out, WindowRule::Divisible));
    }
    let (m, c, delta) = decompose(q, ell)?;
    let eta = if 2 * c + delta < ell {
        0
    } else {
        (ell - delta).div_ceil(2)
    };
    let rem = i64::from(q % (ell + 1));
    let mut lambda = 0i64;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            lambda = l1.checked_mul(lambda)?.checked_sub(i64::from(eta))?;
        }
        let u = lambda.checked_mul(l1)?.checked_sub(i64::from(c))?;
        out.push((u, u + rem - 1));
    }
    Some((out, WindowRule::Decomposed { m, c, delta }))
}

/// First `(m, c, delta)` with `q = 2m(ell+1) + 2c + 1 + delta`,
/// `c <= ell`, `2c + delta != ell` meeting the window conditions, scanning
/// `delta` ascending then `c` descending.
fn decompose(q: u32, ell: u32) -> Option<(u32, u32, u32)> {
    for delta in 0..=1u32 {
        for c in (0..=ell).rev() {
            let head = 2 * c + 1 + delta;
            if 2 * c + delta == ell || head > q || !(q - head).is_multiple_of(2 * (ell + 1)) {
                continue;
            }
            let m = (q - head) / (2 * (ell + 1));
            let half = (ell - delta).div_ceil(2);
            let ok = i64::from(m) <= i64::from(c) - 1 - i64::from(half)
                || (2 * c + delta <= ell && m <= c);
            if ok {
                return Some((m, c, delta));
            }
        }
    }
    None
}

/// Offsets `r` for which `C_n(r)` is provably as large as any
/// single-equation code, or `None` when no construction applies.
pub fn optimal_window(params: &CodeParams) -> Option<OptimalWindow> {
    let (seq, rule) = window_sequence(params.q(), params.ell(), params.n())?;
    let (u, v) = *seq.last()?;
    Some(OptimalWindow { u, v, rule })
}

/// Checks the inductive conditions under which every `r` in `[u_k, v_k]`
/// gives `gamma_k(r) = ceil(q/(ell+1))^{k-1}`; `windows[k-1] = (u_k, v_k)`.
pub fn extension_conditions_hold(q: u32, ell: u32, windows: &[(i64, i64)]) -> bool {
    let l1 = i64::from(ell) + 1;
    let a = i64::from((q - 1) / 2);
    let top = i64::from(q) - 1;
    let Some(&(u1, v1)) = windows.first() else {
        return false;
    };
    if !(0 <= u1 + a && u1 <= v1 && v1 + a <= top) {
        return false;
    }
    let qm = i64::from(q % (ell + 1));
    for k in 0..windows.len() {
        let (u, v) = windows[k];
        if k > 0 {
            let (pu, pv) = windows[k - 1];
            if Integer::div_ceil(&(u + a - top), &l1) < pu || Integer::div_floor(&(v + a), &l1) > pv
            {
                return false;
            }
        }
        if qm != 0 && (u..=v).any(|r| (a + r).mod_floor(&l1) >= qm) {
            return false;
        }
    }
    true
}

/// Bounds on the largest single-equation code correcting unidirectional
/// errors: `ell/(q-1) (q/(ell+1))^n <= LA_u <= ceil(q/(ell+1))^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaBounds {
    pub lower: BigRational,
    pub upper: BigUint,
}

pub fn la_u_bounds(params: &CodeParams) -> Result<LaBounds> {
    let (q, ell, n) = (params.q(), params.ell(), params.n() as u32);
    if q <= ell + 1 {
        return Err(Error::InvalidParams(format!(
            "need q > ell + 1, got {params}"
        )));
    }
    let lower = BigRational::new(BigInt::from(ell), BigInt::from(q - 1))
        * BigRational::new(BigInt::from(q).pow(n), BigInt::from(ell + 1).pow(n));
    Ok(LaBounds {
        lower,
        upper: BigUint::from(params.levels()).pow(n - 1),
    })
}

/// First index `i >= order` with `seq[i] != sum_k rec[k] seq[i-1-k]`.
pub fn recurrence_violation(seq: &[BigInt], rec: &[i64]) -> Option<usize> {
    (rec.len()..seq.len()).find(|&i| {
        let predicted: BigInt = rec
            .iter()
            .enumerate()
            .map(|(k, &c)| BigInt::from(c) * &seq[i - 1 - k])
            .sum();
        predicted != seq[i]
    })
}

/// Whether `seq` is longer than the recurrence order and satisfies
/// `c_i = sum_k rec[k] c_{i-1-k}` throughout.
pub fn verify_recurrence(seq: &[BigInt], rec: &[i64]) -> bool {
    seq.len() > rec.len() && recurrence_violation(seq, rec).is_none()
}
