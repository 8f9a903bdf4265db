//! The codes `C_n(r)`: `sum_i (ell+1)^i x_i = alpha S_n + r` with
//! `S_n = ((ell+1)^n - 1) / ell` and `alpha = floor((q-1)/2)`.

use num_bigint::BigUint;
use num_traits::One;

use super::LinearCode;
use crate::channel::{Direction, ErrorVector};
use crate::code::{CodeParams, Symbol, Word};
use crate::error::{Error, Result};
use crate::poly::{product_coefficient, product_table, CountTable, DEFAULT_DEGREE_CAP};

fn overflow() -> Error {
    Error::InvalidArgument("power coefficients overflow i64".into())
}

/// `(ell+1)^i` for `i < n`.
pub fn power_coeffs(params: &CodeParams) -> Result<Vec<i64>> {
    let base = i64::from(params.ell() + 1);
    (0..params.n())
        .map(|i| base.checked_pow(i as u32).ok_or_else(overflow))
        .collect()
}

/// `S_n = 1 + (ell+1) + ... + (ell+1)^{n-1}`.
pub fn s_n(params: &CodeParams) -> Result<i64> {
    power_coeffs(params)?
        .into_iter()
        .try_fold(0i64, |acc, c| acc.checked_add(c))
        .ok_or_else(overflow)
}

pub fn alpha(params: &CodeParams) -> i64 {
    i64::from(params.max_symbol() / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerCodeSpec {
    params: CodeParams,
    r: i64,
}

impl PowerCodeSpec {
    pub fn new(params: CodeParams, r: i64) -> Result<Self> {
        let spec = Self { params, r };
        spec.constant()?;
        Ok(spec)
    }

    /// The spec whose constant is `a`, i.e. `r = a - alpha S_n`.
    pub fn with_constant(params: CodeParams, a: i64) -> Result<Self> {
        let base = alpha(&params)
            .checked_mul(s_n(&params)?)
            .ok_or_else(overflow)?;
        Self::new(params, a.checked_sub(base).ok_or_else(overflow)?)
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s_n(&self) -> i64 {
        s_n(&self.params).expect("checked in new")
    }

    pub fn alpha(&self) -> i64 {
        alpha(&self.params)
    }

    pub fn constant(&self) -> Result<i64> {
        alpha(&self.params)
            .checked_mul(s_n(&self.params)?)
            .and_then(|x| x.checked_add(self.r))
            .ok_or_else(overflow)
    }

    pub fn linear_code(&self) -> LinearCode {
        LinearCode::new(
            self.params,
            power_coeffs(&self.params).expect("checked in new"),
            self.constant().expect("checked in new"),
        )
        .expect("power coefficients are nonzero")
    }
}

/// Corrects one unidirectional error of level `ell`. The syndrome
/// difference `a' - a` is, up to sign, the error read as an `(ell+1)`-ary
/// number.
pub fn decode_power(y: &Word, spec: &PowerCodeSpec) -> Result<(Word, ErrorVector)> {
    let params = spec.params();
    params.check_word(y)?;
    let base = i128::from(params.ell() + 1);
    let received: i128 = y
        .iter()
        .rev()
        .fold(0i128, |acc, &s| acc * base + i128::from(s));
    let diff = received - i128::from(spec.constant()?);
    let direction = if diff >= 0 {
        Direction::Up
    } else {
        Direction::Down
    };
    let mut rest = diff.unsigned_abs();
    let mut mags = Vec::with_capacity(params.n());
    for _ in 0..params.n() {
        mags.push((rest % base as u128) as Symbol);
        rest /= base as u128;
    }
    if rest != 0 {
        return Err(Error::DecodeFailure(format!(
            "syndrome difference {diff} exceeds the correctable range"
        )));
    }
    let top = i64::from(params.max_symbol());
    let x: Vec<Symbol> = y
        .iter()
        .zip(&mags)
        .enumerate()
        .map(|(i, (&s, &e))| {
            let v = match direction {
                Direction::Up => i64::from(s) - i64::from(e),
                Direction::Down => i64::from(s) + i64::from(e),
            };
            if (0..=top).contains(&v) {
                Ok(v as Symbol)
            } else {
                Err(Error::DecodeFailure(format!(
                    "symbol {i} leaves the alphabet"
                )))
            }
        })
        .collect::<Result<_>>()?;
    Ok((x.into(), ErrorVector::new(mags, direction)))
}

fn steps(params: &CodeParams) -> Result<Vec<usize>> {
    power_coeffs(params)?
        .into_iter()
        .map(|c| usize::try_from(c).map_err(|_| overflow()))
        .collect()
}

/// `gamma_n(r) = |C_n(r)|`.
pub fn gamma(params: &CodeParams, r: i64) -> Result<BigUint> {
    let e = i128::from(alpha(params)) * i128::from(s_n(params)?) + i128::from(r);
    product_coefficient(params.q() as usize, &steps(params)?, e, DEFAULT_DEGREE_CAP)
}

/// Coefficients of `prod_i f(x^{(ell+1)^i})`; entry `e` is the size of the
/// power-coefficient code with constant `e`.
pub fn gamma_table(params: &CodeParams) -> Result<CountTable> {
    gamma_table_capped(params, DEFAULT_DEGREE_CAP)
}

pub fn gamma_table_capped(params: &CodeParams, cap: usize) -> Result<CountTable> {
    product_table(params.q() as usize, &steps(params)?, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMax {
    pub max: BigUint,
    /// Every maximising `r`, ascending.
    pub offsets: Vec<i64>,
}

pub fn gamma_max(params: &CodeParams) -> Result<GammaMax> {
    let table = gamma_table(params)?;
    let shift = alpha(params) * s_n(params)?;
    Ok(GammaMax {
        max: table.max(),
        offsets: table
            .argmax()
            .into_iter()
            .map(|e| e as i64 - shift)
            .collect(),
    })
}

/// `c_0, ..., c_{n_max}` with `c_n = gamma_n(r)` for the given `q`, `ell`
/// and `c_0 = 1` when `r = 0` (the empty word solves the empty equation).
pub fn gamma_sequence(q: u32, ell: u32, r: i64, n_max: usize) -> Result<Vec<BigUint>> {
    let mut out = vec![if r == 0 {
        BigUint::one()
    } else {
        BigUint::default()
    }];
    for n in 1..=n_max {
        out.push(gamma(&CodeParams::new(q, ell, n)?, r)?);
    }
    Ok(out)
}
