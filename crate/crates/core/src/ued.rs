//! Codes detecting unidirectional errors of level `ell`: the constant-sum
//! layers `P_i` and their unions `C_a` over sums `i = a (mod ell n + 1)`.

use num_bigint::BigUint;

use crate::channel::{Direction, ErrorVector};
use crate::code::{AllWords, CodeMode, CodeParams, Codebook, Symbol, Word};
use crate::error::{Error, Result};
use crate::poly::{product_coefficient, product_table, DEFAULT_DEGREE_CAP};
use crate::uec::compositions;

fn layer_words(params: &CodeParams, i: u64) -> Vec<Word> {
    compositions(params.q(), params.n(), i)
        .into_iter()
        .map(|w| {
            w.into_iter()
                .map(|s| s as Symbol)
                .collect::<Vec<_>>()
                .into()
        })
        .collect()
}

/// `P_i`, the words with coordinate sum `i`. Empty when `i` is out of range.
pub fn build_pi(params: &CodeParams, i: u64) -> Codebook {
    Codebook::from_sorted_unchecked(*params, CodeMode::Ued, layer_words(params, i))
}

/// `|P_i|`, the coefficient of `x^i` in `(1 + x + ... + x^{q-1})^n`.
pub fn count_pi(params: &CodeParams, i: u64) -> Result<BigUint> {
    product_coefficient(
        params.q() as usize,
        &vec![1; params.n()],
        i.into(),
        DEFAULT_DEGREE_CAP,
    )
}

/// `|P_0|, ..., |P_{n(q-1)}|`.
pub fn layer_sizes(params: &CodeParams) -> Result<Vec<BigUint>> {
    Ok(product_table(
        params.q() as usize,
        &vec![1; params.n()],
        DEFAULT_DEGREE_CAP,
    )?
    .counts()
    .to_vec())
}

fn modulus(params: &CodeParams) -> u64 {
    u64::from(params.ell()) * params.n() as u64 + 1
}

fn check_a(params: &CodeParams, a: u64) -> Result<()> {
    if a >= modulus(params) {
        return Err(Error::InvalidArgument(format!(
            "a = {a} outside [0, {}]",
            modulus(params) - 1
        )));
    }
    Ok(())
}

/// `C_a`, the union of the layers `P_i` with `i = a (mod ell n + 1)`.
pub fn build_ca(params: &CodeParams, a: u64) -> Result<Codebook> {
    check_a(params, a)?;
    let top = params.n() as u64 * u64::from(params.max_symbol());
    let mut words: Vec<Word> = (a..=top)
        .step_by(modulus(params) as usize)
        .flat_map(|i| layer_words(params, i))
        .collect();
    words.sort_unstable();
    Ok(Codebook::from_sorted_unchecked(
        *params,
        CodeMode::Ued,
        words,
    ))
}

/// `|C_a|` without materialising the code.
pub fn count_ca(params: &CodeParams, a: u64) -> Result<BigUint> {
    check_a(params, a)?;
    let sizes = layer_sizes(params)?;
    Ok(sizes
        .iter()
        .skip(a as usize)
        .step_by(modulus(params) as usize)
        .sum())
}

/// The `a` with the largest `C_a`, smallest on ties, and its size.
pub fn best_ca(params: &CodeParams) -> Result<(u64, BigUint)> {
    let sizes = layer_sizes(params)?;
    let m = modulus(params) as usize;
    let mut best = (0u64, BigUint::default());
    for a in 0..m {
        let size: BigUint = sizes.iter().skip(a).step_by(m).sum();
        if size > best.1 {
            best = (a as u64, size);
        }
    }
    Ok(best)
}

/// Operational check: no nonzero unidirectional error of level `ell` moves
/// a codeword onto another codeword.
pub fn detects_all(c: &Codebook) -> bool {
    let params = c.params();
    let patterns: Vec<Word> = AllWords::new(params.ell() + 1, params.n())
        .skip(1)
        .collect();
    c.iter().all(|x| {
        patterns.iter().all(|mags| {
            [Direction::Up, Direction::Down].into_iter().all(|dir| {
                let e = ErrorVector::new(mags.symbols().to_vec(), dir);
                crate::channel::apply(x, &e, &params).map_or(true, |y| !c.contains(&y))
            })
        })
    })
}
