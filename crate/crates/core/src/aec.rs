//! Optimal codes against asymmetric errors of level `ell`.
//!
//! The code is every word whose symbols are multiples of `ell + 1`. It has
//! `ceil(q / (ell + 1))^n` words, which is the largest possible size, and a
//! received word is decoded by rounding each symbol down to a multiple of
//! `ell + 1`.

use num_bigint::BigUint;

use crate::code::{AllWords, CodeMode, CodeParams, Codebook, Symbol, Word};
use crate::error::{Error, Result};

/// Size of the optimal code, `ceil(q / (ell + 1))^n`.
pub fn capacity(params: &CodeParams) -> BigUint {
    BigUint::from(params.levels()).pow(params.n() as u32)
}

/// The optimal code, held implicitly by its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AecCode {
    params: CodeParams,
}

impl AecCode {
    pub fn new(params: CodeParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    /// Number of symbol levels, `b`.
    pub fn levels(&self) -> u32 {
        self.params.levels()
    }

    pub fn capacity(&self) -> BigUint {
        capacity(&self.params)
    }

    fn step(&self) -> u32 {
        self.params.ell() + 1
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.params.check_word(word).is_ok()
            && word.iter().all(|&s| u32::from(s) % self.step() == 0)
    }

    /// Maps base-`b` digits to the codeword with symbols `digit * (ell + 1)`.
    pub fn encode(&self, message: &[u32]) -> Result<Word> {
        if message.len() != self.params.n() {
            return Err(Error::LengthMismatch {
                expected: self.params.n(),
                found: message.len(),
            });
        }
        let b = self.levels();
        message
            .iter()
            .map(|&d| {
                if d >= b {
                    Err(Error::InvalidArgument(format!(
                        "digit {d} outside [0, {}]",
                        b - 1
                    )))
                } else {
                    Ok((d * self.step()) as Symbol)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Inverse of [`AecCode::encode`] on codewords.
    pub fn message(&self, codeword: &Word) -> Result<Vec<u32>> {
        if !self.contains(codeword) {
            return Err(Error::InvalidArgument(format!(
                "{codeword} is not a codeword"
            )));
        }
        Ok(codeword
            .iter()
            .map(|&s| u32::from(s) / self.step())
            .collect())
    }

    /// Rounds every symbol down to the nearest multiple of `ell + 1`.
    pub fn decode(&self, received: &Word) -> Result<Word> {
        self.params.check_word(received)?;
        let step = self.step();
        Ok(received
            .iter()
            .map(|&s| (u32::from(s) / step * step) as Symbol)
            .collect::<Vec<_>>()
            .into())
    }

    /// Lazily enumerates codewords in lexicographic order.
    pub fn codewords(&self) -> impl Iterator<Item = Word> + '_ {
        let step = self.step() as Symbol;
        AllWords::new(self.levels(), self.params.n())
            .map(move |w| w.iter().map(|&d| d * step).collect::<Vec<_>>().into())
    }

    /// Materialises the code; refuses more than `cap` words.
    pub fn build(&self, cap: usize) -> Result<Codebook> {
        let size = self.capacity();
        if size > BigUint::from(cap) {
            return Err(Error::ResourceCap {
                what: "codebook size",
                requested: u128::try_from(&size).unwrap_or(u128::MAX),
                cap: cap as u128,
            });
        }
        Ok(Codebook::from_sorted_unchecked(
            self.params,
            CodeMode::Aec,
            self.codewords().collect(),
        ))
    }
}
