//! Alphabet parameters, words and codebooks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet; symbols are stored as `u16`.
pub const MAX_Q: u32 = 1 << 16;

pub type Symbol = u16;

/// The triple `(q, ell, n)`: alphabet `[0, q-1]`, error level `ell`, length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    q: u32,
    ell: u32,
    n: usize,
}

impl CodeParams {
    /// Requires `1 <= ell <= q - 2`, `n >= 1` and `q <= 2^16`.
    pub fn new(q: u32, ell: u32, n: usize) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::InvalidParams(format!(
                "q = {q} exceeds the ceiling {MAX_Q}"
            )));
        }
        if ell == 0 {
            return Err(Error::InvalidParams(
                "error level must be at least 1".into(),
            ));
        }
        if q < 3 || ell > q - 2 {
            return Err(Error::InvalidParams(format!(
                "error level {ell} requires q >= {} (got q = {q})",
                ell + 2
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParams("length must be at least 1".into()));
        }
        Ok(Self { q, ell, n })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Same alphabet and level, different length.
    pub fn with_len(&self, n: usize) -> Result<Self> {
        Self::new(self.q, self.ell, n)
    }

    /// `b = ceil(q / (ell + 1))`, the number of multiples of `ell + 1` in `[0, q-1]`.
    pub fn levels(&self) -> u32 {
        self.q.div_ceil(self.ell + 1)
    }

    pub fn max_symbol(&self) -> u32 {
        self.q - 1
    }

    /// `q^n` when it fits in a `u128`.
    pub fn space_size(&self) -> Option<u128> {
        let n = u32::try_from(self.n).ok()?;
        u128::from(self.q).checked_pow(n)
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: word.len(),
            });
        }
        for (position, &s) in word.iter().enumerate() {
            if u32::from(s) >= self.q {
                return Err(Error::SymbolOutOfRange {
                    symbol: s.into(),
                    position,
                    max: self.q - 1,
                });
            }
        }
        Ok(())
    }

    /// Iterates `Q^n` in lexicographic order.
    pub fn all_words(&self) -> AllWords {
        AllWords::new(self.q, self.n)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} l={} n={}", self.q, self.ell, self.n)
    }
}

/// A sequence of symbols. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// Word whose base-`q` digits (most significant first) spell `index`.
    pub fn from_index(mut index: u64, q: u32, n: usize) -> Self {
        let mut symbols = vec![0; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % u64::from(q)) as Symbol;
            index /= u64::from(q);
        }
        Self(symbols)
    }

    /// Inverse of [`Word::from_index`]; lexicographic rank in `Q^n`.
    pub fn index(&self, q: u32) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, &s| acc * u64::from(q) + u64::from(s))
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&s| u64::from(s)).sum()
    }

    /// Concatenation `(self; other)`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }
}

impl From<&[Symbol]> for Word {
    fn from(symbols: &[Symbol]) -> Self {
        Self(symbols.to_vec())
    }
}

impl<const N: usize> From<[Symbol; N]> for Word {
    fn from(symbols: [Symbol; N]) -> Self {
        Self(symbols.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts symbols separated by whitespace and/or commas.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<Symbol>()
                    .map_err(|e| Error::InvalidArgument(format!("bad symbol {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Lexicographic odometer over `Q^n`.
#[derive(Debug, Clone)]
pub struct AllWords {
    q: u32,
    current: Option<Vec<Symbol>>,
}

impl AllWords {
    pub fn new(q: u32, n: usize) -> Self {
        Self {
            q,
            current: (q > 0).then(|| vec![0; n]),
        }
    }
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if u32::from(cur[i]) + 1 < self.q {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
        Some(Word(out))
    }
}

/// What a codebook is meant to do against level-`ell` errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeMode {
    /// Corrects all asymmetric errors.
    Aec,
    /// Corrects all unidirectional errors.
    Uec,
    /// Detects all unidirectional errors.
    Ued,
}

impl CodeMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CodeMode::Aec => "aec",
            CodeMode::Uec => "uec",
            CodeMode::Ued => "ued",
        }
    }
}

impl fmt::Display for CodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aec" => Ok(CodeMode::Aec),
            "uec" => Ok(CodeMode::Uec),
            "ued" => Ok(CodeMode::Ued),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

/// A finite set of distinct words, kept in lexicographic order.
///
/// Construction only checks that words are well formed; whether the words
/// actually meet the declared mode is answered by [`Codebook::satisfies_mode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    params: CodeParams,
    mode: CodeMode,
    words: Vec<Word>,
}

impl Codebook {
    pub fn new(params: CodeParams, mode: CodeMode, mut words: Vec<Word>) -> Result<Self> {
        for w in &words {
            params.check_word(w)?;
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidArgument(format!(
                "duplicate word {}",
                pair[0]
            )));
        }
        Ok(Self {
            params,
            mode,
            words,
        })
    }

    /// Caller guarantees well-formed, sorted, distinct words.
    pub(crate) fn from_sorted_unchecked(
        params: CodeParams,
        mode: CodeMode,
        words: Vec<Word>,
    ) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self {
            params,
            mode,
            words,
        }
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn mode(&self) -> CodeMode {
        self.mode
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.binary_search(word).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn with_mode(mut self, mode: CodeMode) -> Self {
        self.mode = mode;
        self
    }

    /// Pairwise criterion for the declared mode.
    pub fn satisfies_mode(&self) -> bool {
        match self.mode {
            CodeMode::Aec => crate::distance::is_aec(self),
            CodeMode::Uec => crate::distance::is_uec(self),
            CodeMode::Ued => crate::distance::is_ued(self),
        }
    }
}

impl<'a> IntoIterator for &'a Codebook {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}
