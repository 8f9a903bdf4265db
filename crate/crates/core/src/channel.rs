//! Operational model of the level-`ell` asymmetric and unidirectional channels.
//!
//! An asymmetric error adds a vector `e` in `[0, ell]^n` to the transmitted
//! word. A unidirectional error either adds or subtracts such a vector, the
//! same sign in every coordinate. Outputs must stay inside `[0, q-1]^n`.
//!
//! Random error patterns are drawn from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64`, so a seed reproduces the same stream on every
//! platform.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{CodeParams, Symbol, Word};
use crate::distance::{comparable_raw, dmax_raw};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "up" | "+" => Ok(Direction::Up),
            "down" | "-" => Ok(Direction::Down),
            other => Err(Error::InvalidArgument(format!(
                "unknown direction {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelMode {
    Asymmetric,
    Unidirectional,
}

/// Per-coordinate magnitudes in `[0, ell]` plus one sign for the whole word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErrorVector {
    pub magnitudes: Vec<Symbol>,
    pub direction: Direction,
}

impl ErrorVector {
    pub fn new(magnitudes: Vec<Symbol>, direction: Direction) -> Self {
        Self {
            magnitudes,
            direction,
        }
    }

    pub fn zero(n: usize, direction: Direction) -> Self {
        Self::new(vec![0; n], direction)
    }

    pub fn is_zero(&self) -> bool {
        self.magnitudes.iter().all(|&m| m == 0)
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn max_magnitude(&self) -> u32 {
        self.magnitudes.iter().copied().max().map_or(0, u32::from)
    }
}

impl fmt::Display for ErrorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            Word::from(self.magnitudes.clone()),
            self.direction
        )
    }
}

/// Sends `x` through the channel with error `e`.
pub fn apply(x: &Word, e: &ErrorVector, params: &CodeParams) -> Result<Word> {
    params.check_word(x)?;
    if e.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: e.len(),
        });
    }
    if e.max_magnitude() > params.ell() {
        return Err(Error::InvalidArgument(format!(
            "error magnitude {} exceeds level {}",
            e.max_magnitude(),
            params.ell()
        )));
    }
    let top = params.max_symbol();
    x.iter()
        .zip(&e.magnitudes)
        .enumerate()
        .map(|(position, (&s, &m))| {
            let (s, m) = (u32::from(s), u32::from(m));
            let out = match e.direction {
                Direction::Up => Some(s + m).filter(|&v| v <= top),
                Direction::Down => s.checked_sub(m),
            };
            out.map(|v| v as Symbol)
                .ok_or(Error::OutOfAlphabet { position })
        })
        .collect::<Result<Vec<_>>>()
        .map(Word::from)
}

fn box_product(ranges: &[(Symbol, Symbol)], out: &mut BTreeSet<Word>) {
    let mut cur: Vec<Symbol> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.insert(Word::from(cur.clone()));
        let mut i = cur.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
        }
    }
}

/// All outputs `x + e` (and, for the unidirectional channel, `x - e`) with
/// `e` in `[0, ell]^n` that stay inside the alphabet.
pub fn reachable(x: &Word, params: &CodeParams, mode: ChannelMode) -> BTreeSet<Word> {
    let ell = params.ell();
    let top = params.max_symbol();
    let mut out = BTreeSet::new();
    let up: Vec<(Symbol, Symbol)> = x
        .iter()
        .map(|&s| (s, (u32::from(s) + ell).min(top) as Symbol))
        .collect();
    box_product(&up, &mut out);
    if mode == ChannelMode::Unidirectional {
        let down: Vec<(Symbol, Symbol)> = x
            .iter()
            .map(|&s| (u32::from(s).saturating_sub(ell) as Symbol, s))
            .collect();
        box_product(&down, &mut out);
    }
    out
}

/// A word both `x` and `y` can be turned into, built coordinate-wise from the
/// distance condition rather than by search. `None` when no such word exists.
pub fn common_output(x: &Word, y: &Word, params: &CodeParams, mode: ChannelMode) -> Option<Word> {
    if x.len() != y.len() {
        return None;
    }
    let ell = params.ell();
    let d = dmax_raw(x, y);
    if d <= ell {
        // e_i = max(0, y_i - x_i), f_i = max(0, x_i - y_i)
        return Some(
            x.iter()
                .zip(y.iter())
                .map(|(&a, &b)| a.max(b))
                .collect::<Vec<_>>()
                .into(),
        );
    }
    if mode == ChannelMode::Asymmetric || d > 2 * ell || !comparable_raw(x, y) {
        return None;
    }
    // lo + ceil((hi - lo) / 2) = hi - floor((hi - lo) / 2)
    let (lo, hi) = if x.iter().zip(y.iter()).all(|(a, b)| a <= b) {
        (x, y)
    } else {
        (y, x)
    };
    Some(
        lo.iter()
            .zip(hi.iter())
            .map(|(&a, &b)| a + (b - a).div_ceil(2))
            .collect::<Vec<_>>()
            .into(),
    )
}

/// Whether some output is reachable from both words.
pub fn confusable(x: &Word, y: &Word, params: &CodeParams, mode: ChannelMode) -> bool {
    common_output(x, y, params, mode).is_some()
}

/// The error taking `x` to `y`, if it is unidirectional of level at most
/// `ell` (asymmetric means the direction must be up). `None` on length
/// mismatch. The zero error is reported as up.
pub fn error_between(x: &Word, y: &Word, ell: u32, mode: ChannelMode) -> Option<ErrorVector> {
    if x.len() != y.len() {
        return None;
    }
    let up = x.iter().zip(y.iter()).all(|(a, b)| b >= a);
    let down = x.iter().zip(y.iter()).all(|(a, b)| b <= a);
    let direction = match (up, down, mode) {
        (true, _, _) => Direction::Up,
        (false, true, ChannelMode::Unidirectional) => Direction::Down,
        _ => return None,
    };
    let magnitudes: Vec<Symbol> = x
        .iter()
        .zip(y.iter())
        .map(|(a, b)| a.abs_diff(*b))
        .collect();
    (magnitudes.iter().all(|&m| u32::from(m) <= ell))
        .then(|| ErrorVector::new(magnitudes, direction))
}

/// Decodes against an explicit codebook: the unique codeword from which
/// `y` is reachable.
pub fn decode_by_search(
    c: &crate::code::Codebook,
    y: &Word,
    mode: ChannelMode,
) -> Result<(Word, ErrorVector)> {
    c.params().check_word(y)?;
    let ell = c.params().ell();
    let mut found: Option<(Word, ErrorVector)> = None;
    for x in c.iter() {
        if let Some(e) = error_between(x, y, ell, mode) {
            if found.is_some() {
                return Err(Error::DecodeFailure(format!(
                    "{y} is reachable from several codewords"
                )));
            }
            found = Some((x.clone(), e));
        }
    }
    found.ok_or_else(|| Error::DecodeFailure(format!("{y} is not reachable from any codeword")))
}

/// Distribution of each error magnitude.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum WeightProfile {
    /// Uniform on `[0, ell]`.
    #[default]
    Uniform,
    /// Uniform on `[0, level]` for some `level <= ell`.
    UpTo(u32),
    /// `weights[k]` is the relative weight of magnitude `k`.
    Weights(Vec<f64>),
}

/// ChaCha8 generator for the given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_error_with<R: Rng + ?Sized>(
    rng: &mut R,
    params: &CodeParams,
    direction: Direction,
    profile: &WeightProfile,
) -> Result<ErrorVector> {
    let n = params.n();
    let ell = params.ell();
    let magnitudes = match profile {
        WeightProfile::Uniform => (0..n)
            .map(|_| rng.random_range(0..=ell) as Symbol)
            .collect(),
        WeightProfile::UpTo(level) => {
            if *level > ell {
                return Err(Error::InvalidArgument(format!(
                    "profile level {level} exceeds error level {ell}"
                )));
            }
            (0..n)
                .map(|_| rng.random_range(0..=*level) as Symbol)
                .collect()
        }
        WeightProfile::Weights(w) => {
            if w.is_empty() || w.len() > ell as usize + 1 {
                return Err(Error::InvalidArgument(format!(
                    "expected between 1 and {} weights, got {}",
                    ell + 1,
                    w.len()
                )));
            }
            let dist = WeightedIndex::new(w).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            (0..n).map(|_| dist.sample(rng) as Symbol).collect()
        }
    };
    Ok(ErrorVector::new(magnitudes, direction))
}

/// Deterministic in `seed`.
pub fn sample_error(
    params: &CodeParams,
    direction: Direction,
    profile: &WeightProfile,
    seed: u64,
) -> Result<ErrorVector> {
    sample_error_with(&mut seeded_rng(seed), params, direction, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(q: u32, ell: u32, n: usize) -> CodeParams {
        CodeParams::new(q, ell, n).unwrap()
    }

    #[test]
    fn apply_examples() {
        let params = p(4, 1, 3);
        let e = ErrorVector::new(vec![1, 1, 0], Direction::Up);
        assert_eq!(
            apply(&Word::from([1, 1, 1]), &e, &params).unwrap(),
            Word::from([2, 2, 1])
        );
        let x = Word::from([3, 0, 2]);
        assert_eq!(
            apply(&x, &ErrorVector::zero(3, Direction::Down), &params).unwrap(),
            x
        );
        let down = ErrorVector::new(vec![1, 0], Direction::Down);
        assert_eq!(
            apply(&Word::from([0, 1]), &down, &p(4, 1, 2)),
            Err(Error::OutOfAlphabet { position: 0 })
        );
        let over = ErrorVector::new(vec![0, 1], Direction::Up);
        assert_eq!(
            apply(&Word::from([0, 3]), &over, &p(4, 1, 2)),
            Err(Error::OutOfAlphabet { position: 1 })
        );
        let too_big = ErrorVector::new(vec![2, 0], Direction::Up);
        assert!(apply(&Word::from([0, 0]), &too_big, &p(4, 1, 2)).is_err());
    }

    #[test]
    fn reachable_examples() {
        let asym = reachable(&Word::from([0]), &p(3, 1, 1), ChannelMode::Asymmetric);
        assert_eq!(
            asym.into_iter().collect::<Vec<_>>(),
            vec![Word::from([0]), Word::from([1])]
        );
        let uni = reachable(&Word::from([1]), &p(3, 1, 1), ChannelMode::Unidirectional);
        assert_eq!(uni.len(), 3);
    }

    #[test]
    fn reachable_size_is_product_formula() {
        for (q, ell, n) in [(4, 1, 3), (5, 2, 2), (7, 2, 2), (4, 2, 3)] {
            let params = p(q, ell, n);
            for x in params.all_words() {
                let expected: usize = x
                    .iter()
                    .map(|&s| (ell.min(q - 1 - u32::from(s)) + 1) as usize)
                    .product();
                assert_eq!(
                    reachable(&x, &params, ChannelMode::Asymmetric).len(),
                    expected
                );
            }
        }
    }

    #[test]
    fn confusable_examples() {
        let params = p(3, 1, 2);
        assert!(!confusable(
            &Word::from([0, 2]),
            &Word::from([1, 0]),
            &params,
            ChannelMode::Asymmetric
        ));
        let (x, y) = (Word::from([0, 0]), Word::from([2, 2]));
        assert_eq!(
            common_output(&x, &y, &params, ChannelMode::Unidirectional),
            Some(Word::from([1, 1]))
        );
        assert!(!confusable(&x, &y, &params, ChannelMode::Asymmetric));
        let q5 = p(5, 2, 2);
        let (x, y) = (Word::from([0, 4]), Word::from([2, 2]));
        assert_eq!(dmax(&x, &y), 2);
        assert_eq!(
            common_output(&x, &y, &q5, ChannelMode::Asymmetric),
            Some(Word::from([2, 4]))
        );
    }

    fn dmax(x: &Word, y: &Word) -> u32 {
        crate::distance::dmax(x, y).unwrap()
    }

    #[test]
    fn channel_equivalences_exhaustive() {
        for q in 3..=4u32 {
            for ell in 1..=(q - 2).min(2) {
                for n in 1..=2 {
                    let params = p(q, ell, n);
                    let words: Vec<Word> = params.all_words().collect();
                    for x in &words {
                        let rx_a = reachable(x, &params, ChannelMode::Asymmetric);
                        let rx_u = reachable(x, &params, ChannelMode::Unidirectional);
                        for y in &words {
                            let ry_a = reachable(y, &params, ChannelMode::Asymmetric);
                            let ry_u = reachable(y, &params, ChannelMode::Unidirectional);
                            let meet_a = !rx_a.is_disjoint(&ry_a);
                            let meet_u = !rx_u.is_disjoint(&ry_u);
                            let d = dmax(x, y);
                            let cmp = comparable_raw(x, y);
                            assert_eq!(confusable(x, y, &params, ChannelMode::Asymmetric), meet_a);
                            assert_eq!(meet_a, d <= ell);
                            assert_eq!(
                                confusable(x, y, &params, ChannelMode::Unidirectional),
                                meet_u
                            );
                            assert_eq!(meet_u, d <= ell || (cmp && d <= 2 * ell));
                            if let Some(z) =
                                common_output(x, y, &params, ChannelMode::Unidirectional)
                            {
                                assert!(rx_u.contains(&z) && ry_u.contains(&z));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let params = p(7, 2, 16);
        let a = sample_error(&params, Direction::Up, &WeightProfile::Uniform, 42).unwrap();
        let b = sample_error(&params, Direction::Up, &WeightProfile::Uniform, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.max_magnitude() <= 2);
        let z = sample_error(&params, Direction::Down, &WeightProfile::UpTo(0), 9).unwrap();
        assert!(z.is_zero());
        assert!(sample_error(&params, Direction::Up, &WeightProfile::UpTo(3), 1).is_err());
        let w = sample_error(
            &params,
            Direction::Up,
            &WeightProfile::Weights(vec![0.0, 1.0]),
            3,
        )
        .unwrap();
        assert!(w.magnitudes.iter().all(|&m| m == 1));
        assert!(sample_error(
            &params,
            Direction::Up,
            &WeightProfile::Weights(vec![1.0; 4]),
            3
        )
        .is_err());
    }

    #[test]
    fn sampler_uniform_frequencies() {
        let params = p(5, 2, 1);
        let mut rng = seeded_rng(2024);
        let trials = 10_000u32;
        let mut counts = [0u32; 3];
        for _ in 0..trials {
            let e = sample_error_with(&mut rng, &params, Direction::Up, &WeightProfile::Uniform)
                .unwrap();
            counts[e.magnitudes[0] as usize] += 1;
        }
        let p = 1.0 / 3.0;
        let sigma = (f64::from(trials) * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!(
                (f64::from(c) - f64::from(trials) * p).abs() <= 5.0 * sigma,
                "{counts:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn applied_output_is_reachable(
            symbols in proptest::collection::vec(0u16..6, 1..5),
            mags in proptest::collection::vec(0u16..3, 5),
            up in any::<bool>(),
        ) {
            let params = p(6, 2, symbols.len());
            let x = Word::from(symbols.clone());
            let dir = if up { Direction::Up } else { Direction::Down };
            let e = ErrorVector::new(mags[..symbols.len()].to_vec(), dir);
            if let Ok(out) = apply(&x, &e, &params) {
                let mode = if up { ChannelMode::Asymmetric } else { ChannelMode::Unidirectional };
                prop_assert!(reachable(&x, &params, mode).contains(&out));
            }
        }

        #[test]
        fn random_length_three_pairs_agree(a in 0u64..64, b in 0u64..64, ell in 1u32..3) {
            let params = p(4, ell, 3);
            let x = Word::from_index(a, 4, 3);
            let y = Word::from_index(b, 4, 3);
            for mode in [ChannelMode::Asymmetric, ChannelMode::Unidirectional] {
                let meet = !reachable(&x, &params, mode).is_disjoint(&reachable(&y, &params, mode));
                prop_assert_eq!(confusable(&x, &y, &params, mode), meet);
            }
        }
    }

    #[test]
    fn error_between_examples() {
        let x = Word::from([1, 1, 1]);
        let e = error_between(&x, &Word::from([2, 2, 1]), 1, ChannelMode::Asymmetric).unwrap();
        assert_eq!(e, ErrorVector::new(vec![1, 1, 0], Direction::Up));
        let e = error_between(&x, &Word::from([0, 1, 0]), 1, ChannelMode::Unidirectional).unwrap();
        assert_eq!(e.direction, Direction::Down);
        assert!(error_between(&x, &Word::from([0, 1, 0]), 1, ChannelMode::Asymmetric).is_none());
        assert!(error_between(&x, &Word::from([3, 1, 1]), 1, ChannelMode::Asymmetric).is_none());
        assert!(
            error_between(&x, &Word::from([2, 0, 1]), 1, ChannelMode::Unidirectional).is_none()
        );
    }

    #[test]
    fn search_decoding() {
        use crate::code::{CodeMode, Codebook};
        let params = p(4, 1, 2);
        let c = Codebook::new(
            params,
            CodeMode::Uec,
            vec![Word::from([0, 0]), Word::from([3, 3])],
        )
        .unwrap();
        let (x, e) =
            decode_by_search(&c, &Word::from([1, 0]), ChannelMode::Unidirectional).unwrap();
        assert_eq!((x, e.direction), (Word::from([0, 0]), Direction::Up));
        assert!(decode_by_search(&c, &Word::from([0, 3]), ChannelMode::Unidirectional).is_err());
        let bad = Codebook::new(
            params,
            CodeMode::Uec,
            vec![Word::from([0, 0]), Word::from([1, 1])],
        )
        .unwrap();
        assert!(decode_by_search(&bad, &Word::from([1, 1]), ChannelMode::Unidirectional).is_err());
    }
}
