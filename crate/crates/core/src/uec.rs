//! Generic constructions against unidirectional errors of level `ell`.
//!
//! All three start from words whose symbols are multiples of `ell + 1`
//! (pairwise `dmax >= ell + 1`) and then make every pair incomparable:
//!
//! * constant-sum: keep the words whose scaled symbol sum is a fixed `j`;
//! * two-level: `{0, 2 ell + 1}^n`, valid when `q >= 2 ell + 2`;
//! * tail: keep words whose sum lies in a window around the mean and append
//!   the `q`-ary digits of `s2 - sum`, which decrease as the sum grows.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::Zero;

use crate::channel::{Direction, ErrorVector};
use crate::code::{CodeMode, CodeParams, Codebook, Symbol, Word};
use crate::error::{Error, Result};
use crate::poly::{product_coefficient, product_table, DEFAULT_DEGREE_CAP};

/// `floor(n (b - 1) / 2)`, the sum with the most constant-sum words.
pub fn jstar(params: &CodeParams) -> u64 {
    params.n() as u64 * u64::from(params.levels() - 1) / 2
}

/// Number of `(y_1..y_n)` in `[0, b-1]^n` with sum `j`.
pub fn count_constant_sum(params: &CodeParams, j: u64) -> Result<BigUint> {
    let steps = vec![1usize; params.n()];
    product_coefficient(
        params.levels() as usize,
        &steps,
        j.into(),
        DEFAULT_DEGREE_CAP,
    )
}

/// Digit vectors in `[0, b-1]^n` summing to `j`, lexicographic.
pub(crate) fn compositions(b: u32, n: usize, j: u64) -> Vec<Vec<u32>> {
    fn rec(b: u32, left: usize, j: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if j == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_max = (left as u64 - 1) * u64::from(b - 1);
        let lo = j.saturating_sub(rest_max);
        let hi = j.min(u64::from(b - 1));
        for d in lo..=hi {
            cur.push(d as u32);
            rec(b, left - 1, j - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= n as u64 * u64::from(b - 1) {
        rec(b, n, j, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Words of `Q_{ell+1}^n` whose symbols divided by `ell + 1` sum to `j`.
/// Empty when `j` is out of range.
pub fn build_constant_sum(params: &CodeParams, j: u64) -> Codebook {
    let step = params.ell() + 1;
    let words = compositions(params.levels(), params.n(), j)
        .into_iter()
        .map(|ds| {
            ds.into_iter()
                .map(|d| (d * step) as Symbol)
                .collect::<Vec<_>>()
                .into()
        })
        .collect();
    Codebook::from_sorted_unchecked(*params, CodeMode::Uec, words)
}

/// `{0, 2 ell + 1}^n`.
pub fn build_two_level(params: &CodeParams) -> Result<Codebook> {
    let top = 2 * params.ell() + 1;
    if params.q() < top + 1 {
        return Err(Error::InvalidParams(format!(
            "two-level code needs q >= {} (got {})",
            top + 1,
            params.q()
        )));
    }
    let words = crate::code::AllWords::new(2, params.n())
        .map(|w| {
            w.iter()
                .map(|&s| s * top as Symbol)
                .collect::<Vec<_>>()
                .into()
        })
        .collect();
    Ok(Codebook::from_sorted_unchecked(
        *params,
        CodeMode::Uec,
        words,
    ))
}

/// Parameters of the tail construction for data length `params.n()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailCodeSpec {
    params: CodeParams,
    s1: u64,
    s2: u64,
    m: usize,
}

impl TailCodeSpec {
    /// Window `[ceil(n mu - 2 sigma sqrt n), floor(n mu + 2 sigma sqrt n)]`
    /// over sums of `Q_{ell+1}^n` words, with `mu`, `sigma^2` the mean and
    /// variance of a uniform symbol of `Q_{ell+1}`. Computed in exact integer
    /// arithmetic, then clamped to the achievable sums `[0, n (ell+1)(b-1)]`.
    pub fn new(params: CodeParams) -> Self {
        let n = params.n() as u128;
        let step = u128::from(params.ell() + 1);
        let b = u128::from(params.levels());
        // twice the mean of the sum
        let two_mean = n * step * (b - 1);
        // s is inside iff 3 (2s - 2 n mu)^2 <= 4 n (ell+1)^2 (b^2 - 1)
        let bound = 4 * n * step * step * (b * b - 1);
        let mut d = (bound / 3).sqrt();
        while 3 * (d + 1) * (d + 1) <= bound {
            d += 1;
        }
        while 3 * d * d > bound {
            d -= 1;
        }
        if (d + two_mean) % 2 == 1 {
            d -= 1;
        }
        let hi = (two_mean + d) / 2;
        let s1 = two_mean.saturating_sub(hi) as u64;
        let s2 = hi.min(two_mean) as u64;
        Self::with_window(params, s1, s2).expect("window is ordered")
    }

    /// Explicit window; the tail has `m = ceil(log_q(s2 - s1 + 1))` symbols.
    pub fn with_window(params: CodeParams, s1: u64, s2: u64) -> Result<Self> {
        if s1 > s2 {
            return Err(Error::InvalidArgument(format!("empty window [{s1}, {s2}]")));
        }
        let width = u128::from(s2 - s1) + 1;
        let q = u128::from(params.q());
        let mut m = 0usize;
        let mut reach = 1u128;
        while reach < width {
            reach *= q;
            m += 1;
        }
        Ok(Self { params, s1, s2, m })
    }

    /// Parameters of the data part.
    pub fn data_params(&self) -> CodeParams {
        self.params
    }

    /// Parameters of full codewords, length `n + m`.
    pub fn params(&self) -> CodeParams {
        self.params
            .with_len(self.params.n() + self.m)
            .expect("data params are valid")
    }

    pub fn window(&self) -> (u64, u64) {
        (self.s1, self.s2)
    }

    pub fn tail_len(&self) -> usize {
        self.m
    }

    /// Big-endian `q`-ary digits of `s2 - s`, width `m`.
    pub fn phi(&self, s: u64) -> Result<Word> {
        if s < self.s1 || s > self.s2 {
            return Err(Error::InvalidArgument(format!(
                "sum {s} outside window [{}, {}]",
                self.s1, self.s2
            )));
        }
        let q = u64::from(self.params.q());
        let mut v = self.s2 - s;
        let mut digits = vec![0; self.m];
        for slot in digits.iter_mut().rev() {
            *slot = (v % q) as Symbol;
            v /= q;
        }
        Ok(digits.into())
    }

    /// `|X|`: data words whose sum falls in the window.
    pub fn data_size(&self) -> Result<BigUint> {
        let step = u64::from(self.params.ell() + 1);
        let table = product_table(
            self.params.levels() as usize,
            &vec![1; self.params.n()],
            DEFAULT_DEGREE_CAP,
        )?;
        Ok(table
            .iter()
            .filter(|(t, _)| (self.s1..=self.s2).contains(&(*t as u64 * step)))
            .map(|(_, c)| c)
            .sum())
    }

    /// Codeword for a data word from `Q_{ell+1}^n` with sum inside the window.
    pub fn extend(&self, data: &Word) -> Result<Word> {
        self.params.check_word(data)?;
        if data
            .iter()
            .any(|&s| u32::from(s) % (self.params.ell() + 1) != 0)
        {
            return Err(Error::InvalidArgument(format!(
                "{data} is not in Q_(l+1)^n"
            )));
        }
        Ok(data.concat(&self.phi(data.sum())?))
    }

    pub fn build(&self) -> Codebook {
        let b = self.params.levels();
        let step = u64::from(self.params.ell() + 1);
        let n = self.params.n();
        let mut words = Vec::new();
        for t in self.s1.div_ceil(step)..=(self.s2 / step) {
            for ds in compositions(b, n, t) {
                let data: Word = ds
                    .into_iter()
                    .map(|d| (d as u64 * step) as Symbol)
                    .collect::<Vec<_>>()
                    .into();
                words.push(data.concat(&self.phi(t * step).expect("sum in window")));
            }
        }
        words.sort_unstable();
        Codebook::from_sorted_unchecked(self.params(), CodeMode::Uec, words)
    }
}

/// One of the three constructions, with its side information for decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UecCode {
    ConstantSum { params: CodeParams, j: u64 },
    TwoLevel { params: CodeParams },
    Tail(TailCodeSpec),
}

impl UecCode {
    /// Parameters of full codewords.
    pub fn params(&self) -> CodeParams {
        match self {
            UecCode::ConstantSum { params, .. } | UecCode::TwoLevel { params } => *params,
            UecCode::Tail(spec) => spec.params(),
        }
    }

    pub fn build(&self) -> Result<Codebook> {
        match self {
            UecCode::ConstantSum { params, j } => Ok(build_constant_sum(params, *j)),
            UecCode::TwoLevel { params } => build_two_level(params),
            UecCode::Tail(spec) => Ok(spec.build()),
        }
    }

    fn data_len(&self) -> usize {
        match self {
            UecCode::Tail(spec) => spec.data_params().n(),
            _ => self.params().n(),
        }
    }

    fn data_levels(&self) -> Vec<u32> {
        match self {
            UecCode::TwoLevel { params } => vec![0, 2 * params.ell() + 1],
            UecCode::ConstantSum { params, .. } => (0..params.levels())
                .map(|a| a * (params.ell() + 1))
                .collect(),
            UecCode::Tail(spec) => {
                let p = spec.data_params();
                (0..p.levels()).map(|a| a * (p.ell() + 1)).collect()
            }
        }
    }

    /// The full codeword a data candidate stands for, if it is one.
    fn complete(&self, data: Word) -> Option<Word> {
        match self {
            UecCode::ConstantSum { params, j } => {
                let step = u64::from(params.ell() + 1);
                (data.sum() == j * step).then_some(data)
            }
            UecCode::TwoLevel { .. } => Some(data),
            UecCode::Tail(spec) => spec.phi(data.sum()).ok().map(|t| data.concat(&t)),
        }
    }

    pub fn contains(&self, word: &Word) -> bool {
        if self.params().check_word(word).is_err() {
            return false;
        }
        let k = self.data_len();
        let levels = self.data_levels();
        if !word[..k].iter().all(|s| levels.contains(&u32::from(*s))) {
            return false;
        }
        self.complete(Word::from(&word[..k])).as_ref() == Some(word)
    }

    /// Recovers the codeword from a word hit by one unidirectional error.
    ///
    /// The data part is rounded down (an upward error) and up (a downward
    /// error) to the nearest code level; a candidate is accepted when its
    /// side information matches and the received word lies within level
    /// `ell` of it in the corresponding direction.
    pub fn decode(&self, received: &Word) -> Result<(Word, ErrorVector)> {
        let params = self.params();
        params.check_word(received)?;
        let ell = params.ell();
        let k = self.data_len();
        let levels = self.data_levels();

        let round_down: Option<Vec<Symbol>> = received[..k]
            .iter()
            .map(|&s| {
                levels
                    .iter()
                    .rev()
                    .find(|&&l| l <= u32::from(s))
                    .map(|&l| l as Symbol)
            })
            .collect();
        let round_up: Option<Vec<Symbol>> = received[..k]
            .iter()
            .map(|&s| {
                levels
                    .iter()
                    .find(|&&l| l >= u32::from(s))
                    .map(|&l| l as Symbol)
            })
            .collect();

        let mut found: Option<(Word, ErrorVector)> = None;
        for (data, direction) in [(round_down, Direction::Up), (round_up, Direction::Down)] {
            let Some(x) = data.and_then(|d| self.complete(Word::from(d))) else {
                continue;
            };
            let mags: Option<Vec<Symbol>> = x
                .iter()
                .zip(received.iter())
                .map(|(&c, &y)| {
                    let diff = match direction {
                        Direction::Up => y.checked_sub(c),
                        Direction::Down => c.checked_sub(y),
                    }?;
                    (u32::from(diff) <= ell).then_some(diff)
                })
                .collect();
            let Some(mags) = mags else { continue };
            match &found {
                Some((prev, _)) if *prev != x => {
                    return Err(Error::DecodeFailure(format!(
                        "{received} is reachable from both {prev} and {x}"
                    )))
                }
                Some(_) => {}
                None => found = Some((x, ErrorVector::new(mags, direction))),
            }
        }
        found.ok_or_else(|| {
            Error::DecodeFailure(format!(
                "{received} is not within level {ell} of any codeword"
            ))
        })
    }
}

/// Free-function form of [`UecCode::decode`].
pub fn decode_uec(code: &UecCode, received: &Word) -> Result<Word> {
    code.decode(received).map(|(x, _)| x)
}

/// `true` iff the count is at least `3/4 b^n`.
pub fn meets_chebyshev_floor(spec: &TailCodeSpec) -> Result<bool> {
    let p = spec.data_params();
    let total = BigUint::from(p.levels()).pow(p.n() as u32);
    let kept = spec.data_size()?;
    Ok(!kept.is_zero() && kept * 4u8 >= total * 3u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::apply;
    use crate::code::AllWords;
    use crate::distance::{comparable, is_uec};

    fn p(q: u32, ell: u32, n: usize) -> CodeParams {
        CodeParams::new(q, ell, n).unwrap()
    }

    fn brute_count(b: u32, n: usize, j: u64) -> u64 {
        AllWords::new(b, n).filter(|w| w.sum() == j).count() as u64
    }

    #[test]
    fn constant_sum_examples() {
        let c = build_constant_sum(&p(5, 1, 2), 2);
        let expected: Vec<Word> = vec![[0, 4].into(), [2, 2].into(), [4, 0].into()];
        assert_eq!(c.words(), expected.as_slice());
        assert!(is_uec(&c));
        assert_eq!(
            build_constant_sum(&p(5, 1, 3), 0).words(),
            &[Word::zeros(3)]
        );
        assert!(build_constant_sum(&p(5, 1, 2), 5).is_empty());
        // b = 2, n = 3: three digits in {0,1} summing to 3
        let top = build_constant_sum(&p(4, 1, 3), 3);
        assert_eq!(top.len() as u64, brute_count(2, 3, 3));
        assert_eq!(top.words(), &[Word::from([2, 2, 2])]);
    }

    #[test]
    fn jstar_examples() {
        assert_eq!(jstar(&p(5, 1, 2)), 2);
        assert_eq!(jstar(&p(4, 1, 3)), 1);
    }

    #[test]
    fn jstar_is_an_argmax() {
        for q in 3..=6 {
            for ell in 1..=2.min(q - 2) {
                for n in 1..=6 {
                    let params = p(q, ell, n);
                    let b = params.levels();
                    let counts: Vec<u64> = (0..=n as u64 * u64::from(b - 1))
                        .map(|j| brute_count(b, n, j))
                        .collect();
                    let best = counts.iter().max().unwrap();
                    assert_eq!(
                        counts[jstar(&params) as usize],
                        *best,
                        "q={q} l={ell} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_constant_sum_matches_enumeration() {
        assert_eq!(
            count_constant_sum(&p(5, 1, 2), 2).unwrap(),
            BigUint::from(3u8)
        );
        for (q, ell, n) in [(5, 1, 4), (7, 1, 3), (9, 2, 5)] {
            let params = p(q, ell, n);
            let b = params.levels();
            let mut total = BigUint::zero();
            for j in 0..=(n as u64 * u64::from(b - 1) + 2) {
                let c = count_constant_sum(&params, j).unwrap();
                assert_eq!(c, BigUint::from(brute_count(b, n, j)));
                assert_eq!(
                    build_constant_sum(&params, j).len() as u64,
                    brute_count(b, n, j)
                );
                total += c;
            }
            assert_eq!(total, BigUint::from(b).pow(n as u32));
            assert_eq!(count_constant_sum(&params, 0).unwrap(), BigUint::from(1u8));
        }
    }

    #[test]
    fn constant_sum_shape_and_pigeonhole() {
        for (q, ell) in [(4, 1), (5, 1), (7, 2), (9, 2)] {
            let mut ratios = Vec::new();
            for n in 4..=20 {
                let params = p(q, ell, n);
                let b = params.levels();
                let top = count_constant_sum(&params, jstar(&params)).unwrap();
                let space = BigUint::from(b).pow(n as u32);
                assert!(&top * BigUint::from(n as u64 * u64::from(b - 1) + 1) >= space);
                let r = top.to_string().parse::<f64>().unwrap() * (n as f64).sqrt()
                    / space.to_string().parse::<f64>().unwrap();
                ratios.push(r);
            }
            let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().cloned().fold(0.0, f64::max);
            assert!(lo > 0.3 && hi < 1.5, "q={q} l={ell}: {lo}..{hi}");
        }
    }

    #[test]
    fn two_level_examples() {
        let c = build_two_level(&p(4, 1, 2)).unwrap();
        let expected: Vec<Word> = vec![[0, 0].into(), [0, 3].into(), [3, 0].into(), [3, 3].into()];
        assert_eq!(c.words(), expected.as_slice());
        assert_eq!(build_two_level(&p(4, 1, 1)).unwrap().len(), 2);
        assert!(build_two_level(&p(5, 2, 2)).is_err());
        assert!(is_uec(&build_two_level(&p(9, 2, 3)).unwrap()));
    }

    #[test]
    fn tail_window_example() {
        let spec = TailCodeSpec::new(p(4, 1, 4));
        assert_eq!(spec.window(), (0, 8));
        assert_eq!(spec.tail_len(), 2);
        let book = spec.build();
        assert_eq!(book.len(), 16);
        assert_eq!(book.params().n(), 6);
        assert!(is_uec(&book));
        assert_eq!(spec.phi(8).unwrap(), Word::from([0, 0]));
        assert_eq!(spec.phi(0).unwrap(), Word::from([2, 0]));
    }

    #[test]
    fn tail_length_one() {
        let spec = TailCodeSpec::new(p(5, 1, 1));
        let (_, s2) = spec.window();
        let book = spec.build();
        for w in book.iter() {
            let tail = spec.phi(u64::from(w[0])).unwrap();
            assert_eq!(&w[1..], tail.symbols());
            let v = tail.iter().fold(0u64, |a, &d| a * 5 + u64::from(d));
            assert_eq!(v, s2 - u64::from(w[0]));
        }
        assert!(is_uec(&book));
    }

    #[test]
    fn tail_keeps_three_quarters() {
        for q in 3..=6 {
            for ell in 1..=2.min(q - 2) {
                for n in 1..=8 {
                    let spec = TailCodeSpec::new(p(q, ell, n));
                    assert!(meets_chebyshev_floor(&spec).unwrap(), "q={q} l={ell} n={n}");
                    assert_eq!(BigUint::from(spec.build().len()), spec.data_size().unwrap());
                }
            }
        }
    }

    #[test]
    fn tail_breaks_comparability() {
        for (q, ell, n) in [(4, 1, 4), (5, 1, 3), (7, 2, 4), (6, 1, 3)] {
            let spec = TailCodeSpec::new(p(q, ell, n));
            let book = spec.build();
            assert!(is_uec(&book));
            let words = book.words();
            for (i, u) in words.iter().enumerate() {
                for v in &words[i + 1..] {
                    let (xu, xv) = (Word::from(&u[..n]), Word::from(&v[..n]));
                    if comparable(&xu, &xv).unwrap() {
                        let (big, small) = if xu.sum() > xv.sum() { (u, v) } else { (v, u) };
                        assert!(big[n..].iter().zip(&small[n..]).any(|(a, b)| a < b));
                    }
                }
            }
        }
    }

    #[test]
    fn decode_trace() {
        let code = UecCode::ConstantSum {
            params: p(5, 1, 2),
            j: 2,
        };
        assert!(code.decode(&Word::from([1, 3])).is_err());
        let (x, e) = code.decode(&Word::from([1, 2])).unwrap();
        assert_eq!(x, Word::from([2, 2]));
        assert_eq!(e, ErrorVector::new(vec![1, 0], Direction::Down));
        let (x, e) = code.decode(&Word::from([4, 0])).unwrap();
        assert_eq!(x, Word::from([4, 0]));
        assert!(e.is_zero());
    }

    fn exhaustive_soundness(code: &UecCode) {
        let book = code.build().unwrap();
        let params = code.params();
        let errors: Vec<Word> = AllWords::new(params.ell() + 1, params.n()).collect();
        let mut checked = 0;
        for x in book.iter() {
            assert!(code.contains(x));
            for e in &errors {
                for dir in [Direction::Up, Direction::Down] {
                    let ev = ErrorVector::new(e.symbols().to_vec(), dir);
                    if let Ok(y) = apply(x, &ev, &params) {
                        let (got, err) = code.decode(&y).unwrap();
                        assert_eq!(&got, x, "received {y}");
                        assert_eq!(apply(&got, &err, &params).unwrap(), y);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn decode_soundness_all_constructions() {
        let params = p(5, 1, 3);
        exhaustive_soundness(&UecCode::ConstantSum {
            params,
            j: jstar(&params),
        });
        exhaustive_soundness(&UecCode::TwoLevel { params: p(4, 1, 3) });
        exhaustive_soundness(&UecCode::TwoLevel { params: p(7, 2, 2) });
        exhaustive_soundness(&UecCode::Tail(TailCodeSpec::new(p(4, 1, 3))));
        exhaustive_soundness(&UecCode::Tail(TailCodeSpec::new(p(5, 1, 2))));
    }

    #[test]
    fn decode_rejects_out_of_model() {
        let code = UecCode::TwoLevel { params: p(6, 1, 2) };
        // 2 is up from 0 by 2, or down from 3 by 1 -> (3, 3)
        assert_eq!(
            decode_uec(&code, &Word::from([2, 3])).unwrap(),
            Word::from([3, 3])
        );
        // mixed directions
        assert!(code.decode(&Word::from([1, 2])).is_err());
    }
}
