//! Ground truth by exhaustive search: exact maximum code sizes on the
//! conflict graph of all `q^n` words, operational correction checks through
//! the channel, and a bounds report tying the constructions together.

mod clique;
mod report;

use std::collections::HashMap;

pub use clique::{Bitset, Graph};
pub use report::{bound_report, BoundReport, Check};

use crate::channel::{reachable, ChannelMode};
use crate::code::{CodeMode, CodeParams, Codebook, Word};
use crate::distance::compatible_raw;
use crate::error::{Error, Result};

/// Default limit on the number of vertices (`q^n`) the exact search accepts.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// Words of `Q^n` as vertices (indexed lexicographically), joined when the
/// pair cannot share a code of the given mode. Codes are exactly the
/// independent sets.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    params: CodeParams,
    mode: CodeMode,
    words: Vec<Word>,
    graph: Graph,
}

impl ConflictGraph {
    pub fn new(params: CodeParams, mode: CodeMode, cap: usize) -> Result<Self> {
        let size = params.space_size().unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::ResourceCap {
                what: "oracle vertices",
                requested: size,
                cap: cap as u128,
            });
        }
        let words: Vec<Word> = params.all_words().collect();
        let mut graph = Graph::new(words.len());
        for (i, x) in words.iter().enumerate() {
            for (j, y) in words.iter().enumerate().skip(i + 1) {
                if !compatible_raw(mode, params.ell(), x, y) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(Self {
            params,
            mode,
            words,
            graph,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn mode(&self) -> CodeMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.graph.has_edge(i, j)
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(a, &i)| {
            vertices[a + 1..]
                .iter()
                .all(|&j| i != j && !self.conflicts(i, j))
        })
    }

    /// Size of a maximum independent set and the lexicographically least
    /// one attaining it.
    pub fn max_independent_set(&self) -> (usize, Codebook) {
        let compl = self.graph.complement();
        let size = compl.max_clique().len();
        let least = compl.least_clique(size);
        let words = least.into_iter().map(|i| self.words[i].clone()).collect();
        (
            size,
            Codebook::from_sorted_unchecked(self.params, self.mode, words),
        )
    }
}

/// Exact maximum code size for `mode` with a canonical witness.
pub fn max_code_exact(params: &CodeParams, mode: CodeMode) -> Result<(usize, Codebook)> {
    max_code_exact_capped(params, mode, DEFAULT_VERTEX_CAP)
}

pub fn max_code_exact_capped(
    params: &CodeParams,
    mode: CodeMode,
    cap: usize,
) -> Result<(usize, Codebook)> {
    Ok(ConflictGraph::new(*params, mode, cap)?.max_independent_set())
}

/// Whether the channel outputs of distinct codewords are pairwise disjoint.
pub fn verify_correction(c: &Codebook, mode: ChannelMode) -> bool {
    let params = c.params();
    let mut owner: HashMap<Word, usize> = HashMap::new();
    for (i, x) in c.iter().enumerate() {
        for y in reachable(x, &params, mode) {
            if let Some(&j) = owner.get(&y) {
                if j != i {
                    return false;
                }
            } else {
                owner.insert(y, i);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aec::AecCode;
    use crate::distance::{is_aec, is_uec};
    use proptest::prelude::*;

    fn p(q: u32, ell: u32, n: usize) -> CodeParams {
        CodeParams::new(q, ell, n).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(max_code_exact(&p(3, 1, 2), CodeMode::Aec).unwrap().0, 4);
        let (size, witness) = max_code_exact(&p(4, 1, 3), CodeMode::Uec).unwrap();
        assert_eq!(size, 8);
        assert!(is_uec(&witness) && verify_correction(&witness, ChannelMode::Unidirectional));
        let (size, witness) = max_code_exact(&p(3, 1, 3), CodeMode::Ued).unwrap();
        assert!(size >= 8);
        assert!(witness.satisfies_mode());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            max_code_exact_capped(&p(4, 1, 3), CodeMode::Aec, 63),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn aec_exact_matches_closed_form() {
        let mut grid = Vec::new();
        for q in 3..=5 {
            for ell in 1..=q - 2 {
                for n in 1..=2 {
                    grid.push(p(q, ell, n));
                }
            }
        }
        for q in 3..=4 {
            for ell in 1..=q - 2 {
                grid.push(p(q, ell, 3));
            }
        }
        for params in grid {
            let (size, witness) = max_code_exact(&params, CodeMode::Aec).unwrap();
            assert_eq!(
                size as u64,
                u64::from(params.levels()).pow(params.n() as u32),
                "{params}"
            );
            assert!(is_aec(&witness) && verify_correction(&witness, ChannelMode::Asymmetric));
            let uec = max_code_exact(&params, CodeMode::Uec).unwrap().0;
            assert!(uec <= size);
        }
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let params = p(3, 1, 2);
        let (size, witness) = max_code_exact(&params, CodeMode::Uec).unwrap();
        let words: Vec<Word> = params.all_words().collect();
        let mut best: Option<Vec<Word>> = None;
        for mask in 0u32..1 << words.len() {
            if mask.count_ones() as usize != size {
                continue;
            }
            let pick: Vec<Word> = (0..words.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| words[i].clone())
                .collect();
            let c = Codebook::new(params, CodeMode::Uec, pick.clone()).unwrap();
            if is_uec(&c) && best.as_ref().is_none_or(|b| pick < *b) {
                best = Some(pick);
            }
        }
        assert_eq!(witness.words(), best.unwrap().as_slice());
    }

    #[test]
    fn deterministic() {
        let a = max_code_exact(&p(4, 1, 2), CodeMode::Ued).unwrap();
        let b = max_code_exact(&p(4, 1, 2), CodeMode::Ued).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn verify_examples() {
        let code = AecCode::new(p(5, 1, 2)).build(100).unwrap();
        assert!(verify_correction(&code, ChannelMode::Asymmetric));
        let bad = Codebook::new(
            p(3, 1, 2),
            CodeMode::Aec,
            vec![Word::from([0, 0]), Word::from([1, 1])],
        )
        .unwrap();
        assert!(!verify_correction(&bad, ChannelMode::Asymmetric));
    }

    fn small_codebook() -> impl Strategy<Value = Codebook> {
        (3u32..=4, 1usize..=3)
            .prop_flat_map(|(q, n)| {
                (
                    Just(q),
                    1..=q - 2,
                    Just(n),
                    prop::collection::btree_set(0..u64::from(q.pow(n as u32)), 1..6),
                )
            })
            .prop_map(|(q, ell, n, idx)| {
                let words = idx.into_iter().map(|i| Word::from_index(i, q, n)).collect();
                Codebook::new(p(q, ell, n), CodeMode::Aec, words).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn operational_check_agrees_with_criteria(c in small_codebook()) {
            prop_assert_eq!(verify_correction(&c, ChannelMode::Asymmetric), is_aec(&c));
            prop_assert_eq!(verify_correction(&c, ChannelMode::Unidirectional), is_uec(&c));
        }
    }
}
