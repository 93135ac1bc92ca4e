//! Code construction: a doubled-digit skeleton, then a constrained completion.

mod complete;
mod skeleton;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use complete::{complete_skeleton, complete_skeleton_capped};
pub use skeleton::{extract_skeleton, find_skeleton, find_skeleton_with, validate_skeleton, FormTag, Skeleton};

use crate::audit::{audit, ErrorClass};
use crate::error::SearchError;
use crate::table::{CodeTable, Codeword, BASE};
use crate::transform::{rotate_left, rotate_right};

/// Counters reported by every search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
    /// Most cells filled at any point (skeleton cells included).
    pub max_filled: usize,
}

/// The 120 three-element subsets of the digits.
#[derive(Clone, Debug)]
pub struct TripleClassIndex {
    by_mask: Vec<Option<u8>>,
    sets: Vec<[u8; 3]>,
}

impl Default for TripleClassIndex {
    fn default() -> Self {
        TripleClassIndex::new()
    }
}

impl TripleClassIndex {
    pub fn new() -> TripleClassIndex {
        let mut by_mask = vec![None; 1 << BASE];
        let mut sets = Vec::with_capacity(120);
        for a in 0..BASE as u8 {
            for b in a + 1..BASE as u8 {
                for c in b + 1..BASE as u8 {
                    by_mask[(1usize << a) | (1 << b) | (1 << c)] = Some(sets.len() as u8);
                    sets.push([a, b, c]);
                }
            }
        }
        TripleClassIndex { by_mask, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, i: usize) -> [u8; 3] {
        self.sets[i]
    }

    /// Index of the digit set of a word with three distinct digits.
    pub fn of_word(&self, w: Codeword) -> Option<usize> {
        self.of_cell(w.r.index(), w.c.index(), w.s.get())
    }

    pub(crate) fn of_cell(&self, r: usize, c: usize, s: u8) -> Option<usize> {
        if r == c || r == s as usize || c == s as usize {
            return None;
        }
        self.by_mask[(1 << r) | (1 << c) | (1 << s)].map(usize::from)
    }
}

/// A completed code split into its skeleton and completion words.
#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub table: CodeTable,
    pub skeleton: Skeleton,
    /// The 70 words with three distinct digits.
    pub completion: Vec<Codeword>,
    pub stats: SearchStats,
}

/// Stats of a full skeleton-plus-completion run.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub result: CompletionResult,
    /// Skeletons tried before the one that completed.
    pub skeletons_rejected: usize,
    pub skeleton_nodes: u64,
}

/// Decisions spent on one skeleton before `search_code` tries another.
pub const NODES_PER_SKELETON: u64 = 300_000;

/// Finds a skeleton from `seed` and completes it. A skeleton that is proven
/// infeasible, or not completed within [`NODES_PER_SKELETON`], is replaced
/// by another drawn from the same seed while budget remains.
pub fn search_code(seed: u64, budget: Duration) -> Result<PipelineResult, SearchError> {
    let start = Instant::now();
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut skeleton_nodes = 0;
    for attempt in 0usize.. {
        let attempt_seed = if attempt == 0 { seed } else { seeds.gen() };
        let remaining = budget.checked_sub(start.elapsed()).ok_or(SearchError::Timeout {
            stats: SearchStats {
                nodes: skeleton_nodes,
                elapsed: start.elapsed(),
                max_filled: 0,
            },
        })?;
        let (sk, sk_stats) = find_skeleton_with(attempt_seed, &[])?;
        skeleton_nodes += sk_stats.nodes;
        match complete_skeleton_capped(&sk, attempt_seed, remaining, Some(NODES_PER_SKELETON)) {
            Ok(result) => {
                return Ok(PipelineResult {
                    result,
                    skeletons_rejected: attempt,
                    skeleton_nodes,
                })
            }
            Err(SearchError::Exhausted { .. } | SearchError::NodeLimit { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("attempt loop only exits by returning")
}

/// Left rotation, the table itself, and right rotation.
///
/// Refused unless the table is Latin, multiset-permutation-free and has no
/// triple codewords; those three conditions make the rotations pairwise
/// disjoint.
pub fn construct_disjoint_triple(table: &CodeTable) -> Result<(CodeTable, CodeTable, CodeTable), SearchError> {
    let report = audit(table);
    if !report.is_latin || !report.is_permutation_free() || report.triple_count > 0 {
        return Err(SearchError::Refused {
            counts: vec![
                (ErrorClass::SingleRow, report.count(ErrorClass::SingleRow)),
                (ErrorClass::SingleCol, report.count(ErrorClass::SingleCol)),
                (
                    ErrorClass::PermutationMultiset,
                    report.count(ErrorClass::PermutationMultiset),
                ),
            ],
            triple_count: report.triple_count,
        });
    }
    let left = rotate_left(table).expect("Latin table rotates");
    let right = rotate_right(table).expect("Latin table rotates");
    Ok((left, table.clone(), right))
}
