use thiserror::Error;

use crate::audit::ErrorClass;
use crate::search::SearchStats;
use crate::table::{Codeword, DigitMultiset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("unknown table `{0}` (expected one of verhoeff, disjoint_a, disjoint_b, disjoint_c)")]
    UnknownBuiltin(String),
    #[error("value {value} at row {row}, column {col} is not a digit")]
    DigitOutOfRange { row: usize, col: usize, value: u8 },
    #[error("not a Latin square: bad rows {rows:?}, bad columns {cols:?}")]
    NotLatin { rows: Vec<usize>, cols: Vec<usize> },
    #[error("cell ({row},{col}) assigned twice")]
    DuplicateCell { row: usize, col: usize },
    #[error("cell ({row},{col}) has no codeword")]
    MissingCell { row: usize, col: usize },
    #[error("`{0}` is not a 3-digit word")]
    BadWord(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("ambiguous: multiset {multiset} is shared by {} codewords: {}", words.len(), join_words(words))]
    Ambiguous {
        multiset: DigitMultiset,
        words: Vec<Codeword>,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("digit map must be a permutation of 0..9, got `{0}`")]
    NotAPermutation(String),
    #[error("rotation is undefined: {0}")]
    NotLatin(#[from] TableError),
}

pub(crate) fn join_words(words: &[Codeword]) -> String {
    words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn describe_counts(counts: &[(ErrorClass, usize)]) -> String {
    counts
        .iter()
        .map(|(k, n)| format!("{k}={n}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("not a skeleton: doubled-word census per form (r, c, l) is {census:?}, {triples} triple codewords")]
    NotASkeleton { census: [usize; 3], triples: usize },
    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),
    #[error("time budget exceeded after {} nodes (at most {} cells filled)", stats.nodes, stats.max_filled)]
    Timeout { stats: SearchStats },
    #[error("node limit reached after {} nodes (at most {} cells filled)", stats.nodes, stats.max_filled)]
    NodeLimit { stats: SearchStats },
    #[error("search space exhausted after {} nodes: no solution exists", stats.nodes)]
    Exhausted { stats: SearchStats },
    #[error(
        "refused: table must be Latin, permutation-free and triple-free ({}, triple_count={triple_count})",
        describe_counts(counts)
    )]
    Refused {
        counts: Vec<(ErrorClass, usize)>,
        triple_count: usize,
    },
}
