//! Codeword rotations, digit relabeling and disjointness.
//!
//! Rotations act on the codeword set: `rotate_left` maps every `(r, s, c)` to
//! `(s, c, r)` and `rotate_right` maps it to `(c, r, s)`. The result is a
//! table only because every row (resp. column) of the input is a
//! permutation; otherwise some output cell would be hit twice.

use std::fmt;
use std::str::FromStr;

use crate::error::{TableError, TransformError};
use crate::table::{CodeTable, Codeword, Digit, BASE};

/// A bijection on the ten digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DigitPermutation([Digit; BASE]);

impl DigitPermutation {
    pub fn identity() -> DigitPermutation {
        DigitPermutation(std::array::from_fn(|i| Digit::lit(i as u8)))
    }

    /// `images[i]` is the image of digit `i`.
    pub fn new(images: [u8; BASE]) -> Result<DigitPermutation, TransformError> {
        let mut seen = 0u16;
        let mut out = [Digit::lit(0); BASE];
        for (i, &v) in images.iter().enumerate() {
            let digit = Digit::new(v).ok_or_else(|| TransformError::NotAPermutation(format!("{images:?}")))?;
            seen |= 1 << v;
            out[i] = digit;
        }
        if seen != (1 << BASE) - 1 {
            return Err(TransformError::NotAPermutation(format!("{images:?}")));
        }
        Ok(DigitPermutation(out))
    }

    pub fn apply(&self, d: Digit) -> Digit {
        self.0[d.index()]
    }

    pub fn apply_word(&self, w: Codeword) -> Codeword {
        Codeword::new(self.apply(w.r), self.apply(w.s), self.apply(w.c))
    }

    pub fn inverse(&self) -> DigitPermutation {
        let mut out = [Digit::lit(0); BASE];
        for d in Digit::all() {
            out[self.apply(d).index()] = d;
        }
        DigitPermutation(out)
    }

    pub fn fixes(&self, d: Digit) -> bool {
        self.apply(d) == d
    }
}

impl FromStr for DigitPermutation {
    type Err = TransformError;

    /// Ten digits, the images of `0..9` in order, e.g. `"0198765432"`.
    fn from_str(text: &str) -> Result<DigitPermutation, TransformError> {
        let bad = || TransformError::NotAPermutation(text.to_string());
        let values: Vec<u8> = text
            .trim()
            .chars()
            .map(|ch| ch.to_digit(10).map(|v| v as u8))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let images: [u8; BASE] = values.try_into().map_err(|_| bad())?;
        DigitPermutation::new(images).map_err(|_| bad())
    }
}

impl fmt::Display for DigitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{d}"))
    }
}

fn rebuild(words: impl Iterator<Item = Codeword>) -> Result<CodeTable, TableError> {
    // Each output cell must be assigned exactly once.
    CodeTable::from_codewords(words)
}

/// `(r, s, c) -> (s, c, r)`. Requires every row of the input to be a permutation.
pub fn rotate_left(table: &CodeTable) -> Result<CodeTable, TransformError> {
    Ok(rebuild(
        table.codewords().into_iter().map(|w| Codeword::new(w.s, w.c, w.r)),
    )?)
}

/// `(r, s, c) -> (c, r, s)`. Requires every column of the input to be a permutation.
pub fn rotate_right(table: &CodeTable) -> Result<CodeTable, TransformError> {
    Ok(rebuild(
        table.codewords().into_iter().map(|w| Codeword::new(w.c, w.r, w.s)),
    )?)
}

/// Relabels every digit of every codeword: `S'(p(r), p(c)) = p(S(r, c))`.
pub fn permute_digits(table: &CodeTable, p: &DigitPermutation) -> CodeTable {
    rebuild(table.codewords().into_iter().map(|w| p.apply_word(w))).expect("relabeling is a bijection on cells")
}

/// Codewords valid in both tables.
pub fn common_codewords(a: &CodeTable, b: &CodeTable) -> Vec<Codeword> {
    a.codewords().into_iter().filter(|&w| b.is_codeword(w)).collect()
}

pub fn are_disjoint(a: &CodeTable, b: &CodeTable) -> bool {
    common_codewords(a, b).is_empty()
}
