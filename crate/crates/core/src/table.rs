//! Digits, codewords and 10×10 code tables.
//!
//! A table cell `S(r, c)` holds the middle (check) digit of the codeword
//! `(r, S(r, c), c)`. Rows are indexed by the first digit and columns by the
//! last digit, so a table reads exactly like the printed layout.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{DecodeError, TableError};

/// Number of symbols in the alphabet.
pub const BASE: usize = 10;

/// A decimal digit `0..=9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(u8);

impl Digit {
    pub const fn new(value: u8) -> Option<Digit> {
        if value < BASE as u8 {
            Some(Digit(value))
        } else {
            None
        }
    }

    /// Builds a digit from a value already known to be in range.
    ///
    /// Panics if `value > 9`.
    pub(crate) const fn lit(value: u8) -> Digit {
        assert!(value < BASE as u8);
        Digit(value)
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// All ten digits in ascending order.
    pub fn all() -> impl DoubleEndedIterator<Item = Digit> + Clone {
        (0..BASE as u8).map(Digit)
    }

    pub fn from_char(ch: char) -> Option<Digit> {
        ch.to_digit(10).map(|v| Digit(v as u8))
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered digit triple `(r, s, c)`: first, middle (check) and last digit.
///
/// Ordering is lexicographic on `(r, s, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    pub r: Digit,
    pub s: Digit,
    pub c: Digit,
}

impl Codeword {
    pub const fn new(r: Digit, s: Digit, c: Digit) -> Codeword {
        Codeword { r, s, c }
    }

    /// Builds a codeword from raw values; `None` if any value exceeds 9.
    pub fn from_values(r: u8, s: u8, c: u8) -> Option<Codeword> {
        Some(Codeword::new(Digit::new(r)?, Digit::new(s)?, Digit::new(c)?))
    }

    pub fn digits(&self) -> [Digit; 3] {
        [self.r, self.s, self.c]
    }

    pub fn multiset(&self) -> DigitMultiset {
        DigitMultiset::from_digits(self.digits())
    }

    /// Number of distinct digits in the word (1, 2 or 3).
    pub fn distinct_digits(&self) -> usize {
        let [a, b, c] = self.digits();
        match (a == b, b == c, a == c) {
            (true, true, _) => 1,
            (false, false, false) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.r, self.s, self.c)
    }
}

impl FromStr for Codeword {
    type Err = TableError;

    /// Parses three digits in positional order `r s c`, e.g. `"588"`.
    fn from_str(text: &str) -> Result<Codeword, TableError> {
        let digits = parse_three_digits(text)?;
        Ok(Codeword::new(digits[0], digits[1], digits[2]))
    }
}

fn parse_three_digits(text: &str) -> Result<[Digit; 3], TableError> {
    let digits: Vec<Digit> = text
        .trim()
        .chars()
        .map(Digit::from_char)
        .collect::<Option<_>>()
        .ok_or_else(|| TableError::BadWord(text.to_string()))?;
    digits.try_into().map_err(|_| TableError::BadWord(text.to_string()))
}

/// The multiset of digits of a word, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitMultiset([Digit; 3]);

impl DigitMultiset {
    pub fn from_digits(mut digits: [Digit; 3]) -> DigitMultiset {
        digits.sort_unstable();
        DigitMultiset(digits)
    }

    pub fn sorted(&self) -> [Digit; 3] {
        self.0
    }

    pub fn count(&self, d: Digit) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }
}

impl FromStr for DigitMultiset {
    type Err = TableError;

    /// Parses three digits in any order.
    fn from_str(text: &str) -> Result<DigitMultiset, TableError> {
        parse_three_digits(text).map(DigitMultiset::from_digits)
    }
}

impl fmt::Display for DigitMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Read access to a (possibly partial) grid of check digits.
///
/// Detectors are written against this trait so the same code audits both
/// complete tables and skeletons.
pub trait Cells {
    fn cell(&self, r: Digit, c: Digit) -> Option<Digit>;

    /// Every defined codeword, in lexicographic `(r, c)` cell order.
    fn defined_words(&self) -> Vec<Codeword> {
        let mut words = Vec::new();
        for r in Digit::all() {
            for c in Digit::all() {
                if let Some(s) = self.cell(r, c) {
                    words.push(Codeword::new(r, s, c));
                }
            }
        }
        words
    }
}

/// A complete 10×10 code table.
///
/// Equality compares cells only; the name is a label.
#[derive(Clone, Debug)]
pub struct CodeTable {
    cells: [[Digit; BASE]; BASE],
    name: Option<String>,
}

impl PartialEq for CodeTable {
    fn eq(&self, other: &CodeTable) -> bool {
        self.cells == other.cells
    }
}

impl Eq for CodeTable {}

impl CodeTable {
    /// Builds a table and rejects it unless every row and column is a
    /// permutation of the digits.
    pub fn from_rows(rows: [[u8; BASE]; BASE]) -> Result<CodeTable, TableError> {
        let table = CodeTable::from_rows_unchecked(rows)?;
        table.check_latin()?;
        Ok(table)
    }

    /// Builds a table without the Latin check. Values must still be digits.
    pub fn from_rows_unchecked(rows: [[u8; BASE]; BASE]) -> Result<CodeTable, TableError> {
        let mut cells = [[Digit(0); BASE]; BASE];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                cells[r][c] = Digit::new(v).ok_or(TableError::DigitOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                })?;
            }
        }
        Ok(CodeTable { cells, name: None })
    }

    pub(crate) fn from_cells(cells: [[Digit; BASE]; BASE]) -> CodeTable {
        CodeTable { cells, name: None }
    }

    /// Rebuilds a table from its codeword set. Every `(r, c)` pair must occur
    /// exactly once.
    pub fn from_codewords<I>(words: I) -> Result<CodeTable, TableError>
    where
        I: IntoIterator<Item = Codeword>,
    {
        let mut grid: [[Option<Digit>; BASE]; BASE] = [[None; BASE]; BASE];
        for w in words {
            let slot = &mut grid[w.r.index()][w.c.index()];
            if slot.is_some() {
                return Err(TableError::DuplicateCell {
                    row: w.r.index(),
                    col: w.c.index(),
                });
            }
            *slot = Some(w.s);
        }
        let mut cells = [[Digit(0); BASE]; BASE];
        for r in 0..BASE {
            for c in 0..BASE {
                cells[r][c] = grid[r][c].ok_or(TableError::MissingCell { row: r, col: c })?;
            }
        }
        Ok(CodeTable { cells, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> CodeTable {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `S(r, c)`.
    pub fn get(&self, r: Digit, c: Digit) -> Digit {
        self.cells[r.index()][c.index()]
    }

    pub fn rows(&self) -> [[u8; BASE]; BASE] {
        let mut out = [[0u8; BASE]; BASE];
        for (r, row) in self.cells.iter().enumerate() {
            for (c, d) in row.iter().enumerate() {
                out[r][c] = d.get();
            }
        }
        out
    }

    /// The check digit for information digits `r` (first) and `c` (last).
    pub fn check_digit(&self, r: Digit, c: Digit) -> Digit {
        self.get(r, c)
    }

    pub fn codeword(&self, r: Digit, c: Digit) -> Codeword {
        Codeword::new(r, self.get(r, c), c)
    }

    pub fn is_codeword(&self, w: Codeword) -> bool {
        self.get(w.r, w.c) == w.s
    }

    /// All 100 codewords, sorted.
    pub fn codewords(&self) -> Vec<Codeword> {
        Digit::all()
            .flat_map(|r| Digit::all().map(move |c| (r, c)))
            .map(|(r, c)| self.codeword(r, c))
            .collect()
    }

    /// Finds the unique codeword with digit multiset `m`.
    ///
    /// Returns `Ok(None)` when no codeword matches and an ambiguity error
    /// when two or more do.
    pub fn decode_multiset(&self, m: DigitMultiset) -> Result<Option<Codeword>, DecodeError> {
        let matches: Vec<Codeword> = self.codewords().into_iter().filter(|w| w.multiset() == m).collect();
        match matches.len() {
            0 => Ok(None),
            1 => Ok(Some(matches[0])),
            _ => Err(DecodeError::Ambiguous {
                multiset: m,
                words: matches,
            }),
        }
    }

    pub fn row_is_permutation(&self, r: Digit) -> bool {
        is_permutation(Digit::all().map(|c| self.get(r, c)))
    }

    pub fn col_is_permutation(&self, c: Digit) -> bool {
        is_permutation(Digit::all().map(|r| self.get(r, c)))
    }

    pub fn is_latin(&self) -> bool {
        Digit::all().all(|d| self.row_is_permutation(d) && self.col_is_permutation(d))
    }

    pub fn check_latin(&self) -> Result<(), TableError> {
        let bad_rows: Vec<usize> = Digit::all()
            .filter(|&r| !self.row_is_permutation(r))
            .map(Digit::index)
            .collect();
        let bad_cols: Vec<usize> = Digit::all()
            .filter(|&c| !self.col_is_permutation(c))
            .map(Digit::index)
            .collect();
        if bad_rows.is_empty() && bad_cols.is_empty() {
            Ok(())
        } else {
            Err(TableError::NotLatin {
                rows: bad_rows,
                cols: bad_cols,
            })
        }
    }

    /// Number of digits `a` with `S(a, a) = a`, i.e. triple codewords `(aaa)`.
    pub fn triple_count(&self) -> usize {
        Digit::all().filter(|&a| self.get(a, a) == a).count()
    }

    /// A random Latin square drawn by randomized
    /// row-by-row backtracking.
    pub fn random_latin<R: Rng + ?Sized>(rng: &mut R) -> CodeTable {
        let mut grid = [[0u8; BASE]; BASE];
        let mut col_used = [0u16; BASE];
        loop {
            if fill_random_rows(&mut grid, &mut col_used, 0, rng) {
                break;
            }
        }
        CodeTable::from_rows(grid).expect("backtracking produces a Latin square")
    }

    /// Census of codewords by number of distinct digits: `[triples, doubled, distinct]`.
    pub fn census(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for w in self.codewords() {
            out[w.distinct_digits() - 1] += 1;
        }
        out
    }
}

impl Cells for CodeTable {
    fn cell(&self, r: Digit, c: Digit) -> Option<Digit> {
        Some(self.get(r, c))
    }
}

fn is_permutation(digits: impl Iterator<Item = Digit>) -> bool {
    let mut seen = 0u16;
    for d in digits {
        seen |= 1 << d.get();
    }
    seen == (1 << BASE) - 1
}

// Fills rows `r..` one at a time: each row is a random permutation avoiding
// the symbols already used in each column, found by a shuffled DFS.
fn fill_random_rows<R: Rng + ?Sized>(
    grid: &mut [[u8; BASE]; BASE],
    col_used: &mut [u16; BASE],
    r: usize,
    rng: &mut R,
) -> bool {
    if r == BASE {
        return true;
    }
    for _attempt in 0..32 {
        let mut row = [0u8; BASE];
        if random_row(col_used, &mut row, 0, 0, rng) {
            for c in 0..BASE {
                col_used[c] |= 1 << row[c];
            }
            grid[r] = row;
            if fill_random_rows(grid, col_used, r + 1, rng) {
                return true;
            }
            for c in 0..BASE {
                col_used[c] &= !(1 << row[c]);
            }
        }
    }
    false
}

fn random_row<R: Rng + ?Sized>(
    col_used: &[u16; BASE],
    row: &mut [u8; BASE],
    c: usize,
    row_used: u16,
    rng: &mut R,
) -> bool {
    if c == BASE {
        return true;
    }
    let mut candidates: Vec<u8> = (0..BASE as u8)
        .filter(|&v| (row_used | col_used[c]) & (1 << v) == 0)
        .collect();
    candidates.shuffle(rng);
    for v in candidates {
        row[c] = v;
        if random_row(col_used, row, c + 1, row_used | (1 << v), rng) {
            return true;
        }
    }
    false
}

/// A partially filled table, e.g. a skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    cells: [[Option<Digit>; BASE]; BASE],
}

impl Default for PartialTable {
    fn default() -> Self {
        PartialTable {
            cells: [[None; BASE]; BASE],
        }
    }
}

impl PartialTable {
    pub fn new() -> PartialTable {
        PartialTable::default()
    }

    pub fn from_words<I: IntoIterator<Item = Codeword>>(words: I) -> Result<PartialTable, TableError> {
        let mut table = PartialTable::new();
        for w in words {
            table.insert(w)?;
        }
        Ok(table)
    }

    /// Places `w`; fails if its cell already holds a digit.
    pub fn insert(&mut self, w: Codeword) -> Result<(), TableError> {
        let slot = &mut self.cells[w.r.index()][w.c.index()];
        if slot.is_some() {
            return Err(TableError::DuplicateCell {
                row: w.r.index(),
                col: w.c.index(),
            });
        }
        *slot = Some(w.s);
        Ok(())
    }

    pub fn remove(&mut self, r: Digit, c: Digit) -> Option<Digit> {
        self.cells[r.index()][c.index()].take()
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }

    /// No digit repeats within any row or column.
    pub fn is_partial_latin(&self) -> bool {
        for a in Digit::all() {
            let mut row_seen = 0u16;
            let mut col_seen = 0u16;
            for b in Digit::all() {
                if let Some(d) = self.cell(a, b) {
                    if row_seen & (1 << d.get()) != 0 {
                        return false;
                    }
                    row_seen |= 1 << d.get();
                }
                if let Some(d) = self.cell(b, a) {
                    if col_seen & (1 << d.get()) != 0 {
                        return false;
                    }
                    col_seen |= 1 << d.get();
                }
            }
        }
        true
    }

    /// Converts to a complete table if every cell is filled.
    pub fn to_table(&self) -> Option<CodeTable> {
        let mut cells = [[Digit(0); BASE]; BASE];
        for (row, src) in cells.iter_mut().zip(&self.cells) {
            for (cell, value) in row.iter_mut().zip(src) {
                *cell = (*value)?;
            }
        }
        Some(CodeTable::from_cells(cells))
    }
}

impl Cells for PartialTable {
    fn cell(&self, r: Digit, c: Digit) -> Option<Digit> {
        self.cells[r.index()][c.index()]
    }
}

impl From<&CodeTable> for PartialTable {
    fn from(table: &CodeTable) -> PartialTable {
        PartialTable {
            cells: table.cells.map(|row| row.map(Some)),
        }
    }
}

/// Groups codewords by digit multiset, keeping only groups of two or more.
pub(crate) fn multiset_collisions(words: &[Codeword]) -> BTreeMap<DigitMultiset, Vec<Codeword>> {
    let mut groups: BTreeMap<DigitMultiset, Vec<Codeword>> = BTreeMap::new();
    for &w in words {
        groups.entry(w.multiset()).or_default().push(w);
    }
    groups.retain(|_, ws| ws.len() > 1);
    groups
}
