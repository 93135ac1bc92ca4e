//! Completing a skeleton with 70 three-distinct-digit codewords.
//!
//! One decision per empty cell `(r, c)` choosing its middle digit. Constraints:
//! - every row and column is a permutation (Latin);
//! - each 3-element digit set is used by at most one completion word;
//! - left, right and end phonetic pairs never both hold.
//!
//! Cells are chosen most-constrained first with forward checking over the
//! remaining domains; a (row, symbol) or (column, symbol) pair with a single
//! supporting cell is assigned immediately. Runs restart on a Luby schedule
//! of node limits, each restart drawing a fresh digit relabeling of the
//! candidate order from the seed.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::SearchError;
use crate::table::{Cells, CodeTable, Codeword, Digit, BASE};

use super::skeleton::Skeleton;
use super::{CompletionResult, SearchStats, TripleClassIndex};

const EMPTY: u8 = u8::MAX;
const ALL_DIGITS: u16 = (1 << BASE) - 1;
const CELLS: usize = BASE * BASE;
/// Node limit unit for the Luby restart schedule.
const RESTART_UNIT: u64 = 4096;

/// `(cell, value)` pairs that may not both be assigned.
struct PhoneticConflicts {
    with: Vec<Vec<(u8, u8)>>,
}

impl PhoneticConflicts {
    fn new() -> PhoneticConflicts {
        let mut with = vec![Vec::new(); CELLS * BASE];
        let mut forbid = |(r1, c1, v1): (usize, usize, usize), (r2, c2, v2): (usize, usize, usize)| {
            let a = r1 * BASE + c1;
            let b = r2 * BASE + c2;
            with[a * BASE + v1].push((b as u8, v2 as u8));
            with[b * BASE + v2].push((a as u8, v1 as u8));
        };
        for x in 2..BASE {
            for e in 0..BASE {
                // left: 1xe and x0e
                forbid((1, e, x), (x, e, 0));
                // right: e1x and ex0
                forbid((e, x, 1), (e, 0, x));
                // end: xe1 and 0ex
                forbid((x, 1, e), (0, x, e));
            }
        }
        PhoneticConflicts { with }
    }

    fn of(&self, cell: usize, value: u8) -> &[(u8, u8)] {
        &self.with[cell * BASE + value as usize]
    }
}

struct Solver<'a> {
    grid: [u8; CELLS],
    row_used: [u16; BASE],
    col_used: [u16; BASE],
    subsets_used: u128,
    index: &'a TripleClassIndex,
    phonetic: &'a PhoneticConflicts,
    /// `relabel[k]` is the k-th candidate digit tried.
    relabel: [u8; BASE],
    cell_order: [u8; CELLS],
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
    max_filled: usize,
}

enum Outcome {
    Solved,
    Exhausted,
    LimitHit,
    Timeout,
}

impl Solver<'_> {
    fn place(&mut self, cell: usize, v: u8) {
        let (r, c) = (cell / BASE, cell % BASE);
        self.grid[cell] = v;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
        if let Some(i) = self.index.of_cell(r, c, v) {
            self.subsets_used |= 1 << i;
        }
    }

    fn unplace(&mut self, cell: usize) {
        let (r, c) = (cell / BASE, cell % BASE);
        let v = self.grid[cell];
        self.grid[cell] = EMPTY;
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
        if let Some(i) = self.index.of_cell(r, c, v) {
            self.subsets_used &= !(1 << i);
        }
    }

    fn allowed(&self, cell: usize, v: u8) -> bool {
        let (r, c) = (cell / BASE, cell % BASE);
        match self.index.of_cell(r, c, v) {
            Some(i) if self.subsets_used & (1 << i) == 0 => {}
            _ => return false,
        }
        self.phonetic
            .of(cell, v)
            .iter()
            .all(|&(other, w)| self.grid[other as usize] != w)
    }

    fn domain(&self, cell: usize) -> u16 {
        let (r, c) = (cell / BASE, cell % BASE);
        let mut mask = ALL_DIGITS & !(self.row_used[r] | self.col_used[c]);
        let mut out = 0u16;
        while mask != 0 {
            let v = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            if self.allowed(cell, v) {
                out |= 1 << v;
            }
        }
        out
    }

    /// Picks the next cell and its candidate mask, or reports a dead end.
    /// `Ok(None)` means the grid is full.
    fn select(&self) -> Result<Option<(usize, u16)>, ()> {
        let mut domains = [0u16; CELLS];
        let mut best: Option<(usize, u16)> = None;
        let mut any_empty = false;
        for &cell in &self.cell_order {
            let cell = cell as usize;
            if self.grid[cell] != EMPTY {
                continue;
            }
            any_empty = true;
            let dom = self.domain(cell);
            if dom == 0 {
                return Err(());
            }
            domains[cell] = dom;
            if best.is_none_or(|(_, b)| dom.count_ones() < b.count_ones()) {
                best = Some((cell, dom));
            }
        }
        if !any_empty {
            return Ok(None);
        }
        // Every missing symbol of every row and column needs a supporting cell.
        for line in 0..BASE {
            for by_row in [true, false] {
                let missing = ALL_DIGITS
                    & !if by_row {
                        self.row_used[line]
                    } else {
                        self.col_used[line]
                    };
                let mut support = [0u8; BASE];
                let mut last = [0usize; BASE];
                for k in 0..BASE {
                    let cell = if by_row { line * BASE + k } else { k * BASE + line };
                    if self.grid[cell] != EMPTY {
                        continue;
                    }
                    let mut dom = domains[cell] & missing;
                    while dom != 0 {
                        let v = dom.trailing_zeros() as usize;
                        dom &= dom - 1;
                        support[v] += 1;
                        last[v] = cell;
                    }
                }
                let mut m = missing;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    match support[v] {
                        0 => return Err(()),
                        1 if best.is_none_or(|(_, b)| b.count_ones() > 1) => best = Some((last[v], 1 << v)),
                        _ => {}
                    }
                }
            }
        }
        Ok(best)
    }

    fn dfs(&mut self, filled: usize) -> Outcome {
        self.max_filled = self.max_filled.max(filled);
        let (cell, dom) = match self.select() {
            Err(()) => return Outcome::Exhausted,
            Ok(None) => return Outcome::Solved,
            Ok(Some(choice)) => choice,
        };
        for v in self.relabel {
            if dom & (1 << v) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes >= self.node_limit {
                return Outcome::LimitHit;
            }
            if self.nodes.is_multiple_of(256) && Instant::now() >= self.deadline {
                return Outcome::Timeout;
            }
            self.place(cell, v);
            match self.dfs(filled + 1) {
                Outcome::Exhausted => self.unplace(cell),
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u64) -> u64 {
    let mut size = 1u64;
    let mut power = 0u32;
    while size < i + 1 {
        power += 1;
        size = 2 * size + 1;
    }
    loop {
        if size - 1 == i {
            return 1 << power;
        }
        size = (size - 1) / 2;
        power -= 1;
        i %= size;
    }
}

/// Fills the 70 empty cells around `sk`.
///
/// Deterministic for a fixed `(sk, seed)` unless the time budget cuts the
/// search short.
pub fn complete_skeleton(sk: &Skeleton, seed: u64, budget: Duration) -> Result<CompletionResult, SearchError> {
    complete_skeleton_capped(sk, seed, budget, None)
}

/// As [`complete_skeleton`], giving up with [`SearchError::NodeLimit`] once
/// `max_nodes` decisions have been tried.
pub fn complete_skeleton_capped(
    sk: &Skeleton,
    seed: u64,
    budget: Duration,
    max_nodes: Option<u64>,
) -> Result<CompletionResult, SearchError> {
    let start = Instant::now();
    let deadline = start + budget;
    let index = TripleClassIndex::new();
    let phonetic = PhoneticConflicts::new();
    let partial = sk.to_partial()?;

    let mut base = Solver {
        grid: [EMPTY; CELLS],
        row_used: [0; BASE],
        col_used: [0; BASE],
        subsets_used: 0,
        index: &index,
        phonetic: &phonetic,
        relabel: std::array::from_fn(|i| i as u8),
        cell_order: std::array::from_fn(|i| i as u8),
        nodes: 0,
        node_limit: 0,
        deadline,
        max_filled: 0,
    };
    for w in partial.defined_words() {
        let cell = w.r.index() * BASE + w.c.index();
        if base.row_used[w.r.index()] & (1 << w.s.get()) != 0 || base.col_used[w.c.index()] & (1 << w.s.get()) != 0 {
            return Err(SearchError::InvalidSkeleton(format!(
                "{w} repeats a digit in its row or column"
            )));
        }
        if !base
            .phonetic
            .of(cell, w.s.get())
            .iter()
            .all(|&(o, v)| base.grid[o as usize] != v)
        {
            return Err(SearchError::InvalidSkeleton(format!(
                "{w} forms a phonetic pair with the skeleton"
            )));
        }
        base.place(cell, w.s.get());
    }
    let prefilled = partial.filled();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total_nodes = 0u64;
    let mut max_filled = prefilled;
    for run in 0.. {
        let mut solver = Solver { ..base };
        solver.relabel.shuffle(&mut rng);
        solver.cell_order.shuffle(&mut rng);
        solver.node_limit = luby(run) * RESTART_UNIT;
        if let Some(cap) = max_nodes {
            solver.node_limit = solver.node_limit.min(cap.saturating_sub(total_nodes).max(1));
        }
        solver.max_filled = prefilled;
        let outcome = solver.dfs(prefilled);
        total_nodes += solver.nodes;
        max_filled = max_filled.max(solver.max_filled);
        let stats = || SearchStats {
            nodes: total_nodes,
            elapsed: start.elapsed(),
            max_filled,
        };
        match outcome {
            Outcome::Solved => {
                let table = CodeTable::from_codewords(grid_words(&solver.grid)).expect("solver fills every cell");
                let completion = table
                    .codewords()
                    .into_iter()
                    .filter(|w| sk.form_of(*w).is_none())
                    .collect();
                return Ok(CompletionResult {
                    table,
                    skeleton: sk.clone(),
                    completion,
                    stats: stats(),
                });
            }
            Outcome::Exhausted => return Err(SearchError::Exhausted { stats: stats() }),
            Outcome::Timeout => return Err(SearchError::Timeout { stats: stats() }),
            Outcome::LimitHit if Instant::now() >= deadline => return Err(SearchError::Timeout { stats: stats() }),
            Outcome::LimitHit if max_nodes.is_some_and(|cap| total_nodes >= cap) => {
                return Err(SearchError::NodeLimit { stats: stats() })
            }
            Outcome::LimitHit => {}
        }
    }
    unreachable!("restart loop only exits by returning")
}

fn grid_words(grid: &[u8; CELLS]) -> Vec<Codeword> {
    (0..CELLS)
        .map(|cell| {
            Codeword::new(
                Digit::lit((cell / BASE) as u8),
                Digit::lit(grid[cell]),
                Digit::lit((cell % BASE) as u8),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn phonetic_conflicts_are_symmetric() {
        let p = PhoneticConflicts::new();
        // left: (1,e)=x with (x,e)=0, e.g. words 137 and 307
        assert!(p.of(17, 3).contains(&(37, 0)));
        assert!(p.of(37, 0).contains(&(17, 3)));
        // end: (x,1)=s with (0,x)=s, e.g. words 351 and 053
        assert!(p.of(31, 5).contains(&(3, 5)));
    }
}
