//! The four built-in tables, embedded as data.

use std::fmt;
use std::str::FromStr;

use crate::error::TableError;
use crate::table::{CodeTable, BASE};

type Rows = [[u8; BASE]; BASE];

/// Verhoeff's irregular code. The main diagonal holds every triple `(aaa)`.
const VERHOEFF: Rows = [
    [0, 3, 4, 9, 6, 7, 5, 8, 2, 1],
    [5, 1, 0, 2, 8, 3, 9, 6, 7, 4],
    [7, 6, 2, 4, 1, 0, 8, 9, 3, 5],
    [1, 5, 8, 3, 7, 6, 4, 0, 9, 2],
    [2, 9, 7, 5, 4, 8, 1, 3, 0, 6],
    [6, 7, 9, 0, 3, 5, 2, 4, 1, 8],
    [3, 8, 1, 7, 5, 9, 6, 2, 4, 0],
    [9, 4, 5, 8, 2, 1, 0, 7, 6, 3],
    [4, 0, 6, 1, 9, 2, 3, 5, 8, 7],
    [8, 2, 3, 6, 0, 4, 7, 1, 5, 9],
];

/// Left rotation of [`DISJOINT_B`].
const DISJOINT_A: Rows = [
    [2, 7, 4, 8, 0, 6, 3, 5, 1, 9],
    [0, 8, 5, 1, 9, 3, 4, 6, 2, 7],
    [9, 1, 7, 4, 5, 0, 2, 8, 3, 6],
    [1, 9, 2, 5, 6, 4, 8, 3, 7, 0],
    [6, 5, 8, 3, 1, 7, 9, 2, 0, 4],
    [3, 0, 6, 2, 4, 9, 7, 1, 5, 8],
    [8, 6, 3, 7, 2, 5, 0, 9, 4, 1],
    [7, 3, 1, 0, 8, 2, 6, 4, 9, 5],
    [5, 4, 0, 9, 3, 8, 1, 7, 6, 2],
    [4, 2, 9, 6, 7, 1, 5, 0, 8, 3],
];

/// The searched code; its 30 doubled-digit words form the skeleton.
const DISJOINT_B: Rows = [
    [1, 3, 0, 5, 9, 8, 4, 7, 6, 2],
    [5, 2, 9, 7, 8, 4, 6, 0, 1, 3],
    [8, 7, 3, 6, 0, 1, 5, 2, 4, 9],
    [7, 1, 5, 4, 2, 3, 9, 6, 0, 8],
    [0, 4, 6, 8, 5, 2, 3, 9, 7, 1],
    [2, 9, 7, 1, 3, 6, 0, 4, 8, 5],
    [6, 8, 2, 0, 1, 9, 7, 5, 3, 4],
    [9, 5, 4, 3, 7, 0, 1, 8, 2, 6],
    [4, 0, 1, 2, 6, 5, 8, 3, 9, 7],
    [3, 6, 8, 9, 4, 7, 2, 1, 5, 0],
];

/// Right rotation of [`DISJOINT_B`].
const DISJOINT_C: Rows = [
    [4, 0, 5, 9, 8, 1, 6, 3, 2, 7],
    [8, 3, 1, 0, 4, 7, 9, 2, 6, 5],
    [0, 8, 6, 2, 7, 3, 4, 5, 9, 1],
    [6, 5, 8, 7, 3, 0, 2, 1, 4, 9],
    [2, 6, 3, 5, 9, 4, 8, 7, 1, 0],
    [7, 2, 4, 3, 1, 8, 5, 9, 0, 6],
    [5, 7, 9, 4, 0, 2, 1, 6, 8, 3],
    [1, 9, 2, 8, 5, 6, 3, 0, 7, 4],
    [3, 1, 7, 6, 2, 9, 0, 4, 5, 8],
    [9, 4, 0, 1, 6, 5, 7, 8, 3, 2],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Verhoeff,
    DisjointA,
    DisjointB,
    DisjointC,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [
        Builtin::Verhoeff,
        Builtin::DisjointA,
        Builtin::DisjointB,
        Builtin::DisjointC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Verhoeff => "verhoeff",
            Builtin::DisjointA => "disjoint_a",
            Builtin::DisjointB => "disjoint_b",
            Builtin::DisjointC => "disjoint_c",
        }
    }

    fn rows(self) -> &'static Rows {
        match self {
            Builtin::Verhoeff => &VERHOEFF,
            Builtin::DisjointA => &DISJOINT_A,
            Builtin::DisjointB => &DISJOINT_B,
            Builtin::DisjointC => &DISJOINT_C,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = TableError;

    fn from_str(name: &str) -> Result<Builtin, TableError> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| TableError::UnknownBuiltin(name.to_string()))
    }
}

/// Returns a built-in table. The data is checked against the Latin
/// invariants on every load.
pub fn builtin(which: Builtin) -> CodeTable {
    CodeTable::from_rows(*which.rows())
        .unwrap_or_else(|e| panic!("built-in table {which} is corrupt: {e}"))
        .with_name(which.name())
}

pub fn builtin_by_name(name: &str) -> Result<CodeTable, TableError> {
    name.parse().map(builtin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Digit;

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert_eq!(
            builtin_by_name("damm").unwrap_err(),
            TableError::UnknownBuiltin("damm".into())
        );
    }

    #[test]
    fn row_anchors() {
        assert_eq!(builtin(Builtin::Verhoeff).rows()[0], [0, 3, 4, 9, 6, 7, 5, 8, 2, 1]);
        assert_eq!(builtin(Builtin::DisjointB).rows()[0], [1, 3, 0, 5, 9, 8, 4, 7, 6, 2]);
        let a = builtin(Builtin::DisjointA);
        assert_eq!(a.get(Digit::lit(0), Digit::lit(0)), Digit::lit(2));
    }

    #[test]
    fn all_builtins_are_latin() {
        for b in Builtin::ALL {
            assert!(builtin(b).is_latin(), "{b}");
        }
    }

    #[test]
    fn verhoeff_diagonal_is_identity() {
        let v = builtin(Builtin::Verhoeff);
        assert!(Digit::all().all(|a| v.get(a, a) == a));
    }
}
