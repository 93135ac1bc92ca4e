//! Error-class detectors and the audit report.
//!
//! Each detector reads the table structurally (fixed points, symmetric
//! cells, composed lookups). [`brute_force_scan`] is an independent oracle
//! that classifies every pair of valid codewords by the error pattern that
//! turns one into the other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::table::{multiset_collisions, Cells, CodeTable, Codeword, Digit, PartialTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorClass {
    SingleRow,
    SingleCol,
    TranspositionRow,
    TranspositionCol,
    TwinRow,
    TwinCol,
    JumpTransposition,
    JumpTwin,
    Triple,
    PhoneticLeft,
    PhoneticRight,
    PhoneticEnd,
    Cyclic,
    PermutationMultiset,
    PermutationSet,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 15] = [
        ErrorClass::SingleRow,
        ErrorClass::SingleCol,
        ErrorClass::TranspositionRow,
        ErrorClass::TranspositionCol,
        ErrorClass::TwinRow,
        ErrorClass::TwinCol,
        ErrorClass::JumpTransposition,
        ErrorClass::JumpTwin,
        ErrorClass::Triple,
        ErrorClass::PhoneticLeft,
        ErrorClass::PhoneticRight,
        ErrorClass::PhoneticEnd,
        ErrorClass::Cyclic,
        ErrorClass::PermutationMultiset,
        ErrorClass::PermutationSet,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ErrorClass::SingleRow => "single_row",
            ErrorClass::SingleCol => "single_col",
            ErrorClass::TranspositionRow => "transposition_row",
            ErrorClass::TranspositionCol => "transposition_col",
            ErrorClass::TwinRow => "twin_row",
            ErrorClass::TwinCol => "twin_col",
            ErrorClass::JumpTransposition => "jump_transposition",
            ErrorClass::JumpTwin => "jump_twin",
            ErrorClass::Triple => "triple",
            ErrorClass::PhoneticLeft => "phonetic_left",
            ErrorClass::PhoneticRight => "phonetic_right",
            ErrorClass::PhoneticEnd => "phonetic_end",
            ErrorClass::Cyclic => "cyclic",
            ErrorClass::PermutationMultiset => "permutation_multiset",
            ErrorClass::PermutationSet => "permutation_set",
        }
    }

    /// Classes a fully protective code must have no failures in.
    ///
    /// Set-level permutation collisions are reported but not required: a
    /// multiset-permutation-free code may still contain `588` and `855`.
    pub fn is_required(self) -> bool {
        self != ErrorClass::PermutationSet
    }

    pub fn is_phonetic(self) -> bool {
        matches!(
            self,
            ErrorClass::PhoneticLeft | ErrorClass::PhoneticRight | ErrorClass::PhoneticEnd
        )
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ErrorClass {
    type Err = String;

    fn from_str(tag: &str) -> Result<ErrorClass, String> {
        ErrorClass::ALL
            .into_iter()
            .find(|k| k.tag() == tag)
            .ok_or_else(|| format!("unknown error class `{tag}`"))
    }
}

/// Two distinct valid codewords confusable under one error class.
///
/// The lexicographically smaller word is always `words.0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FailureWitness {
    pub class: ErrorClass,
    pub words: (Codeword, Codeword),
}

impl FailureWitness {
    pub fn new(class: ErrorClass, a: Codeword, b: Codeword) -> FailureWitness {
        debug_assert_ne!(a, b);
        let words = if a <= b { (a, b) } else { (b, a) };
        FailureWitness { class, words }
    }
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<->{}", self.words.0, self.words.1)
    }
}

const fn d(v: u8) -> Digit {
    Digit::lit(v)
}

fn w(r: Digit, s: Digit, c: Digit) -> Codeword {
    Codeword::new(r, s, c)
}

/// All failures of one class, sorted.
pub fn detect_failures<T: Cells + ?Sized>(table: &T, class: ErrorClass) -> Vec<FailureWitness> {
    use ErrorClass::*;
    let s = |r: Digit, c: Digit| table.cell(r, c);
    let mut out = Vec::new();
    let mut push = |a: Codeword, b: Codeword| out.push(FailureWitness::new(class, a, b));
    let pairs = || Digit::all().flat_map(|a| Digit::all().filter(move |&b| a < b).map(move |b| (a, b)));

    match class {
        // two equal entries in one row: abc <-> abd
        SingleRow => {
            for r in Digit::all() {
                for (c1, c2) in pairs() {
                    if let (Some(x), Some(y)) = (s(r, c1), s(r, c2)) {
                        if x == y {
                            push(w(r, x, c1), w(r, x, c2));
                        }
                    }
                }
            }
        }
        SingleCol => {
            for c in Digit::all() {
                for (r1, r2) in pairs() {
                    if let (Some(x), Some(y)) = (s(r1, c), s(r2, c)) {
                        if x == y {
                            push(w(r1, x, c), w(r2, x, c));
                        }
                    }
                }
            }
        }
        // 2-cycles of row a: S(a,b)=c, S(a,c)=b
        TranspositionRow => {
            for a in Digit::all() {
                for (b, c) in pairs() {
                    if s(a, b) == Some(c) && s(a, c) == Some(b) {
                        push(w(a, c, b), w(a, b, c));
                    }
                }
            }
        }
        // 2-cycles of column e: S(a,e)=b, S(b,e)=a
        TranspositionCol => {
            for e in Digit::all() {
                for (a, b) in pairs() {
                    if s(a, e) == Some(b) && s(b, e) == Some(a) {
                        push(w(a, b, e), w(b, a, e));
                    }
                }
            }
        }
        // two fixed points in row a: S(a,b)=b, S(a,c)=c
        TwinRow => {
            for a in Digit::all() {
                for (b, c) in pairs() {
                    if s(a, b) == Some(b) && s(a, c) == Some(c) {
                        push(w(a, b, b), w(a, c, c));
                    }
                }
            }
        }
        // two fixed points in column e: S(a,e)=a, S(b,e)=b
        TwinCol => {
            for e in Digit::all() {
                for (a, b) in pairs() {
                    if s(a, e) == Some(a) && s(b, e) == Some(b) {
                        push(w(a, a, e), w(b, b, e));
                    }
                }
            }
        }
        // symmetric off-diagonal cells
        JumpTransposition => {
            for (a, b) in pairs() {
                if let (Some(x), Some(y)) = (s(a, b), s(b, a)) {
                    if x == y {
                        push(w(a, x, b), w(b, x, a));
                    }
                }
            }
        }
        // repeated diagonal entry
        JumpTwin => {
            for (a, b) in pairs() {
                if let (Some(x), Some(y)) = (s(a, a), s(b, b)) {
                    if x == y {
                        push(w(a, x, a), w(b, x, b));
                    }
                }
            }
        }
        // two diagonal fixed points
        Triple => {
            for (a, b) in pairs() {
                if s(a, a) == Some(a) && s(b, b) == Some(b) {
                    push(w(a, a, a), w(b, b, b));
                }
            }
        }
        // 1xe <-> x0e with x = S(1,e), x >= 2
        PhoneticLeft => {
            for e in Digit::all() {
                if let Some(x) = s(d(1), e) {
                    if x.get() >= 2 && s(x, e) == Some(d(0)) {
                        push(w(d(1), x, e), w(x, d(0), e));
                    }
                }
            }
        }
        // r1x <-> rx0 with x = S(r,0), x >= 2
        PhoneticRight => {
            for r in Digit::all() {
                if let Some(x) = s(r, d(0)) {
                    if x.get() >= 2 && s(r, x) == Some(d(1)) {
                        push(w(r, d(1), x), w(r, x, d(0)));
                    }
                }
            }
        }
        // xs1 <-> 0sx with x >= 2: the phonetic pair straddling the word's ends
        PhoneticEnd => {
            for x in Digit::all().filter(|x| x.get() >= 2) {
                if let (Some(m), Some(n)) = (s(x, d(1)), s(d(0), x)) {
                    if m == n {
                        push(w(x, m, d(1)), w(d(0), m, x));
                    }
                }
            }
        }
        // axb <-> xba with x = S(a,b), S(x,a) = b
        Cyclic => {
            for a in Digit::all() {
                for b in Digit::all() {
                    if let Some(x) = s(a, b) {
                        if s(x, a) == Some(b) && !(a == b && b == x) {
                            push(w(a, x, b), w(x, b, a));
                        }
                    }
                }
            }
        }
        PermutationMultiset => {
            for group in multiset_collisions(&table.defined_words()).values() {
                for (i, &a) in group.iter().enumerate() {
                    for &b in &group[i + 1..] {
                        push(a, b);
                    }
                }
            }
        }
        PermutationSet => {
            let mut groups: BTreeMap<u16, Vec<Codeword>> = BTreeMap::new();
            for word in table.defined_words() {
                let key = word.digits().iter().fold(0u16, |m, x| m | 1 << x.get());
                groups.entry(key).or_default().push(word);
            }
            for group in groups.values() {
                for (i, &a) in group.iter().enumerate() {
                    for &b in &group[i + 1..] {
                        push(a, b);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Does `q` arise from `p` under the error pattern of `class`?
///
/// Pure predicate on digit positions; no table lookups.
pub fn pattern_matches(class: ErrorClass, p: Codeword, q: Codeword) -> bool {
    use ErrorClass::*;
    let [p0, p1, p2] = p.digits().map(Digit::get);
    let [q0, q1, q2] = q.digits().map(Digit::get);
    if p == q {
        return false;
    }
    match class {
        SingleRow => p0 == q0 && p1 == q1 && p2 != q2,
        SingleCol => p0 != q0 && p1 == q1 && p2 == q2,
        TranspositionRow => p1 != p2 && (q0, q1, q2) == (p0, p2, p1),
        TranspositionCol => p0 != p1 && (q0, q1, q2) == (p1, p0, p2),
        TwinRow => p1 == p2 && q1 == q2 && p0 == q0,
        TwinCol => p0 == p1 && q0 == q1 && p2 == q2,
        JumpTransposition => (q0, q1, q2) == (p2, p1, p0),
        JumpTwin => p0 == p2 && q0 == q2 && p1 == q1,
        Triple => p0 == p1 && p1 == p2 && q0 == q1 && q1 == q2,
        PhoneticLeft => p0 == 1 && p1 >= 2 && (q0, q1, q2) == (p1, 0, p2),
        PhoneticRight => p1 == 1 && p2 >= 2 && (q0, q1, q2) == (p0, p2, 0),
        PhoneticEnd => p2 == 1 && p0 >= 2 && (q0, q1, q2) == (0, p1, p0),
        Cyclic => (q0, q1, q2) == (p1, p2, p0),
        PermutationMultiset => p.multiset() == q.multiset(),
        PermutationSet => {
            let set = |x: [u8; 3]| x.iter().fold(0u16, |m, v| m | 1 << v);
            set([p0, p1, p2]) == set([q0, q1, q2])
        }
    }
}

/// Oracle: tries every ordered pair of distinct defined codewords against
/// the class's error pattern.
pub fn brute_force_scan<T: Cells + ?Sized>(table: &T, class: ErrorClass) -> Vec<FailureWitness> {
    let words = table.defined_words();
    let mut found = BTreeSet::new();
    for &p in &words {
        for &q in &words {
            if pattern_matches(class, p, q) {
                found.insert(FailureWitness::new(class, p, q));
            }
        }
    }
    found.into_iter().collect()
}

/// Per-class failure counts and witnesses for one table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub name: Option<String>,
    pub witnesses: BTreeMap<ErrorClass, Vec<FailureWitness>>,
    pub is_latin: bool,
    pub triple_count: usize,
}

impl AuditReport {
    fn build<T: Cells + ?Sized>(table: &T, name: Option<String>, is_latin: bool) -> AuditReport {
        let witnesses = ErrorClass::ALL
            .into_iter()
            .map(|k| (k, detect_failures(table, k)))
            .collect();
        let triple_count = Digit::all().filter(|&a| table.cell(a, a) == Some(a)).count();
        AuditReport {
            name,
            witnesses,
            is_latin,
            triple_count,
        }
    }

    pub fn count(&self, class: ErrorClass) -> usize {
        self.witnesses.get(&class).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<(ErrorClass, usize)> {
        ErrorClass::ALL.into_iter().map(|k| (k, self.count(k))).collect()
    }

    pub fn is_permutation_free(&self) -> bool {
        self.count(ErrorClass::PermutationMultiset) == 0
    }

    /// Zero failures in every required class.
    pub fn is_clean(&self) -> bool {
        ErrorClass::ALL
            .into_iter()
            .filter(|k| k.is_required())
            .all(|k| self.count(k) == 0)
    }

    /// Required classes with a nonzero count.
    pub fn failing(&self) -> Vec<(ErrorClass, usize)> {
        self.counts()
            .into_iter()
            .filter(|&(k, n)| k.is_required() && n > 0)
            .collect()
    }
}

pub fn audit(table: &CodeTable) -> AuditReport {
    AuditReport::build(table, table.name().map(str::to_string), table.is_latin())
}

/// Audits a partial table over its defined cells only.
pub fn audit_partial(table: &PartialTable) -> AuditReport {
    AuditReport::build(table, None, table.is_partial_latin())
}
