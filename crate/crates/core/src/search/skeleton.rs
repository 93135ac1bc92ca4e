//! The 30 doubled-digit codewords that seed a construction.
//!
//! For each doubled digit `a` there is one word of each form:
//! `r` = `(x a a)`, `c` = `(a x a)`, `l` = `(a a x)` with `x != a`. In a Latin
//! table without triples these are exactly the words where two positions
//! agree, so a skeleton is fully described by three digit maps `a -> x`.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::audit::{audit_partial, pattern_matches, AuditReport, ErrorClass};
use crate::error::SearchError;
use crate::table::{CodeTable, Codeword, Digit, PartialTable, BASE};

use super::SearchStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormTag {
    /// `(x a a)`
    R,
    /// `(a x a)`
    C,
    /// `(a a x)`
    L,
}

impl FormTag {
    pub const ALL: [FormTag; 3] = [FormTag::R, FormTag::C, FormTag::L];

    pub fn word(self, a: Digit, x: Digit) -> Codeword {
        match self {
            FormTag::R => Codeword::new(x, a, a),
            FormTag::C => Codeword::new(a, x, a),
            FormTag::L => Codeword::new(a, a, x),
        }
    }

    /// Form and `(a, x)` of a word with exactly two equal digits.
    pub fn classify(w: Codeword) -> Option<(FormTag, Digit, Digit)> {
        match (w.r == w.s, w.s == w.c, w.r == w.c) {
            (false, true, false) => Some((FormTag::R, w.s, w.r)),
            (false, false, true) => Some((FormTag::C, w.r, w.s)),
            (true, false, false) => Some((FormTag::L, w.r, w.c)),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormTag::R => "r",
            FormTag::C => "c",
            FormTag::L => "l",
        })
    }
}

/// Three maps `a -> x`, one per form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Skeleton {
    maps: [[Digit; BASE]; 3],
}

impl Skeleton {
    /// Builds a skeleton from its three maps (`maps[form][a] = x`). Every `x`
    /// must differ from its `a` and no two words may share a table cell.
    pub fn from_maps(r: [u8; BASE], c: [u8; BASE], l: [u8; BASE]) -> Result<Skeleton, SearchError> {
        let mut maps = [[Digit::lit(0); BASE]; 3];
        for (f, src) in [r, c, l].iter().enumerate() {
            for (a, &x) in src.iter().enumerate() {
                let x = Digit::new(x).ok_or_else(|| SearchError::InvalidSkeleton(format!("{x} is not a digit")))?;
                if x.index() == a {
                    return Err(SearchError::InvalidSkeleton(format!(
                        "form {} maps {a} to itself",
                        FormTag::ALL[f]
                    )));
                }
                maps[f][a] = x;
            }
        }
        let sk = Skeleton { maps };
        sk.to_partial()?;
        Ok(sk)
    }

    pub fn x(&self, form: FormTag, a: Digit) -> Digit {
        self.maps[form.index()][a.index()]
    }

    /// The 30 entries in `(form, a)` order.
    pub fn entries(&self) -> Vec<(Codeword, FormTag)> {
        FormTag::ALL
            .into_iter()
            .flat_map(|f| Digit::all().map(move |a| (f, a)))
            .map(|(f, a)| (f.word(a, self.x(f, a)), f))
            .collect()
    }

    pub fn words(&self) -> Vec<Codeword> {
        self.entries().into_iter().map(|(w, _)| w).collect()
    }

    pub fn to_partial(&self) -> Result<PartialTable, SearchError> {
        PartialTable::from_words(self.words()).map_err(|e| SearchError::InvalidSkeleton(e.to_string()))
    }

    /// Form of `w` if it belongs to this skeleton.
    pub fn form_of(&self, w: Codeword) -> Option<FormTag> {
        FormTag::classify(w)
            .filter(|&(f, a, x)| self.x(f, a) == x)
            .map(|(f, _, _)| f)
    }
}

/// Reads the doubled-digit words of a complete table.
pub fn extract_skeleton(table: &CodeTable) -> Result<Skeleton, SearchError> {
    let mut maps: [[Option<u8>; BASE]; 3] = [[None; BASE]; 3];
    let mut census = [0usize; 3];
    let mut triples = 0usize;
    for w in table.codewords() {
        if w.distinct_digits() == 1 {
            triples += 1;
        }
        if let Some((f, a, x)) = FormTag::classify(w) {
            census[f.index()] += 1;
            maps[f.index()][a.index()] = Some(x.get());
        }
    }
    let complete = maps.iter().all(|m| m.iter().all(Option::is_some));
    if triples > 0 || census != [BASE; 3] || !complete {
        return Err(SearchError::NotASkeleton { census, triples });
    }
    let [r, c, l] = maps.map(|m| m.map(|x| x.unwrap()));
    Skeleton::from_maps(r, c, l)
}

/// Audit of the 30 defined cells only; clean means the skeleton is valid.
pub fn validate_skeleton(sk: &Skeleton) -> AuditReport {
    audit_partial(&sk.to_partial().expect("skeleton cells are distinct by construction"))
}

/// Does the new word `w` clash with any placed word under a required class?
fn clashes(placed: &[Codeword], w: Codeword) -> bool {
    placed.iter().any(|&p| {
        p == w
            || (p.r == w.r && p.c == w.c)
            || ErrorClass::ALL
                .into_iter()
                .filter(|k| k.is_required())
                .any(|k| pattern_matches(k, p, w) || pattern_matches(k, w, p))
    })
}

/// Seeded depth-first search for a valid skeleton.
///
/// `forced` pins `(form, a, x)` assignments; the search fills the rest.
/// Candidate `x` values are tried in an order drawn from the seed.
pub fn find_skeleton_with(
    seed: u64,
    forced: &[(FormTag, Digit, Digit)],
) -> Result<(Skeleton, SearchStats), SearchError> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Digit> = Digit::all().collect();
    order.shuffle(&mut rng);

    // Variables: (form, a) for every form and digit, forced ones first.
    let mut vars: Vec<(FormTag, Digit)> = forced.iter().map(|&(f, a, _)| (f, a)).collect();
    for a in Digit::all() {
        for f in FormTag::ALL {
            if !vars.contains(&(f, a)) {
                vars.push((f, a));
            }
        }
    }
    let pinned = |f: FormTag, a: Digit| forced.iter().find(|&&(g, b, _)| g == f && b == a).map(|&(_, _, x)| x);

    let mut state = SkeletonDfs {
        vars: &vars,
        order: &order,
        placed: Vec::with_capacity(30),
        chosen: Vec::with_capacity(30),
        nodes: 0,
    };
    let found = state.run(&pinned);
    let stats = SearchStats {
        nodes: state.nodes,
        elapsed: start.elapsed(),
        max_filled: state.placed.len(),
    };
    if !found {
        return Err(SearchError::Exhausted { stats });
    }
    let mut maps = [[0u8; BASE]; 3];
    for (&(f, a), &x) in vars.iter().zip(&state.chosen) {
        maps[f.index()][a.index()] = x.get();
    }
    Ok((Skeleton::from_maps(maps[0], maps[1], maps[2])?, stats))
}

pub fn find_skeleton(seed: u64) -> Result<Skeleton, SearchError> {
    find_skeleton_with(seed, &[]).map(|(sk, _)| sk)
}

struct SkeletonDfs<'a> {
    vars: &'a [(FormTag, Digit)],
    order: &'a [Digit],
    placed: Vec<Codeword>,
    chosen: Vec<Digit>,
    nodes: u64,
}

impl SkeletonDfs<'_> {
    fn run(&mut self, pinned: &dyn Fn(FormTag, Digit) -> Option<Digit>) -> bool {
        let depth = self.chosen.len();
        if depth == self.vars.len() {
            return true;
        }
        let (form, a) = self.vars[depth];
        let candidates: Vec<Digit> = match pinned(form, a) {
            Some(x) => vec![x],
            None => self.order.to_vec(),
        };
        for x in candidates {
            if x == a {
                continue;
            }
            self.nodes += 1;
            let w = form.word(a, x);
            if clashes(&self.placed, w) {
                continue;
            }
            self.placed.push(w);
            self.chosen.push(x);
            if self.run(pinned) {
                return true;
            }
            self.placed.pop();
            self.chosen.pop();
        }
        false
    }
}
