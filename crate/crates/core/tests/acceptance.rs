//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Criterion 10 draws its seed from the clock; set `TRICHECK_SEED` to replay
//! a run.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tricheck::io::{parse_table, serialize_table};
use tricheck::search::{complete_skeleton, construct_disjoint_triple, extract_skeleton, search_code};
use tricheck::{
    audit, brute_force_scan, builtin, common_codewords, detect_failures, permute_digits, rotate_left, rotate_right,
    Builtin, CodeTable, Codeword, DigitMultiset, DigitPermutation, ErrorClass,
};

const BUDGET: Duration = Duration::from_secs(300);
const RANDOM_SQUARES: u64 = 128;
const RELABELINGS: usize = 32;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn(&mut Audited) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every table audited by the suite, for the permutation-free implication.
#[derive(Default)]
struct Audited(Vec<(String, CodeTable)>);

impl Audited {
    fn add(&mut self, label: impl Into<String>, t: &CodeTable) {
        self.0.push((label.into(), t.clone()));
    }
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn word(s: &str) -> Codeword {
    s.parse().unwrap()
}

fn random_squares() -> Vec<CodeTable> {
    (0..RANDOM_SQUARES)
        .map(|seed| CodeTable::random_latin(&mut ChaCha8Rng::seed_from_u64(seed)))
        .collect()
}

fn builtin_fidelity(_: &mut Audited) -> Outcome {
    let mut cells = 0;
    for b in Builtin::ALL {
        let expected = parse_table(&fixture(&format!("{b}.txt")), true).map_err(|e| e.to_string())?;
        let actual = builtin(b);
        for (r, (er, ar)) in expected.rows().iter().zip(actual.rows()).enumerate() {
            for (c, (e, a)) in er.iter().zip(ar).enumerate() {
                ensure!(*e == a, "{b} cell ({r},{c}) is {a}, expected {e}");
                cells += 1;
            }
        }
    }
    ensure!(
        builtin(Builtin::Verhoeff).rows()[0] == [0, 3, 4, 9, 6, 7, 5, 8, 2, 1],
        "verhoeff row 0"
    );
    ensure!(
        builtin(Builtin::DisjointB).rows()[0] == [1, 3, 0, 5, 9, 8, 4, 7, 6, 2],
        "disjoint_b row 0"
    );
    Ok(format!("{cells} cells match"))
}

fn verhoeff_numbers(audited: &mut Audited) -> Outcome {
    let t = builtin(Builtin::Verhoeff);
    audited.add("verhoeff", &t);
    let r = audit(&t);
    ensure!(
        r.count(ErrorClass::Cyclic) == 16,
        "cyclic = {}",
        r.count(ErrorClass::Cyclic)
    );
    ensure!(r.triple_count == 10, "triple_count = {}", r.triple_count);
    ensure!(
        r.count(ErrorClass::Triple) == 45,
        "triple pairs = {}",
        r.count(ErrorClass::Triple)
    );
    ensure!(
        r.count(ErrorClass::PhoneticLeft) == 0,
        "phonetic_left = {}",
        r.count(ErrorClass::PhoneticLeft)
    );
    ensure!(
        r.count(ErrorClass::PhoneticRight) == 0,
        "phonetic_right = {}",
        r.count(ErrorClass::PhoneticRight)
    );
    ensure!(r.is_latin, "not Latin");
    ensure!(
        r.count(ErrorClass::SingleRow) + r.count(ErrorClass::SingleCol) == 0,
        "single errors undetected"
    );
    Ok("cyclic=16 triple_count=10 triple_pairs=45 phonetic_left=0 phonetic_right=0 latin".into())
}

fn check_clean(label: &str, t: &CodeTable) -> Result<(), String> {
    let r = audit(t);
    ensure!(r.is_latin, "{label}: not Latin");
    ensure!(r.is_clean(), "{label}: failing {:?}", r.failing());
    ensure!(r.triple_count == 0, "{label}: triple_count = {}", r.triple_count);
    ensure!(r.is_permutation_free(), "{label}: not permutation-free");
    Ok(())
}

fn disjoint_audits(audited: &mut Audited) -> Outcome {
    for b in [Builtin::DisjointA, Builtin::DisjointB, Builtin::DisjointC] {
        let t = builtin(b);
        audited.add(b.name(), &t);
        check_clean(b.name(), &t)?;
    }
    Ok("disjoint_a/b/c: required classes 0, triple_count 0, permutation-free".into())
}

fn rotation_identities(_: &mut Audited) -> Outcome {
    let b = builtin(Builtin::DisjointB);
    let left = rotate_left(&b).map_err(|e| e.to_string())?;
    let right = rotate_right(&b).map_err(|e| e.to_string())?;
    ensure!(
        serialize_table(&left) == fixture("disjoint_a.txt"),
        "rotate_left(disjoint_b) differs from disjoint_a"
    );
    ensure!(
        serialize_table(&right) == fixture("disjoint_c.txt"),
        "rotate_right(disjoint_b) differs from disjoint_c"
    );
    for which in Builtin::ALL {
        let t = builtin(which);
        let round = rotate_left(&rotate_right(&t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(
            serialize_table(&round) == serialize_table(&t),
            "rotl(rotr({which})) != {which}"
        );
        let round = rotate_right(&rotate_left(&t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(
            serialize_table(&round) == serialize_table(&t),
            "rotr(rotl({which})) != {which}"
        );
    }
    Ok("byte-identical rotations; rotl∘rotr = rotr∘rotl = id on 4 built-ins".into())
}

fn check_pairwise_disjoint(tables: [(&str, &CodeTable); 3]) -> Result<(), String> {
    for i in 0..3 {
        for j in i + 1..3 {
            let common = common_codewords(tables[i].1, tables[j].1);
            ensure!(
                common.is_empty(),
                "{} and {} share {} codewords",
                tables[i].0,
                tables[j].0,
                common.len()
            );
        }
    }
    Ok(())
}

fn disjointness(_: &mut Audited) -> Outcome {
    let (a, b, c) = (
        builtin(Builtin::DisjointA),
        builtin(Builtin::DisjointB),
        builtin(Builtin::DisjointC),
    );
    check_pairwise_disjoint([("disjoint_a", &a), ("disjoint_b", &b), ("disjoint_c", &c)])?;
    let mut tables: Vec<CodeTable> = Builtin::ALL.iter().map(|&w| builtin(w)).collect();
    tables.extend(random_squares().into_iter().take(16));
    for t in &tables {
        ensure!(common_codewords(t, t).len() == 100, "|common(t, t)| != 100");
    }
    Ok(format!(
        "3 pairs disjoint; |common(t, t)| = 100 on {} tables",
        tables.len()
    ))
}

fn set_collision(_: &mut Audited) -> Outcome {
    let b = builtin(Builtin::DisjointB);
    ensure!(
        b.is_codeword(word("588")) && b.is_codeword(word("855")),
        "588 or 855 missing"
    );
    let r = audit(&b);
    let set = &r.witnesses[&ErrorClass::PermutationSet];
    ensure!(
        set.iter().any(|w| w.words == (word("588"), word("855"))),
        "permutation_set misses 588/855: {set:?}"
    );
    ensure!(
        r.count(ErrorClass::PermutationMultiset) == 0,
        "multiset collisions = {}",
        r.count(ErrorClass::PermutationMultiset)
    );
    let m: DigitMultiset = "588".parse().unwrap();
    let decoded = b.decode_multiset(m).map_err(|e| e.to_string())?;
    ensure!(decoded == Some(word("588")), "decode {{5,8,8}} = {decoded:?}");
    Ok(format!(
        "permutation_set = {} (588<->855); multiset collisions 0; decode {{5,8,8}} = 588",
        set.len()
    ))
}

fn oracle_equivalence(audited: &mut Audited) -> Outcome {
    let mut tables: Vec<(String, CodeTable)> = Builtin::ALL
        .iter()
        .map(|&b| (b.name().to_string(), builtin(b)))
        .collect();
    for (i, t) in random_squares().into_iter().enumerate() {
        tables.push((format!("random latin #{i}"), t));
    }
    let mut comparisons = 0;
    for (label, t) in &tables {
        for k in ErrorClass::ALL {
            ensure!(
                detect_failures(t, k) == brute_force_scan(t, k),
                "{label}: {k} differs from brute force"
            );
            comparisons += 1;
        }
        audited.add(label.clone(), t);
    }
    Ok(format!(
        "{} tables x {} classes = {comparisons} exact set comparisons",
        tables.len(),
        ErrorClass::ALL.len()
    ))
}

fn check_rotations_clean(t: &CodeTable) -> Result<(CodeTable, CodeTable, CodeTable), String> {
    let (l, m, r) = construct_disjoint_triple(t).map_err(|e| e.to_string())?;
    check_pairwise_disjoint([("left", &l), ("table", &m), ("right", &r)])?;
    for (label, x) in [("left", &l), ("table", &m), ("right", &r)] {
        check_clean(label, x)?;
    }
    Ok((l, m, r))
}

fn construction_reproduction(audited: &mut Audited) -> Outcome {
    let sk = extract_skeleton(&builtin(Builtin::DisjointB)).map_err(|e| e.to_string())?;
    let result = complete_skeleton(&sk, 0, BUDGET).map_err(|e| e.to_string())?;
    check_clean("completion", &result.table)?;
    let (l, m, r) = check_rotations_clean(&result.table)?;
    for (label, t) in [("completion left", &l), ("completion", &m), ("completion right", &r)] {
        audited.add(label, t);
    }
    let same = result.table == builtin(Builtin::DisjointB);
    Ok(format!(
        "{} nodes in {:.2}s; rotations disjoint and clean; equals disjoint_b: {same}",
        result.stats.nodes,
        result.stats.elapsed.as_secs_f64()
    ))
}

fn end_to_end(audited: &mut Audited) -> Outcome {
    let seed = match std::env::var("TRICHECK_SEED") {
        Ok(s) => s.parse().map_err(|_| format!("TRICHECK_SEED `{s}` is not a u64"))?,
        Err(_) => SystemTime::now().duration_since(UNIX_EPOCH).unwrap().as_nanos() as u64,
    };
    let start = Instant::now();
    let p = search_code(seed, BUDGET).map_err(|e| format!("seed {seed}: {e}"))?;
    let elapsed = start.elapsed();
    let (l, m, r) = check_rotations_clean(&p.result.table).map_err(|e| format!("seed {seed}: {e}"))?;
    for (label, t) in [("search left", &l), ("search", &m), ("search right", &r)] {
        audited.add(label, t);
    }
    let rl = rotate_left(&rotate_right(&m).unwrap()).unwrap();
    ensure!(
        serialize_table(&rl) == serialize_table(&m),
        "seed {seed}: rotl∘rotr != id"
    );
    ensure!(
        common_codewords(&m, &m).len() == 100,
        "seed {seed}: |common(t, t)| != 100"
    );
    Ok(format!(
        "seed {seed}: {} skeletons rejected, {:.2}s; triple passes criteria 3-5",
        p.skeletons_rejected,
        elapsed.as_secs_f64()
    ))
}

fn relabeling_invariance(audited: &mut Audited) -> Outcome {
    let b = builtin(Builtin::DisjointB);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..RELABELINGS {
        let mut tail: Vec<u8> = (2..10).collect();
        tail.shuffle(&mut rng);
        let mut images = [0u8; 10];
        images[1] = 1;
        images[2..].copy_from_slice(&tail);
        let p = DigitPermutation::new(images).map_err(|e| e.to_string())?;
        let t = permute_digits(&b, &p);
        check_clean(&format!("disjoint_b relabeled by {p}"), &t)?;
        audited.add(format!("relabel #{i}"), &t);
    }
    let mut tables: Vec<CodeTable> = Builtin::ALL.iter().map(|&w| builtin(w)).collect();
    tables.extend(random_squares().into_iter().take(8));
    let mut checked = 0;
    for t in &tables {
        let before = audit(t);
        for _ in 0..RELABELINGS {
            let mut images: Vec<u8> = (0..10).collect();
            images.shuffle(&mut rng);
            let p = DigitPermutation::new(images.try_into().unwrap()).map_err(|e| e.to_string())?;
            let after = audit(&permute_digits(t, &p));
            for k in ErrorClass::ALL.into_iter().filter(|k| !k.is_phonetic()) {
                ensure!(
                    before.count(k) == after.count(k),
                    "{k}: {} -> {} under {p}",
                    before.count(k),
                    after.count(k)
                );
            }
            ensure!(
                before.triple_count == after.triple_count,
                "triple_count changed under {p}"
            );
            checked += 1;
        }
    }
    Ok(format!("{RELABELINGS} relabelings fixing 0,1 keep disjoint_b clean; {checked} arbitrary relabelings preserve non-phonetic counts"))
}

fn permutation_free_implication(audited: &Audited) -> Outcome {
    const IMPLIED: [ErrorClass; 7] = [
        ErrorClass::TranspositionRow,
        ErrorClass::TranspositionCol,
        ErrorClass::JumpTransposition,
        ErrorClass::Cyclic,
        ErrorClass::TwinRow,
        ErrorClass::TwinCol,
        ErrorClass::JumpTwin,
    ];
    let mut free = 0;
    for (label, t) in &audited.0 {
        let r = audit(t);
        if r.count(ErrorClass::PermutationMultiset) == 0 {
            free += 1;
            for k in IMPLIED {
                ensure!(r.count(k) == 0, "{label}: permutation-free but {k} = {}", r.count(k));
            }
        }
    }
    ensure!(free > 0, "no permutation-free table audited");
    Ok(format!(
        "{free} of {} audited tables are permutation-free; all implied classes 0",
        audited.0.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "built-in fidelity", builtin_fidelity),
        (2, "verhoeff audit numbers", verhoeff_numbers),
        (3, "disjoint code audits", disjoint_audits),
        (4, "rotation identities", rotation_identities),
        (5, "disjointness", disjointness),
        (6, "588/855 collision", set_collision),
        (7, "oracle equivalence", oracle_equivalence),
        (9, "construction reproduction", construction_reproduction),
        (10, "end-to-end search", end_to_end),
        (11, "relabeling invariance", relabeling_invariance),
    ];
    let mut audited = Audited::default();
    let mut failures = 0;
    let mut report = |id: u8, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {id:>2} {name} ({secs:.2}s): {why}");
            }
        }
    };
    for (id, name, run) in criteria {
        let start = Instant::now();
        report(id, name, start, run(&mut audited));
    }
    let start = Instant::now();
    report(
        8,
        "permutation-free implication",
        start,
        permutation_free_implication(&audited),
    );
    if failures == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
