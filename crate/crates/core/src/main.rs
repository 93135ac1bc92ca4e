use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use tricheck::audit::audit;
use tricheck::io::{parse_partial_table, parse_table, report_json, report_text, serialize_table};
use tricheck::search::{
    complete_skeleton, construct_disjoint_triple, extract_skeleton, search_code, validate_skeleton, Skeleton,
};
use tricheck::table::Cells;
use tricheck::transform::{are_disjoint, common_codewords};
use tricheck::{
    builtin_by_name, Builtin, CodeTable, Codeword, DecodeError, DigitMultiset, DigitPermutation, SearchError,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "tricheck", version, about = "Three-digit decimal check-digit codes")]
struct Cli {
    /// Accept table files whose rows or columns are not permutations.
    #[arg(long, global = true)]
    no_latin_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in tables.
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// Print the codeword for two information digits.
    Check {
        #[arg(long)]
        code: String,
        /// First and last digit, e.g. `58`.
        #[arg(long)]
        info: String,
    },
    /// Exit 0 if WORD (digits in order first, check, last) is a codeword.
    Validate {
        #[arg(long)]
        code: String,
        word: String,
    },
    /// Recover the codeword with a given digit multiset.
    Decode {
        #[arg(long)]
        code: String,
        /// Three digits in any order.
        #[arg(long)]
        multiset: String,
    },
    /// Report failures per error class.
    Audit {
        #[arg(long)]
        code: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        witnesses: bool,
    },
    /// Rotate every codeword of a table.
    Rotate {
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(long)]
        code: String,
    },
    /// Relabel digits; MAP lists the images of 0..9.
    Permute {
        #[arg(long)]
        code: String,
        #[arg(long)]
        map: String,
    },
    /// Exit 0 if the two codes share no codeword.
    Disjoint { first: String, second: String },
    /// Construct a new code.
    Search {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Table file holding a skeleton (`-` for empty cells) or a complete code.
        #[arg(long)]
        skeleton: Option<PathBuf>,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 300)]
        budget: u64,
    },
    /// Print a code with its two rotations and check they are pairwise disjoint.
    Triple {
        #[arg(long)]
        code: String,
    },
}

#[derive(Subcommand)]
enum TablesAction {
    List,
    Show { name: String },
}

/// Error carrying the process exit code.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl ToString) -> Failure {
        Failure(EXIT_USAGE, msg.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn load(code: &str, check_latin: bool) -> Result<CodeTable, Failure> {
    if let Ok(table) = builtin_by_name(code) {
        return Ok(table);
    }
    let text = fs::read_to_string(code)
        .map_err(|e| Failure::usage(format!("`{code}` is neither a built-in table nor a readable file: {e}")))?;
    let table = parse_table(&text, check_latin).map_err(|e| Failure::usage(format!("{code}: {e}")))?;
    Ok(table.with_name(code))
}

fn load_skeleton(path: &PathBuf) -> Result<Skeleton, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let partial = parse_partial_table(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let table = match partial.to_table() {
        Some(table) => table,
        None => {
            // Pad a partial grid into a skeleton by reading its doubled words.
            let words = partial.defined_words();
            return skeleton_from_words(&words).map_err(|e| Failure::usage(format!("{}: {e}", path.display())));
        }
    };
    extract_skeleton(&table).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn skeleton_from_words(words: &[Codeword]) -> Result<Skeleton, SearchError> {
    use tricheck::search::FormTag;
    let mut maps = [[None::<u8>; 10]; 3];
    let mut census = [0usize; 3];
    for &w in words {
        match FormTag::classify(w) {
            Some((f, a, x)) => {
                census[f as usize] += 1;
                maps[f as usize][a.index()] = Some(x.get());
            }
            None => return Err(SearchError::InvalidSkeleton(format!("{w} is not a doubled-digit word"))),
        }
    }
    if words.len() != 30 || maps.iter().any(|m| m.iter().any(Option::is_none)) {
        return Err(SearchError::NotASkeleton { census, triples: 0 });
    }
    let [r, c, l] = maps.map(|m| m.map(Option::unwrap));
    Skeleton::from_maps(r, c, l)
}

fn parse_two_digits(text: &str) -> Result<(tricheck::Digit, tricheck::Digit), Failure> {
    let digits: Vec<_> = text.trim().chars().map(tricheck::Digit::from_char).collect();
    match digits.as_slice() {
        [Some(r), Some(c)] => Ok((*r, *c)),
        _ => Err(Failure::usage(format!("--info expects two digits, got `{text}`"))),
    }
}

fn run(cli: Cli) -> CmdResult {
    let latin = !cli.no_latin_check;
    match cli.command {
        Command::Tables {
            action: TablesAction::List,
        } => {
            for b in Builtin::ALL {
                println!("{b}");
            }
            Ok(0)
        }
        Command::Tables {
            action: TablesAction::Show { name },
        } => {
            let table = builtin_by_name(&name).map_err(Failure::usage)?;
            print!("{}", serialize_table(&table));
            Ok(0)
        }
        Command::Check { code, info } => {
            let table = load(&code, latin)?;
            let (r, c) = parse_two_digits(&info)?;
            println!("{}", table.codeword(r, c));
            Ok(0)
        }
        Command::Validate { code, word } => {
            let table = load(&code, latin)?;
            let word: Codeword = word.parse().map_err(Failure::usage)?;
            if table.is_codeword(word) {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid");
                Ok(EXIT_FAIL)
            }
        }
        Command::Decode { code, multiset } => {
            let table = load(&code, latin)?;
            let m: DigitMultiset = multiset.parse().map_err(Failure::usage)?;
            match table.decode_multiset(m) {
                Ok(Some(w)) => println!("{w}"),
                Ok(None) => println!("none"),
                Err(e @ DecodeError::Ambiguous { .. }) => return Err(Failure(EXIT_FAIL, e.to_string())),
            }
            Ok(0)
        }
        Command::Audit { code, json, witnesses } => {
            let table = load(&code, latin)?;
            let report = audit(&table);
            if json {
                print!("{}", report_json(&report, witnesses));
            } else {
                print!("{}", report_text(&report, witnesses));
            }
            Ok(if report.is_clean() { 0 } else { EXIT_FAIL })
        }
        Command::Rotate { left, right: _, code } => {
            let table = load(&code, latin)?;
            let rotated = if left {
                tricheck::rotate_left(&table)
            } else {
                tricheck::rotate_right(&table)
            };
            print!("{}", serialize_table(&rotated.map_err(Failure::usage)?));
            Ok(0)
        }
        Command::Permute { code, map } => {
            let table = load(&code, latin)?;
            let p: DigitPermutation = map.parse().map_err(Failure::usage)?;
            print!("{}", serialize_table(&tricheck::permute_digits(&table, &p)));
            Ok(0)
        }
        Command::Disjoint { first, second } => {
            let a = load(&first, latin)?;
            let b = load(&second, latin)?;
            let common = common_codewords(&a, &b);
            if common.is_empty() {
                println!("disjoint");
                Ok(0)
            } else {
                println!("{} common codewords", common.len());
                for w in common {
                    println!("{w}");
                }
                Ok(EXIT_FAIL)
            }
        }
        Command::Search { seed, skeleton, budget } => {
            let budget = Duration::from_secs(budget);
            let start = Instant::now();
            let outcome = match &skeleton {
                Some(path) => {
                    let sk = load_skeleton(path)?;
                    let report = validate_skeleton(&sk);
                    if !report.is_clean() {
                        let failing = report
                            .failing()
                            .iter()
                            .map(|(k, n)| format!("{k}={n}"))
                            .collect::<Vec<_>>()
                            .join(", ");
                        return Err(Failure::usage(format!("skeleton fails: {failing}")));
                    }
                    complete_skeleton(&sk, seed, budget).map(|r| (r, 0, 0))
                }
                None => search_code(seed, budget).map(|p| (p.result, p.skeletons_rejected, p.skeleton_nodes)),
            };
            match outcome {
                Ok((result, rejected, skeleton_nodes)) => {
                    let report = audit(&result.table);
                    println!("# seed: {seed}");
                    println!("# skeletons_rejected: {rejected}");
                    println!("# skeleton_nodes: {skeleton_nodes}");
                    println!("# completion_nodes: {}", result.stats.nodes);
                    println!("# clean: {}", report.is_clean());
                    print!("{}", serialize_table(&result.table));
                    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
                    Ok(if report.is_clean() { 0 } else { EXIT_FAIL })
                }
                Err(e @ SearchError::Timeout { .. }) => Err(Failure(EXIT_TIMEOUT, e.to_string())),
                Err(e) => Err(Failure(EXIT_FAIL, e.to_string())),
            }
        }
        Command::Triple { code } => {
            let table = load(&code, latin)?;
            let (left, mid, right) =
                construct_disjoint_triple(&table).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            for (label, t) in [("rotated left", &left), ("original", &mid), ("rotated right", &right)] {
                println!("# {label}");
                print!("{}", serialize_table(t));
            }
            let disjoint = are_disjoint(&left, &mid) && are_disjoint(&mid, &right) && are_disjoint(&left, &right);
            println!("# pairwise disjoint: {disjoint}");
            Ok(if disjoint { 0 } else { EXIT_FAIL })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("tricheck: {msg}");
            ExitCode::from(code)
        }
    }
}
