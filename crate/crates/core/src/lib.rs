//! Three-digit decimal check-digit codes.
//!
//! A code is a 10×10 table `S` whose cell `S(r, c)` is the middle digit of
//! the codeword `(r, S(r, c), c)`. The crate ships Verhoeff's irregular code
//! and three pairwise-disjoint permutation-free codes, audits any table
//! against the classic transcription-error classes, and constructs new
//! codes by constraint search.

pub mod audit;
pub mod builtin;
pub mod error;
pub mod io;
pub mod search;
pub mod table;
pub mod transform;

pub use audit::{audit, brute_force_scan, detect_failures, AuditReport, ErrorClass, FailureWitness};
pub use builtin::{builtin, builtin_by_name, Builtin};
pub use error::{DecodeError, SearchError, TableError, TransformError};
pub use table::{CodeTable, Codeword, Digit, DigitMultiset, PartialTable};
pub use transform::{common_codewords, permute_digits, rotate_left, rotate_right, DigitPermutation};
