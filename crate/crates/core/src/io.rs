//! Table files and report documents.
//!
//! A table file is ten lines of ten comma-separated digits, row `r` on line
//! `r`, optionally preceded by `#` comment lines. Partial tables (skeletons)
//! use `-` for an empty cell.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::audit::{AuditReport, ErrorClass};
use crate::error::TableError;
use crate::table::{CodeTable, Codeword, Digit, PartialTable, BASE};

fn parse_grid(text: &str) -> Result<[[Option<u8>; BASE]; BASE], TableError> {
    let mut grid = [[None; BASE]; BASE];
    let mut rows = 0usize;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if line.trim_start().starts_with('#') {
            if rows > 0 {
                return Err(parse_error(line_no, 1, "comment lines must precede the table"));
            }
            continue;
        }
        if rows == BASE {
            return Err(parse_error(line_no, 1, "more than 10 data lines"));
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != BASE {
            return Err(parse_error(
                line_no,
                1,
                &format!("expected 10 fields, found {}", fields.len()),
            ));
        }
        let mut column = 1;
        for (c, field) in fields.iter().enumerate() {
            grid[rows][c] = match field.trim() {
                "-" => None,
                f if f.len() == 1 && f.as_bytes()[0].is_ascii_digit() => Some(f.as_bytes()[0] - b'0'),
                f => return Err(parse_error(line_no, column, &format!("`{f}` is not a single digit"))),
            };
            column += field.len() + 1;
        }
        rows += 1;
    }
    if rows != BASE {
        return Err(parse_error(
            text.lines().count().max(1),
            1,
            &format!("expected 10 data lines, found {rows}"),
        ));
    }
    Ok(grid)
}

fn parse_error(line: usize, column: usize, message: &str) -> TableError {
    TableError::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

/// Parses a complete table. With `check_latin`, rows and columns must be
/// permutations.
pub fn parse_table(text: &str, check_latin: bool) -> Result<CodeTable, TableError> {
    let grid = parse_grid(text)?;
    let mut rows = [[0u8; BASE]; BASE];
    for (r, row) in grid.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            rows[r][c] = cell.ok_or_else(|| parse_error(r + 1, 2 * c + 1, "empty cell in a complete table"))?;
        }
    }
    if check_latin {
        CodeTable::from_rows(rows)
    } else {
        CodeTable::from_rows_unchecked(rows)
    }
}

/// Parses a table whose cells may be `-`.
pub fn parse_partial_table(text: &str) -> Result<PartialTable, TableError> {
    let grid = parse_grid(text)?;
    let mut table = PartialTable::new();
    for (r, row) in grid.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if let Some(v) = cell {
                table.insert(Codeword::new(Digit::lit(r as u8), Digit::lit(*v), Digit::lit(c as u8)))?;
            }
        }
    }
    Ok(table)
}

pub fn serialize_table(table: &CodeTable) -> String {
    let mut out = String::with_capacity(BASE * 2 * BASE);
    for row in table.rows() {
        let fields: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn serialize_partial_table(table: &PartialTable) -> String {
    use crate::table::Cells;
    let mut out = String::new();
    for r in Digit::all() {
        let fields: Vec<String> = Digit::all()
            .map(|c| table.cell(r, c).map_or("-".to_string(), |d| d.to_string()))
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    name: Option<&'a str>,
    counts: BTreeMap<&'static str, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<BTreeMap<&'static str, Vec<[String; 2]>>>,
    is_latin: bool,
    is_permutation_free: bool,
    triple_count: usize,
    clean: bool,
}

/// Canonical JSON for a report: sorted keys, two-space indent, trailing newline.
pub fn report_json(report: &AuditReport, with_witnesses: bool) -> String {
    let doc = ReportDocument {
        name: report.name.as_deref(),
        counts: report.counts().into_iter().map(|(k, n)| (k.tag(), n)).collect(),
        witnesses: with_witnesses.then(|| {
            report
                .witnesses
                .iter()
                .map(|(k, ws)| {
                    (
                        k.tag(),
                        ws.iter()
                            .map(|w| [w.words.0.to_string(), w.words.1.to_string()])
                            .collect(),
                    )
                })
                .collect()
        }),
        is_latin: report.is_latin,
        is_permutation_free: report.is_permutation_free(),
        triple_count: report.triple_count,
        clean: report.is_clean(),
    };
    // Round-trip through Value so every object's keys come out sorted.
    let value = serde_json::to_value(&doc).expect("report serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    text
}

/// Plain-text report, one `key: value` line per field.
pub fn report_text(report: &AuditReport, with_witnesses: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("table: {}\n", report.name.as_deref().unwrap_or("-")));
    out.push_str(&format!("is_latin: {}\n", report.is_latin));
    out.push_str(&format!("is_permutation_free: {}\n", report.is_permutation_free()));
    out.push_str(&format!("triple_count: {}\n", report.triple_count));
    for k in ErrorClass::ALL {
        out.push_str(&format!("{}: {}\n", k.tag(), report.count(k)));
        if with_witnesses {
            for w in &report.witnesses[&k] {
                out.push_str(&format!("  {w}\n"));
            }
        }
    }
    out.push_str(&format!("clean: {}\n", report.is_clean()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::audit;
    use crate::builtin::{builtin, Builtin};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn first_line_of_disjoint_b() {
        let text = serialize_table(&builtin(Builtin::DisjointB));
        assert_eq!(text.lines().next(), Some("1,3,0,5,9,8,4,7,6,2"));
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().count(), 10);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = format!(
            "# Verhoeff\n# irregular\n{}",
            serialize_table(&builtin(Builtin::Verhoeff))
        );
        assert_eq!(parse_table(&text, true).unwrap(), builtin(Builtin::Verhoeff));
    }

    #[test]
    fn short_line_names_line_number() {
        let mut lines: Vec<String> = serialize_table(&builtin(Builtin::Verhoeff))
            .lines()
            .map(String::from)
            .collect();
        lines[3] = "1,5,8,3,7,6,4,0,9".into();
        let err = parse_table(&lines.join("\n"), true).unwrap_err();
        assert!(matches!(err, TableError::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn bad_digit_names_column() {
        let mut lines: Vec<String> = serialize_table(&builtin(Builtin::Verhoeff))
            .lines()
            .map(String::from)
            .collect();
        lines[0] = "0,3,x,9,6,7,5,8,2,1".into();
        let err = parse_table(&lines.join("\n"), true).unwrap_err();
        assert_eq!(
            err,
            TableError::Parse {
                line: 1,
                column: 5,
                message: "`x` is not a single digit".into()
            }
        );
    }

    #[test]
    fn latin_violation_needs_opt_out() {
        let mut rows = builtin(Builtin::Verhoeff).rows();
        rows[0][0] = 3;
        let text = serialize_table(&CodeTable::from_rows_unchecked(rows).unwrap());
        assert!(matches!(parse_table(&text, true), Err(TableError::NotLatin { .. })));
        assert!(parse_table(&text, false).is_ok());
    }

    #[test]
    fn partial_tables_round_trip() {
        let mut p = PartialTable::new();
        p.insert("010".parse().unwrap()).unwrap();
        p.insert("927".parse().unwrap()).unwrap();
        let text = serialize_partial_table(&p);
        assert_eq!(text.lines().next(), Some("1,-,-,-,-,-,-,-,-,-"));
        assert_eq!(parse_partial_table(&text).unwrap(), p);
    }

    #[test]
    fn json_keys_are_sorted_tags() {
        let json = report_json(&audit(&builtin(Builtin::Verhoeff)), false);
        assert!(json.contains("\"cyclic\": 16"));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let counts = value["counts"].as_object().unwrap();
        assert_eq!(counts.len(), ErrorClass::ALL.len());
        let keys: Vec<&String> = counts.keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(value["triple_count"], 10);
    }

    #[test]
    fn json_witness_arrays_match_counts() {
        let report = audit(&builtin(Builtin::DisjointB));
        let value: serde_json::Value = serde_json::from_str(&report_json(&report, true)).unwrap();
        for k in ErrorClass::ALL {
            assert_eq!(value["witnesses"][k.tag()].as_array().unwrap().len(), report.count(k));
        }
        assert_eq!(
            value["witnesses"]["permutation_set"][0],
            serde_json::json!(["588", "855"])
        );
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(seed in any::<u64>()) {
            let t = CodeTable::random_latin(&mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(parse_table(&serialize_table(&t), true).unwrap(), t);
        }
    }
}
