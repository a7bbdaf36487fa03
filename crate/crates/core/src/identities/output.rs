use std::collections::BTreeMap;

use super::{IdentityId, VerificationReport, Verdict};
use crate::error::{Error, Result};

const CSV_HEADER: [&str; 8] = ["identity_id", "n", "parameters", "lhs", "rhs", "verdict", "elapsed_ms", "notes"];

/// One JSON object per line, each line terminated by `\n`.
pub fn to_jsonl(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

pub fn from_jsonl(text: &str) -> Result<Vec<VerificationReport>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(parse_err))
        .collect()
}

/// Same fields as the jsonl form; `parameters` is a JSON object in one cell.
pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        let params = serde_json::to_string(&r.parameters).expect("map serializes");
        w.write_record([
            r.identity_id.as_str(),
            &r.n.to_string(),
            &params,
            &r.lhs,
            &r.rhs,
            r.verdict.as_str(),
            &r.elapsed_ms.to_string(),
            &r.notes,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn parse_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Parse(e.to_string())
}

pub fn from_csv(text: &str) -> Result<Vec<VerificationReport>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(parse_err)?;
        if row.len() != CSV_HEADER.len() {
            return Err(Error::Parse(format!("expected {} columns, got {}", CSV_HEADER.len(), row.len())));
        }
        let verdict: Verdict = serde_json::from_value(serde_json::Value::String(row[5].to_string())).map_err(parse_err)?;
        let parameters: BTreeMap<String, String> = serde_json::from_str(&row[2]).map_err(parse_err)?;
        out.push(VerificationReport {
            identity_id: row[0].parse::<IdentityId>()?,
            n: row[1].parse().map_err(parse_err)?,
            parameters,
            lhs: row[3].to_string(),
            rhs: row[4].to_string(),
            verdict,
            elapsed_ms: row[6].parse().map_err(parse_err)?,
            notes: row[7].to_string(),
        });
    }
    Ok(out)
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let head: String = s.chars().take(width - 3).collect();
        format!("{head}...")
    }
}

/// Aligned plain-text table for terminals, with a verdict tally at the end.
pub fn to_table(reports: &[VerificationReport]) -> String {
    let header = ["identity", "n", "trial", "verdict", "lhs", "rhs", "ms"];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.identity_id.to_string(),
                r.n.to_string(),
                r.parameters.get("trial").cloned().unwrap_or_else(|| "-".into()),
                r.verdict.to_string(),
                clip(&r.lhs, 32),
                clip(&r.rhs, 32),
                r.elapsed_ms.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rules: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rules.iter().map(String::as_str).collect()));
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    out.push_str(&format!(
        "\n{} pass, {} fail, {} inconclusive, {} skipped\n",
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Inconclusive),
        count(Verdict::Skipped)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<VerificationReport> {
        let mut a = VerificationReport::new(IdentityId::Eq1_1, 2).sides("1/4", "1/4").verdict(Verdict::Pass);
        a.parameters.insert("det".into(), "-1/4".into());
        let b = VerificationReport::new(IdentityId::Lemma3_2, 3)
            .sides("0", "0")
            .param("xs", "[1, -2/3, 5]")
            .param("trial", 0)
            .verdict(Verdict::Skipped)
            .note("a note, with \"quotes\"");
        vec![a, b]
    }

    #[test]
    fn jsonl_field_names() {
        let text = to_jsonl(&sample());
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"identity_id":"eq1_1","n":2,"parameters":{"det":"-1/4"},"lhs":"1/4","rhs":"1/4","verdict":"pass","elapsed_ms":0,"notes":""}"#
        );
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn csv_round_trip_matches_jsonl_records() {
        let reports = sample();
        let back = from_csv(&to_csv(&reports)).unwrap();
        assert_eq!(back, reports);
        assert_eq!(from_jsonl(&to_jsonl(&reports)).unwrap(), back);
    }

    #[test]
    fn table_has_tally() {
        let t = to_table(&sample());
        assert!(t.starts_with("identity"));
        assert!(t.contains("1 pass, 0 fail, 0 inconclusive, 1 skipped"));
        assert_eq!(clip("abcdefgh", 6), "abc...");
    }
}
