//! Structured verification reports: one claim per checked statement, with a
//! stable anchor into a fixed registry, an expected and a computed value, and
//! a pass / fail / paper-ambiguous status. Reports serialize losslessly to
//! JSON and flatten to CSV or a human text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    PaperAmbiguous,
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::PaperAmbiguous => "ambig",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub paper_anchor: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Claim {
    /// Pass/fail claim from a boolean comparator outcome.
    pub fn check(
        id: &str,
        anchor: &str,
        expected: impl ToString,
        computed: impl ToString,
        ok: bool,
    ) -> Claim {
        Claim {
            id: id.to_string(),
            paper_anchor: anchor.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: None,
        }
    }

    /// Equality claim; on mismatch the computed value is the witness.
    pub fn equals<T: PartialEq + ToString>(id: &str, anchor: &str, expected: T, computed: T) -> Claim {
        let ok = expected == computed;
        Claim::check(id, anchor, expected.to_string(), computed.to_string(), ok)
    }

    /// A statement the source leaves ambiguous or that diverges from it;
    /// never counts as a failure, always carries a witness.
    pub fn ambiguous(
        id: &str,
        anchor: &str,
        expected: impl ToString,
        computed: impl ToString,
        witness: impl ToString,
    ) -> Claim {
        Claim {
            id: id.to_string(),
            paper_anchor: anchor.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: Status::PaperAmbiguous,
            witness: Some(witness.to_string()),
        }
    }

    /// A recorded quantity with no asserted value.
    pub fn info(id: &str, anchor: &str, computed: impl ToString) -> Claim {
        Claim {
            id: id.to_string(),
            paper_anchor: anchor.to_string(),
            expected: String::from("(recorded)"),
            computed: computed.to_string(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: impl ToString) -> Claim {
        self.witness = Some(witness.to_string());
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub family: String,
    pub n: u32,
    pub seed: u64,
    pub claims: Vec<Claim>,
    pub timings_ms: BTreeMap<String, u64>,
    pub version: String,
}

impl Report {
    pub fn new(family: &str, n: u32, seed: u64) -> Report {
        Report {
            family: family.to_string(),
            n,
            seed,
            claims: Vec::new(),
            timings_ms: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn failures(&self) -> usize {
        self.claims
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn has_duplicate_ids(&self) -> Option<&str> {
        let mut seen = std::collections::BTreeSet::new();
        self.claims
            .iter()
            .find(|c| !seen.insert(c.id.as_str()))
            .map(|c| c.id.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json|csv|text)")),
        }
    }
}

fn csv_field(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' {
            out.push('"');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Serializes a report. JSON round-trips losslessly; CSV is flat with one
/// claim per row; text is a human-readable table.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from(
                "family,n,seed,id,paper_anchor,status,expected,computed,witness\n",
            );
            for c in &report.claims {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::PaperAmbiguous => "paper-ambiguous",
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    csv_field(&report.family),
                    report.n,
                    report.seed,
                    csv_field(&c.id),
                    csv_field(&c.paper_anchor),
                    status,
                    csv_field(&c.expected),
                    csv_field(&c.computed),
                    csv_field(c.witness.as_deref().unwrap_or("")),
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "== {}{} (n = {}, seed {}) ==",
                report.family,
                4 * report.n,
                report.n,
                report.seed
            );
            for c in &report.claims {
                let _ = writeln!(
                    out,
                    "[{:>5}] {:<40} expected: {:<28} computed: {}",
                    c.status.tag(),
                    c.id,
                    c.expected,
                    c.computed
                );
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "        note: {w}");
                }
            }
            let total = report.claims.len();
            let fails = report.failures();
            let ambig = report
                .claims
                .iter()
                .filter(|c| c.status == Status::PaperAmbiguous)
                .count();
            let _ = writeln!(
                out,
                "   {total} claims: {} pass, {fails} fail, {ambig} ambiguous",
                total - fails - ambig
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new("B", 2, 0);
        let s = emit(&r, Format::Json);
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.claims.len(), 0);
        assert_eq!(back.family, "B");
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let mut r = Report::new("C", 4, 7);
        r.claims.push(Claim::equals("k.type", "tab:kernel", "C2", "C2"));
        r.claims.push(Claim::ambiguous("a.b", "thm:x", "D8", "C2 x C2", "exhaustive"));
        r.timings_ms.insert("construct".into(), 12);
        let s = emit(&r, Format::Json);
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn csv_has_one_row_per_claim_plus_header() {
        let mut r = Report::new("B", 3, 0);
        r.claims.push(Claim::equals("x", "tab:kernel", 1, 1));
        r.claims.push(Claim::check("y", "tab:kernel", "a,b", "a,b", true));
        let s = emit(&r, Format::Csv);
        assert_eq!(s.lines().count(), 3);
        assert!(s.contains("\"a,b\""));
    }

    #[test]
    fn status_strings_match_the_schema() {
        assert_eq!(serde_json::to_string(&Status::Pass).unwrap(), "\"pass\"");
        assert_eq!(serde_json::to_string(&Status::Fail).unwrap(), "\"fail\"");
        assert_eq!(
            serde_json::to_string(&Status::PaperAmbiguous).unwrap(),
            "\"paper-ambiguous\""
        );
    }
}
