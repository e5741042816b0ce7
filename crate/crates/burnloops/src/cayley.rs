//! The Cayley-table text format.
//!
//! Line 1 holds the order k; lines 2..k+1 hold k space-separated 0-based
//! element indices each. Element 0 is the identity. Anything after a `#` is
//! a comment; rows may carry a trailing `# label`.

use burnloops_core::loops::{Loop, LoopError};
use std::fmt::Write as _;

#[derive(Debug)]
pub enum CayleyError {
    Syntax(String),
    Table(LoopError),
    IdentityNotZero(usize),
}

impl std::fmt::Display for CayleyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CayleyError::Syntax(s) => write!(f, "syntax error: {s}"),
            CayleyError::Table(e) => write!(f, "invalid table: {e}"),
            CayleyError::IdentityNotZero(i) => {
                write!(f, "element 0 must be the identity (found identity at {i})")
            }
        }
    }
}

impl std::error::Error for CayleyError {}

/// Renders a loop whose identity is element 0. Labels, when present, become
/// trailing comments on the table rows.
pub fn write_table(l: &Loop) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", l.order());
    let labels = l.labels.clone();
    for (r, row) in l.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let line = cells.join(" ");
        match labels.as_ref().and_then(|ls| ls.get(r)) {
            Some(label) if !label.is_empty() => {
                let _ = writeln!(out, "{line} # {label}");
            }
            _ => {
                let _ = writeln!(out, "{line}");
            }
        }
    }
    out
}

/// Parses the text format back into a validated loop.
pub fn parse_table(text: &str) -> Result<Loop, CayleyError> {
    let mut lines = text.lines().filter_map(|raw| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            None
        } else {
            Some(stripped)
        }
    });
    let order: usize = lines
        .next()
        .ok_or_else(|| CayleyError::Syntax("empty input".into()))?
        .parse()
        .map_err(|e| CayleyError::Syntax(format!("order line: {e}")))?;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for _ in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| CayleyError::Syntax(format!("expected {order} table rows")))?;
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| CayleyError::Syntax(format!("table row: {e}")))?;
        if row.len() != order {
            return Err(CayleyError::Syntax(format!(
                "row has {} entries, expected {order}",
                row.len()
            )));
        }
        rows.push(row);
    }
    let l = Loop::from_table(&rows).map_err(CayleyError::Table)?;
    if l.identity() != 0 {
        return Err(CayleyError::IdentityNotZero(l.identity()));
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use burnloops_core::models::{burn_section, Family, GroupModel};

    #[test]
    fn round_trip() {
        let model = GroupModel::new(Family::B, 2).unwrap();
        let l = Loop::from_section(&burn_section(&model).unwrap()).unwrap();
        let text = write_table(&l);
        let back = parse_table(&text).unwrap();
        assert_eq!(back.rows(), l.rows());
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# a 2x2 table\n2\n\n0 1 # identity row\n1 0\n# trailing note\n";
        let l = parse_table(text).unwrap();
        assert_eq!(l.order(), 2);
        assert_eq!(l.mul(1, 1), 0);
    }

    #[test]
    fn identity_must_be_element_zero() {
        // C3 with the identity relabeled to 2
        let text = "3\n1 2 0\n2 0 1\n0 1 2\n";
        assert!(matches!(
            parse_table(text),
            Err(CayleyError::IdentityNotZero(2))
        ));
    }

    #[test]
    fn syntax_errors_are_reported() {
        assert!(matches!(parse_table(""), Err(CayleyError::Syntax(_))));
        assert!(matches!(parse_table("2\n0 1\n"), Err(CayleyError::Syntax(_))));
        assert!(matches!(
            parse_table("2\n0 1 1\n1 0 0\n"),
            Err(CayleyError::Syntax(_))
        ));
        assert!(matches!(
            parse_table("2\n0 0\n1 1\n"),
            Err(CayleyError::Table(_))
        ));
    }
}
