//! Plain-text family format.
//!
//! One set per line, 1-based elements separated by whitespace. Blank lines
//! and `#` comments are ignored. The first non-comment line may be
//! `universe n`; otherwise `n` is the largest element seen.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{ElementSet, MAX_UNIVERSE};

pub fn parse_family(input: &str) -> Result<SetFamily> {
    let mut declared: Option<u32> = None;
    let mut sets: Vec<(usize, ElementSet)> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("universe") {
            if seen_content {
                return Err(parse_err(line_no, "`universe` must be the first non-comment line"));
            }
            let n: u32 = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad universe size {:?}", rest.trim())))?;
            if !(1..=MAX_UNIVERSE).contains(&n) {
                return Err(parse_err(line_no, format!("universe size {n} out of range 1..=32")));
            }
            declared = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut set = ElementSet::EMPTY;
        for tok in line.split_whitespace() {
            let e: u32 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad element {tok:?}")))?;
            if e == 0 {
                return Err(parse_err(line_no, "elements are 1-based; 0 is not allowed"));
            }
            if e > declared.unwrap_or(MAX_UNIVERSE) {
                return Err(parse_err(line_no, format!("element {e} outside the universe")));
            }
            set = set.with(e);
        }
        sets.push((line_no, set));
    }
    let n = match declared {
        Some(n) => n,
        None => sets
            .iter()
            .filter_map(|(_, s)| s.max_element())
            .max()
            .ok_or_else(|| parse_err(input.lines().count().max(1), "no sets found"))?,
    };
    SetFamily::new(n, sets.iter().map(|&(_, s)| s)).map_err(|e| match e {
        Error::UniverseMissing { n } => parse_err(
            sets.last().map_or(1, |&(l, _)| l),
            format!("universe [{n}] is not a member of the family"),
        ),
        other => other,
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Canonical text: a `universe n` header then members in ascending mask order.
pub fn format_family(family: &SetFamily) -> String {
    let mut out = String::new();
    writeln!(out, "universe {}", family.universe()).unwrap();
    for s in family.members() {
        out.push_str(&format_set(s));
        out.push('\n');
    }
    out
}

pub fn format_set(set: ElementSet) -> String {
    let parts: Vec<String> = set.elements().map(|e| e.to_string()).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chain() {
        let f = parse_family("universe 3\n1\n1 2\n1 2 3\n").unwrap();
        assert_eq!(f.masks(), &[1, 3, 7]);
    }

    #[test]
    fn universe_inferred_and_comments_skipped() {
        let f = parse_family("# a chain\n\n1   # first\n1 2\n\n1 2 3\n").unwrap();
        assert_eq!(f.universe(), 3);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn missing_universe_reports_line() {
        let err = parse_family("universe 3\n1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(err.to_string().contains("not a member"));
    }

    #[test]
    fn zero_element_rejected() {
        let err = parse_family("universe 2\n0\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn element_beyond_declared_universe() {
        assert!(matches!(parse_family("universe 2\n3\n1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn late_universe_line_rejected() {
        assert!(parse_family("1\nuniverse 1\n").is_err());
    }

    #[test]
    fn format_then_parse() {
        let f = SetFamily::new(4, [1u32, 6, 7, 15]).unwrap();
        let text = format_family(&f);
        assert_eq!(text, "universe 4\n1\n2 3\n1 2 3\n1 2 3 4\n");
        assert_eq!(parse_family(&text).unwrap(), f);
    }
}
