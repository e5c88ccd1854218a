//! Plain-text hypergraph format.
//!
//! ```text
//! # comment lines start with '#'
//! n m k
//! v1 v2 ... vk [weight]
//! ...
//! ```
//!
//! The header gives the node count, edge count, and edge cardinality.
//! Each following non-comment line lists the `k` node ids of one edge
//! (1-based) and an optional positive weight, defaulting to 1. Blank
//! lines are ignored; both LF and CRLF line endings are accepted.

use crate::{Hypergraph, HypergraphError};
use thiserror::Error;

/// Errors raised while reading the text format. Line numbers are 1-based
/// and refer to the input as given, counting comments and blanks.
#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("missing header line 'n m k'")]
    MissingHeader,

    #[error("line {line}: expected {expected}, got '{got}'")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },

    #[error("line {line}: {source}")]
    BadNumber {
        line: usize,
        #[source]
        source: std::num::ParseIntError,
    },

    #[error("line {line}: invalid weight '{got}'")]
    BadWeight { line: usize, got: String },

    #[error("line {line}: node id 0 is invalid, ids are 1-based")]
    ZeroNodeId { line: usize },

    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error(transparent)]
    Invalid(#[from] HypergraphError),
}

impl Hypergraph {
    /// Parse the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(ParseError::Malformed {
                line: header_line,
                expected: "header 'n m k' with three fields",
                got: header.to_string(),
            });
        }
        let parse_usize = |s: &str, line: usize| {
            s.parse::<usize>()
                .map_err(|source| ParseError::BadNumber { line, source })
        };
        let n = parse_usize(head[0], header_line)?;
        let m = parse_usize(head[1], header_line)?;
        let k = parse_usize(head[2], header_line)?;

        let mut raw: Vec<(Vec<usize>, f64)> = Vec::with_capacity(m);
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let (node_fields, weight) = if fields.len() == k {
                (&fields[..], 1.0)
            } else if fields.len() == k + 1 {
                let w: f64 = fields[k].parse().map_err(|_| ParseError::BadWeight {
                    line,
                    got: fields[k].to_string(),
                })?;
                (&fields[..k], w)
            } else {
                return Err(ParseError::Malformed {
                    line,
                    expected: "k node ids and an optional weight",
                    got: body.to_string(),
                });
            };
            let mut nodes = Vec::with_capacity(k);
            for f in node_fields {
                let id = parse_usize(f, line)?;
                if id == 0 {
                    return Err(ParseError::ZeroNodeId { line });
                }
                nodes.push(id - 1);
            }
            raw.push((nodes, weight));
        }
        if raw.len() != m {
            return Err(ParseError::EdgeCountMismatch {
                declared: m,
                found: raw.len(),
            });
        }
        Ok(Hypergraph::new(n, k, raw)?)
    }

    /// Serialize to the text format. Weights are written with enough
    /// precision to round-trip exactly; the `1`-weight shorthand is not
    /// used, so output lines always carry an explicit weight.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.n(), self.m(), self.k()).unwrap();
        for e in self.edges() {
            for &v in e.nodes() {
                write!(out, "{} ", v + 1).unwrap();
            }
            writeln!(out, "{}", fmt_f64(e.weight())).unwrap();
        }
        out
    }
}

/// Shortest decimal that parses back to the same f64.
fn fmt_f64(x: f64) -> String {
    let mut s = format!("{x}");
    if s.parse::<f64>() != Ok(x) {
        s = format!("{x:e}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_header_edges_comments_and_crlf() {
        let text = "# tiny example\r\n3 2 2\r\n\r\n1 2\r\n2 3 0.5\r\n";
        let h = Hypergraph::parse(text).unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (3, 2, 2));
        assert_eq!(h.edge(0).nodes(), &[0, 1]);
        assert_eq!(h.edge(0).weight(), 1.0, "missing weight defaults to 1");
        assert_eq!(h.edge(1).weight(), 0.5);
    }

    #[test]
    fn reports_line_numbers_counting_comments() {
        let text = "# one\n# two\n3 1 2\n1 bogus\n";
        match Hypergraph::parse(text) {
            Err(ParseError::BadNumber { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected BadNumber with line info, got {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_field_count() {
        let err = Hypergraph::parse("3 1 2\n1 2 3 4 5\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
    }

    #[test]
    fn rejects_zero_node_id() {
        let err = Hypergraph::parse("3 1 2\n0 2\n").unwrap_err();
        assert_eq!(err, ParseError::ZeroNodeId { line: 2 });
    }

    #[test]
    fn rejects_edge_count_mismatch() {
        let err = Hypergraph::parse("3 2 2\n1 2\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EdgeCountMismatch {
                declared: 2,
                found: 1
            }
        );
    }

    #[test]
    fn surfaces_validation_errors() {
        let err = Hypergraph::parse("3 1 2\n1 2 -4\n").unwrap_err();
        assert!(matches!(err, ParseError::Invalid(_)));
    }

    #[test]
    fn round_trips_through_text() {
        let h = Hypergraph::new(
            6,
            3,
            vec![
                (vec![0, 1, 2], 1.0),
                (vec![1, 2, 3], 0.1 + 0.2), // deliberately non-representable
                (vec![3, 4, 5], 7.25),
            ],
        )
        .unwrap();
        let again = Hypergraph::parse(&h.to_text()).unwrap();
        assert_eq!(h, again, "text round-trip must be exact, bit for bit");
    }
}
