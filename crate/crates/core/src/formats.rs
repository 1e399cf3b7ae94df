//! graph6 and plain edge-list formats.
//!
//! graph6 follows the nauty convention: a size header followed by the upper
//! triangle of the adjacency matrix in column order
//! (`x01, x02, x12, x03, x13, x23, ...`), six bits per byte, each byte offset
//! by 63. Writing always uses the shortest size header.
//!
//! An edge-list document is a vertex-count line followed by one `u v` pair per
//! line. Blank lines and lines starting with `#` are ignored.

use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const BIAS: u8 = 63;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LONG_MAX: usize = (1 << 36) - 1;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("graph6 data truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6 data has {extra} trailing bytes")]
    TrailingData { extra: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("line {line}: expected a single vertex count, found {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("edge list has no vertex-count line")]
    MissingHeader,
    #[error("line {line}: {token:?} is not a non-negative integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected two vertex ids, found {found} tokens")]
    WrongArity { line: usize, found: usize },
    #[error("line {line}: {source}")]
    InvalidEdge { line: usize, source: GraphError },
    #[error("read error: {0}")]
    Io(String),
}

/// Decodes one graph6 line. A leading `>>graph6<<` marker and trailing
/// whitespace are tolerated.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim_end();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(BIAS..=126).contains(&b))
    {
        return Err(FormatError::InvalidByte { offset, byte });
    }

    let (n, body) = decode_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(FormatError::Truncated {
            expected: bytes.len() - body.len() + expected,
            found: bytes.len(),
        });
    }
    if body.len() > expected {
        return Err(FormatError::TrailingData {
            extra: body.len() - expected,
        });
    }
    if bits % 6 != 0 {
        let unused = 6 - bits % 6;
        let last = body[expected - 1] - BIAS;
        if last & ((1 << unused) - 1) != 0 {
            return Err(FormatError::NonzeroPadding);
        }
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let chunk = body[k / 6] - BIAS;
            if chunk >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    // Pairs decoded from the bit stream are in range and loop-free.
    Ok(Graph::new(n, edges).expect("decoded edges are valid"))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8]), FormatError> {
    let value = |digits: &[u8]| {
        digits
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - BIAS))
    };
    if bytes[0] != 126 {
        return Ok((usize::from(bytes[0] - BIAS), &bytes[1..]));
    }
    if bytes.get(1) == Some(&126) {
        if bytes.len() < 8 {
            return Err(FormatError::Truncated {
                expected: 8,
                found: bytes.len(),
            });
        }
        return Ok((value(&bytes[2..8]), &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(FormatError::Truncated {
            expected: 4,
            found: bytes.len(),
        });
    }
    Ok((value(&bytes[1..4]), &bytes[4..]))
}

/// Encodes a graph in canonical graph6 (shortest size header, zero padding).
///
/// # Panics
///
/// Panics if the graph has more than `2^36 - 1` vertices, which graph6 cannot
/// represent.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= LONG_MAX, "graph6 cannot encode {n} vertices");
    let mut out = Vec::new();
    let push_digits = |out: &mut Vec<u8>, count: u32| {
        for shift in (0..count).rev() {
            out.push(((n >> (6 * shift)) & 0x3f) as u8 + BIAS);
        }
    };
    if n <= SHORT_MAX {
        out.push(n as u8 + BIAS);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        push_digits(&mut out, 3);
    } else {
        out.extend([126, 126]);
        push_digits(&mut out, 6);
    }

    let bits = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        // column-major index of (u, v), u < v
        let k = v * (v - 1) / 2 + u;
        body[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(body.into_iter().map(|b| b + BIAS));
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses a single edge-list document.
pub fn parse_edge_list(doc: &str) -> Result<Graph, FormatError> {
    parse_edge_list_at(doc.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn parse_edge_list_at<'a>(
    lines: impl IntoIterator<Item = (usize, &'a str)>,
) -> Result<Graph, FormatError> {
    let mut content = lines
        .into_iter()
        .map(|(no, l)| (no, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = content.next().ok_or(FormatError::MissingHeader)?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        [tok] => tok.parse::<usize>().ok(),
        _ => None,
    }
    .ok_or_else(|| FormatError::MalformedHeader {
        line: header_line,
        text: header.to_string(),
    })?;

    let mut edges = Vec::new();
    for (line, text) in content {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(FormatError::WrongArity {
                line,
                found: tokens.len(),
            });
        }
        let id = |tok: &str| {
            tok.parse::<usize>().map_err(|_| FormatError::BadToken {
                line,
                token: tok.to_string(),
            })
        };
        let (u, v) = (id(tokens[0])?, id(tokens[1])?);
        let invalid = match (u, v) {
            _ if u >= n || v >= n => Some(GraphError::EndpointOutOfRange { u, v, n }),
            _ if u == v => Some(GraphError::Loop(u)),
            _ => None,
        };
        if let Some(source) = invalid {
            return Err(FormatError::InvalidEdge { line, source });
        }
        edges.push((u, v));
    }
    Ok(Graph::new(n, edges).expect("edges validated line by line"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

/// One record of a multi-graph source. `line` is the 1-based line where the
/// record starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub index: usize,
    pub line: usize,
    pub graph: Result<Graph, FormatError>,
}

/// Reads graphs one record at a time. Malformed records are yielded as errors
/// and reading continues with the next record.
///
/// In graph6 mode every non-blank line is a record. In edge-list mode a line
/// holding a single token starts a new document; body lines always hold two
/// tokens.
pub fn stream_graphs<R: BufRead>(source: R, format: Format) -> GraphStream<R> {
    GraphStream {
        lines: source.lines(),
        format,
        line_no: 0,
        index: 0,
        pending: None,
        failed: false,
    }
}

pub struct GraphStream<R> {
    lines: std::io::Lines<R>,
    format: Format,
    line_no: usize,
    index: usize,
    /// Edge-list header already read for the next document.
    pending: Option<(usize, String)>,
    failed: bool,
}

impl<R: BufRead> GraphStream<R> {
    fn next_line(&mut self) -> Option<Result<(usize, String), FormatError>> {
        if self.failed {
            return None;
        }
        let line = self.lines.next()?;
        self.line_no += 1;
        Some(line.map(|l| (self.line_no, l)).map_err(|e| {
            self.failed = true;
            FormatError::Io(e.to_string())
        }))
    }

    fn emit(&mut self, line: usize, graph: Result<Graph, FormatError>) -> Record {
        let record = Record {
            index: self.index,
            line,
            graph,
        };
        self.index += 1;
        record
    }

    fn next_graph6(&mut self) -> Option<Record> {
        loop {
            match self.next_line()? {
                Err(e) => {
                    let line = self.line_no;
                    return Some(self.emit(line, Err(e)));
                }
                Ok((_, text)) if text.trim().is_empty() => continue,
                Ok((line, text)) => {
                    // a bare header line carries no graph
                    if text.trim_end() == HEADER {
                        continue;
                    }
                    let graph = parse_graph6(&text);
                    return Some(self.emit(line, graph));
                }
            }
        }
    }

    fn next_edge_list(&mut self) -> Option<Record> {
        let is_skippable = |t: &str| t.trim().is_empty() || t.trim_start().starts_with('#');
        let is_header = |t: &str| t.split_whitespace().count() == 1;

        let mut doc = match self.pending.take() {
            Some(header) => vec![header],
            None => loop {
                match self.next_line()? {
                    Err(e) => {
                        let line = self.line_no;
                        return Some(self.emit(line, Err(e)));
                    }
                    Ok((_, t)) if is_skippable(&t) => continue,
                    Ok(first) => break vec![first],
                }
            },
        };
        let start = doc[0].0;

        let mut io_error = None;
        while let Some(next) = self.next_line() {
            match next {
                Err(e) => {
                    io_error = Some(e);
                    break;
                }
                Ok((no, t)) if !is_skippable(&t) && is_header(&t) => {
                    self.pending = Some((no, t));
                    break;
                }
                Ok(entry) => doc.push(entry),
            }
        }
        let graph = match io_error {
            Some(e) => Err(e),
            None => parse_edge_list_at(doc.iter().map(|(no, t)| (*no, t.as_str()))),
        };
        Some(self.emit(start, graph))
    }
}

impl<R: BufRead> Iterator for GraphStream<R> {
    type Item = Record;

    fn next(&mut self) -> Option<Record> {
        match self.format {
            Format::Graph6 => self.next_graph6(),
            Format::EdgeList => self.next_edge_list(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn k(n: usize) -> Graph {
        generate(Family::Complete, n).unwrap()
    }

    fn c4() -> Graph {
        generate(Family::Cycle, 4).unwrap()
    }

    #[test]
    fn fixed_vectors_decode() {
        assert_eq!(parse_graph6("A_").unwrap(), k(2));
        assert_eq!(parse_graph6("Bw").unwrap(), k(3));
        let cl = parse_graph6("Cl").unwrap();
        assert_eq!(cl.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(cl, c4());
    }

    #[test]
    fn fixed_vectors_encode() {
        assert_eq!(write_graph6(&k(2)), "A_");
        assert_eq!(write_graph6(&k(3)), "Bw");
        assert_eq!(write_graph6(&c4()), "Cl");
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn medium_size_header() {
        let g = generate(Family::Path, 63).unwrap();
        let text = write_graph6(&g);
        assert_eq!(&text.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(parse_graph6(&text).unwrap(), g);

        let big = generate(Family::Star, 300).unwrap();
        assert_eq!(parse_graph6(&write_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn long_size_header_parses() {
        // n = 5 in the 8-byte size form; body bits x04 x14 x24 x34 set
        let g = parse_graph6("~~?????D?{").unwrap();
        assert_eq!(g.edges(), &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(write_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(parse_graph6(""), Err(FormatError::Empty));
        assert_eq!(
            parse_graph6("A!"),
            Err(FormatError::InvalidByte {
                offset: 1,
                byte: b'!'
            })
        );
        assert!(matches!(
            parse_graph6("C"),
            Err(FormatError::Truncated { .. })
        ));
        assert_eq!(
            parse_graph6("A__"),
            Err(FormatError::TrailingData { extra: 1 })
        );
        // K2 uses one bit; 'o' = 48 sets a padding bit
        assert_eq!(parse_graph6("Ao"), Err(FormatError::NonzeroPadding));
        assert!(matches!(
            parse_graph6("~?"),
            Err(FormatError::Truncated { .. })
        ));
    }

    #[test]
    fn edge_list_documents() {
        assert_eq!(
            parse_edge_list("3\n0 1\n1 2").unwrap(),
            generate(Family::Path, 3).unwrap()
        );
        assert_eq!(
            parse_edge_list("4\n# square\n0 1\n1 2\n2 3\n0 3").unwrap(),
            c4()
        );
        assert_eq!(
            parse_edge_list("2\n0 0"),
            Err(FormatError::InvalidEdge {
                line: 2,
                source: GraphError::Loop(0)
            })
        );
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            parse_edge_list("# nothing\n"),
            Err(FormatError::MissingHeader)
        );
        assert!(matches!(
            parse_edge_list("3 4\n0 1"),
            Err(FormatError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("3\n0 a"),
            Err(FormatError::BadToken { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("3\n0 1 2"),
            Err(FormatError::WrongArity { line: 2, found: 3 })
        );
        assert!(matches!(
            parse_edge_list("2\n\n0 5"),
            Err(FormatError::InvalidEdge { line: 3, .. })
        ));
    }

    #[test]
    fn stream_graph6_records() {
        let recs: Vec<_> = stream_graphs("A_\nBw\n".as_bytes(), Format::Graph6).collect();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].graph.as_ref().unwrap(), &k(2));
        assert_eq!((recs[1].index, recs[1].line), (1, 2));
        assert_eq!(recs[1].graph.as_ref().unwrap(), &k(3));
    }

    #[test]
    fn stream_continues_past_bad_record() {
        let recs: Vec<_> = stream_graphs("A_\nA!\nCl\n".as_bytes(), Format::Graph6).collect();
        assert_eq!(recs.len(), 3);
        assert!(recs[0].graph.is_ok());
        assert_eq!(recs[1].index, 1);
        assert_eq!(recs[1].line, 2);
        assert!(recs[1].graph.is_err());
        assert_eq!(recs[2].graph.as_ref().unwrap(), &c4());
    }

    #[test]
    fn stream_empty_source() {
        assert_eq!(stream_graphs("".as_bytes(), Format::Graph6).count(), 0);
        assert_eq!(stream_graphs("".as_bytes(), Format::EdgeList).count(), 0);
        assert_eq!(stream_graphs("\n\n".as_bytes(), Format::Graph6).count(), 0);
    }

    #[test]
    fn stream_edge_list_documents() {
        let text = "# two graphs\n3\n0 1\n1 2\n\n2\n0 0\n4\n0 1\n1 2\n2 3\n3 0\n";
        let recs: Vec<_> = stream_graphs(text.as_bytes(), Format::EdgeList).collect();
        assert_eq!(recs.len(), 3);
        assert_eq!(
            recs[0].graph.as_ref().unwrap(),
            &generate(Family::Path, 3).unwrap()
        );
        assert_eq!(recs[0].line, 2);
        assert_eq!(
            recs[1].graph,
            Err(FormatError::InvalidEdge {
                line: 7,
                source: GraphError::Loop(0)
            })
        );
        assert_eq!(recs[2].graph.as_ref().unwrap(), &c4());
    }

    #[test]
    fn cross_format_equivalence() {
        let g = generate(Family::Random { p: 0.4, seed: 11 }, 9).unwrap();
        let from_g6 = parse_graph6(&write_graph6(&g)).unwrap();
        let from_el = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(from_g6, from_el);
    }
}
