//! graph6 text format, short form only (n <= 62): one printable line per
//! graph, a single order byte `n + 63` followed by the upper adjacency
//! triangle in big-endian 6-bit chunks offset by 63.

use crate::graph::{Graph, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph6 parse error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("long-form header (order > 62) is not supported")]
    UnsupportedLongForm,
    #[error("header byte {0:#04x} is not printable graph6 (expected 63..=125)")]
    MalformedHeader(u8),
    #[error("body byte {0:#04x} is not printable graph6 (expected 63..=126)")]
    NonPrintableByte(u8),
    #[error("input ends after {found} body bytes, {needed} are required")]
    Truncated { needed: usize, found: usize },
    #[error("trailing garbage after the encoded graph")]
    TrailingGarbage,
    #[error("padding bits beyond the adjacency triangle must be zero")]
    NonzeroPadding,
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encodes a graph as a canonical short-form graph6 line (no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= MAX_VERTICES);
    let mut out = Vec::with_capacity(1 + if n > 0 { body_len(n) } else { 0 });
    out.push(63 + n as u8);
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk <<= 1;
            if g.has_edge(u, v) {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (chunk << (6 - filled)));
    }
    String::from_utf8(out).expect("bytes 63..=126 are ASCII")
}

/// Parses one short-form graph6 line. A trailing line terminator (LF, CRLF,
/// or a bare CR left over from splitting CRLF input on newlines) is
/// tolerated; anything else after the encoded graph is an error with the
/// offending byte offset.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    let bytes = match bytes {
        [head @ .., b'\r', b'\n'] => head,
        [head @ .., b'\n'] => head,
        [head @ .., b'\r'] => head,
        _ => bytes,
    };
    let err = |offset, kind| Err(Graph6Error { offset, kind });
    let Some(&header) = bytes.first() else {
        return err(0, Graph6ErrorKind::Empty);
    };
    if header == 126 {
        return err(0, Graph6ErrorKind::UnsupportedLongForm);
    }
    if !(63..=63 + MAX_VERTICES as u8).contains(&header) {
        return err(0, Graph6ErrorKind::MalformedHeader(header));
    }
    let n = (header - 63) as usize;
    let needed = if n == 0 { 0 } else { body_len(n) };
    let body = &bytes[1..];
    if body.len() < needed {
        return err(
            bytes.len(),
            Graph6ErrorKind::Truncated {
                needed,
                found: body.len(),
            },
        );
    }
    if body.len() > needed {
        return err(1 + needed, Graph6ErrorKind::TrailingGarbage);
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return err(1 + i, Graph6ErrorKind::NonPrintableByte(b));
        }
    }
    let mut g = Graph::empty(n).expect("n <= 62 by header check");
    let mut bit_index = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit_index / 6] - 63;
            if byte >> (5 - bit_index % 6) & 1 == 1 {
                g.add_edge(u, v).expect("indices in range");
            }
            bit_index += 1;
        }
    }
    // the pad bits of the final chunk must be zero
    if !bit_index.is_multiple_of(6) {
        let last = body[needed - 1] - 63;
        let pad = 6 - bit_index % 6;
        if last & ((1 << pad) - 1) != 0 {
            return err(needed, Graph6ErrorKind::NonzeroPadding);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // K3: bits (0,1)(0,2)(1,2) = 111, padded to 111000 = 56 -> 'w'
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(to_graph6(&k3), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), k3);

        // single vertex, no edge bits
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(to_graph6(&k1), "@");
        assert_eq!(parse_graph6("@").unwrap(), k1);

        // 5-cycle, derived from the bit layout by hand
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(to_graph6(&c5), "Dhc");

        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn round_trips() {
        for g in [
            Graph::empty(0).unwrap(),
            Graph::empty(1).unwrap(),
            Graph::complete(3).unwrap(),
            Graph::cycle(5).unwrap(),
            crate::graph::paley_graph(9).unwrap(),
            crate::graph::paley_graph(13).unwrap(),
            Graph::complete(62).unwrap(),
        ] {
            assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }
        for s in ["Bw", "@", "?", "Dhc", "DQc"] {
            assert_eq!(to_graph6(&parse_graph6(s).unwrap()), s);
        }
    }

    #[test]
    fn line_terminators_tolerated() {
        assert_eq!(parse_graph6("Bw\n").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("Bw\r\n").unwrap(), Graph::complete(3).unwrap());
        // CRLF input split on newlines leaves a bare carriage return
        assert_eq!(parse_graph6("Bw\r").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            parse_graph6("").unwrap_err(),
            Graph6Error {
                offset: 0,
                kind: Graph6ErrorKind::Empty
            }
        );
        assert_eq!(
            parse_graph6("~??").unwrap_err(),
            Graph6Error {
                offset: 0,
                kind: Graph6ErrorKind::UnsupportedLongForm
            }
        );
        assert_eq!(
            parse_graph6("\x20w").unwrap_err(),
            Graph6Error {
                offset: 0,
                kind: Graph6ErrorKind::MalformedHeader(0x20)
            }
        );
        // K3 takes exactly one body byte
        assert_eq!(
            parse_graph6("B").unwrap_err(),
            Graph6Error {
                offset: 1,
                kind: Graph6ErrorKind::Truncated {
                    needed: 1,
                    found: 0
                }
            }
        );
        assert_eq!(
            parse_graph6("Bww").unwrap_err(),
            Graph6Error {
                offset: 2,
                kind: Graph6ErrorKind::TrailingGarbage
            }
        );
        assert_eq!(
            parse_graph6("B\x07").unwrap_err(),
            Graph6Error {
                offset: 1,
                kind: Graph6ErrorKind::NonPrintableByte(0x07)
            }
        );
        // 'z' = 59 + 63: low padding bits set for n = 3
        assert_eq!(
            parse_graph6("Bz").unwrap_err(),
            Graph6Error {
                offset: 1,
                kind: Graph6ErrorKind::NonzeroPadding
            }
        );
    }
}
