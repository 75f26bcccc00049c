//! graph6 text encoding.
//!
//! A line is the order `N(n)` followed by the upper triangle of the adjacency
//! matrix in column order `(0,1),(0,2),(1,2),(0,3),…`, packed six bits per
//! byte (most significant first), zero padded, each byte offset by 63.
//! Orders below 63 use one size byte; 63 and 64 use the four-byte `~` form.

use thiserror::Error;

use crate::graph::{bit, Graph, MAX_ORDER};

const OFFSET: u8 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("unsupported size form at offset {offset}: orders above {max} are not handled")]
    UnsupportedSize { offset: usize, max: usize },
    #[error("payload truncated at offset {offset}: expected {expected} data bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("trailing bytes starting at offset {offset}")]
    Trailing { offset: usize },
    #[error("nonzero padding bits in the final byte at offset {offset}")]
    Padding { offset: usize },
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. Surrounding whitespace (including the newline) is ignored.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let line = line.trim_ascii();
    if line.is_empty() {
        return Err(Graph6Error::Empty);
    }
    // optional >>graph6<< header
    let (line, base) = match line.strip_prefix(b">>graph6<<") {
        Some(rest) => (rest, 10),
        None => (line, 0),
    };
    for (i, &b) in line.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Graph6Error::BadByte {
                offset: base + i,
                byte: b,
            });
        }
    }
    if line.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header) = if line[0] != 126 {
        ((line[0] - OFFSET) as usize, 1)
    } else if line.len() >= 4 && line[1] != 126 {
        let n = line[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize);
        if n > MAX_ORDER {
            return Err(Graph6Error::UnsupportedSize {
                offset: base,
                max: MAX_ORDER,
            });
        }
        (n, 4)
    } else if line.len() >= 2 && line[1] == 126 {
        return Err(Graph6Error::UnsupportedSize {
            offset: base,
            max: MAX_ORDER,
        });
    } else {
        return Err(Graph6Error::Truncated {
            offset: base + line.len(),
            expected: 3,
            found: line.len() - 1,
        });
    };

    let payload = &line[header..];
    let expected = data_len(n);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: base + line.len(),
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::Trailing {
            offset: base + header + expected,
        });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - OFFSET;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = payload[expected - 1] - OFFSET;
        if last & ((1u8 << (6 - k % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding {
                offset: base + header + expected - 1,
            });
        }
    }
    Ok(Graph::from_rows_unchecked(adj))
}

pub fn parse_graph6_str(line: &str) -> Result<Graph, Graph6Error> {
    parse_graph6(line.as_bytes())
}

/// Encodes `g` without a trailing newline. Same labelling as the input.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n < 63 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let rows = g.rows();
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for row in &rows[..j] {
            acc = (acc << 1) | ((row >> j) & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
