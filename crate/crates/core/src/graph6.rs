//! graph6 short form (n <= 62).
//!
//! Header byte `63 + n`, then the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! packed big-endian into 6-bit groups, each written as `group + 63`.

use crate::error::Graph6Error;
use crate::graph::{pair_count, Graph};

pub const MAX_SHORT_N: usize = 62;

fn payload_len(n: usize) -> usize {
    pair_count(n).div_ceil(6)
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_SHORT_N {
        return Err(Graph6Error::WriteTooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(63 + n as u8);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses one graph6 line. A single trailing `\n` (or `\r\n`) is accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let line = text
        .strip_suffix(b"\n")
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .unwrap_or(text);
    let (&header, payload) = line.split_first().ok_or(Graph6Error::Empty)?;
    if header == 126 {
        return Err(Graph6Error::TooLarge { offset: 0 });
    }
    if !(64..=63 + MAX_SHORT_N as u8).contains(&header) {
        return Err(Graph6Error::BadHeader {
            offset: 0,
            byte: header,
        });
    }
    let n = (header - 63) as usize;
    let expected = payload_len(n);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: 1 + payload.len(),
            expected,
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage {
            offset: 1 + expected,
        });
    }
    for (k, &b) in payload.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte {
                offset: 1 + k,
                byte: b,
            });
        }
    }

    let mut g = Graph::empty(n).map_err(|_| Graph6Error::BadHeader {
        offset: 0,
        byte: header,
    })?;
    let bit = |k: usize| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    let total = pair_count(n);
    if (total..expected * 6).any(bit) {
        return Err(Graph6Error::NonzeroPadding { offset: expected });
    }
    Ok(g)
}

pub fn parse_graph6_str(text: &str) -> Result<Graph, Graph6Error> {
    parse_graph6(text.as_bytes())
}
