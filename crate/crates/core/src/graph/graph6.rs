//! graph6 encoding (McKay) and a plain edge-list text format.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing
/// newline are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let trimmed = line.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    if body.is_empty() {
        return Err(Error::parse(base, "empty graph6 string"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte 0x{b:02x} outside 63..=126")));
        }
    }

    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.len() >= 2 && body[1] == 126 {
        // 8-byte form, n up to 2^36 - 1
        if body.len() < 8 {
            return Err(Error::parse(base + body.len(), "truncated 8-byte vertex count"));
        }
        let mut n = 0usize;
        for &b in &body[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    } else {
        if body.len() < 4 {
            return Err(Error::parse(base + body.len(), "truncated 4-byte vertex count"));
        }
        let mut n = 0usize;
        for &b in &body[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity { what: format!("graph6 graph with {n} vertices"), limit: MAX_VERTICES });
    }

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[pos..];
    if data.len() < need {
        return Err(Error::parse(base + body.len(), format!("expected {need} adjacency bytes, found {}", data.len())));
    }
    if data.len() > need {
        return Err(Error::parse(base + pos + need, "trailing bytes after adjacency data"));
    }

    let mut adj = vec![0u32; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if bits % 6 != 0 {
        let last = data[need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            pos += need - 1;
            return Err(Error::parse(base + pos, "non-zero padding bits"));
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Encodes a graph as graph6 without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + (n * n) / 12 + 1);
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `"n m\nu v\n..."` with 0-based vertices. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut offset = 0usize;
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let nums: Vec<&str> = content.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(Error::parse(start, format!("expected two integers, found {:?}", content)));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(start, format!("not a non-negative integer: {s:?}")))
        };
        let (a, b) = (parse(nums[0])?, parse(nums[1])?);
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                if a >= n || b >= n {
                    return Err(Error::parse(start, format!("edge {a} {b} outside 0..{n}")));
                }
                if a == b {
                    return Err(Error::parse(start, format!("loop at vertex {a}")));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing \"n m\" header"))?;
    if edges.len() != m {
        return Err(Error::parse(offset, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
