//! graph6 reading and writing for simple graphs.
//!
//! Bit order follows the standard format: the upper triangle is read column
//! by column, `x(0,1), x(0,2), x(1,2), x(0,3), ...`, six bits per byte,
//! each byte offset by 63. Parsed edges are returned sorted by `(i, j)` with
//! `i < j`.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VERTEX_CAP};

const BIAS: u8 = 63;

pub fn parse_graph6(line: &str) -> Result<Multigraph> {
    parse_graph6_with_cap(line, VERTEX_CAP)
}

pub fn parse_graph6_with_cap(line: &str, cap: usize) -> Result<Multigraph> {
    let mut bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let mut offset = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        offset = 10;
    }
    let err = |at: usize, message: &str| Error::Graph6 {
        offset: at,
        message: message.to_string(),
    };
    if let Some(pos) = bytes.iter().position(|&b| !(BIAS..=126).contains(&b)) {
        return Err(err(offset + pos, "byte outside the printable graph6 range 63..=126"));
    }
    let (n, header_len) = match bytes {
        [] => return Err(err(offset, "empty line")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err(offset + 2 + rest.len(), "truncated 36-bit vertex count"));
            }
            (decode_bits(&rest[..6]), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(offset + 1 + rest.len(), "truncated 18-bit vertex count"));
            }
            (decode_bits(&rest[..3]), 4)
        }
        [b, ..] => ((b - BIAS) as u64, 1),
    };
    let n = n as usize;
    if n > cap {
        return Err(err(offset, &format!("{n} vertices exceed the cap of {cap}")));
    }
    let body = &bytes[header_len..];
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(err(
            offset + header_len + body.len(),
            &format!("truncated adjacency: expected {need} bytes, found {}", body.len()),
        ));
    }
    if body.len() > need {
        return Err(err(offset + header_len + need, "trailing bytes after adjacency"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Multigraph::from_edges(n, &edges)
}

fn decode_bits(chunk: &[u8]) -> u64 {
    chunk
        .iter()
        .fold(0u64, |acc, &b| (acc << 6) | (b - BIAS) as u64)
}

pub fn write_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::UnsupportedEncoding(
            "graph6 cannot encode loops or parallel edges".into(),
        ));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
    let adj = adjacency_matrix(g);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adj[i * n + j] as u8;
            k += 1;
            if k == 6 {
                out.push(acc + BIAS);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn adjacency_matrix(g: &Multigraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for &(a, b) in g.edges() {
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    adj
}

/// Parses every non-empty line, reporting failures with 1-based line numbers.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, Result<Multigraph>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
        .collect()
}
