//! Standard (short) graph6 encoding.
//!
//! The body is the upper triangle of the adjacency matrix read column by
//! column, `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte,
//! most significant bit first, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, DEFAULT_MAX_VERTICES};

const HEADER: &str = ">>graph6<<";
const OFFSET: u8 = 63;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    from_graph6_with_max(text, DEFAULT_MAX_VERTICES)
}

/// Parses one graph6 line (trailing `\n`/`\r\n` allowed) with an explicit vertex limit.
pub fn from_graph6_with_max(text: &str, max: usize) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    match bytes.first() {
        None => return Err(parse_err(base, "empty input")),
        Some(b':') => return Err(parse_err(base, "sparse6 input is not supported")),
        Some(b'&') => return Err(parse_err(base, "digraph6 input is not supported")),
        _ => {}
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte 0x{b:02x} outside the printable graph6 range")));
        }
    }
    let (n, header_len) = decode_size(bytes, base)?;
    if n > max {
        return Err(Error::TooManyVertices { n, max });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < body_len {
        return Err(parse_err(
            base + bytes.len(),
            format!("truncated: expected {body_len} body bytes for n = {n}, found {}", body.len()),
        ));
    }
    if body.len() > body_len {
        return Err(parse_err(base + header_len + body_len, "trailing bytes after graph body"));
    }
    let mut b = GraphBuilder::with_max(n, max)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.set(i, j);
            }
            k += 1;
        }
    }
    Ok(b.build())
}

fn decode_size(bytes: &[u8], base: usize) -> Result<(usize, usize)> {
    let digits = |start: usize, count: usize| -> Result<usize> {
        if bytes.len() < start + count {
            return Err(parse_err(base + bytes.len(), "truncated vertex count"));
        }
        Ok(bytes[start..start + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize))
    };
    if bytes[0] != 126 {
        return Ok(((bytes[0] - OFFSET) as usize, 1));
    }
    if bytes.get(1) == Some(&126) {
        let n = digits(2, 6)?;
        if n <= 258_047 {
            return Err(parse_err(base, "non-minimal 8-byte vertex count"));
        }
        Ok((n, 8))
    } else {
        let n = digits(1, 3)?;
        if n <= 62 {
            return Err(parse_err(base, "non-minimal 4-byte vertex count"));
        }
        Ok((n, 4))
    }
}

/// Parses every non-empty line of a graph6 file.
pub fn parse_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(from_graph6)
        .collect()
}
