//! The PCOL file formats.
//!
//! Text:
//! ```text
//! PCOL 1
//! q=2 n=2 k=2
//! 0 1 1 0
//! ```
//! Binary: the line `PCOLB1`, the same `q= n= k=` line, then one byte per
//! vertex when `k <= 256` and two little-endian bytes otherwise. Values are in
//! vertex-index order in both variants.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hamming::{vertex_count, ColorTable, Coloring, Guards};

pub const TEXT_MAGIC: &str = "PCOL 1";
pub const BINARY_MAGIC: &str = "PCOLB1";
const VALUES_PER_LINE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Text,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub q: u32,
    pub n: usize,
    pub k: u32,
}

pub fn write_pcol(
    c: &Coloring,
    mut out: impl Write,
    encoding: Encoding,
    guards: &Guards,
) -> Result<()> {
    let m = c.materialize(guards)?;
    let t = m.table().expect("materialized");
    let header = format!("q={} n={} k={}\n", c.q(), c.n(), c.k());
    match encoding {
        Encoding::Text => {
            writeln!(out, "{TEXT_MAGIC}")?;
            out.write_all(header.as_bytes())?;
            let mut line = String::new();
            for v in 0..t.len() {
                if v % VALUES_PER_LINE != 0 {
                    line.push(' ');
                }
                line.push_str(&t.get(v).to_string());
                if v % VALUES_PER_LINE == VALUES_PER_LINE - 1 || v + 1 == t.len() {
                    line.push('\n');
                    out.write_all(line.as_bytes())?;
                    line.clear();
                }
            }
        }
        Encoding::Binary => {
            writeln!(out, "{BINARY_MAGIC}")?;
            out.write_all(header.as_bytes())?;
            match t {
                ColorTable::Narrow(values) => out.write_all(values)?,
                ColorTable::Wide(values) => {
                    let bytes: Vec<u8> = values.iter().flat_map(|v| v.to_le_bytes()).collect();
                    out.write_all(&bytes)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_pcol_file(
    c: &Coloring,
    path: impl AsRef<Path>,
    encoding: Encoding,
    guards: &Guards,
) -> Result<()> {
    write_pcol(c, BufWriter::new(File::create(path)?), encoding, guards)
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Split off the next `\n`-terminated line, returning it without the newline.
fn take_line<'a>(data: &mut &'a [u8], line_no: usize) -> Result<&'a str> {
    let end = data
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| parse_error(line_no, 1, "unexpected end of file"))?;
    let line = std::str::from_utf8(&data[..end])
        .map_err(|_| parse_error(line_no, 1, "header is not valid UTF-8"))?;
    *data = &data[end + 1..];
    Ok(line.trim_end_matches('\r'))
}

fn parse_header(line: &str, line_no: usize) -> Result<Header> {
    let mut fields = [0u64; 3];
    let mut column = 1;
    let mut parts = line.split(' ');
    for (slot, key) in fields.iter_mut().zip(["q", "n", "k"]) {
        let part = parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| parse_error(line_no, column, format!("expected {key}=<value>")))?;
        let value = part
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| parse_error(line_no, column, format!("expected {key}=<value>")))?;
        *slot = value
            .parse()
            .map_err(|_| parse_error(line_no, column + key.len() + 1, format!("bad {key}")))?;
        column += part.len() + 1;
    }
    if parts.next().is_some() {
        return Err(parse_error(line_no, column, "trailing fields in header"));
    }
    let [q, n, k] = fields;
    if !(2..=256).contains(&q) {
        return Err(parse_error(line_no, 1, "q must be between 2 and 256"));
    }
    if !(1..=65536).contains(&k) {
        return Err(parse_error(line_no, 1, "k must be between 1 and 65536"));
    }
    Ok(Header {
        q: q as u32,
        n: n as usize,
        k: k as u32,
    })
}

/// Read only the header.
pub fn read_header(mut input: impl Read) -> Result<(Header, Encoding)> {
    let mut buf = Vec::new();
    let mut byte = [0u8; 1];
    let mut lines = 0;
    while lines < 2 && input.read(&mut byte)? == 1 {
        buf.push(byte[0]);
        if byte[0] == b'\n' {
            lines += 1;
        }
    }
    let mut data = buf.as_slice();
    let encoding = match take_line(&mut data, 1)? {
        TEXT_MAGIC => Encoding::Text,
        BINARY_MAGIC => Encoding::Binary,
        _ => return Err(parse_error(1, 1, "missing PCOL magic")),
    };
    Ok((parse_header(take_line(&mut data, 2)?, 2)?, encoding))
}

pub fn read_pcol(mut input: impl Read) -> Result<(Coloring, Encoding)> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    let mut rest = data.as_slice();
    let encoding = match take_line(&mut rest, 1)? {
        TEXT_MAGIC => Encoding::Text,
        BINARY_MAGIC => Encoding::Binary,
        _ => return Err(parse_error(1, 1, "missing PCOL magic")),
    };
    let header = parse_header(take_line(&mut rest, 2)?, 2)?;
    let expected = vertex_count(header.n, header.q)
        .filter(|&c| c <= Guards::from_env().materialize)
        .ok_or(Error::TooLarge {
            cells: (header.q as u128).saturating_pow(header.n as u32),
            guard: Guards::from_env().materialize,
        })?;

    let values: Vec<u32> = match encoding {
        Encoding::Binary => {
            let width = if header.k <= 256 { 1 } else { 2 };
            if rest.len() as u64 != expected * width {
                return Err(Error::LengthMismatch {
                    expected,
                    found: rest.len() as u64 / width,
                });
            }
            if width == 1 {
                rest.iter().map(|&b| b as u32).collect()
            } else {
                rest.chunks_exact(2)
                    .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                    .collect()
            }
        }
        Encoding::Text => {
            let text = std::str::from_utf8(rest)
                .map_err(|_| parse_error(3, 1, "payload is not valid UTF-8"))?;
            let mut values = Vec::with_capacity(expected as usize);
            for (i, line) in text.lines().enumerate() {
                let mut column = 1;
                for token in line.split(|c: char| c.is_ascii_whitespace()) {
                    if !token.is_empty() {
                        let v: u32 = token.parse().map_err(|_| {
                            parse_error(i + 3, column, format!("bad color value {token:?}"))
                        })?;
                        values.push(v);
                    }
                    column += token.len() + 1;
                }
            }
            if values.len() as u64 != expected {
                return Err(Error::LengthMismatch {
                    expected,
                    found: values.len() as u64,
                });
            }
            values
        }
    };
    Ok((Coloring::from_table(header.n, header.q, header.k, values)?, encoding))
}

pub fn read_pcol_file(path: impl AsRef<Path>) -> Result<(Coloring, Encoding)> {
    read_pcol(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Coloring {
        Coloring::from_table(2, 2, 2, vec![0, 1, 1, 0]).unwrap()
    }

    fn to_bytes(c: &Coloring, enc: Encoding) -> Vec<u8> {
        let mut out = Vec::new();
        write_pcol(c, &mut out, enc, &Guards::default()).unwrap();
        out
    }

    #[test]
    fn text_layout() {
        let s = String::from_utf8(to_bytes(&parity(), Encoding::Text)).unwrap();
        assert_eq!(s, "PCOL 1\nq=2 n=2 k=2\n0 1 1 0\n");
    }

    #[test]
    fn binary_layout() {
        let b = to_bytes(&parity(), Encoding::Binary);
        assert_eq!(b, b"PCOLB1\nq=2 n=2 k=2\n\x00\x01\x01\x00");
        let wide = Coloring::from_fn(9, 2, 512, |w| {
            w.iter().rev().fold(0, |a, &d| a * 2 + d as u32)
        })
        .unwrap();
        let b = to_bytes(&wide, Encoding::Binary);
        let header = b"PCOLB1\nq=2 n=9 k=512\n".len();
        assert_eq!(b.len(), header + 1024);
        assert_eq!(&b[header + 2 * 300..header + 2 * 301], &300u16.to_le_bytes());
        let (back, enc) = read_pcol(b.as_slice()).unwrap();
        assert_eq!(enc, Encoding::Binary);
        assert_eq!(back.table(), wide.table());
    }

    #[test]
    fn truncated_payload() {
        let err = read_pcol(&b"PCOL 1\nq=2 n=2 k=2\n0 1 1\n"[..]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { expected: 4, found: 3 }));
        let err = read_pcol(&b"PCOLB1\nq=2 n=3 k=2\n\x00\x01"[..]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { expected: 8, .. }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = read_pcol(&b"PCOL 1\nq=2 n=2 k=2\n0 1 x 0\n"[..]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 5, .. }), "{err}");
        let err = read_pcol(&b"PCOL 1\nq=2 m=2 k=2\n0 1 1 0\n"[..]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err}");
        let err = read_pcol(&b"PCOL 2\n"[..]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn out_of_range_color() {
        let err = read_pcol(&b"PCOL 1\nq=2 n=2 k=2\n0 1 2 0\n"[..]).unwrap_err();
        assert!(matches!(
            err,
            Error::ColorOutOfRange {
                vertex: 2,
                value: 2,
                k: 2
            }
        ));
    }

    #[test]
    fn header_only() {
        let (h, e) = read_header(&b"PCOLB1\nq=3 n=4 k=9\nrest"[..]).unwrap();
        assert_eq!(h, Header { q: 3, n: 4, k: 9 });
        assert_eq!(e, Encoding::Binary);
    }
}
