//! Matrix and probability-vector file formats.
//!
//! QDM1 binary layout (all little-endian):
//!
//! | offset | size     | content                                   |
//! |--------|----------|-------------------------------------------|
//! | 0      | 4        | magic `51 44 4D 31` ("QDM1")              |
//! | 4      | 4        | version, u32 = 1                          |
//! | 8      | 8        | dim, u64                                  |
//! | 16     | 16·dim²  | entries row-major, (re, im) as two binary64 |
//!
//! Text matrix: first line `dim`, then `dim` lines of `2·dim` whitespace
//! separated floats (re im pairs). Probability vector text: first line `d`,
//! then `d` floats one per line.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::states::density::ProbVector;

pub const MAGIC: [u8; 4] = *b"QDM1";
pub const VERSION: u32 = 1;
pub const MAX_DIM: u64 = 1 << 16;
const HEADER_LEN: usize = 16;

pub fn encode_qdm1(m: &ComplexMatrix) -> Result<Vec<u8>> {
    if !m.is_square() {
        return Err(Error::DimMismatch("QDM1 stores square matrices only".into()));
    }
    let n = m.dim();
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * n * n);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(n as u64).to_le_bytes());
    for z in m.as_slice() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_qdm1(bytes: &[u8]) -> Result<ComplexMatrix> {
    if bytes.len() < 4 {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, no room for magic",
            bytes.len()
        )));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, header needs {HEADER_LEN}",
            bytes.len()
        )));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::BadVersion(version));
    }
    let dim = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    if dim > MAX_DIM {
        return Err(Error::DimOverflow(dim));
    }
    if dim == 0 {
        return Err(Error::Parse("dimension 0".into()));
    }
    let n = dim as usize;
    let expected = HEADER_LEN + 16 * n * n;
    if bytes.len() < expected {
        return Err(Error::TruncatedFile(format!(
            "{} bytes, expected {expected}",
            bytes.len()
        )));
    }
    if bytes.len() > expected {
        return Err(Error::Parse(format!("{} trailing bytes", bytes.len() - expected)));
    }
    let data = bytes[HEADER_LEN..]
        .chunks_exact(16)
        .map(|c| {
            C64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    ComplexMatrix::from_row_major(n, n, data)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    fs::write(path, encode_qdm1(m)?)?;
    Ok(())
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    decode_qdm1(&fs::read(path)?)
}

/// Text form; floats use Rust's shortest round-trip formatting.
pub fn format_matrix_text(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let line: Vec<String> = m.row(i).iter().map(|z| format!("{:?} {:?}", z.re, z.im)).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_matrix_text(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::TruncatedFile("empty text matrix".into()))?;
    let dim: u64 = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension line {header:?}")))?;
    if dim > MAX_DIM {
        return Err(Error::DimOverflow(dim));
    }
    let n = dim as usize;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::TruncatedFile(format!("expected {n} rows, found {i}")))?;
        let vals = parse_floats(line)?;
        if vals.len() != 2 * n {
            return Err(Error::Parse(format!(
                "row {i} has {} values, expected {}",
                vals.len(),
                2 * n
            )));
        }
        data.extend(vals.chunks_exact(2).map(|p| C64::new(p[0], p[1])));
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after matrix rows".into()));
    }
    ComplexMatrix::from_row_major(n, n, data)
}

pub fn write_matrix_text(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    fs::write(path, format_matrix_text(m))?;
    Ok(())
}

pub fn read_matrix_text(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_matrix_text(&fs::read_to_string(path)?)
}

/// Reads either format: QDM1 when the file starts with the magic (or is too
/// short to tell), text otherwise.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let bytes = fs::read(path)?;
    if bytes.len() < 4 || bytes[..4] == MAGIC {
        return decode_qdm1(&bytes);
    }
    match std::str::from_utf8(&bytes) {
        Ok(text) => parse_matrix_text(text),
        Err(_) => Err(Error::BadMagic),
    }
}

pub fn parse_prob_vector(text: &str) -> Result<ProbVector> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::TruncatedFile("empty probability file".into()))?;
    let d: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad length line {header:?}")))?;
    let mut probs = Vec::with_capacity(d);
    for i in 0..d {
        let line = lines
            .next()
            .ok_or_else(|| Error::TruncatedFile(format!("expected {d} values, found {i}")))?;
        let v = line
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad float {line:?}")))?;
        probs.push(v);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after probabilities".into()));
    }
    ProbVector::new(probs)
}

pub fn read_prob_vector(path: impl AsRef<Path>) -> Result<ProbVector> {
    parse_prob_vector(&fs::read_to_string(path)?)
}

pub fn format_prob_vector(p: &ProbVector) -> String {
    let mut s = format!("{}\n", p.len());
    for v in p.probs() {
        s.push_str(&format!("{v:?}\n"));
    }
    s
}

fn parse_floats(line: &str) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad float {t:?}"))))
        .collect()
}
