//! Plain-text file formats.
//!
//! Matrices, kets, statepoints and leaf coordinates are written with 17
//! significant digits so that reading them back is bit-exact. Blank lines and
//! lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;

use num_complex::Complex64;
use statespace::{CMatrix, LeafCoordinates, MeasurementBasis, ProbabilityVector, StatePoint};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Full-precision decimal, 17 significant digits. Negative zero is written as `0`.
pub fn exact(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// `re+imi` at full precision.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", exact(z.re), sign, exact(z.im.abs()))
}

/// Accepts `a`, `a+bi`, `a-bi`, `bi` and `i`, with `j` as an alias for `i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return parse_real(s).map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not the leading one or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, imag_part(&body[k..])?),
        None => (0.0, imag_part(body)?),
    };
    Some(Complex64::new(re, im))
}

fn imag_part(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let x: f64 = s.parse().ok()?;
    x.is_finite().then_some(x)
}

/// Significant lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_dim(line: usize, s: &str) -> Result<usize, FormatError> {
    s.parse().map_err(|_| err(line, format!("expected a dimension, found `{s}`")))
}

fn parse_row(line: usize, s: &str) -> Result<Vec<Complex64>, FormatError> {
    s.split_whitespace().map(|tok| parse_complex(tok).ok_or_else(|| err(line, format!("bad entry `{tok}`")))).collect()
}

fn parse_reals(line: usize, s: &str) -> Result<Vec<f64>, FormatError> {
    s.split_whitespace().map(|tok| parse_real(tok).ok_or_else(|| err(line, format!("bad number `{tok}`")))).collect()
}

pub fn write_matrix(m: &CMatrix) -> String {
    let mut out = format!("{}\n", m.dim());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|z| format_complex(*z)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a `d` line followed by `d` rows. Shape errors are reported by line;
/// Hermiticity and positivity are left to the caller.
pub fn parse_matrix(text: &str) -> Result<CMatrix, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (head, body) = lines.split_first().ok_or_else(|| err(1, "empty matrix file"))?;
    let rows = parse_matrix_block(head, body)?;
    if body.len() > rows.len() {
        return Err(err(body[rows.len()].0, "unexpected trailing content"));
    }
    let dim = rows.len();
    CMatrix::from_row_major(dim, rows.into_iter().flatten().collect()).map_err(|e| err(head.0, e.to_string()))
}

fn parse_matrix_block(head: &(usize, &str), body: &[(usize, &str)]) -> Result<Vec<Vec<Complex64>>, FormatError> {
    let dim = parse_dim(head.0, head.1)?;
    if dim == 0 {
        return Err(err(head.0, "dimension must be positive"));
    }
    if body.len() < dim {
        return Err(err(head.0, format!("expected {dim} rows, found {}", body.len())));
    }
    body[..dim]
        .iter()
        .map(|&(line, s)| {
            let row = parse_row(line, s)?;
            if row.len() != dim {
                return Err(err(line, format!("expected {dim} entries, found {}", row.len())));
            }
            Ok(row)
        })
        .collect()
}

/// `d` followed by the d²−1 coordinates on one line.
pub fn write_statepoint(p: &StatePoint) -> String {
    let mut out = p.dim().to_string();
    for c in p.coords() {
        let _ = write!(out, " {}", exact(*c));
    }
    out.push('\n');
    out
}

pub fn parse_statepoint(text: &str) -> Result<StatePoint, FormatError> {
    let (line, s) = content_lines(text).next().ok_or_else(|| err(1, "empty statepoint file"))?;
    let mut tokens = s.split_whitespace();
    let dim = parse_dim(line, tokens.next().unwrap_or_default())?;
    let coords = parse_reals(line, &tokens.collect::<Vec<_>>().join(" "))?;
    StatePoint::new(dim, coords).map_err(|e| err(line, e.to_string()))
}

/// `d`, then the diagonal probabilities on one line, then one
/// `magnitude phase` line per off-diagonal pair in row-major order.
pub fn write_leaf(l: &LeafCoordinates) -> String {
    let mut out = format!("{}\n", l.dim());
    let diag: Vec<String> = l.diag.as_slice().iter().map(|p| exact(*p)).collect();
    out.push_str(&diag.join(" "));
    out.push('\n');
    for c in &l.offdiag {
        let _ = writeln!(out, "{} {}", exact(c.magnitude), exact(c.phase));
    }
    out
}

pub fn parse_leaf(text: &str) -> Result<(ProbabilityVector, Vec<(f64, f64)>), FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (head, rest) = lines.split_first().ok_or_else(|| err(1, "empty leaf file"))?;
    let dim = parse_dim(head.0, head.1)?;
    let (diag_line, pairs) = rest.split_first().ok_or_else(|| err(head.0, "missing diagonal"))?;
    let diag =
        ProbabilityVector::new(parse_reals(diag_line.0, diag_line.1)?).map_err(|e| err(diag_line.0, e.to_string()))?;
    if diag.dim() != dim {
        return Err(err(diag_line.0, format!("expected {dim} probabilities")));
    }
    let expected = dim * (dim - 1) / 2;
    if pairs.len() != expected {
        return Err(err(head.0, format!("expected {expected} off-diagonal lines, found {}", pairs.len())));
    }
    let offdiag = pairs
        .iter()
        .map(|&(line, s)| match parse_reals(line, s)?.as_slice() {
            [m, p] => Ok((*m, *p)),
            _ => Err(err(line, "expected `magnitude phase`")),
        })
        .collect::<Result<_, _>>()?;
    Ok((diag, offdiag))
}

/// One `re+imi` amplitude per line.
pub fn write_ket(amps: &[Complex64]) -> String {
    amps.iter().map(|z| format_complex(*z) + "\n").collect()
}

pub fn parse_ket(text: &str) -> Result<Vec<Complex64>, FormatError> {
    content_lines(text)
        .map(|(line, s)| parse_complex(s).ok_or_else(|| err(line, format!("bad amplitude `{s}`"))))
        .collect()
}

/// `weight path` per line; paths are returned as written.
pub fn parse_ensemble(text: &str) -> Result<Vec<(f64, String)>, FormatError> {
    let entries: Vec<(f64, String)> = content_lines(text)
        .map(|(line, s)| {
            let (w, path) = s.split_once(char::is_whitespace).ok_or_else(|| err(line, "expected `weight path`"))?;
            let w = parse_real(w).ok_or_else(|| err(line, format!("bad weight `{w}`")))?;
            Ok((w, path.trim().to_string()))
        })
        .collect::<Result<_, FormatError>>()?;
    if entries.is_empty() {
        return Err(err(1, "empty ensemble file"));
    }
    Ok(entries)
}

/// `d`, then per basis d rows of the unitary (basis vectors as columns)
/// followed by one line of d probabilities.
pub fn write_record(entries: &[(MeasurementBasis, ProbabilityVector)]) -> String {
    let dim = entries.first().map_or(0, |(b, _)| b.dim());
    let mut out = format!("{dim}\n");
    for (basis, probs) in entries {
        let block = write_matrix(basis.unitary().matrix());
        out.extend(block.lines().skip(1).map(|l| l.to_string() + "\n"));
        let p: Vec<String> = probs.as_slice().iter().map(|x| exact(*x)).collect();
        out.push_str(&p.join(" "));
        out.push('\n');
    }
    out
}

/// Raw record blocks: (unitary, probabilities), unvalidated.
pub fn parse_record(text: &str) -> Result<Vec<(CMatrix, Vec<f64>)>, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (head, body) = lines.split_first().ok_or_else(|| err(1, "empty record file"))?;
    let dim = parse_dim(head.0, head.1)?;
    if dim == 0 || body.is_empty() || body.len() % (dim + 1) != 0 {
        return Err(err(head.0, format!("expected blocks of {dim} unitary rows plus a probability line")));
    }
    body.chunks(dim + 1)
        .map(|chunk| {
            let rows = parse_matrix_block(&(head.0, head.1), &chunk[..dim])?;
            let (line, s) = chunk[dim];
            let probs = parse_reals(line, s)?;
            if probs.len() != dim {
                return Err(err(line, format!("expected {dim} probabilities")));
            }
            let u = CMatrix::from_row_major(dim, rows.into_iter().flatten().collect())
                .map_err(|e| err(line, e.to_string()))?;
            Ok((u, probs))
        })
        .collect()
}

/// Magnitudes below this print as `0` in text output.
pub const TEXT_RESOLUTION: f64 = 5e-13;

/// [`sig12`] with round-off below [`TEXT_RESOLUTION`] shown as zero.
pub fn text_number(x: f64) -> String {
    if x.abs() < TEXT_RESOLUTION {
        return "0".to_string();
    }
    sig12(x)
}

/// 12 significant digits, shortest form: fixed notation for moderate
/// exponents, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}
