//! Line format for piecewise maps:
//!
//! ```text
//! # comment
//! [0, w] -> [0, w]
//! (w, w*2] -> (w*2, w*3]
//! (w*2, w*3] -> (w, w*2]
//! ```

use super::{ClopenInterval, Piece, PwHomeo};
use crate::error::{Error, Result};
use crate::ordinal::parse_ordinal_at;

pub fn parse_homeo(text: &str) -> Result<PwHomeo> {
    let mut pieces = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let piece = parse_piece(line).map_err(|e| e.at_line(n + 1))?;
        pieces.push(piece);
    }
    PwHomeo::build(pieces)
}

/// One `interval -> interval` line.
pub fn parse_piece(line: &str) -> Result<Piece> {
    let Some(arrow) = line.find("->") else {
        return Err(Error::parse(0, "expected 'interval -> interval'"));
    };
    let source = parse_interval(&line[..arrow], 0)?;
    let target = parse_interval(&line[arrow + 2..], arrow + 2)?;
    Piece::new(source, target)
}

/// `[0, expr]` or `(expr, expr]`; `offset` is the column of `text` within
/// its line, for error positions.
fn parse_interval(text: &str, offset: usize) -> Result<ClopenInterval> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let at = offset + lead;
    let (open, inner) = match body.chars().next() {
        Some(c @ ('[' | '(')) => (c, &body[1..]),
        _ => return Err(Error::parse(at, "expected '[' or '(' to start an interval")),
    };
    let Some(inner) = inner.strip_suffix(']') else {
        return Err(Error::parse(
            at + body.len(),
            "expected ']' to close an interval",
        ));
    };
    let Some(comma) = inner.find(',') else {
        return Err(Error::parse(at + 1, "expected ',' inside interval"));
    };
    let lo = parse_ordinal_at(&inner[..comma], at + 1)?;
    let hi = parse_ordinal_at(&inner[comma + 1..], at + 2 + comma)?;
    if open == '[' {
        if !lo.is_zero() {
            return Err(Error::parse(at + 1, "closed intervals must start at 0"));
        }
        Ok(ClopenInterval::initial(hi))
    } else {
        ClopenInterval::left_open(lo, hi)
    }
}
