//! Line formats: `x : {a, b, c}` for constraints and `a -> b` for
//! injections. `#` starts a comment line.

use std::collections::BTreeSet;

use super::{ConstraintSystem, PartialInjection};
use crate::error::{Error, Result};
use crate::ordinal::{parse_ordinal_at, Ordinal};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

pub fn parse_constraints(text: &str) -> Result<ConstraintSystem> {
    let mut constraints = Vec::new();
    for (n, line) in content_lines(text) {
        constraints.push(parse_constraint(line).map_err(|e| e.at_line(n))?);
    }
    ConstraintSystem::new(constraints)
}

fn parse_constraint(line: &str) -> Result<(Ordinal, BTreeSet<Ordinal>)> {
    let colon = line
        .find(':')
        .ok_or_else(|| Error::parse(0, "expected 'point : {values}'"))?;
    let x = parse_ordinal_at(&line[..colon], 0)?;
    let rest = &line[colon + 1..];
    let open = rest
        .find('{')
        .ok_or_else(|| Error::parse(colon + 1, "expected '{'"))?;
    let close = rest
        .rfind('}')
        .filter(|&c| c > open)
        .ok_or_else(|| Error::parse(line.len(), "expected '}'"))?;
    if !rest[close + 1..].trim().is_empty() {
        return Err(Error::parse(colon + 2 + close, "trailing input after '}'"));
    }
    let inner_at = colon + 1 + open + 1;
    let inner = &rest[open + 1..close];
    let mut values = BTreeSet::new();
    if !inner.trim().is_empty() {
        let mut at = inner_at;
        for item in inner.split(',') {
            values.insert(parse_ordinal_at(item, at)?);
            at += item.len() + 1;
        }
    }
    if values.is_empty() {
        return Err(Error::Domain(format!("empty allowed set for {x}")));
    }
    Ok((x, values))
}

pub fn parse_injection(text: &str) -> Result<PartialInjection> {
    let mut pairs = Vec::new();
    for (n, line) in content_lines(text) {
        let pair = line
            .find("->")
            .ok_or_else(|| Error::parse(0, "expected 'a -> b'"))
            .and_then(|arrow| {
                Ok((
                    parse_ordinal_at(&line[..arrow], 0)?,
                    parse_ordinal_at(&line[arrow + 2..], arrow + 2)?,
                ))
            })
            .map_err(|e| e.at_line(n))?;
        pairs.push(pair);
    }
    PartialInjection::new(pairs)
}
