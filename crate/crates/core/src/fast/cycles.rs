//! Cycle notation for permutations, e.g. `(1)(2 9)(3 8 16 15)`.
//!
//! Indices are 1-based in the text and 0-based everywhere else. A cycle
//! `(a b c)` sends output slot `a` to read input slot `b`, `b` to read `c` and
//! `c` to read `a`. When a cycle ends with a repeat of its first element, the
//! repeat is an explicit closure and is dropped. Indices that are not
//! mentioned are fixed points.

use super::stage::PermutationStage;
use crate::{Error, Result};

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        match bytes[pos] {
            b if b.is_ascii_whitespace() => pos += 1,
            b'(' => {
                let open = pos;
                pos += 1;
                let mut items = Vec::new();
                loop {
                    while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                        pos += 1;
                    }
                    match bytes.get(pos) {
                        None => return Err(parse_error(open, "unclosed cycle")),
                        Some(b')') => {
                            pos += 1;
                            break;
                        }
                        Some(b) if b.is_ascii_digit() => {
                            let start = pos;
                            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                                pos += 1;
                            }
                            let value = text[start..pos]
                                .parse::<usize>()
                                .map_err(|e| parse_error(start, e.to_string()))?;
                            items.push((start, value));
                        }
                        Some(&b) => return Err(parse_error(pos, format!("unexpected character {:?}", b as char))),
                    }
                }
                if items.is_empty() {
                    return Err(parse_error(open, "empty cycle"));
                }
                cycles.push((open, items));
            }
            b => return Err(parse_error(pos, format!("expected '(' but found {:?}", b as char))),
        }
    }
    Ok(cycles
        .into_iter()
        .map(|(open, items)| (open, items.into_iter().map(|(_, v)| v).collect()))
        .collect())
}

/// Parses cycle notation over `1..=order` into a permutation stage.
pub fn parse_cycles(text: &str, order: usize) -> Result<PermutationStage> {
    let mut mapping: Vec<usize> = (0..order).collect();
    let mut owner: Vec<Option<usize>> = vec![None; order];
    for (index, (offset, mut cycle)) in parse_cycle_list(text)?.into_iter().enumerate() {
        if cycle.len() > 1 && cycle.first() == cycle.last() {
            cycle.pop();
        }
        for &v in &cycle {
            if v == 0 || v > order {
                return Err(parse_error(offset, format!("index {v} outside 1..={order}")));
            }
            match owner[v - 1] {
                Some(prev) if prev == index => {
                    return Err(parse_error(offset, format!("index {v} repeated within a cycle")))
                }
                Some(_) => return Err(parse_error(offset, format!("index {v} appears in two cycles"))),
                None => owner[v - 1] = Some(index),
            }
        }
        for (k, &v) in cycle.iter().enumerate() {
            mapping[v - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
    }
    PermutationStage::new(mapping)
}
