//! Textual forms of tensors.
//!
//! Two display conventions, matching the shipped reference tables:
//! matrices (k = 2) render as bracketed rows `[[0,0,1],[0,2,0],[1,0,0]]`;
//! higher orders render as the full flattened entry list with `·` for zero,
//! space-separated. Parsers accept both the D free entries and the full
//! n^k entry list, telling them apart by token count.

use crate::error::{Error, Result};
use crate::tensor::{FlatTensor, Layout, SymTensor};

/// Render for display: bracketed matrix for order 2, dotted flat list
/// otherwise.
pub fn render_canonical(layout: &Layout, t: &SymTensor) -> String {
    if layout.shape().k() == 2 {
        render_matrix(layout, t)
    } else {
        render_dots(layout, t)
    }
}

/// `[[row],[row],…]` with comma-separated entries, no whitespace.
pub fn render_matrix(layout: &Layout, t: &SymTensor) -> String {
    let n = layout.shape().n() as usize;
    let flat = layout.flatten(t);
    let entries = flat.entries();
    let mut out = String::from("[");
    for r in 0..n {
        if r > 0 {
            out.push(',');
        }
        out.push('[');
        for c in 0..n {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&entries[r * n + c].to_string());
        }
        out.push(']');
    }
    out.push(']');
    out
}

/// Full flattened entries, `·` for zero, single spaces between entries.
pub fn render_dots(layout: &Layout, t: &SymTensor) -> String {
    let flat = layout.flatten(t);
    let parts: Vec<String> = flat
        .entries()
        .iter()
        .map(|&v| {
            if v == 0 {
                "·".to_string()
            } else {
                v.to_string()
            }
        })
        .collect();
    parts.join(" ")
}

/// Free digits of the packed code, most significant first (the JSON/CSV
/// payload format).
pub fn canonical_digits(layout: &Layout, t: &SymTensor) -> Vec<u8> {
    layout.digits_of(t.code())
}

/// Parse a whitespace-separated entry list where `·` means zero. Token
/// count selects between free digits (D tokens) and the full flattened list
/// (n^k tokens, symmetry-checked).
pub fn parse_dots(layout: &Layout, s: &str) -> Result<SymTensor> {
    let mut values = Vec::new();
    for token in s.split_whitespace() {
        if token == "·" {
            values.push(0u8);
        } else {
            let v: u8 = token
                .parse()
                .map_err(|_| Error::LiteralParse(format!("bad entry {token:?}")))?;
            values.push(v);
        }
    }
    tensor_from_values(layout, values)
}

/// Parse the CLI tensor literal: comma-separated residues, either the D free
/// entries in digit order (most significant first) or the full flattened
/// entry list.
pub fn parse_literal(layout: &Layout, s: &str) -> Result<SymTensor> {
    let mut values = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        let v: u8 = token
            .parse()
            .map_err(|_| Error::LiteralParse(format!("bad entry {token:?}")))?;
        values.push(v);
    }
    tensor_from_values(layout, values)
}

/// Parse a bracketed matrix literal as produced by [`render_matrix`];
/// whitespace-tolerant.
pub fn parse_matrix(layout: &Layout, s: &str) -> Result<SymTensor> {
    let values: Vec<u8> = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .split(|c| ['[', ']', ','].contains(&c))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| Error::LiteralParse(format!("bad entry {t:?}")))
        })
        .collect::<Result<_>>()?;
    tensor_from_values(layout, values)
}

/// Either display convention, detected by the leading bracket.
pub fn parse_canonical(layout: &Layout, s: &str) -> Result<SymTensor> {
    if s.trim_start().starts_with('[') {
        parse_matrix(layout, s)
    } else {
        parse_dots(layout, s)
    }
}

fn tensor_from_values(layout: &Layout, values: Vec<u8>) -> Result<SymTensor> {
    let shape = layout.shape();
    let d = shape.free_count() as usize;
    let full = shape.full_len() as usize;
    if values.len() == d {
        let p = shape.p();
        if let Some(&v) = values.iter().find(|&&v| v >= p) {
            return Err(Error::ResidueOutOfRange {
                value: v as u64,
                modulus: p,
            });
        }
        Ok(SymTensor::new(*shape, layout.code_of(&values)))
    } else if values.len() == full {
        layout.pack(&FlatTensor::new(*shape, values)?)
    } else {
        Err(Error::LiteralParse(format!(
            "expected {d} free entries or {full} full entries, got {}",
            values.len()
        )))
    }
}
