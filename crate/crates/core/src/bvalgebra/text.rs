//! Text format for algebra elements.
//!
//! A term is a rational coefficient followed by `*`-separated tokens
//! `w(i,j)`, `t(i)`, `w(*,i)`, `w(i,_u h)`, `w(i,_o h)`, for example
//! `-1/2*w(1,2)*t(1) + w(*,1)`. Printing uses normal-form monomials, so
//! printing a parsed printout reproduces it exactly.

use super::label::{Gen, Label};
use super::mono::{reduce_word, AlgSum};
use super::presentation::{AlgElement, Presentation};
use crate::error::{EngineError, Result};
use crate::exactpoly::{fmt_coeff_prefix, join_terms, parse_coeff_and_factors, split_terms};

/// Renders a unified sum.
pub fn format_sum(a: &AlgSum) -> String {
    let terms = a
        .terms()
        .map(|(m, c)| {
            let toks: Vec<String> = m.iter().map(|g| g.to_string()).collect();
            format!("{}{}", fmt_coeff_prefix(c, !toks.is_empty()), toks.join("*"))
        })
        .collect();
    join_terms(terms)
}

fn parse_label(s: &str) -> Result<Label> {
    let s = s.trim();
    let num = |t: &str| -> Result<u32> {
        t.trim().parse::<u32>().map_err(|_| EngineError::Parse(format!("bad label `{s}`")))
    };
    if s == "*" {
        Ok(Label::Star)
    } else if let Some(h) = s.strip_prefix("_u") {
        Ok(Label::Under(num(h)? as u8))
    } else if let Some(h) = s.strip_prefix("_o") {
        Ok(Label::Over(num(h)? as u8))
    } else {
        Ok(Label::Pt(num(s)?))
    }
}

/// Parses one token into a generator; `Ok(None)` means the token is zero
/// (for instance `w(_u 1,_u 2)`).
pub fn parse_gen(tok: &str) -> Result<Option<Gen>> {
    let tok = tok.trim();
    let bad = || EngineError::Parse(format!("bad generator `{tok}`"));
    if let Some(body) = tok.strip_prefix("t(").and_then(|b| b.strip_suffix(')')) {
        let Label::Pt(p) = parse_label(body)? else { return Err(bad()) };
        return Ok(Some(Gen::T(p)));
    }
    let body = tok.strip_prefix("w(").and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
    let (a, b) = body.split_once(',').ok_or_else(bad)?;
    let (a, b) = (parse_label(a)?, parse_label(b)?);
    if !a.is_point() && !b.is_point() && a == b {
        return Err(bad());
    }
    Ok(Gen::omega(a, b))
}

/// Parses a unified sum, reducing it to normal form.
pub fn parse_sum(text: &str) -> Result<AlgSum> {
    let mut out = AlgSum::zero();
    let text = text.trim();
    if text == "0" || text.is_empty() {
        return Ok(out);
    }
    for term in split_terms(text) {
        let (c, factors) = parse_coeff_and_factors(&term)?;
        let mut word = Vec::new();
        let mut zero = false;
        for f in factors {
            if f == "1" {
                continue;
            }
            match parse_gen(&f)? {
                Some(g) => word.push(g),
                None => zero = true,
            }
        }
        if !zero {
            reduce_word(word, c, &mut out);
        }
    }
    Ok(out)
}

impl AlgElement {
    /// Parses an element of `presentation` from text.
    pub fn parse(presentation: &Presentation, text: &str) -> Result<AlgElement> {
        let s = parse_sum(text)?;
        AlgElement::new(presentation.clone(), s)
    }

    /// Renders the element as text.
    pub fn to_text(&self) -> String {
        format_sum(self.sum())
    }
}

impl std::fmt::Display for AlgElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::fmt::Display for AlgSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_sum(self))
    }
}
