//! Text and JSON forms of algebra elements.
//!
//! ```text
//! element := term (('+' | '-') term)*  |  '0'
//! term    := [scalar '*'] word+
//! word    := '[' letter* ']'
//! ```
//!
//! A run of adjacent words is the product of the corresponding
//! f-monomials, so `[s1 s2 s1]` and `[s1][s2][s1]` both mean `delta * [s1]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{reduce_monomial, TLElement};
use crate::coeff::{parse_scalar, Scalar};
use crate::coxeter::{parse_letters, CoxeterGraph, FcWord, Letter};
use crate::error::{Error, Result};

/// Splits at top-level `+`/`-` signs that follow a closing `]`.
fn split_terms(text: &str) -> Result<Vec<(usize, &str)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let (mut paren, mut bracket) = (0i32, 0i32);
    let mut start = 0;
    let mut after_word = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => paren += 1,
            b')' => paren -= 1,
            b'[' => bracket += 1,
            b']' => {
                bracket -= 1;
                after_word = true;
                continue;
            }
            b'+' | b'-' if paren == 0 && bracket == 0 && after_word => {
                out.push((start, &text[start..i]));
                start = i;
            }
            _ => {}
        }
        if paren < 0 || bracket < 0 {
            return Err(Error::parse(i, "unbalanced delimiter"));
        }
        if !b.is_ascii_whitespace() {
            after_word = false;
        }
    }
    if paren != 0 || bracket != 0 {
        return Err(Error::parse(text.len(), "unbalanced delimiter"));
    }
    out.push((start, &text[start..]));
    Ok(out)
}

fn parse_term(graph: CoxeterGraph, offset: usize, text: &str) -> Result<(Scalar, Vec<Letter>)> {
    let first_word = text
        .find('[')
        .ok_or_else(|| Error::parse(offset + text.len(), "expected a `[...]` word"))?;
    let head = text[..first_word].trim_end();
    let coeff = if head.is_empty() || head == "+" {
        Scalar::one()
    } else if head == "-" {
        -Scalar::one()
    } else {
        let (sign, body) = match head.strip_prefix('+') {
            Some(rest) => (1, rest),
            None => (0, head),
        };
        let body = body
            .trim_end()
            .strip_suffix('*')
            .ok_or_else(|| Error::parse(offset + first_word, "expected `*` before word"))?;
        let body = if sign == 1 { body.trim_start() } else { body };
        parse_scalar(body).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse { position: position + offset, message },
            other => other,
        })?
    };
    let mut letters = Vec::new();
    let mut rest = &text[first_word..];
    let mut pos = offset + first_word;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        if !trimmed.starts_with('[') {
            return Err(Error::parse(pos, "expected `[`"));
        }
        let close = trimmed.find(']').ok_or_else(|| Error::parse(pos, "unterminated word"))?;
        letters.extend(parse_letters(&graph, &trimmed[1..close])?);
        rest = &trimmed[close + 1..];
        pos += close + 1;
    }
    Ok((coeff, letters))
}

/// Parses an element of the algebra on `graph`.
pub fn parse_element(text: &str, graph: CoxeterGraph) -> Result<TLElement> {
    if text.trim() == "0" {
        return Ok(TLElement::zero(graph));
    }
    let mut out = TLElement::zero(graph);
    for (offset, term) in split_terms(text)? {
        let (c, letters) = parse_term(graph, offset, term)?;
        let (d, w) = reduce_monomial(graph, &letters)?;
        out.add_term(w, c * d);
    }
    Ok(out)
}

fn format_coeff_times(c: &Scalar, word: &str) -> String {
    if c.is_one() {
        return word.to_string();
    }
    if (-c).is_one() {
        return format!("-{word}");
    }
    let text = c.to_string();
    let body = text.strip_prefix('-').unwrap_or(&text);
    if body.contains(['+', '-', '/']) {
        format!("({text})*{word}")
    } else {
        format!("{text}*{word}")
    }
}

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (&'a FcWord, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (w, c) in terms {
        let t = format_coeff_times(c, &w.to_string());
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders g-basis coordinates, with `[w]` standing for `g_w`.
pub fn format_g_basis(coords: &BTreeMap<FcWord, Scalar>) -> String {
    format_terms(coords.iter())
}

/// One entry of the JSON form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub word: Vec<String>,
}

impl TLElement {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(w, c)| JsonTerm {
                coeff: c.to_string(),
                word: w.letters().iter().map(|&s| self.graph().letter_name(s)).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(graph: CoxeterGraph, terms: &[JsonTerm]) -> Result<TLElement> {
        let mut out = TLElement::zero(graph);
        for t in terms {
            let c = parse_scalar(&t.coeff)?;
            let letters = t
                .word
                .iter()
                .map(|tok| graph.parse_letter(tok))
                .collect::<Result<Vec<_>>>()?;
            let (d, w) = reduce_monomial(graph, &letters)?;
            out.add_term(w, c * d);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(m: usize) -> CoxeterGraph {
        CoxeterGraph::affine(m).unwrap()
    }

    #[test]
    fn parses_closed_form_product() {
        let g = aff(3);
        let x = parse_element("(-1/q)*[s1 a s2] + (1/(1+q))*[s1 s2]", g).unwrap();
        let a = TLElement::f_word(g, &[0, 2, 1]).unwrap().scale(&"-1/q".parse().unwrap());
        let b = TLElement::f_word(g, &[0, 1]).unwrap().scale(&"1/(1+q)".parse().unwrap());
        assert_eq!(x, &a + &b);
    }

    #[test]
    fn identity_and_zero() {
        let g = aff(3);
        assert_eq!(parse_element("[]", g).unwrap(), TLElement::one(g));
        assert!(parse_element("0", g).unwrap().is_zero());
    }

    #[test]
    fn invalid_generator() {
        assert!(matches!(parse_element("[s1 s9]", aff(3)), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn raw_monomials_reduce() {
        let g = aff(3);
        let d = TLElement::f_word(g, &[0]).unwrap().scale(&Scalar::delta());
        assert_eq!(parse_element("[s1 s2 s1]", g).unwrap(), d);
        assert_eq!(parse_element("[s1][s2][s1]", g).unwrap(), d);
    }

    #[test]
    fn signs_and_plain_coefficients() {
        let g = aff(3);
        let x = parse_element("-[s1] + 2*[s2] - v*[a]", g).unwrap();
        assert_eq!(x.num_terms(), 3);
        assert_eq!(x.to_string(), "-[s1] + 2*[s2] - v*[a]");
        assert_eq!(parse_element(&x.to_string(), g).unwrap(), x);
    }

    #[test]
    fn format_round_trip() {
        let g = aff(3);
        let x = parse_element("(-(1+q)/q)*[a s2] - (q+1)*[s2 a] + [s2] + [a] + d*[s1 s2 a]", g).unwrap();
        assert_eq!(parse_element(&x.to_string(), g).unwrap(), x);
        let json = x.to_json_terms();
        assert_eq!(TLElement::from_json_terms(g, &json).unwrap(), x);
    }

    #[test]
    fn parse_errors() {
        let g = aff(3);
        assert!(matches!(parse_element("2 [s1]", g), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("[s1", g), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("(1+q*[s1]", g), Err(Error::Parse { .. })));
    }
}
