//! Tokenizing helpers for the textual element grammar.

use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Splits `c1*l1 + c2*l2 - l3` at top-level signs into `(coefficient, label)`
/// pairs. Coefficients are integers or fractions `p/q`.
pub fn split_terms(text: &str) -> Result<Vec<(Rational, String)>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty element".to_string()));
    }
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut depth: i32 = 0;
    let mut sign = Rational::one();
    let mut cur = String::new();
    let mut pending = false;
    for ch in text.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if !cur.trim().is_empty() {
                terms.push(finish_term(&sign, &cur)?);
            } else if pending {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            sign = if ch == '-' { -Rational::one() } else { Rational::one() };
            cur.clear();
            pending = true;
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("element ends with a sign: {text:?}")));
    }
    terms.push(finish_term(&sign, &cur)?);
    Ok(terms)
}

fn finish_term(sign: &Rational, body: &str) -> Result<(Rational, String)> {
    let body = body.trim();
    match split_coefficient(body) {
        Some((c, label)) => Ok((sign * parse_rational(c)?, label.trim().to_string())),
        None => Ok((sign.clone(), body.to_string())),
    }
}

fn split_coefficient(body: &str) -> Option<(&str, &str)> {
    let star = body.find('*')?;
    let head = &body[..star];
    if head.trim().chars().all(|c| c.is_ascii_digit() || c == '/' || c == ' ') {
        Some((head, &body[star + 1..]))
    } else {
        None
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
}

/// Parses a comma separated list of positive integers, e.g. `3,1,2`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn splits_signed_terms() {
        let t = split_terms("[1,2] - 2*[2,1] + 1/2*{[1,2]}{3}").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], (rat(1), "[1,2]".to_string()));
        assert_eq!(t[1], (rat(-2), "[2,1]".to_string()));
        assert_eq!(t[2], (frac(1, 2), "{[1,2]}{3}".to_string()));
        assert_eq!(split_terms("-1_0").unwrap(), vec![(rat(-1), "1_0".to_string())]);
        assert!(split_terms("0").unwrap().is_empty());
    }

    #[test]
    fn rejects_malformed() {
        assert!(split_terms("[1,2").is_err());
        assert!(split_terms("[1,2] +").is_err());
        assert!(split_terms("").is_err());
        assert!(split_terms("x*[1]").is_ok());
    }
}
