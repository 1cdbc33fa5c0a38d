//! Text forms: `1 + 4*t + t^2` (Display) and `1 + 4t + t^2` (compact).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::{Error, Result};

impl IntPolynomial {
    fn render(&self, times: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{abs}{times}{var}"));
            }
        }
        out
    }

    /// `1 + 4t + t^2`.
    pub fn to_compact_string(&self) -> String {
        self.render("")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*"))
    }
}

fn parse_term(term: &str, whole: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("malformed polynomial '{whole}' near '{term}'"));
    let Some(tpos) = term.find('t') else {
        return term.parse::<BigInt>().map(|c| (c, 0)).map_err(|_| bad());
    };
    let coeff_part = term[..tpos].strip_suffix('*').unwrap_or(&term[..tpos]);
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        coeff_part.parse::<BigInt>().map_err(|_| bad())?
    };
    let rest = &term[tpos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?
    };
    Ok((coeff, exp))
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts both text forms, in any term order, with repeated exponents summed.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for raw in terms {
            let (negative, body) = match raw.as_bytes().first() {
                Some(b'+') => (false, &raw[1..]),
                Some(b'-') => (true, &raw[1..]),
                _ => (false, raw),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("malformed polynomial '{s}'")));
            }
            let (c, e) = parse_term(body, s)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            if negative {
                coeffs[e] -= c;
            } else {
                coeffs[e] += c;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }
}
