//! Parameter rules over the sequence index `i`.
//!
//! A rule is a comma-separated list of terms. Each term is a product or
//! quotient of positive decimal literals and powers of `i`:
//!
//! ```text
//! term   := factor (('*' | '/') factor)*
//! factor := number | 'i' power?
//! power  := '^' digits | '²' | '³'
//! ```
//!
//! so `"1,1/i"`, `"1/i^2, 1/i"`, `"1/i²,1/i"` and `"2*i/3"` are all valid.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule is empty")]
    Empty,
    #[error("term {term} is empty")]
    EmptyTerm { term: usize },
    #[error("unexpected '{found}' at byte {pos}")]
    Unexpected { found: char, pos: usize },
    #[error("expected a number or 'i' at byte {pos}")]
    MissingFactor { pos: usize },
    #[error("invalid number '{text}'")]
    BadNumber { text: String },
    #[error("literal {text} must be positive")]
    NonPositive { text: String },
    #[error("exponent '{text}' is not a small nonnegative integer")]
    BadExponent { text: String },
    #[error("rule yields {found} values, expected {expected}")]
    Arity { expected: usize, found: usize },
}

/// `coef · i^power`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Monomial {
    coef: f64,
    power: i32,
}

impl Monomial {
    fn eval(&self, i: u64) -> f64 {
        let x = i as f64;
        if self.power >= 0 {
            self.coef * x.powi(self.power)
        } else {
            self.coef / x.powi(-self.power)
        }
    }
}

/// A parsed rule, remembered together with its source text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IndexRule {
    text: String,
    terms: Vec<Monomial>,
}

impl IndexRule {
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        if text.trim().is_empty() {
            return Err(RuleError::Empty);
        }
        let mut terms = Vec::new();
        let mut offset = 0;
        for (t, part) in text.split(',').enumerate() {
            if part.trim().is_empty() {
                return Err(RuleError::EmptyTerm { term: t });
            }
            terms.push(Parser::new(part, offset).term()?);
            offset += part.len() + 1;
        }
        Ok(Self {
            text: text.to_string(),
            terms,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Number of comma-separated terms.
    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, i: u64) -> Vec<f64> {
        self.terms.iter().map(|m| m.eval(i)).collect()
    }

    pub(crate) fn expect_arity(&self, expected: usize) -> Result<(), RuleError> {
        if self.arity() == expected {
            Ok(())
        } else {
            Err(RuleError::Arity {
                expected,
                found: self.arity(),
            })
        }
    }
}

impl FromStr for IndexRule {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl TryFrom<String> for IndexRule {
    type Error = RuleError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Self::parse(&s)
    }
}

impl From<IndexRule> for String {
    fn from(r: IndexRule) -> Self {
        r.text
    }
}

impl fmt::Display for IndexRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, base: usize) -> Self {
        Self { src, pos: 0, base }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn term(&mut self) -> Result<Monomial, RuleError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = Monomial {
                        coef: acc.coef * f.coef,
                        power: acc.power + f.power,
                    };
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = Monomial {
                        coef: acc.coef / f.coef,
                        power: acc.power - f.power,
                    };
                }
                Some(c) => {
                    return Err(RuleError::Unexpected {
                        found: c,
                        pos: self.base + self.pos,
                    })
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Monomial, RuleError> {
        self.skip_ws();
        match self.peek() {
            Some('i') => {
                self.pos += 1;
                Ok(Monomial {
                    coef: 1.0,
                    power: self.power()?,
                })
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    let after_exp = matches!(self.src[..self.pos].chars().last(), Some('e' | 'E'));
                    if c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E') || (after_exp && matches!(c, '+' | '-')) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = &self.src[start..self.pos];
                let coef: f64 = text.parse().map_err(|_| RuleError::BadNumber {
                    text: text.to_string(),
                })?;
                if !(coef.is_finite() && coef > 0.0) {
                    return Err(RuleError::NonPositive {
                        text: text.to_string(),
                    });
                }
                Ok(Monomial { coef, power: 0 })
            }
            Some(c) if c != ',' => Err(RuleError::Unexpected {
                found: c,
                pos: self.base + self.pos,
            }),
            _ => Err(RuleError::MissingFactor {
                pos: self.base + self.pos,
            }),
        }
    }

    fn power(&mut self) -> Result<i32, RuleError> {
        match self.peek() {
            Some('²') => {
                self.pos += '²'.len_utf8();
                Ok(2)
            }
            Some('³') => {
                self.pos += '³'.len_utf8();
                Ok(3)
            }
            Some('^') => {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                text.parse::<i32>()
                    .ok()
                    .filter(|p| *p <= 64)
                    .ok_or_else(|| RuleError::BadExponent {
                        text: text.to_string(),
                    })
            }
            _ => Ok(1),
        }
    }
}
