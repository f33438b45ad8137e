use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use super::poly::Poly;
use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {pos}")]
    UnexpectedToken { pos: usize },
    #[error("unknown variable {name:?}")]
    UnknownVariable { name: String },
    #[error("division by a non-constant or zero at offset {pos}")]
    BadDivision { pos: usize },
    #[error("exponent must be a non-negative integer at offset {pos}")]
    BadExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = vec![];
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((Tok::Ident(s), pos));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), pos));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar { ch, pos });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    vars: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                -&self.term()?
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.at += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError::BadDivision { pos });
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n.try_into().map_err(|_| ParseError::BadExponent { pos })?;
                    self.at += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(ParseError::BadExponent { pos }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(Poly::constant(self.vars, Rat::from_integer(n))),
            Tok::Ident(name) => {
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(ParseError::UnknownVariable { name })?;
                Ok(Poly::var(self.vars, i))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    None => Err(ParseError::UnexpectedEnd),
                    _ => Err(ParseError::UnexpectedToken { pos: self.pos() }),
                }
            }
            Tok::Op('-') => Ok(-&self.power()?),
            _ => Err(ParseError::UnexpectedToken { pos }),
        }
    }
}

/// Parses a polynomial with `+ - * / ^` and parentheses. Multiplication
/// must be explicit and division is only allowed by nonzero constants.
/// Without an explicit variable list the identifiers found are used in
/// sorted order.
pub fn parse_poly(text: &str, vars: Option<&[&str]>) -> Result<Poly, ParseError> {
    let toks = tokenize(text)?;
    let vars: Vec<String> = match vars {
        Some(v) => v.iter().map(|s| s.to_string()).collect(),
        None => toks
            .iter()
            .filter_map(|(t, _)| match t {
                Tok::Ident(s) => Some(s.clone()),
                _ => None,
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd);
    }
    let mut p = Parser {
        toks: &toks,
        at: 0,
        vars: &vars,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.at != toks.len() {
        return Err(ParseError::UnexpectedToken { pos: p.pos() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn precedence_and_rationals() {
        let p = parse_poly("-x^2*3/4 + (y - 1)^2", Some(&["x", "y"])).unwrap();
        assert_eq!(p.to_string(), "-3/4*x^2 + y^2 - 2*y + 1");
        let q = parse_poly("1/2", Some(&["x"])).unwrap();
        assert_eq!(q.constant_term(), rat(1, 2));
    }

    #[test]
    fn inferred_variables_are_sorted() {
        let p = parse_poly("z*y - x", None).unwrap();
        assert_eq!(p.vars(), &["x", "y", "z"]);
    }

    #[test]
    fn errors() {
        let v = Some(&["x", "y"][..]);
        assert!(matches!(
            parse_poly("x/y", v),
            Err(ParseError::BadDivision { .. })
        ));
        assert!(matches!(
            parse_poly("x/0", v),
            Err(ParseError::BadDivision { .. })
        ));
        assert!(matches!(
            parse_poly("x^y", v),
            Err(ParseError::BadExponent { .. })
        ));
        assert!(matches!(
            parse_poly("w", v),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("x y", v),
            Err(ParseError::UnexpectedToken { .. })
        ));
        assert!(matches!(
            parse_poly("x +", v),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_poly("x $", v),
            Err(ParseError::UnexpectedChar { .. })
        ));
    }
}
