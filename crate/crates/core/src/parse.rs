//! Text syntax for binomials: `w^2 - u*v`, `z - x*y`, `x1^3 - 1`.
//!
//! ```text
//! ideal    := binomial (',' binomial)*
//! binomial := monomial '-' monomial
//! monomial := '1' | factor ('*' factor)*
//! factor   := ident ('^' integer)?
//! ```

use crate::binomial::{Binomial, BinomialIdeal, Exponent};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            ',' => {
                out.push((i, Token::Comma));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| Error::invalid(format!("integer too large at {start}")))?;
                out.push((start, Token::Int(v)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Token::Ident(chars[start..i].iter().collect())));
            }
            other => return Err(Error::invalid(format!("unexpected character {other:?} at {i}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

/// A monomial as (variable, exponent) pairs in order of appearance.
type Monomial = Vec<(String, i64)>;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::invalid(format!("expected {want:?} at {}", self.at())))
        }
    }

    fn monomial(&mut self) -> Result<Monomial> {
        if self.peek() == Some(&Token::Int(1)) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = vec![self.factor()?];
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<(String, i64)> {
        let name = match self.peek() {
            Some(Token::Ident(s)) => s.clone(),
            _ => return Err(Error::invalid(format!("expected a variable at {}", self.at()))),
        };
        self.pos += 1;
        let mut exp = 1;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(Token::Int(k)) => {
                    exp = *k;
                    self.pos += 1;
                }
                _ => return Err(Error::invalid(format!("expected an exponent at {}", self.at()))),
            }
        }
        Ok((name, exp))
    }

    fn binomial(&mut self) -> Result<(Monomial, Monomial)> {
        let a = self.monomial()?;
        self.expect(Token::Minus)?;
        let b = self.monomial()?;
        Ok((a, b))
    }
}

fn parse_all(text: &str) -> Result<Vec<(Monomial, Monomial)>> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let mut out = vec![p.binomial()?];
    while p.peek() == Some(&Token::Comma) {
        p.pos += 1;
        out.push(p.binomial()?);
    }
    if p.pos != p.tokens.len() {
        return Err(Error::invalid(format!("trailing input at {}", p.at())));
    }
    Ok(out)
}

fn exponent(m: &Monomial, names: &[String]) -> Exponent {
    let mut e = vec![0; names.len()];
    for (v, k) in m {
        let j = names.iter().position(|n| n == v).expect("name collected");
        e[j] += k;
    }
    e
}

/// Parses a comma separated list of binomials. Variables are ordered by
/// first appearance; those listed in `units` become the unit variables `y`
/// and may only occur on the right of a minus sign.
pub fn parse_ideal(text: &str, units: &[&str]) -> Result<BinomialIdeal> {
    let parsed = parse_all(text)?;
    let mut x_names: Vec<String> = Vec::new();
    for (a, b) in &parsed {
        for (v, _) in a.iter().chain(b) {
            if !units.contains(&v.as_str()) && !x_names.contains(v) {
                x_names.push(v.clone());
            }
        }
    }
    let y_names: Vec<String> = units.iter().map(|s| s.to_string()).collect();
    let mut generators = Vec::new();
    for (a, b) in &parsed {
        if a.iter().any(|(v, _)| units.contains(&v.as_str())) {
            return Err(Error::invalid(format!("unit variable on the left of a minus sign in {a:?}")));
        }
        let alpha = exponent(a, &x_names);
        let xb: Monomial = b.iter().filter(|(v, _)| !units.contains(&v.as_str())).cloned().collect();
        let yb: Monomial = b.iter().filter(|(v, _)| units.contains(&v.as_str())).cloned().collect();
        generators.push(Binomial::new(alpha, exponent(&xb, &x_names), exponent(&yb, &y_names)));
    }
    let mut ideal = BinomialIdeal::new(x_names.len(), y_names.len(), generators)?;
    ideal.x_names = Some(x_names);
    ideal.y_names = Some(y_names);
    Ok(ideal)
}

/// Parses a single binomial with every variable vanishing at the point.
pub fn parse_binomial(text: &str) -> Result<(Binomial, Vec<String>)> {
    let ideal = parse_ideal(text, &[])?;
    if ideal.generators.len() != 1 {
        return Err(Error::invalid("expected exactly one binomial"));
    }
    Ok((ideal.generators[0].clone(), ideal.x_names.unwrap_or_default()))
}
