//! Expression syntax for elements: `t1^2*t2 + 3*t3`, `-3/2 t1 t2`,
//! `([[]] - []^2)*[]`. Juxtaposition multiplies; bracket strings name rooted
//! trees, so a forest can be written as space-separated trees.

use num_traits::One;

use crate::algebra::Monomial;
use crate::error::{HopfError, Result};
use crate::hopf::HopfSchema;
use crate::ring::{parse_rational, Rational};
use crate::QElement;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' => out.push((start, Token::Star)),
            '/' => out.push((start, Token::Slash)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::Open)),
            ')' => out.push((start, Token::Close)),
            '[' => {
                let mut depth = 0i32;
                while i < chars.len() {
                    match chars[i] {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        c if c.is_whitespace() => {}
                        c => {
                            return Err(HopfError::Parse(format!(
                                "unexpected `{c}` inside a tree at offset {i}"
                            )))
                        }
                    }
                    i += 1;
                    if depth == 0 {
                        break;
                    }
                }
                if depth != 0 {
                    return Err(HopfError::Parse(format!(
                        "unbalanced brackets in tree starting at offset {start}"
                    )));
                }
                let name: String = chars[start..i].iter().filter(|c| !c.is_whitespace()).collect();
                out.push((start, Token::Name(name)));
                continue;
            }
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Number(chars[start..i].iter().collect())));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                out.push((start, Token::Name(chars[start..i].iter().collect())));
                continue;
            }
            c => return Err(HopfError::Parse(format!("unexpected `{c}` at offset {i}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    schema: &'a HopfSchema,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> String {
        match self.tokens.get(self.pos) {
            Some((o, _)) => format!("offset {o}"),
            None => "end of input".into(),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Number(_) | Token::Name(_) | Token::Open) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QElement> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<QElement> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.next() {
            Some(Token::Number(n)) => {
                let e: u32 = n
                    .parse()
                    .map_err(|_| HopfError::Parse(format!("exponent `{n}` too large at {at}")))?;
                Ok(base.pow(e))
            }
            _ => Err(HopfError::Parse(format!(
                "expected a non-negative integer exponent at {at}"
            ))),
        }
    }

    fn atom(&mut self) -> Result<QElement> {
        let at = self.offset();
        match self.next() {
            Some(Token::Number(n)) => {
                let mut text = n;
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(d)) => text = format!("{text}/{d}"),
                        _ => return Err(HopfError::Parse(format!("expected a denominator after `/` at {at}"))),
                    }
                }
                let q: Rational = parse_rational(&text)
                    .ok_or_else(|| HopfError::Parse(format!("invalid rational `{text}` at {at}")))?;
                Ok(QElement::constant(q))
            }
            Some(Token::Name(name)) => Ok(QElement::generator(self.schema.resolve(&name)?)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(HopfError::Parse(format!("missing `)` for the parenthesis at {at}"))),
                }
            }
            Some(t) => Err(HopfError::Parse(format!("unexpected {t:?} at {at}"))),
            None => Err(HopfError::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses an element of H with rational coefficients. Generator names are
/// resolved (and trees canonicalized) by `schema`.
pub fn parse_element(schema: &HopfSchema, text: &str) -> Result<QElement> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(HopfError::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, schema };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(HopfError::Parse(format!("trailing input at {}", p.offset())));
    }
    Ok(e)
}

/// Parses a single monomial with coefficient 1, as used for table keys.
pub fn parse_monomial(schema: &HopfSchema, text: &str) -> Result<Monomial> {
    let e = parse_element(schema, text)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(HopfError::Parse(format!("`{text}` is not a single monomial"))),
    }
}
