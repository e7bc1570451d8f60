//! Text syntax for string types, terms and sequents.
//!
//! `*` binds tighter than `/` and `\`, and postfix `^R` binds tightest. `/`
//! groups to the left, `\` to the right, and mixing the two without
//! parentheses is rejected. Antecedent terms of the nonassociative calculi
//! are written `(a, b)` and `(a)^d`.

use super::{Antecedent, Flavor, StringSequent, StringType, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Over,
    Under,
    Star,
    LParen,
    RParen,
    Comma,
    Arrow,
    Rev,
    Dia,
    Dia0,
    Box0,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            _ if c.is_whitespace() => i += 1,
            '/' => {
                out.push((Tok::Over, col));
                i += 1;
            }
            '\\' => {
                out.push((Tok::Under, col));
                i += 1;
            }
            '*' | '·' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            '→' => {
                out.push((Tok::Arrow, col));
                i += 1;
            }
            '^' => match chars.get(i + 1) {
                Some('R') => {
                    out.push((Tok::Rev, col));
                    i += 2;
                }
                Some('d') | Some('◇') => {
                    out.push((Tok::Dia, col));
                    i += 2;
                }
                _ => return Err(err(col, "expected `^R` or `^d`")),
            },
            _ if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let mut j = i;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                let call = chars.get(j) == Some(&'(');
                let tok = match word.as_str() {
                    "dia" if call => Tok::Dia0,
                    "box" if call => Tok::Box0,
                    _ => Tok::Name(word),
                };
                out.push((tok, col));
            }
            _ => return Err(err(col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = lex(text)?;
        let end = text.chars().count() + 1;
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(err(self.col(), format!("expected {what}")))
        }
    }

    fn done(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(err(self.col(), "unexpected trailing input")),
        }
    }

    fn ty(&mut self) -> Result<StringType> {
        let first = self.product()?;
        match self.peek() {
            Some(Tok::Over) => {
                let mut acc = first;
                while self.eat(&Tok::Over) {
                    acc = StringType::over(acc, self.product()?);
                }
                if self.peek() == Some(&Tok::Under) {
                    return Err(err(self.col(), "mixed `/` and `\\` need parentheses"));
                }
                Ok(acc)
            }
            Some(Tok::Under) => {
                let mut chain = vec![first];
                while self.eat(&Tok::Under) {
                    chain.push(self.product()?);
                }
                if self.peek() == Some(&Tok::Over) {
                    return Err(err(self.col(), "mixed `/` and `\\` need parentheses"));
                }
                let mut acc = chain.pop().expect("nonempty");
                while let Some(b) = chain.pop() {
                    acc = StringType::under(b, acc);
                }
                Ok(acc)
            }
            _ => Ok(first),
        }
    }

    fn product(&mut self) -> Result<StringType> {
        let mut acc = self.postfix()?;
        while self.eat(&Tok::Star) {
            acc = StringType::prod(acc, self.postfix()?);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<StringType> {
        let mut t = self.atom()?;
        while self.eat(&Tok::Rev) {
            t = StringType::rev(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<StringType> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(StringType::Atom(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(tok @ (Tok::Dia0 | Tok::Box0)) => {
                self.pos += 1;
                self.expect(&Tok::LParen, "`(`")?;
                let t = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(if tok == Tok::Dia0 {
                    StringType::dia(t)
                } else {
                    StringType::boxed(t)
                })
            }
            _ => Err(err(col, "expected a type")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.term() {
                if self.eat(&Tok::Comma) {
                    let right = self.term()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    return Ok(Term::pair(inner, right));
                }
                if self.eat(&Tok::RParen) {
                    if self.eat(&Tok::Dia) {
                        return Ok(Term::diamond(inner));
                    }
                    if !matches!(inner, Term::Leaf(_)) {
                        return Ok(inner);
                    }
                }
            }
            // a parenthesized type such as `(p/q)*r`
            self.pos = save;
        }
        Ok(Term::Leaf(self.ty()?))
    }

    fn sequence(&mut self) -> Result<Vec<StringType>> {
        let mut v = vec![self.ty()?];
        while self.eat(&Tok::Comma) {
            v.push(self.ty()?);
        }
        Ok(v)
    }

    fn top_term(&mut self) -> Result<Term> {
        let first = self.term()?;
        if !self.eat(&Tok::Comma) {
            return Ok(first);
        }
        let second = self.term()?;
        if self.peek() == Some(&Tok::Comma) {
            return Err(err(self.col(), "more than two top-level terms need brackets"));
        }
        Ok(Term::pair(first, second))
    }
}

pub fn parse_type(text: &str) -> Result<StringType> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.done()?;
    Ok(t)
}

/// Parses a bracketed antecedent; a top-level `a, b` is the pair `(a, b)`.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.top_term()?;
    p.done()?;
    Ok(t)
}

/// Parses `antecedent -> succedent` for the given calculus.
pub fn parse_sequent(flavor: Flavor, text: &str) -> Result<StringSequent> {
    let mut p = Parser::new(text)?;
    let antecedent = if flavor.is_nonassociative() {
        Antecedent::Term(p.top_term()?)
    } else {
        Antecedent::Sequence(p.sequence()?)
    };
    p.expect(&Tok::Arrow, "`->`")?;
    let succedent = p.ty()?;
    p.done()?;
    StringSequent::new(flavor, antecedent, succedent)
}
