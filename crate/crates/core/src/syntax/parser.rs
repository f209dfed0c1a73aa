use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::term::Term;

use super::Definitions;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Lt,
    Gt,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Bang,
    Dot,
    Star,
    Plus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Splits the input into tokens tagged with their 1-based column.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let rest = |k: usize| chars.get(i + k).copied();
        let (tok, width) = match c {
            '<' if rest(1) == Some('-') && rest(2) == Some('>') => (Tok::DoubleArrow, 3),
            '-' if rest(1) == Some('>') => (Tok::Arrow, 2),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Pipe, 1),
            '<' => (Tok::Lt, 1),
            '>' => (Tok::Gt, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '!' => (Tok::Bang, 1),
            '.' => (Tok::Dot, 1),
            '*' => (Tok::Star, 1),
            '+' => (Tok::Plus, 1),
            other => return Err(Error::parse(col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        i += width;
    }
    out.push((Tok::Eof, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    env: &'a Definitions,
}

impl<'a> Parser<'a> {
    fn new(text: &str, env: &'a Definitions) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            env,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::parse(
            self.column(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::DoubleArrow) {
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Lt => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::Gt)?;
                Ok(Formula::diamond(t, self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                self.box_operator()
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.unexpected("formula")),
        }
    }

    /// After `[`: a term, `!name`, or `model.event`.
    fn box_operator(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Bang) {
            let map = self.ident()?;
            if self.env.reading_map(&map).is_none() {
                return Err(Error::UnresolvedReference(map));
            }
            self.expect(Tok::RBracket)?;
            return Ok(Formula::bang(map, self.unary()?));
        }
        if matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Dot {
            let model = self.ident()?;
            self.bump();
            let event = self.ident()?;
            let em = self
                .env
                .event_model(&model)
                .ok_or_else(|| Error::UnresolvedReference(model.clone()))?;
            if em.event_index(&event).is_none() {
                return Err(Error::UnknownEvent { model, event });
            }
            self.expect(Tok::RBracket)?;
            return Ok(Formula::event(model, event, self.unary()?));
        }
        let t = self.term()?;
        self.expect(Tok::RBracket)?;
        Ok(Formula::boxed(t, self.unary()?))
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.term_product()?;
        while self.eat(&Tok::Plus) {
            lhs = lhs.join(self.term_product()?);
        }
        Ok(lhs)
    }

    fn term_product(&mut self) -> Result<Term> {
        let mut lhs = self.term_atom()?;
        while self.eat(&Tok::Star) {
            lhs = lhs.meet(self.term_atom()?);
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::atom(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("term")),
        }
    }
}

/// Parses a formula, resolving `[!name]` and `[model.event]` against `env`.
pub fn parse_formula(text: &str, env: &Definitions) -> Result<Formula> {
    let mut p = Parser::new(text, env)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let env = Definitions::default();
    let mut p = Parser::new(text, &env)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
