//! Concrete syntax.
//!
//! ```text
//! formula := quant | disj
//! quant   := ("exists" | "forall") IDENT ("," IDENT)* ["in" "E"] "." formula
//! disj    := conj ("or" conj)*
//! conj    := unary ("and" unary)*
//! unary   := "not" unary | quant | primary
//! primary := "true" | "false" | "E" "(" term ")" | atom | "(" formula ")"
//! atom    := term REL term            REL in = < <= > >= !=
//! term    := ["-"] prod (("+" | "-") prod)*
//! prod    := factor ("*" factor)*     at most one non-constant factor
//! factor  := NUMBER | IDENT | "(" term ")" | "-" factor
//! ```
//!
//! `NUMBER` is an integer or `p/q`. `#` starts a comment. `<=`, `>`, `>=` and
//! `!=` are expanded into `<` and `=`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::form::{Atom, LinearForm};
use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigRational),
    LParen,
    RParen,
    Dot,
    Comma,
    Plus,
    Minus,
    Star,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const KEYWORDS: &[&str] = &["exists", "forall", "in", "and", "or", "not", "true", "false", "E"];

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| Error::Syntax { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let push = |tok: Tok, out: &mut Vec<Token>| out.push(Token { tok, line: tl, column: tc });
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            push(Tok::Ident(chars[start..i].iter().collect()), &mut out);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i = dstart;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[dstart..i].iter().collect::<String>().parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(err(tl, tc, "zero denominator".into()));
                }
                value /= BigRational::from_integer(den);
            }
            col += i - start;
            push(Tok::Num(value), &mut out);
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, n) = match (c, next) {
            ('<', Some('=')) => (Tok::Le, 2),
            ('>', Some('=')) => (Tok::Ge, 2),
            ('!', Some('=')) => (Tok::Ne, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('.', _) => (Tok::Dot, 1),
            (',', _) => (Tok::Comma, 1),
            ('+', _) => (Tok::Plus, 1),
            ('-', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('=', _) => (Tok::Eq, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            _ => return Err(err(tl, tc, format!("unexpected character `{c}`"))),
        };
        push(tok, &mut out);
        advance(n, &mut i, &mut col);
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("expected a variable name")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if self.is_keyword("exists") || self.is_keyword("forall") {
            return self.quantifier();
        }
        self.disjunction()
    }

    fn quantifier(&mut self) -> Result<Formula> {
        let universal = self.is_keyword("forall");
        self.bump();
        let mut vars = vec![self.ident()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            vars.push(self.ident()?);
        }
        let over_e = if self.is_keyword("in") {
            self.bump();
            if !self.is_keyword("E") {
                return Err(self.error("expected `E` after `in`"));
            }
            self.bump();
            true
        } else {
            false
        };
        self.expect(Tok::Dot, "`.` after quantified variables")?;
        let mut body = self.formula()?;
        for v in vars.into_iter().rev() {
            body = match (universal, over_e) {
                (false, false) => Formula::exists(v, body),
                (true, false) => Formula::forall(v, body),
                (false, true) => Formula::exists_e(v, body),
                (true, true) => Formula::forall_e(v, body),
            };
        }
        Ok(body)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.conjunction()?];
        while self.is_keyword("or") {
            self.bump();
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::Or(items) })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while self.is_keyword("and") {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::And(items) })
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.is_keyword("not") {
            self.bump();
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.is_keyword("exists") || self.is_keyword("forall") {
            return self.quantifier();
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.is_keyword("true") {
            self.bump();
            return Ok(Formula::True);
        }
        if self.is_keyword("false") {
            self.bump();
            return Ok(Formula::False);
        }
        if self.is_keyword("E") {
            self.bump();
            self.expect(Tok::LParen, "`(` after `E`")?;
            let t = self.term()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Formula::InE(t));
        }
        if *self.peek() == Tok::LParen {
            // Either a parenthesised term starting an atom, or a formula.
            let save = self.pos;
            if let Ok(atom) = self.atom() {
                return Ok(atom);
            }
            self.pos = save;
            self.bump();
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        let rel = self.peek().clone();
        match rel {
            Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge => {
                self.bump();
            }
            _ => return Err(self.error("expected a relation (= != < <= > >=)")),
        }
        let rhs = self.term()?;
        let lt = |a: &LinearForm, b: &LinearForm| Formula::Atom(Atom::lt(a.clone(), b.clone()));
        let eq = || Formula::Atom(Atom::eq(lhs.clone(), rhs.clone()));
        Ok(match rel {
            Tok::Eq => eq(),
            Tok::Lt => lt(&lhs, &rhs),
            Tok::Gt => lt(&rhs, &lhs),
            Tok::Le => Formula::Or(vec![lt(&lhs, &rhs), eq()]),
            Tok::Ge => Formula::Or(vec![lt(&rhs, &lhs), eq()]),
            Tok::Ne => Formula::Or(vec![lt(&lhs, &rhs), lt(&rhs, &lhs)]),
            _ => unreachable!(),
        })
    }

    fn term(&mut self) -> Result<LinearForm> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            -self.product()?
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<LinearForm> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = if acc.is_constant() {
                rhs.scale(acc.constant_term())
            } else if rhs.is_constant() {
                acc.scale(rhs.constant_term())
            } else {
                return Err(self.error("only multiplication by a rational constant is allowed"));
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LinearForm> {
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(LinearForm::constant(q))
            }
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(_) => Ok(LinearForm::term(BigRational::one(), self.ident()?)),
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Parses one formula; free variables are allowed.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected input after formula"));
    }
    Ok(f)
}

/// Parses a formula whose free variables must all be among `vars`.
pub fn parse_formula_in(text: &str, vars: &[String]) -> Result<Formula> {
    let f = parse_formula(text)?;
    if let Some(v) = f.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::UnboundVariable(v));
    }
    Ok(f)
}
