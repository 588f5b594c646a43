//! Tokenizer and polynomial expression parser.
//!
//! Polynomials use `+ - * ^`, parentheses, integers and `a/b` rational
//! literals (no spaces inside the literal). Unary minus binds tighter than
//! `+` but looser than `*` and `^`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Rat(Rational),
    Sym(&'static str),
    Newline,
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: [&str; 18] = [
    "|->", "->", "--", "=", "[", "]", "(", ")", ",", ";", "/", "{", "}", ":", "+", "-", "*", "^",
];

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let push = |out: &mut Vec<Token>, tok: Tok| out.push(Token { tok, line: start.0, col: start.1 });
        if c == '\n' {
            push(&mut out, Tok::Newline);
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[s..i].iter().collect::<String>().parse().unwrap();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let d0 = i + 1;
                i = d0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[d0..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(err(start.0, start.1, "ill-formed rational: zero denominator"));
                }
                push(&mut out, Tok::Rat(Rational::new(num, den)));
            } else {
                push(&mut out, Tok::Int(num));
            }
            col += i - s;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            push(&mut out, Tok::Ident(chars[s..i].iter().collect()));
            col += i - s;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                push(&mut out, Tok::Sym(s));
                i += s.len();
                col += s.len();
            }
            None => return Err(err(line, col, format!("unexpected character `{}`", c))),
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A position in a token list. Newlines are skipped unless
/// `skip_newlines` is turned off.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    pub skip_newlines: bool,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0, skip_newlines: true }
    }

    fn settle(&mut self) {
        if self.skip_newlines {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    pub fn peek(&mut self) -> &'a Token {
        self.settle();
        &self.toks[self.pos]
    }

    pub fn next(&mut self) -> &'a Token {
        self.settle();
        let t = &self.toks[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&mut self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", s)))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.error(format!("expected `{}`", kw))),
        }
    }

    pub fn error(&mut self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Int(n) => format!("`{}`", n),
            Tok::Rat(r) => format!("`{}`", r),
            Tok::Sym(s) => format!("`{}`", s),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
        };
        err(t.line, t.col, format!("{}, found {}", msg.into(), found))
    }
}

/// Parses a signed rational literal: `3`, `-2`, `1/2`, `-7/3`.
pub fn parse_rational(cur: &mut Cursor) -> Result<Rational> {
    let neg = cur.eat_sym("-");
    let v = match &cur.peek().tok {
        Tok::Int(n) => Rational::from_integer(n.clone()),
        Tok::Rat(r) => r.clone(),
        _ => return Err(cur.error("expected a rational number")),
    };
    cur.next();
    Ok(if neg { -v } else { v })
}

pub fn parse_poly(cur: &mut Cursor, vars: &[String]) -> Result<Poly> {
    let n = vars.len();
    let mut acc = parse_signed(cur, vars)?;
    loop {
        if cur.eat_sym("+") {
            acc = acc.add(&parse_signed(cur, vars)?);
        } else if cur.eat_sym("-") {
            acc = acc.sub(&parse_signed(cur, vars)?);
        } else {
            debug_assert_eq!(acc.nvars(), n);
            return Ok(acc);
        }
    }
}

fn parse_signed(cur: &mut Cursor, vars: &[String]) -> Result<Poly> {
    if cur.eat_sym("-") {
        return Ok(parse_signed(cur, vars)?.neg());
    }
    let mut acc = parse_power(cur, vars)?;
    while cur.eat_sym("*") {
        let rhs = if cur.eat_sym("-") { parse_power(cur, vars)?.neg() } else { parse_power(cur, vars)? };
        acc = acc.mul(&rhs);
    }
    Ok(acc)
}

fn parse_power(cur: &mut Cursor, vars: &[String]) -> Result<Poly> {
    let base = parse_atom(cur, vars)?;
    if cur.eat_sym("^") {
        let e = match &cur.peek().tok {
            Tok::Int(k) => k.to_u32().ok_or_else(|| cur.error("exponent too large"))?,
            _ => return Err(cur.error("expected a non-negative integer exponent")),
        };
        cur.next();
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor, vars: &[String]) -> Result<Poly> {
    let n = vars.len();
    let t = cur.peek();
    match &t.tok {
        Tok::Int(k) => {
            cur.next();
            Ok(Poly::constant(n, Rational::from_integer(k.clone())))
        }
        Tok::Rat(r) => {
            cur.next();
            Ok(Poly::constant(n, r.clone()))
        }
        Tok::Ident(name) => match vars.iter().position(|v| v == name) {
            Some(i) => {
                cur.next();
                Ok(Poly::var(n, i))
            }
            None => Err(err(t.line, t.col, format!("unknown variable `{}`", name))),
        },
        Tok::Sym("(") => {
            cur.next();
            let p = parse_poly(cur, vars)?;
            cur.expect_sym(")")?;
            Ok(p)
        }
        _ => Err(cur.error("expected a polynomial")),
    }
}

/// Parses a whole string as one polynomial over `vars`.
pub fn poly_from_str(text: &str, vars: &[String]) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let p = parse_poly(&mut cur, vars)?;
    if cur.peek().tok != Tok::Eof {
        return Err(cur.error("trailing input"));
    }
    Ok(p)
}
