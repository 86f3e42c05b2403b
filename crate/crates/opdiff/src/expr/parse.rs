//! Recursive-descent parser for the expression grammar.
//!
//! Precedence, loosest to tightest: `+ -`, `* /`, unary `-`, `^`.
//! Whitespace is insignificant. Errors carry the byte offset and the
//! set of tokens that would have been accepted.

use super::{Expr, Func};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => {
                let mut end = self.pos;
                while end < self.src.len() && (self.src[end].is_ascii_digit() || self.src[end] == b'.')
                {
                    end += 1;
                }
                // optional exponent part
                if end < self.src.len() && (self.src[end] == b'e' || self.src[end] == b'E') {
                    let mut e = end + 1;
                    if e < self.src.len() && (self.src[e] == b'+' || self.src[e] == b'-') {
                        e += 1;
                    }
                    if e < self.src.len() && self.src[e].is_ascii_digit() {
                        while e < self.src.len() && self.src[e].is_ascii_digit() {
                            e += 1;
                        }
                        end = e;
                    }
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                let value: f64 = text.parse().map_err(|_| Error::Syntax {
                    offset: start,
                    expected: "a numeric literal".to_string(),
                })?;
                self.pos = end;
                Tok::Num(value)
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            _ => {
                return Err(Error::Syntax {
                    offset: start,
                    expected: "one of: number, `x`, `pi`, function name, `(`, operator".to_string(),
                })
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (tok, offset) = lexer.next()?;
        Ok(Parser { lexer, tok, offset })
    }

    fn bump(&mut self) -> Result<()> {
        let (tok, offset) = self.lexer.next()?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn syntax(&self, expected: &str) -> Error {
        Error::Syntax {
            offset: self.offset,
            expected: expected.to_string(),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut node = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    node = Expr::Add(Box::new(node), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump()?;
                    node = Expr::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut node = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    node = Expr::Mul(Box::new(node), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump()?;
                    node = Expr::Div(Box::new(node), Box::new(self.unary()?));
                }
                _ => return Ok(node),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Minus {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    // power := primary ('^' nonneg-integer)*
    fn power(&mut self) -> Result<Expr> {
        let mut node = self.primary()?;
        while self.tok == Tok::Caret {
            self.bump()?;
            let k = match self.tok {
                Tok::Num(v) if v.fract() == 0.0 && (0.0..=u32::MAX as f64).contains(&v) => v as u32,
                _ => return Err(self.syntax("a constant non-negative integer exponent")),
            };
            self.bump()?;
            node = Expr::Pow(Box::new(node), k);
        }
        Ok(node)
    }

    // primary := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
    fn primary(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Const(v))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(self.syntax("`)`"));
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let at = self.offset;
                self.bump()?;
                match name.as_str() {
                    "x" => Ok(Expr::X),
                    "pi" => Ok(Expr::Pi),
                    "sin" | "cos" | "exp" | "ln" | "sqrt" => {
                        let func = match name.as_str() {
                            "sin" => Func::Sin,
                            "cos" => Func::Cos,
                            "exp" => Func::Exp,
                            "ln" => Func::Ln,
                            _ => Func::Sqrt,
                        };
                        if self.tok != Tok::LParen {
                            return Err(self.syntax("`(` after function name"));
                        }
                        self.bump()?;
                        let arg = self.expr()?;
                        if self.tok != Tok::RParen {
                            return Err(self.syntax("`)`"));
                        }
                        self.bump()?;
                        Ok(Expr::Fun(func, Box::new(arg)))
                    }
                    _ => Err(Error::UnknownIdentifier { name, offset: at }),
                }
            }
            _ => Err(self.syntax("one of: number, `x`, `pi`, function name, `(`, `-`")),
        }
    }
}

pub(super) fn parse(src: &str) -> Result<Expr> {
    if src.trim().is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            expected: "a non-empty expression".to_string(),
        });
    }
    let mut parser = Parser::new(src)?;
    let node = parser.expr()?;
    if parser.tok != Tok::Eof {
        return Err(parser.syntax("end of input or an operator"));
    }
    Ok(node)
}
