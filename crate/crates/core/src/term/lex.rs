//! Tokenizer shared by the circuit, sum-term and pattern languages.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    /// Raw digits (and an optional fraction/exponent), kept verbatim so bitstrings keep leading zeros.
    Number(String),
    Punct(char),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Lexer {
    tokens: Vec<Token>,
    pos: usize,
}

const PUNCT: &str = ";+()[],~@_?#{}-*/";

impl Lexer {
    pub fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let (mut line, mut column) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = (line, column);
            let mut advance = |n: usize, i: &mut usize| {
                for k in 0..n {
                    if chars[*i + k] == '\n' {
                        line += 1;
                        column = 1;
                    } else {
                        column += 1;
                    }
                }
                *i += n;
            };
            if c.is_whitespace() {
                advance(1, &mut i);
                continue;
            }
            if c == '%' {
                // comment to end of line
                let mut n = 0;
                while i + n < chars.len() && chars[i + n] != '\n' {
                    n += 1;
                }
                advance(n, &mut i);
                continue;
            }
            let tok = if c.is_ascii_alphabetic() {
                let mut n = 0;
                while i + n < chars.len() && (chars[i + n].is_ascii_alphanumeric()) {
                    n += 1;
                }
                let s: String = chars[i..i + n].iter().collect();
                advance(n, &mut i);
                Tok::Ident(s)
            } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let mut n = 0;
                while i + n < chars.len() && (chars[i + n].is_ascii_digit() || chars[i + n] == '.') {
                    n += 1;
                }
                // exponent, only when followed by digits
                if i + n < chars.len() && matches!(chars[i + n], 'e' | 'E') {
                    let mut m = n + 1;
                    if i + m < chars.len() && matches!(chars[i + m], '+' | '-') {
                        m += 1;
                    }
                    if i + m < chars.len() && chars[i + m].is_ascii_digit() {
                        while i + m < chars.len() && chars[i + m].is_ascii_digit() {
                            m += 1;
                        }
                        n = m;
                    }
                }
                let s: String = chars[i..i + n].iter().collect();
                advance(n, &mut i);
                Tok::Number(s)
            } else if PUNCT.contains(c) {
                advance(1, &mut i);
                Tok::Punct(c)
            } else {
                return Err(Error::Syntax {
                    line: start.0,
                    column: start.1,
                    message: format!("unexpected character `{c}`"),
                });
            };
            tokens.push(Token { tok, line: start.0, column: start.1 });
        }
        tokens.push(Token { tok: Tok::End, line, column });
        Ok(Lexer { tokens, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    pub fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        Error::Syntax { line: t.line, column: t.column, message: message.into() }
    }

    pub fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.is_punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(self.error(format!("unexpected {}", describe(t)))),
        }
    }

    pub fn expect_usize(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Number(s) => {
                let v = s.parse().map_err(|_| self.error(format!("`{s}` is not a natural number")))?;
                self.next();
                Ok(v)
            }
            t => Err(self.error(format!("expected a natural number, found {}", describe(&t)))),
        }
    }

    /// A real literal: optional sign, a number, `pi`, or a number followed by `pi`,
    /// optionally divided by a number (`pi/4`, `3pi/2`).
    pub fn expect_real(&mut self) -> Result<f64> {
        let negative = self.eat_punct('-');
        let mut value = match self.peek().clone() {
            Tok::Number(s) => {
                let v: f64 = s.parse().map_err(|_| self.error(format!("`{s}` is not a number")))?;
                self.next();
                if *self.peek() == Tok::Ident("pi".into()) {
                    self.next();
                    v * std::f64::consts::PI
                } else {
                    v
                }
            }
            Tok::Ident(s) if s == "pi" => {
                self.next();
                std::f64::consts::PI
            }
            t => return Err(self.error(format!("expected a real number, found {}", describe(&t)))),
        };
        if self.eat_punct('/') {
            match self.next() {
                Tok::Number(s) => {
                    let d: f64 = s.parse().map_err(|_| self.error("bad divisor"))?;
                    value /= d;
                }
                _ => return Err(self.error("expected a divisor")),
            }
        }
        Ok(if negative { -value } else { value })
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(s) => format!("`{s}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        let mut l = Lexer::new("c1[x] ; id2 + z(-1.5e-3)").unwrap();
        let mut out = Vec::new();
        loop {
            let t = l.next();
            if t == Tok::End {
                break;
            }
            out.push(t);
        }
        assert_eq!(out.len(), 12);
        assert_eq!(out[5], Tok::Ident("id2".into()));
        assert_eq!(out[10], Tok::Number("1.5e-3".into()));
    }

    #[test]
    fn positions() {
        let err = Lexer::new("x ;\n  $").err().unwrap();
        assert_eq!(err, Error::Syntax { line: 2, column: 3, message: "unexpected character `$`".into() });
    }

    #[test]
    fn reals() {
        let mut l = Lexer::new("-3pi/2").unwrap();
        assert!((l.expect_real().unwrap() + 1.5 * std::f64::consts::PI).abs() < 1e-15);
        let mut l = Lexer::new("0010").unwrap();
        assert_eq!(l.next(), Tok::Number("0010".into()));
    }
}
