//! Polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | integer '/' integer | 'z' index | '(' expr ')'
//! ```
//!
//! A rational `a/b` is a single token, so `1/2*z1` is `(1/2)*z1`. There is
//! no implicit multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::polyring::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, found: String },
    UnknownVariable(String),
    ExponentOverflow(String),
    ZeroDenominator,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {}", expected, found)
            }
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
            ParseErrorKind::ExponentOverflow(e) => write!(f, "exponent `{}` too large", e),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Input(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational, String),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(_, s) => write!(f, "number `{}`", s),
            Tok::Var(s) => write!(f, "`{}`", s),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (start_line, start_col) = (line, col);
        let err = |kind| ParseError {
            line: start_line,
            column: start_col,
            kind,
        };
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line,
                column: col,
            });
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if ch.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = BigRational::from_integer(num.parse::<BigInt>().unwrap());
            let mut text = num;
            if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    let found = chars.get(j).map_or("end of input".to_string(), |c| format!("`{}`", c));
                    return Err(ParseError {
                        line,
                        column: col + (j - start),
                        kind: ParseErrorKind::Syntax {
                            expected: "denominator digits".into(),
                            found,
                        },
                    });
                }
                let den: String = chars[dstart..j].iter().collect();
                let den_v = den.parse::<BigInt>().unwrap();
                if den_v.is_zero() {
                    return Err(err(ParseErrorKind::ZeroDenominator));
                }
                value = BigRational::new(value.to_integer(), den_v);
                text = format!("{}/{}", text, den);
                i = j;
            }
            out.push(Spanned {
                tok: Tok::Num(value, text),
                line,
                column: col,
            });
            col += i - start;
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Var(name),
                line,
                column: col,
            });
            col += i - start;
            continue;
        }
        return Err(err(ParseErrorKind::Syntax {
            expected: "a number, variable, operator or parenthesis".into(),
            found: format!("`{}`", ch),
        }));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax {
            expected: what.into(),
            found: self.peek().to_string(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let Tok::Num(v, text) = self.peek().clone() else {
            return Err(self.expected("a non-negative integer exponent"));
        };
        if !v.is_integer() {
            return Err(self.expected("a non-negative integer exponent"));
        }
        let overflow = || self.error_here(ParseErrorKind::ExponentOverflow(text.clone()));
        let e: u32 = v.to_integer().try_into().map_err(|_| overflow())?;
        if base.total_degree().checked_mul(e).is_none() {
            return Err(overflow());
        }
        self.next();
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Num(v, _) => {
                self.next();
                Ok(Polynomial::constant(self.nvars, v))
            }
            Tok::Var(name) => {
                let idx = name
                    .strip_prefix('z')
                    .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) && !d.starts_with('0'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && k <= self.nvars);
                let Some(k) = idx else {
                    return Err(self.error_here(ParseErrorKind::UnknownVariable(name)));
                };
                self.next();
                Ok(Polynomial::var(self.nvars, k - 1))
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.expected("`)`"));
                }
                self.next();
                Ok(inner)
            }
            _ => Err(self.expected("a number, variable or `(`")),
        }
    }
}

/// Parses `text` as a polynomial in `z1..z{nvars}`.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(poly)
}

/// Parses a whole matrix of expressions; errors name the offending entry.
pub fn parse_matrix(rows: &[Vec<String>], nvars: usize) -> crate::error::Result<Vec<Vec<Polynomial>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_polynomial(s, nvars).map_err(|e| {
                        Error::Input(format!("entry ({}, {}): {}", i + 1, j + 1, e))
                    })
                })
                .collect()
        })
        .collect()
}
