//! Tokenizer and recursive-descent parser for problem files.
//!
//! The grammar is line-agnostic and block-oriented:
//!
//! ```text
//! ring   { field GF(32003) ; vars x, y ; relations x^2, x*y }
//! module { rank 2 ; columns [x, 0], [0, x] }
//! options { nu_max 5 ; t 0, 1, 2 }
//! expect { cm true ; e0 2 ; e1 0 }
//! ```
//!
//! Polynomials use integers, declared variable names, `+ - * ^` and
//! parentheses; implicit multiplication is a syntax error. `#` starts a
//! comment that runs to the end of the line.

use crate::problem::{Expectations, IntPoly, ProblemOptions, ProblemSpec};
use brim_core::poly::FieldKind;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown variable `{name}`")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: relation is not homogeneous")]
    NonHomogeneousRelation { line: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Semi,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    bump(&mut chars);
                    if c == '\n' {
                        break;
                    }
                }
            }
            '{' | '}' | '[' | ']' | '(' | ')' | ';' | ',' | '+' | '-' | '*' | '^' => {
                bump(&mut chars);
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => Tok::Caret,
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits parse as BigInt")),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tline, col: tcol });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax { line: t.line, col: t.col, message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            self.error(format!("expected {tok}, found {}", self.peek().tok))
        }
    }

    fn eat_ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.next();
                Ok((s, t.line, t.col))
            }
            other => self.error(format!("expected an identifier, found {other}")),
        }
    }

    fn eat_uint(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                n.to_u64()
                    .ok_or(())
                    .or_else(|_| self.error(format!("{what} out of range")))
            }
            other => self.error(format!("expected {what}, found {other}")),
        }
    }

    fn eat_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(if neg { -n } else { n })
            }
            other => self.error(format!("expected an integer, found {other}")),
        }
    }

    fn parse_field(&mut self) -> Result<FieldKind, ParseError> {
        let (name, line, col) = self.eat_ident()?;
        match name.as_str() {
            "QQ" => Ok(FieldKind::Rationals),
            "GF" => {
                self.expect(Tok::LParen)?;
                let p = self.eat_uint("a prime modulus")?;
                self.expect(Tok::RParen)?;
                Ok(FieldKind::PrimeField(p))
            }
            _ => Err(ParseError::Syntax {
                line,
                col,
                message: format!("expected QQ or GF(p), found `{name}`"),
            }),
        }
    }

    // Expression grammar: expr := term (('+'|'-') term)*
    //                     term := factor ('*' factor)*
    //                     factor := base ('^' uint)?
    //                     base := int | var | '(' expr ')' | '-' base
    fn parse_poly(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<IntPoly, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<IntPoly, ParseError> {
        let base = self.parse_base()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let e = self.eat_uint("a non-negative exponent")?;
            let e = u32::try_from(e)
                .or_else(|_| self.error::<u32>("exponent out of range"))?;
            return Ok(base.pow(e, self.vars.len()));
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<IntPoly, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(IntPoly::constant(self.vars.len(), n))
            }
            Tok::Ident(name) => {
                let t = self.next();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(IntPoly::var(self.vars.len(), i)),
                    None => Err(ParseError::UnknownVariable {
                        line: t.line,
                        col: t.col,
                        name,
                    }),
                }
            }
            Tok::LParen => {
                self.next();
                let p = self.parse_poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Minus => {
                self.next();
                Ok(self.parse_base()?.neg())
            }
            other => self.error(format!("expected a polynomial, found {other}")),
        }
    }

    fn parse_ring_block(&mut self) -> Result<(Option<FieldKind>, Vec<IntPoly>), ParseError> {
        let mut field = None;
        let mut relations = Vec::new();
        self.expect(Tok::LBrace)?;
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            let (stmt, line, col) = self.eat_ident()?;
            match stmt.as_str() {
                "field" => field = Some(self.parse_field()?),
                "vars" => {
                    loop {
                        let (v, vline, vcol) = self.eat_ident()?;
                        if self.vars.contains(&v) {
                            return Err(ParseError::Syntax {
                                line: vline,
                                col: vcol,
                                message: format!("duplicate variable `{v}`"),
                            });
                        }
                        if self.vars.len() >= 16 {
                            return Err(ParseError::Syntax {
                                line: vline,
                                col: vcol,
                                message: "too many variables (limit 16)".into(),
                            });
                        }
                        self.vars.push(v);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                "relations" => {
                    if self.vars.is_empty() {
                        return Err(ParseError::Syntax {
                            line,
                            col,
                            message: "relations must come after vars".into(),
                        });
                    }
                    loop {
                        let at = (self.peek().line, self.peek().col);
                        let p = self.parse_poly()?;
                        if p.homogeneous_degree().is_err() {
                            return Err(ParseError::NonHomogeneousRelation {
                                line: at.0,
                                col: at.1,
                            });
                        }
                        relations.push(p);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unknown ring statement `{other}`"),
                    })
                }
            }
            if self.peek().tok == Tok::Semi {
                self.next();
            }
        }
        if self.vars.is_empty() {
            return self.error("ring block must declare vars");
        }
        Ok((field, relations))
    }

    fn parse_module_block(&mut self) -> Result<(usize, Vec<Vec<IntPoly>>), ParseError> {
        let mut rank: Option<usize> = None;
        let mut columns = Vec::new();
        self.expect(Tok::LBrace)?;
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            let (stmt, line, col) = self.eat_ident()?;
            match stmt.as_str() {
                "rank" => {
                    let r = self.eat_uint("the rank")? as usize;
                    if r == 0 {
                        return Err(ParseError::Syntax {
                            line,
                            col,
                            message: "rank must be positive".into(),
                        });
                    }
                    rank = Some(r);
                }
                "columns" => {
                    let r = match rank {
                        Some(r) => r,
                        None => {
                            return Err(ParseError::Syntax {
                                line,
                                col,
                                message: "rank must come before columns".into(),
                            })
                        }
                    };
                    loop {
                        let open = self.expect(Tok::LBracket)?;
                        let mut col_entries = Vec::new();
                        loop {
                            col_entries.push(self.parse_poly()?);
                            if self.peek().tok == Tok::Comma {
                                self.next();
                            } else {
                                break;
                            }
                        }
                        self.expect(Tok::RBracket)?;
                        if col_entries.len() != r {
                            return Err(ParseError::Syntax {
                                line: open.line,
                                col: open.col,
                                message: format!(
                                    "column has {} entries, rank is {r}",
                                    col_entries.len()
                                ),
                            });
                        }
                        columns.push(col_entries);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unknown module statement `{other}`"),
                    })
                }
            }
            if self.peek().tok == Tok::Semi {
                self.next();
            }
        }
        match rank {
            Some(r) => Ok((r, columns)),
            None => self.error("module block must declare rank"),
        }
    }

    fn parse_options_block(&mut self) -> Result<ProblemOptions, ParseError> {
        let mut options = ProblemOptions::default();
        self.expect(Tok::LBrace)?;
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            let (stmt, line, col) = self.eat_ident()?;
            match stmt.as_str() {
                "nu_max" => options.nu_max = Some(self.eat_uint("nu_max")? as u32),
                "t" => {
                    let mut ts = Vec::new();
                    loop {
                        ts.push(self.eat_uint("a t value")? as u32);
                        if self.peek().tok == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                    options.t = Some(ts);
                }
                "field" => options.field = Some(self.parse_field()?),
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unknown option `{other}`"),
                    })
                }
            }
            if self.peek().tok == Tok::Semi {
                self.next();
            }
        }
        Ok(options)
    }

    fn parse_expect_block(&mut self) -> Result<Expectations, ParseError> {
        let mut e = Expectations::default();
        self.expect(Tok::LBrace)?;
        loop {
            if self.peek().tok == Tok::RBrace {
                self.next();
                break;
            }
            let (stmt, line, col) = self.eat_ident()?;
            match stmt.as_str() {
                "cm" => {
                    let (v, bl, bc) = self.eat_ident()?;
                    e.cm = Some(match v.as_str() {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(ParseError::Syntax {
                                line: bl,
                                col: bc,
                                message: format!("expected true or false, found `{other}`"),
                            })
                        }
                    });
                }
                "e0" => e.e0 = Some(self.eat_int()?),
                "e1" => e.e1 = Some(self.eat_int()?),
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unknown expectation `{other}`"),
                    })
                }
            }
            if self.peek().tok == Tok::Semi {
                self.next();
            }
        }
        Ok(e)
    }
}

/// Parses a whole problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, vars: Vec::new() };

    let (kw, line, col) = p.eat_ident()?;
    if kw != "ring" {
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("expected `ring`, found `{kw}`"),
        });
    }
    let (field, relations) = p.parse_ring_block()?;

    let (kw, line, col) = p.eat_ident()?;
    if kw != "module" {
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("expected `module`, found `{kw}`"),
        });
    }
    let (rank, columns) = p.parse_module_block()?;

    let mut options = ProblemOptions::default();
    let mut expect = None;
    while p.peek().tok != Tok::Eof {
        let (kw, line, col) = p.eat_ident()?;
        match kw.as_str() {
            "options" => options = p.parse_options_block()?,
            "expect" => expect = Some(p.parse_expect_block()?),
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    message: format!("unexpected block `{other}`"),
                })
            }
        }
    }

    Ok(ProblemSpec {
        field,
        vars: p.vars,
        relations,
        rank,
        columns,
        options,
        expect,
    })
}
