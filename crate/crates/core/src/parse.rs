//! Recursive-descent parser for the polynomial and rational-function input
//! language, with position-annotated errors.
//!
//! Grammar:
//!
//! ```text
//! expr     := '-'? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := base ('^' uint)?
//! base     := 'X' uint | 't' | 'T' | constant | '(' expr ')'
//! constant := integer | integer '/' integer (rationals) | '[' ints ']' (extensions)
//! ```
//!
//! `T` is only legal when the declared Kummer index e exceeds 1; `t` at
//! e > 1 denotes T^e.  A rational function is `expr` or `expr / expr` with
//! the fraction bar at depth zero.

use num_bigint::BigInt;

use crate::constants::{Constant, Field, FieldKind};
use crate::error::{Error, Result};
use crate::kpoly::KPoly;
use crate::mpoly::MultiPoly;
use crate::ratfunc::RatFunc;

/// Ambient data a polynomial is parsed against.
#[derive(Clone, Debug)]
pub struct PolyContext {
    pub field: Field,
    pub index: u32,
    pub nvars: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Var(usize),
    LowerT,
    UpperT,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(digits),
                    line: l,
                    col: co,
                });
                continue;
            }
            'X' => {
                chars.next();
                col += 1;
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(Error::Parse {
                        line: l,
                        col: co,
                        msg: "expected a variable number after 'X'".into(),
                    });
                }
                let idx: usize = digits.parse().map_err(|_| Error::Parse {
                    line: l,
                    col: co,
                    msg: "variable number out of range".into(),
                })?;
                out.push(Spanned {
                    tok: Tok::Var(idx),
                    line: l,
                    col: co,
                });
                continue;
            }
            't' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::LowerT,
                    line: l,
                    col: co,
                });
                continue;
            }
            'T' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::UpperT,
                    line: l,
                    col: co,
                });
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(Error::Parse {
                    line: l,
                    col: co,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        };
        chars.next();
        col += 1;
        out.push(Spanned { tok, line: l, col: co });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'a PolyContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> Error {
        match self.peek() {
            Some(s) => Error::Parse {
                line: s.line,
                col: s.col,
                msg: msg.into(),
            },
            None => {
                let (line, col) = self
                    .toks
                    .last()
                    .map(|s| (s.line, s.col + 1))
                    .unwrap_or((1, 1));
                Error::Parse {
                    line,
                    col,
                    msg: format!("{msg} (input ended)"),
                }
            }
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc;
        if matches!(self.peek().map(|s| &s.tok), Some(Tok::Minus)) {
            self.next();
            acc = self.term()?.neg();
        } else {
            acc = self.term()?;
        }
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                // Juxtaposition: a factor can follow directly.
                Some(Tok::Int(_))
                | Some(Tok::Var(_))
                | Some(Tok::LowerT)
                | Some(Tok::UpperT)
                | Some(Tok::LParen)
                | Some(Tok::LBracket) => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if matches!(self.peek().map(|s| &s.tok), Some(Tok::Caret)) {
            self.next();
            let Some(Spanned {
                tok: Tok::Int(d), ..
            }) = self.next()
            else {
                return Err(self.err_here("expected an exponent after '^'"));
            };
            let e: u32 = d.parse().map_err(|_| self.err_here("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let Some(s) = self.peek().cloned() else {
            return Err(self.err_here("expected a term"));
        };
        match s.tok {
            Tok::Int(ref digits) => {
                self.next();
                let numer: BigInt = digits.parse().expect("digits");
                // Rational constant a/b when the field is Q.
                if self.ctx.field.kind() == FieldKind::Rationals
                    && matches!(self.peek().map(|x| &x.tok), Some(Tok::Slash))
                {
                    let save = self.pos;
                    self.next();
                    if let Some(Spanned {
                        tok: Tok::Int(den), ..
                    }) = self.peek().cloned()
                    {
                        self.next();
                        let denom: BigInt = den.parse().expect("digits");
                        if denom == BigInt::from(0) {
                            return Err(Error::CoefficientNotInField {
                                line: s.line,
                                col: s.col,
                                msg: "zero denominator".into(),
                            });
                        }
                        let c = self.ctx.field.from_ratio(&numer, &denom).expect("checked");
                        return Ok(self.constant_poly(c));
                    }
                    self.pos = save;
                }
                let c = self
                    .ctx
                    .field
                    .from_ratio(&numer, &BigInt::from(1))
                    .map_err(|_| Error::CoefficientNotInField {
                        line: s.line,
                        col: s.col,
                        msg: format!("{digits} is not a field element"),
                    })?;
                Ok(self.constant_poly(c))
            }
            Tok::LBracket => {
                self.next();
                let mut coords: Vec<u64> = Vec::new();
                loop {
                    match self.next() {
                        Some(Spanned {
                            tok: Tok::Int(d), ..
                        }) => {
                            coords.push(d.parse().map_err(|_| Error::CoefficientNotInField {
                                line: s.line,
                                col: s.col,
                                msg: "coordinate out of range".into(),
                            })?);
                        }
                        _ => {
                            return Err(Error::Parse {
                                line: s.line,
                                col: s.col,
                                msg: "expected a coordinate".into(),
                            })
                        }
                    }
                    match self.next() {
                        Some(Spanned {
                            tok: Tok::Comma, ..
                        }) => continue,
                        Some(Spanned {
                            tok: Tok::RBracket,
                            ..
                        }) => break,
                        _ => {
                            return Err(Error::Parse {
                                line: s.line,
                                col: s.col,
                                msg: "expected ',' or ']' in a coordinate tuple".into(),
                            })
                        }
                    }
                }
                let c = self
                    .ctx
                    .field
                    .ext_element(&coords)
                    .map_err(|e| Error::CoefficientNotInField {
                        line: s.line,
                        col: s.col,
                        msg: e.to_string(),
                    })?;
                Ok(self.constant_poly(c))
            }
            Tok::Var(v) => {
                self.next();
                if v == 0 || v > self.ctx.nvars {
                    return Err(Error::UnknownVariable {
                        var: v,
                        line: s.line,
                        col: s.col,
                        nvars: self.ctx.nvars,
                    });
                }
                Ok(MultiPoly::var(
                    &self.ctx.field,
                    self.ctx.index,
                    self.ctx.nvars,
                    v,
                ))
            }
            Tok::LowerT => {
                self.next();
                // t denotes T^e at index e.
                let c = KPoly::gen(&self.ctx.field).pow(self.ctx.index);
                Ok(MultiPoly::from_kpoly(c, self.ctx.index, self.ctx.nvars))
            }
            Tok::UpperT => {
                self.next();
                if self.ctx.index <= 1 {
                    return Err(Error::Parse {
                        line: s.line,
                        col: s.col,
                        msg: "'T' requires a declared Kummer index e > 1".into(),
                    });
                }
                Ok(MultiPoly::from_kpoly(
                    KPoly::gen(&self.ctx.field),
                    self.ctx.index,
                    self.ctx.nvars,
                ))
            }
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                match self.next() {
                    Some(Spanned {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    _ => Err(Error::Parse {
                        line: s.line,
                        col: s.col,
                        msg: "unclosed '('".into(),
                    }),
                }
            }
            _ => Err(self.err_here("expected a term")),
        }
    }

    fn constant_poly(&self, c: Constant) -> MultiPoly {
        MultiPoly::from_kpoly(KPoly::constant(c), self.ctx.index, self.ctx.nvars)
    }
}

/// Parse a polynomial in X_1..X_n over k[T]; total on the grammar and
/// rejects everything else with a position.
pub fn parse_poly(text: &str, ctx: &PolyContext) -> Result<MultiPoly> {
    crate::ratfunc::check_tame(&ctx.field, ctx.index)?;
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
    };
    let poly = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(Error::Parse {
            line: s.line,
            col: s.col,
            msg: format!("unexpected trailing {:?}", s.tok),
        });
    }
    Ok(poly)
}

/// Parse an element of k(T): a polynomial expression, or two of them joined
/// by a single depth-zero '/'.
pub fn parse_ratfunc(text: &str, field: &Field, index: u32) -> Result<RatFunc> {
    let ctx = PolyContext {
        field: field.clone(),
        index,
        nvars: 0,
    };
    let (num_txt, den_txt) = split_fraction_bar(text, field)?;
    let num = poly_to_kpoly(parse_poly(num_txt, &ctx)?);
    match den_txt {
        None => RatFunc::from_poly(num, index),
        Some(dt) => {
            let den = poly_to_kpoly(parse_poly(dt, &ctx)?);
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            RatFunc::new(num, den, index)
        }
    }
}

/// Split at the unique depth-zero '/'.  Over the rationals a '/' between two
/// bare integers is a constant, not a bar; both readings agree there, so the
/// bar interpretation is used uniformly.
fn split_fraction_bar<'t>(text: &'t str, _field: &Field) -> Result<(&'t str, Option<&'t str>)> {
    let mut depth = 0i32;
    let mut bar: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '/' if depth == 0 => {
                if bar.is_some() {
                    return Err(Error::Parse {
                        line: 1,
                        col: i + 1,
                        msg: "more than one top-level '/'".into(),
                    });
                }
                bar = Some(i);
            }
            _ => {}
        }
    }
    match bar {
        None => Ok((text, None)),
        Some(i) => Ok((&text[..i], Some(&text[i + 1..]))),
    }
}

fn poly_to_kpoly(p: MultiPoly) -> KPoly {
    debug_assert_eq!(p.nvars(), 0);
    p.constant_coeff()
}

/// Parse a comma-separated tuple of rational functions (commas inside
/// brackets or parentheses do not split).
pub fn parse_tuple(text: &str, field: &Field, index: u32) -> Result<Vec<RatFunc>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
        .into_iter()
        .map(|p| parse_ratfunc(p, field, index))
        .collect()
}

/// Parse a bare field element in the constants syntax.
pub fn parse_constant(text: &str, field: &Field) -> Result<Constant> {
    let ctx = PolyContext {
        field: field.clone(),
        index: 1,
        nvars: 0,
    };
    let p = parse_poly(text, &ctx)?;
    let c = p.constant_coeff();
    if !c.is_constant() {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected a constant, found t".into(),
        });
    }
    Ok(c.coeff(0))
}
