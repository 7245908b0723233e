//! A small expression language for scalar functions of one variable `t`.
//!
//! Grammar (standard precedence, `^` binds tightest and is right-associative,
//! then unary minus, then `*` `/`, then `+` `-`):
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' unary]
//! atom   := number | 't' | func '(' expr ')' | '(' expr ')'
//! func   := 'sin' | 'cos' | 'exp' | 'ln' | 'u'
//! ```
//!
//! `u` is the right-continuous unit step (`u(x) = 1` for `x >= 0`, else `0`),
//! included so switched signals like a windowed disturbance are expressible in
//! problem files without callbacks.
//!
//! Expressions serialize back to text via `Display`; the printed form reparses
//! to an equivalent expression (same value at every point).

use std::fmt;

use crate::BasisError;

/// Built-in scalar functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    /// Right-continuous Heaviside step: `u(x) = 1` for `x >= 0`, else `0`.
    Step,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Step => "u",
        }
    }
}

/// Abstract syntax tree of a scalar expression in the variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// The variable `t`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parses `source` into an expression.
    pub fn parse(source: &str) -> Result<Expr, BasisError> {
        parse_expr(source)
    }

    /// Evaluates the expression at `t`.
    ///
    /// Returns a domain error for `ln` of a non-positive argument, division
    /// by zero, or any non-finite intermediate result.
    pub fn eval(&self, t: f64) -> Result<f64, BasisError> {
        let v = self.eval_inner(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(BasisError::Domain {
                t,
                message: format!("expression produced a non-finite value ({v})"),
            })
        }
    }

    fn eval_inner(&self, t: f64) -> Result<f64, BasisError> {
        let v = match self {
            Expr::Num(c) => *c,
            Expr::Var => t,
            Expr::Neg(e) => -e.eval_inner(t)?,
            Expr::Add(a, b) => a.eval_inner(t)? + b.eval_inner(t)?,
            Expr::Sub(a, b) => a.eval_inner(t)? - b.eval_inner(t)?,
            Expr::Mul(a, b) => a.eval_inner(t)? * b.eval_inner(t)?,
            Expr::Div(a, b) => {
                let den = b.eval_inner(t)?;
                if den == 0.0 {
                    return Err(BasisError::Domain {
                        t,
                        message: "division by zero".into(),
                    });
                }
                a.eval_inner(t)? / den
            }
            Expr::Pow(a, b) => a.eval_inner(t)?.powf(b.eval_inner(t)?),
            Expr::Call(f, e) => {
                let x = e.eval_inner(t)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x <= 0.0 {
                            return Err(BasisError::Domain {
                                t,
                                message: format!("ln of non-positive argument ({x})"),
                            });
                        }
                        x.ln()
                    }
                    Func::Step => {
                        if x >= 0.0 {
                            1.0
                        } else {
                            0.0
                        }
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(BasisError::Domain {
                t,
                message: format!("expression produced a non-finite value ({v})"),
            })
        }
    }

    /// Binding strength used by the printer to decide where parentheses are
    /// needed. Higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            // A negative literal prints with a leading minus sign, so it
            // binds like a negation, not like an atom.
            Expr::Num(c) if c.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            Expr::Num(..) | Expr::Var | Expr::Call(..) => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, needs_parens: bool) -> fmt::Result {
            if needs_parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                // `-x^2` would reparse as `-(x^2)` (same meaning), but any
                // looser operand needs parentheses: `-(1+2)`.
                child(f, e, e.level() < 3)
            }
            Expr::Add(a, b) => {
                child(f, a, a.level() < 1)?;
                write!(f, " + ")?;
                child(f, b, b.level() <= 1)
            }
            Expr::Sub(a, b) => {
                child(f, a, a.level() < 1)?;
                write!(f, " - ")?;
                child(f, b, b.level() <= 1)
            }
            Expr::Mul(a, b) => {
                child(f, a, a.level() < 2)?;
                write!(f, "*")?;
                child(f, b, b.level() <= 2 && !matches!(&**b, Expr::Neg(_)))
            }
            Expr::Div(a, b) => {
                child(f, a, a.level() < 2)?;
                write!(f, "/")?;
                child(f, b, b.level() <= 2)
            }
            Expr::Pow(a, b) => {
                // Left operand of right-associative `^` needs parentheses
                // unless it is an atom: `(2^3)^2` vs `2^3^2`.
                child(f, a, a.level() < 5)?;
                write!(f, "^")?;
                child(f, b, b.level() < 3)
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Var,
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

/// A token plus the byte offset where it starts.
#[derive(Clone, Copy, Debug)]
struct Spanned {
    tok: Tok,
    offset: usize,
}

fn tokenize(source: &str) -> Result<Vec<Spanned>, BasisError> {
    let bytes = source.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let offset = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push(Spanned { tok: Tok::Plus, offset });
                i += 1;
            }
            '-' => {
                toks.push(Spanned { tok: Tok::Minus, offset });
                i += 1;
            }
            '*' => {
                toks.push(Spanned { tok: Tok::Star, offset });
                i += 1;
            }
            '/' => {
                toks.push(Spanned { tok: Tok::Slash, offset });
                i += 1;
            }
            '^' => {
                toks.push(Spanned { tok: Tok::Caret, offset });
                i += 1;
            }
            '(' => {
                toks.push(Spanned { tok: Tok::LParen, offset });
                i += 1;
            }
            ')' => {
                toks.push(Spanned { tok: Tok::RParen, offset });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i == start + 1 && bytes[start] == b'.' {
                    return Err(BasisError::Parse {
                        offset: start,
                        message: "expected digits in numeric literal".into(),
                    });
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    // otherwise the 'e' is not part of this literal; leave it
                    // for the identifier scanner (e.g. "2exp(t)" is still a
                    // syntax error, just reported as such).
                }
                let text = &source[start..i];
                let value: f64 = text.parse().map_err(|_| BasisError::Parse {
                    offset: start,
                    message: format!("invalid numeric literal '{text}'"),
                })?;
                toks.push(Spanned { tok: Tok::Num(value), offset: start });
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &source[start..i];
                let tok = match name {
                    "t" => Tok::Var,
                    "sin" => Tok::Func(Func::Sin),
                    "cos" => Tok::Func(Func::Cos),
                    "exp" => Tok::Func(Func::Exp),
                    "ln" => Tok::Func(Func::Ln),
                    "u" => Tok::Func(Func::Step),
                    _ => {
                        return Err(BasisError::Parse {
                            offset: start,
                            message: format!(
                                "unknown identifier '{name}' (expected t, sin, cos, exp, ln, or u)"
                            ),
                        })
                    }
                };
                toks.push(Spanned { tok, offset: start });
            }
            _ => {
                return Err(BasisError::Parse {
                    offset,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    /// Byte length of the source, used as the offset of "end of input".
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|s| s.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |s| s.offset)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), BasisError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(what))
        }
    }

    fn error_here(&self, expected: &str) -> BasisError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(Tok::Num(v)) => format!("number {v}"),
            Some(Tok::Var) => "'t'".to_string(),
            Some(Tok::Func(f)) => format!("'{}'", f.name()),
            Some(Tok::Plus) => "'+'".to_string(),
            Some(Tok::Minus) => "'-'".to_string(),
            Some(Tok::Star) => "'*'".to_string(),
            Some(Tok::Slash) => "'/'".to_string(),
            Some(Tok::Caret) => "'^'".to_string(),
            Some(Tok::LParen) => "'('".to_string(),
            Some(Tok::RParen) => "')'".to_string(),
        };
        BasisError::Parse {
            offset: self.offset(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Expr, BasisError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, BasisError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, BasisError> {
        if self.peek() == Some(Tok::Minus) {
            self.bump();
            // Fold negation of a literal into the literal itself, so that a
            // printed negative constant reparses to the same tree.
            Ok(match self.unary()? {
                Expr::Num(c) => Expr::Num(-c),
                inner => Expr::Neg(Box::new(inner)),
            })
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, BasisError> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.bump();
            // Right-associative; the exponent may carry its own unary minus.
            let exponent = self.unary()?;
            Ok(Expr::Pow(Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, BasisError> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Some(Tok::Var) => {
                self.bump();
                Ok(Expr::Var)
            }
            Some(Tok::Func(f)) => {
                self.bump();
                self.expect(Tok::LParen, "'(' after function name")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Call(f, Box::new(arg)))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.error_here("a number, 't', a function, or '('")),
        }
    }
}

fn parse_expr(source: &str) -> Result<Expr, BasisError> {
    let toks = tokenize(source)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: source.len(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.error_here("end of input"));
    }
    Ok(e)
}
