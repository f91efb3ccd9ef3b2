//! Expression parser and evaluator for cobordism classes.
//!
//! Grammar (whitespace-insensitive, standard precedence ^ over * over ±):
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | base ('^' uint)?
//! base    := '(' expr ')' | literal | symbol
//! literal := uint ('/' uint)?
//! symbol  := CP[n] | b[n] | beta[n] | H[m,n] | alpha[k,n]
//! ```
//!
//! An expression must evaluate to a homogeneous element; mixed-degree sums
//! are rejected with the two offending degrees named. Syntax errors carry the
//! byte offset of the offending token.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use cobord::{alpha_coeff, beta_coeff, cp_class, milnor_hypersurface, GradedElement, Rational};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symbol {
    /// CP[n]: the projective-space class (n+1)·bₙ, n ≥ 0.
    Cp(u32),
    /// b[n]: the ambient generator, n ≥ 1.
    B(u32),
    /// beta[n]: the Chern–Dold coefficient, n ≥ 1.
    Beta(u32),
    /// H[m,n]: the Milnor hypersurface class, m, n ≥ 1.
    H(u32, u32),
    /// alpha[k,n]: the u^{n+1}-coefficient of [u]_k, k ≠ 0, n ≥ 1.
    Alpha(i64, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Symbol(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, CliError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, start));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, start));
                i += 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let value: BigInt = text[i..j].parse().expect("digit run parses");
                toks.push((Tok::Number(value), start));
                i = j;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                toks.push((Tok::Name(text[i..j].to_string()), start));
                i = j;
            }
            other => {
                return Err(CliError::Parse {
                    offset: start,
                    message: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CliError> {
        let offset = self.offset();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(CliError::Parse {
                offset,
                message: format!("expected {what}"),
            }),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, CliError> {
    let mut lx = lex(text)?;
    let expr = parse_expr(&mut lx)?;
    if lx.peek().is_some() {
        return Err(CliError::Parse {
            offset: lx.offset(),
            message: "trailing input after expression".to_string(),
        });
    }
    Ok(expr)
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr, CliError> {
    let mut left = parse_term(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                let right = parse_term(lx)?;
                left = Expr::Add(Box::new(left), Box::new(right));
            }
            Some(Tok::Minus) => {
                lx.next();
                let right = parse_term(lx)?;
                left = Expr::Sub(Box::new(left), Box::new(right));
            }
            _ => return Ok(left),
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<Expr, CliError> {
    let mut left = parse_factor(lx)?;
    while lx.peek() == Some(&Tok::Star) {
        lx.next();
        let right = parse_factor(lx)?;
        left = Expr::Mul(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn parse_factor(lx: &mut Lexer) -> Result<Expr, CliError> {
    if lx.peek() == Some(&Tok::Minus) {
        lx.next();
        let inner = parse_factor(lx)?;
        // negative literals fold so that printing round-trips exactly
        return Ok(match inner {
            Expr::Literal(q) => Expr::Literal(-q),
            other => Expr::Neg(Box::new(other)),
        });
    }
    let base = parse_base(lx)?;
    if lx.peek() == Some(&Tok::Caret) {
        let caret_at = lx.offset();
        lx.next();
        if lx.peek() == Some(&Tok::Minus) {
            return Err(CliError::Parse {
                offset: lx.offset(),
                message: "negative exponent".to_string(),
            });
        }
        let offset = lx.offset();
        match lx.next() {
            Some(Tok::Number(n)) => {
                let exp = u32::try_from(&n).map_err(|_| CliError::Parse {
                    offset,
                    message: "exponent too large".to_string(),
                })?;
                return Ok(Expr::Pow(Box::new(base), exp));
            }
            _ => {
                return Err(CliError::Parse {
                    offset: caret_at,
                    message: "'^' must be followed by a non-negative integer".to_string(),
                })
            }
        }
    }
    Ok(base)
}

fn parse_base(lx: &mut Lexer) -> Result<Expr, CliError> {
    let offset = lx.offset();
    match lx.next() {
        Some(Tok::LParen) => {
            let inner = parse_expr(lx)?;
            lx.expect(Tok::RParen, "')'")?;
            Ok(inner)
        }
        Some(Tok::Number(n)) => {
            if lx.peek() == Some(&Tok::Slash) {
                lx.next();
                let den_at = lx.offset();
                match lx.next() {
                    Some(Tok::Number(d)) if !d.is_zero() => Ok(Expr::Literal(Rational::new(n, d))),
                    Some(Tok::Number(_)) => Err(CliError::Parse {
                        offset: den_at,
                        message: "zero denominator".to_string(),
                    }),
                    _ => Err(CliError::Parse {
                        offset: den_at,
                        message: "'/' must be followed by an integer".to_string(),
                    }),
                }
            } else {
                Ok(Expr::Literal(Rational::from_integer(n)))
            }
        }
        Some(Tok::Name(name)) => parse_symbol(lx, &name, offset),
        Some(other) => Err(CliError::Parse {
            offset,
            message: format!("unexpected token {other:?}"),
        }),
        None => Err(CliError::Parse {
            offset,
            message: "unexpected end of input".to_string(),
        }),
    }
}

fn parse_symbol(lx: &mut Lexer, name: &str, name_at: usize) -> Result<Expr, CliError> {
    let arity = match name {
        "CP" | "b" | "beta" => 1,
        "H" | "alpha" => 2,
        other => {
            return Err(CliError::Parse {
                offset: name_at,
                message: format!("unknown symbol '{other}'"),
            })
        }
    };
    lx.expect(Tok::LBracket, "'['")?;
    let mut args: Vec<(i64, usize)> = Vec::new();
    loop {
        let negative = if lx.peek() == Some(&Tok::Minus) {
            lx.next();
            true
        } else {
            false
        };
        let offset = lx.offset();
        match lx.next() {
            Some(Tok::Number(n)) => {
                let v = i64::try_from(&n).map_err(|_| CliError::Parse {
                    offset,
                    message: "index too large".to_string(),
                })?;
                args.push((if negative { -v } else { v }, offset));
            }
            _ => {
                return Err(CliError::Parse {
                    offset,
                    message: "expected an integer index".to_string(),
                })
            }
        }
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBracket) => break,
            _ => {
                return Err(CliError::Parse {
                    offset: lx.offset(),
                    message: "expected ',' or ']'".to_string(),
                })
            }
        }
    }
    if args.len() != arity {
        return Err(CliError::Parse {
            offset: name_at,
            message: format!("'{name}' takes {arity} index(es), got {}", args.len()),
        });
    }
    let positive = |(v, offset): (i64, usize), min: i64, what: &str| -> Result<u32, CliError> {
        if v < min {
            return Err(CliError::Parse {
                offset,
                message: format!("{what} must be >= {min}"),
            });
        }
        Ok(v as u32)
    };
    let sym = match name {
        "CP" => Symbol::Cp(positive(args[0], 0, "CP index")?),
        "b" => Symbol::B(positive(args[0], 1, "b index")?),
        "beta" => Symbol::Beta(positive(args[0], 1, "beta index")?),
        "H" => Symbol::H(
            positive(args[0], 1, "H index")?,
            positive(args[1], 1, "H index")?,
        ),
        "alpha" => {
            let (k, k_at) = args[0];
            if k == 0 {
                return Err(CliError::Parse {
                    offset: k_at,
                    message: "alpha multiplier k must be nonzero".to_string(),
                });
            }
            Symbol::Alpha(k, positive(args[1], 1, "alpha dimension")?)
        }
        _ => unreachable!(),
    };
    Ok(Expr::Symbol(sym))
}

/// Evaluate to a homogeneous graded element.
pub fn eval(expr: &Expr, trunc: usize) -> Result<GradedElement, CliError> {
    match expr {
        Expr::Literal(q) => Ok(GradedElement::scalar(q.clone())),
        Expr::Symbol(sym) => eval_symbol(sym, trunc),
        Expr::Neg(inner) => Ok(eval(inner, trunc)?.neg()),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let left = eval(a, trunc)?;
            let right = eval(b, trunc)?;
            if left.degree() != right.degree() {
                return Err(CliError::Eval(format!(
                    "mixed degrees {} and {} in a sum",
                    left.degree(),
                    right.degree()
                )));
            }
            Ok(match expr {
                Expr::Add(..) => left.add(&right),
                _ => left.sub(&right),
            })
        }
        Expr::Mul(a, b) => Ok(eval(a, trunc)?.mul(&eval(b, trunc)?)),
        Expr::Pow(a, exp) => Ok(eval(a, trunc)?.pow(*exp)),
    }
}

fn eval_symbol(sym: &Symbol, trunc: usize) -> Result<GradedElement, CliError> {
    match *sym {
        Symbol::Cp(n) => Ok(cp_class(n)),
        Symbol::B(n) => Ok(GradedElement::generator(n)),
        Symbol::Beta(n) => Ok(beta_coeff(n, trunc)?),
        Symbol::H(m, n) => Ok(milnor_hypersurface(m, n, trunc)?),
        Symbol::Alpha(k, n) => Ok(alpha_coeff(k, n, trunc)?),
    }
}

/// Canonical printing; `parse_expression(print_expr(e))` returns `e` exactly.
pub fn print_expr(expr: &Expr) -> String {
    render(expr, 0)
}

// precedence levels: 1 additive, 2 multiplicative, 3 prefix minus, 4 power
fn render(expr: &Expr, parent_level: u8) -> String {
    let (body, level) = match expr {
        Expr::Literal(q) => {
            let s = cobord::render_rational(q);
            // a negative literal binds like a prefix minus
            (s, if q.is_negative() { 3 } else { 5 })
        }
        Expr::Symbol(sym) => (render_symbol(sym), 5),
        Expr::Neg(inner) => (format!("-{}", render(inner, 3)), 3),
        Expr::Add(a, b) => (format!("{} + {}", render(a, 1), render(b, 2)), 1),
        Expr::Sub(a, b) => (format!("{} - {}", render(a, 1), render(b, 2)), 1),
        Expr::Mul(a, b) => (format!("{}*{}", render(a, 2), render(b, 3)), 2),
        // the base of a power must re-parse as a standalone base, so anything
        // below atom level gets parenthesized ("(a^2)^3", "(-3)^2")
        Expr::Pow(a, exp) => (format!("{}^{}", render(a, 5), exp), 4),
    };
    if level < parent_level {
        format!("({body})")
    } else {
        body
    }
}

fn render_symbol(sym: &Symbol) -> String {
    match sym {
        Symbol::Cp(n) => format!("CP[{n}]"),
        Symbol::B(n) => format!("b[{n}]"),
        Symbol::Beta(n) => format!("beta[{n}]"),
        Symbol::H(m, n) => format!("H[{m},{n}]"),
        Symbol::Alpha(k, n) => format!("alpha[{k},{n}]"),
    }
}
