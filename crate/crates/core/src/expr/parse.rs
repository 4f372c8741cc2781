//! Recursive-descent parser with byte-offset error reporting.

use thiserror::Error;

use super::{BinaryOp, Expr, ExprKind, Span, UnaryOp, Var};
use crate::C64;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '(' | ')' | ',' | '+' | '-' | '*' | '/' | '^' => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    _ => Tok::Caret,
                };
                i += 1;
                out.push(Token { tok, start, end: i });
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
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
                }
                let text = &src[start..i];
                match text.parse::<f64>() {
                    Ok(v) => out.push(Token {
                        tok: Tok::Num(v),
                        start,
                        end: i,
                    }),
                    Err(_) => return err(start, format!("malformed number `{text}`")),
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    start,
                    end: i,
                });
            }
            _ => return err(i, format!("unexpected character `{c}`")),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            err(t.start, format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => break,
            };
            self.next();
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            let t = self.next();
            let inner = self.factor()?;
            let span = Span::new(t.start, inner.span.end);
            return Ok(Expr::new(
                ExprKind::Unary(UnaryOp::Neg, Box::new(inner)),
                span,
            ));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let negative = if self.peek().tok == Tok::Minus {
                self.next();
                true
            } else {
                false
            };
            let t = self.next();
            let n = match t.tok {
                Tok::Num(v) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => v as i32,
                _ => return err(t.start, "expected integer exponent after `^`"),
            };
            let n = if negative { -n } else { n };
            let span = Span::new(base.span.start, t.end);
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), n), span));
        }
        Ok(base)
    }

    fn integer_arg(&mut self) -> Result<usize, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Num(v) if v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64 => Ok(v as usize),
            _ => err(t.start, "expected nonnegative integer"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Num(v) => Ok(Expr::new(
                ExprKind::Lit(C64::new(v, 0.0)),
                Span::new(t.start, t.end),
            )),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::new(inner.kind, Span::new(t.start, close.end)))
            }
            Tok::Ident(name) => self.ident(name, t.start, t.end),
            _ => err(t.start, "expected expression"),
        }
    }

    fn ident(&mut self, name: String, start: usize, end: usize) -> Result<Expr, ParseError> {
        let span = Span::new(start, end);
        match name.as_str() {
            "z" => return Ok(Expr::new(ExprKind::Var(Var::Z), span)),
            "i" => return Ok(Expr::new(ExprKind::Lit(C64::new(0.0, 1.0)), span)),
            "d" => {
                self.expect(Tok::LParen, "`(` after `d`")?;
                let comp = self.integer_arg()?;
                self.expect(Tok::Comma, "`,`")?;
                let dz = self.integer_arg()?;
                self.expect(Tok::Comma, "`,`")?;
                let dzbar = self.integer_arg()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr::new(
                    ExprKind::Var(Var::Deriv { comp, dz, dzbar }),
                    Span::new(start, close.end),
                ));
            }
            _ => {}
        }
        if let Some(rest) = name.strip_prefix('u') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let comp: usize = rest.parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("component index out of range in `{name}`"),
                })?;
                return Ok(Expr::new(
                    ExprKind::Var(Var::Deriv {
                        comp,
                        dz: 0,
                        dzbar: 0,
                    }),
                    span,
                ));
            }
        }
        let op = match name.as_str() {
            "conj" => Some(UnaryOp::Conj),
            "re" => Some(UnaryOp::Re),
            "im" => Some(UnaryOp::Im),
            "exp" => Some(UnaryOp::Exp),
            "log" => Some(UnaryOp::Log),
            _ => None,
        };
        match op {
            Some(op) => {
                self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
                let arg = self.expr()?;
                if self.peek().tok == Tok::Comma {
                    let t = self.next();
                    return err(t.start, format!("`{name}` takes exactly one argument"));
                }
                let close = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::new(
                    ExprKind::Unary(op, Box::new(arg)),
                    Span::new(start, close.end),
                ))
            }
            None => err(start, format!("unknown identifier `{name}`")),
        }
    }
}

/// Parses DSL source text into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        return err(t.start, "unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::super::eval;
    use super::super::Env;
    use super::*;

    #[test]
    fn parses_power_over_variable() {
        let e = parse("u0^2").unwrap();
        match e.kind {
            ExprKind::Pow(ref base, 2) => match base.kind {
                ExprKind::Var(Var::Deriv {
                    comp: 0,
                    dz: 0,
                    dzbar: 0,
                }) => {}
                ref k => panic!("unexpected base {k:?}"),
            },
            ref k => panic!("unexpected tree {k:?}"),
        }
    }

    #[test]
    fn parses_forced_transport_rhs_shape() {
        // Forcing sub-expression supplied as the constant 1.
        let src = "(1/(1+re(z)))*1 - ((1-re(z))/(1+re(z)))*d(0,1,0)";
        let e = parse(src).unwrap();
        let vars = e.free_vars();
        assert!(vars.contains(&Var::Z));
        assert!(vars.contains(&Var::deriv(0, 1, 0)));
    }

    #[test]
    fn reports_error_offset() {
        let e = parse("exp(").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse("1 + * 2").unwrap_err();
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn rejects_unknown_identifier_and_bad_arity() {
        assert!(parse("foo(z)").is_err());
        assert!(parse("conj(z, z)").is_err());
        assert!(parse("d(0,1)").is_err());
    }

    #[test]
    fn precedence_matches_convention() {
        let env = Env::z_only(C64::new(2.0, 0.0));
        let v = eval(&parse("-z^2").unwrap(), &env).unwrap();
        assert_eq!(v, C64::new(-4.0, 0.0));
        let v = eval(&parse("1+2*3^2").unwrap(), &env).unwrap();
        assert_eq!(v, C64::new(19.0, 0.0));
        let v = eval(&parse("2^-1").unwrap(), &env).unwrap();
        assert_eq!(v, C64::new(0.5, 0.0));
    }

    #[test]
    fn scientific_literals() {
        let env = Env::z_only(C64::new(0.0, 0.0));
        let v = eval(&parse("2.5e-3 + 1E2").unwrap(), &env).unwrap();
        assert!((v.re - 100.0025).abs() < 1e-12);
    }
}
