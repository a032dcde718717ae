use super::token::{Token, TokenKind};
use super::{Ast, BinOp, Func};
use crate::{Error, Result};

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// Offset reported when input ends early.
    end: usize,
}

pub fn parse(tokens: &[Token]) -> Result<Ast> {
    let end = tokens
        .last()
        .map(|t| t.position + t.text.len())
        .unwrap_or(0);
    let mut p = Parser {
        tokens,
        pos: 0,
        end,
    };
    let ast = p.expr()?;
    if let Some(tok) = p.peek() {
        let message = if tok.kind == TokenKind::RParen {
            "unbalanced ')'".to_string()
        } else {
            format!("unexpected {:?} '{}'", tok.kind, tok.text)
        };
        return Err(Error::Parse {
            offset: tok.position,
            message,
        });
    }
    Ok(ast)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        self.pos += 1;
        tok
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.peek().map(|t| t.position).unwrap_or(self.end),
            message: message.into(),
        }
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<&'a Token> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t)
            }
            Some(t) => Err(self.error_here(format!("expected {what}, found '{}'", t.text))),
            None => Err(self.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        while let Some(op) = match self.peek_kind() {
            Some(TokenKind::Plus) => Some(BinOp::Add),
            Some(TokenKind::Minus) => Some(BinOp::Sub),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while let Some(op) = match self.peek_kind() {
            Some(TokenKind::Star) => Some(BinOp::Mul),
            Some(TokenKind::Slash) => Some(BinOp::Div),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.primary()?;
        if self.peek_kind() == Some(TokenKind::Caret) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Ast> {
        let Some(tok) = self.peek() else {
            return Err(self.error_here("unexpected end of input"));
        };
        match tok.kind {
            TokenKind::Number => {
                self.pos += 1;
                let value: f64 = tok.text.parse().map_err(|_| Error::Parse {
                    offset: tok.position,
                    message: format!("malformed number '{}'", tok.text),
                })?;
                if !value.is_finite() {
                    return Err(Error::Parse {
                        offset: tok.position,
                        message: format!("number '{}' is out of range", tok.text),
                    });
                }
                Ok(Ast::Number(value))
            }
            TokenKind::Ident => {
                self.pos += 1;
                if self.peek_kind() == Some(TokenKind::LParen) {
                    return self.call(tok);
                }
                if tok.text == "x" {
                    Ok(Ast::Var)
                } else if Func::from_name(&tok.text).is_some() {
                    Err(self.error_here(format!("expected '(' after {}", tok.text)))
                } else {
                    Err(Error::Parse {
                        offset: tok.position,
                        message: format!("unknown variable '{}' (only x is allowed)", tok.text),
                    })
                }
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(t) if t.kind == TokenKind::RParen => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Parse {
                        offset: tok.position,
                        message: "unbalanced '('".into(),
                    }),
                }
            }
            _ => Err(self.error_here(format!("unexpected '{}'", tok.text))),
        }
    }

    fn call(&mut self, name: &'a Token) -> Result<Ast> {
        let func = Func::from_name(&name.text).ok_or_else(|| Error::Parse {
            offset: name.position,
            message: format!("unknown function '{}'", name.text),
        })?;
        let open = self.expect(TokenKind::LParen, "'('")?;
        let mut args = vec![self.expr()?];
        while self.peek_kind() == Some(TokenKind::Comma) {
            self.pos += 1;
            args.push(self.expr()?);
        }
        match self.bump() {
            Some(t) if t.kind == TokenKind::RParen => {}
            Some(t) => {
                return Err(Error::Parse {
                    offset: t.position,
                    message: format!("expected ',' or ')', found '{}'", t.text),
                })
            }
            None => {
                return Err(Error::Parse {
                    offset: open.position,
                    message: "unbalanced '('".into(),
                })
            }
        }
        if args.len() != func.arity() {
            return Err(Error::Parse {
                offset: name.position,
                message: format!(
                    "{} takes {} argument(s), got {}",
                    func.name(),
                    func.arity(),
                    args.len()
                ),
            });
        }
        Ok(Ast::Call { func, args })
    }
}

fn binary(op: BinOp, lhs: Ast, rhs: Ast) -> Ast {
    Ast::Binary {
        op,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}

// Binding strength used by `unparse`.
const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn precedence(ast: &Ast) -> u8 {
    match ast {
        Ast::Number(_) | Ast::Var | Ast::Call { .. } => ATOM,
        Ast::Neg(_) => UNARY,
        Ast::Binary { op, .. } => match op {
            BinOp::Add | BinOp::Sub => ADD,
            BinOp::Mul | BinOp::Div => MUL,
            BinOp::Pow => POW,
        },
    }
}

/// Render an expression with the minimum parentheses needed to re-parse it
/// to the same tree.
pub fn unparse(ast: &Ast) -> String {
    let mut out = String::new();
    write_ast(ast, &mut out);
    out
}

fn write_child(ast: &Ast, min: u8, out: &mut String) {
    if precedence(ast) < min {
        out.push('(');
        write_ast(ast, out);
        out.push(')');
    } else {
        write_ast(ast, out);
    }
}

fn write_ast(ast: &Ast, out: &mut String) {
    match ast {
        Ast::Number(v) => {
            // negative literals never come out of the parser
            if *v < 0.0 || v.is_sign_negative() {
                out.push_str("(-");
                out.push_str(&format!("{}", -v));
                out.push(')');
            } else {
                out.push_str(&format!("{v}"));
            }
        }
        Ast::Var => out.push('x'),
        Ast::Neg(child) => {
            out.push('-');
            write_child(child, UNARY, out);
        }
        Ast::Binary { op, lhs, rhs } => {
            let (left_min, right_min) = match op {
                BinOp::Add | BinOp::Sub => (ADD, MUL),
                BinOp::Mul | BinOp::Div => (MUL, UNARY),
                BinOp::Pow => (ATOM, UNARY),
            };
            write_child(lhs, left_min, out);
            out.push(op.symbol());
            write_child(rhs, right_min, out);
        }
        Ast::Call { func, args } => {
            out.push_str(func.name());
            out.push('(');
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_ast(arg, out);
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tokenize;
    use super::*;

    fn p(src: &str) -> Result<Ast> {
        parse(&tokenize(src)?)
    }

    #[test]
    fn precedence_of_power_over_multiplication() {
        assert_eq!(
            p("2*x^3").unwrap(),
            binary(
                BinOp::Mul,
                Ast::Number(2.0),
                binary(BinOp::Pow, Ast::Var, Ast::Number(3.0))
            )
        );
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(
            p("-x^2").unwrap(),
            Ast::Neg(Box::new(binary(BinOp::Pow, Ast::Var, Ast::Number(2.0))))
        );
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(
            p("x^2^3").unwrap(),
            binary(
                BinOp::Pow,
                Ast::Var,
                binary(BinOp::Pow, Ast::Number(2.0), Ast::Number(3.0))
            )
        );
        assert_eq!(
            p("x^-1").unwrap(),
            binary(BinOp::Pow, Ast::Var, Ast::Neg(Box::new(Ast::Number(1.0))))
        );
    }

    #[test]
    fn subtraction_is_left_associative() {
        assert_eq!(
            p("x-1-2").unwrap(),
            binary(
                BinOp::Sub,
                binary(BinOp::Sub, Ast::Var, Ast::Number(1.0)),
                Ast::Number(2.0)
            )
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(p("(x+1"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("x+1)"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(p("x+"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(p("2 x"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(p("y+1"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("foo(x)"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("pow(x)"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("exp(x,1)"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("sin(x"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(p(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(p("x+1e999"), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn unparse_minimal_parens() {
        assert_eq!(unparse(&p("(x+1)*(x-1)").unwrap()), "(x+1)*(x-1)");
        assert_eq!(unparse(&p("x-(1-2)").unwrap()), "x-(1-2)");
        assert_eq!(unparse(&p("(-x)^2").unwrap()), "(-x)^2");
        assert_eq!(unparse(&p("-x^2").unwrap()), "-x^2");
        assert_eq!(unparse(&p("(x^2)^3").unwrap()), "(x^2)^3");
        assert_eq!(unparse(&p("pow(x, 0.5)").unwrap()), "pow(x,0.5)");
    }
}
