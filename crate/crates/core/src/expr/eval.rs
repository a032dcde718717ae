use super::{Ast, BinOp, Func};
use crate::{Error, Result};

fn domain(x: f64, reason: impl Into<String>) -> Error {
    Error::Eval {
        x,
        reason: reason.into(),
    }
}

pub(crate) fn finite(value: f64, x: f64, what: &str) -> Result<f64> {
    if value.is_nan() {
        Err(domain(x, format!("{what} is NaN")))
    } else if value.is_infinite() {
        Err(domain(x, format!("{what} overflowed")))
    } else {
        Ok(value)
    }
}

/// Evaluate `ast` at `x`.
pub fn eval_ast(ast: &Ast, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(x, "argument is not finite"));
    }
    eval_node(ast, x)
}

fn eval_node(ast: &Ast, x: f64) -> Result<f64> {
    let value = match ast {
        Ast::Number(v) => *v,
        Ast::Var => x,
        Ast::Neg(child) => -eval_node(child, x)?,
        Ast::Binary { op, lhs, rhs } => {
            let l = eval_node(lhs, x)?;
            let r = eval_node(rhs, x)?;
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div => {
                    if r == 0.0 {
                        return Err(domain(x, "division by zero"));
                    }
                    l / r
                }
                BinOp::Pow => power(l, r, x)?,
            }
        }
        Ast::Call { func, args } => {
            let a = eval_node(&args[0], x)?;
            match func {
                Func::Exp => a.exp(),
                Func::Ln => {
                    if a <= 0.0 {
                        return Err(domain(x, format!("ln of non-positive value {a}")));
                    }
                    a.ln()
                }
                Func::Sqrt => {
                    if a < 0.0 {
                        return Err(domain(x, format!("sqrt of negative value {a}")));
                    }
                    a.sqrt()
                }
                Func::Abs => a.abs(),
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Pow => power(a, eval_node(&args[1], x)?, x)?,
            }
        }
    };
    finite(value, x, "intermediate value")
}

/// Real power with explicit domain rules: integer exponents by repeated
/// multiplication, fractional exponents only for non-negative bases.
pub(crate) fn power(base: f64, exponent: f64, x: f64) -> Result<f64> {
    if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
        let n = exponent.abs() as u32;
        let magnitude = int_power(base, n);
        if exponent < 0.0 {
            if magnitude == 0.0 {
                return Err(domain(x, "division by zero in negative power"));
            }
            return Ok(1.0 / magnitude);
        }
        return Ok(magnitude);
    }
    if base > 0.0 {
        Ok(base.powf(exponent))
    } else if base == 0.0 && exponent > 0.0 {
        Ok(0.0)
    } else {
        Err(domain(
            x,
            format!("{base}^{exponent}: fractional power needs a non-negative base"),
        ))
    }
}

// Square-and-multiply, low bit first.
fn int_power(mut base: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        n >>= 1;
        if n > 0 {
            base *= base;
        }
    }
    acc
}
