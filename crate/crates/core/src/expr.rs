//! A small expression language for user functions of one variable `x`.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = primary [ "^" unary ] ;          (* right associative *)
//! primary = number | "x" | call | "(" expr ")" ;
//! call    = name "(" expr { "," expr } ")" ;
//! name    = "exp" | "ln" | "sqrt" | "abs" | "sin" | "cos" | "pow" ;
//! number  = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ```
//!
//! `-x^2` is `-(x^2)`. `u^v` with integer `v` is repeated multiplication;
//! otherwise it needs `u > 0` (or `u = 0` with `v > 0`). Anything producing
//! NaN or an infinity is a domain error.

mod eval;
mod parse;
mod token;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use eval::eval_ast;
pub use parse::{parse, unparse};
pub use token::{tokenize, Token, TokenKind};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Abs,
    Sin,
    Cos,
    Pow,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
        Func::Sin,
        Func::Cos,
        Func::Pow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Pow => "pow",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Pow => 2,
            _ => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Ast {
    Number(f64),
    Var,
    Neg(Box<Ast>),
    Binary {
        op: BinOp,
        lhs: Box<Ast>,
        rhs: Box<Ast>,
    },
    Call {
        func: Func,
        args: Vec<Ast>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Square,
    Exponential,
    Identity,
    Constant(f64),
    /// `|x - c|`
    AbsShift(f64),
}

impl Builtin {
    fn eval(self, x: f64) -> f64 {
        match self {
            Builtin::Square => x * x,
            Builtin::Exponential => x.exp(),
            Builtin::Identity => x,
            Builtin::Constant(c) => c,
            Builtin::AbsShift(c) => (x - c).abs(),
        }
    }
}

/// A real function of one variable, either built in or parsed from source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionDef {
    Builtin(Builtin),
    Parsed { ast: Ast, source: String },
}

impl FunctionDef {
    pub fn parse(source: &str) -> Result<Self> {
        let ast = parse(&tokenize(source)?)?;
        Ok(FunctionDef::Parsed {
            ast,
            source: source.to_string(),
        })
    }

    pub fn builtin(b: Builtin) -> Self {
        FunctionDef::Builtin(b)
    }

    pub fn constant(c: f64) -> Self {
        FunctionDef::Builtin(Builtin::Constant(c))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let value = match self {
            FunctionDef::Builtin(b) => b.eval(x),
            FunctionDef::Parsed { ast, .. } => eval_ast(ast, x)?,
        };
        eval::finite(value, x, "result")
    }
}

impl fmt::Display for FunctionDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionDef::Builtin(Builtin::Square) => write!(f, "x^2"),
            FunctionDef::Builtin(Builtin::Exponential) => write!(f, "exp(x)"),
            FunctionDef::Builtin(Builtin::Identity) => write!(f, "x"),
            FunctionDef::Builtin(Builtin::Constant(c)) => write!(f, "{c}"),
            FunctionDef::Builtin(Builtin::AbsShift(c)) => write!(f, "abs(x-{c})"),
            FunctionDef::Parsed { source, .. } => write!(f, "{source}"),
        }
    }
}

/// One-line grammar summary for help text.
pub const GRAMMAR: &str = "\
expr    = term { (\"+\" | \"-\") term }
term    = unary { (\"*\" | \"/\") unary }
unary   = \"-\" unary | power
power   = primary [ \"^\" unary ]            (right associative)
primary = number | \"x\" | call | \"(\" expr \")\"
call    = (exp | ln | sqrt | abs | sin | cos) \"(\" expr \")\" | pow \"(\" expr \",\" expr \")\"
number  = digits [ \".\" digits ] [ (\"e\"|\"E\") [\"+\"|\"-\"] digits ]";
