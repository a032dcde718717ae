use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convexa::{GridSpec, QuadSpec};
use serde::{Deserialize, Serialize};

fn after_help() -> String {
    format!(
        "Function expressions use the variable x:\n\n{}\n\n\
         -x^2 means -(x^2). Exit codes: 0 all checks hold, 1 violation, \
         2 usage or parse error, 3 numeric failure.",
        convexa::expr::GRAMMAR
    )
}

#[derive(Debug, Parser)]
#[command(name = "convexa", version, about = "Young- and Nesbitt-convexity checks and Hadamard-type bounds", after_help = after_help())]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Classical,
    Young,
    Nesbitt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[arg(long, value_enum)]
    pub class: Class,
    /// Young exponent, p > 1 (required for --class young).
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct IntervalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = QuadSpec::default().abs_tol)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = QuadSpec::default().rel_tol)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = QuadSpec::default().max_subdivisions)]
    pub max_subdivisions: usize,
}

impl QuadArgs {
    pub fn spec(&self) -> QuadSpec {
        QuadSpec {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            left_singularity_exponent: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = GridSpec::default().nx)]
    pub nx: usize,
    #[arg(long, default_value_t = GridSpec::default().ny)]
    pub ny: usize,
    #[arg(long, default_value_t = GridSpec::default().nt)]
    pub nt: usize,
    #[arg(long, default_value_t = GridSpec::default().t_min)]
    pub t_min: f64,
    #[arg(long, default_value_t = GridSpec::default().tol)]
    pub tol: f64,
}

impl GridArgs {
    pub fn spec(&self) -> GridSpec {
        GridSpec {
            nx: self.nx,
            ny: self.ny,
            nt: self.nt,
            t_min: self.t_min,
            tol: self.tol,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid-search the defining inequality of a class for f.
    #[command(after_help = after_help())]
    Check {
        /// Function of x, e.g. "x^2" or "exp(-x)".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        interval: IntervalArgs,
        /// Test the reversed (concave) inequality.
        #[arg(long)]
        concave: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the Hadamard-type sandwich of a class for f.
    #[command(after_help = after_help())]
    Sandwich {
        /// Function of x, e.g. "x^2" or "exp(-x)".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        interval: IntervalArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the product bounds of a class for f and g.
    #[command(after_help = after_help())]
    Product {
        /// Function of x, e.g. "x^2" or "exp(-x)".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        interval: IntervalArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Table of closed-form constants against quadrature.
    Constants {
        /// Young exponents (repeatable); defaults to 1.01 1.1 1.5 1.9 2 3 10.
        #[arg(long = "p")]
        p: Vec<f64>,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Weight moments of a class by closed form and by quadrature.
    Moments {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Run the full verification suite.
    VerifyPaper {
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: Output,
    },
}
