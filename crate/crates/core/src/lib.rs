//! Numerical toolkit for Young- and Nesbitt-convex functions.
//!
//! The two classes replace the classical chord weights `(t, 1 - t)` with
//! weight pairs derived from Young's and Nesbitt's inequalities. This crate
//! evaluates those weights, searches for violations of the defining
//! inequalities on a grid, and evaluates the Hadamard-type bounds that follow
//! from them. Every closed-form constant has an independent quadrature route
//! so the two can be compared.

// Domain checks are written `!(x > 0.0)` so that NaN is rejected too, and
// reference constants keep the digits of their source.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod expr;
pub mod interval;
pub mod membership;
pub mod quadrature;
pub mod specfun;
pub mod theorems;
pub mod weights;

pub use error::{Error, Result};
pub use expr::FunctionDef;
pub use interval::Interval;
pub use membership::{GridSpec, MembershipReport, Verdict, ViolationCertificate};
pub use quadrature::{QuadResult, QuadSpec};
pub use weights::{Moment, MomentTable, WeightKind, WeightPair, WeightSystem};
