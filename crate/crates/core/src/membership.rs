//! Grid search for violations of a weighted convexity inequality.
//!
//! For a weight system `(w_x, w_y)` the convex condition is
//! `f(t x + (1-t) y) <= w_x(t) f(x) + w_y(t) f(y)` for all `x, y` in the
//! interval and `t ∈ (0, 1]`; the concave condition is the reverse. A grid
//! can only refute membership, so a clean scan is reported as
//! [`Verdict::NoViolationAtResolution`].
//!
//! Scan order is `x` outer, `y` middle, `t` inner, all ascending; the first
//! violation in that order is the certificate.

use serde::{Deserialize, Serialize};

use crate::interval::linspace;
use crate::{Error, FunctionDef, Interval, Result, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub nt: usize,
    pub t_min: f64,
    pub tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            nx: 41,
            ny: 41,
            nt: 99,
            t_min: 1e-4,
            tol: 1e-9,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |message: String| Error::InvalidSpec {
            what: "grid spec",
            message,
        };
        if self.nx < 2 || self.ny < 2 || self.nt < 2 {
            return Err(bad(format!(
                "nx, ny, nt must be at least 2 (got {}, {}, {})",
                self.nx, self.ny, self.nt
            )));
        }
        if !(self.t_min > 0.0 && self.t_min < 1.0) {
            return Err(bad(format!("t_min must lie in (0, 1), got {}", self.t_min)));
        }
        if !(self.tol >= 0.0) {
            return Err(bad(format!("tol must be non-negative, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn t_values(&self) -> Vec<f64> {
        linspace(self.t_min, 1.0, self.nt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Convex,
    Concave,
}

/// A point where the inequality fails. For the convex check `lhs` is
/// `f(t x + (1-t) y)` and `rhs` the weighted sum; the concave check swaps
/// them. Either way `gap = lhs - rhs > tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationCertificate {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub orientation: Orientation,
}

impl ViolationCertificate {
    /// Recompute `(lhs, rhs)` from `(x, y, t)`.
    pub fn recompute(&self, f: &FunctionDef, ws: &WeightSystem) -> Result<(f64, f64)> {
        let w = ws.eval(self.t)?;
        let value = f.eval(self.t * self.x + (1.0 - self.t) * self.y)?;
        let weighted = w.wx * f.eval(self.x)? + w.wy * f.eval(self.y)?;
        Ok(orient(self.orientation, value, weighted))
    }
}

fn orient(orientation: Orientation, value: f64, weighted: f64) -> (f64, f64) {
    match orientation {
        Orientation::Convex => (value, weighted),
        Orientation::Concave => (weighted, value),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "certificate")]
pub enum Verdict {
    NoViolationAtResolution,
    Violated(ViolationCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub samples: usize,
    /// Largest `rhs - lhs` over the grid.
    pub max_slack: f64,
    /// Smallest `rhs - lhs` over the grid (negative when violated).
    pub min_slack: f64,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::NoViolationAtResolution)
    }

    pub fn certificate(&self) -> Option<&ViolationCertificate> {
        match &self.verdict {
            Verdict::Violated(c) => Some(c),
            Verdict::NoViolationAtResolution => None,
        }
    }
}

pub fn check_convex(
    f: &FunctionDef,
    interval: Interval,
    ws: &WeightSystem,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    scan(f, interval, ws, grid, Orientation::Convex)
}

pub fn check_concave(
    f: &FunctionDef,
    interval: Interval,
    ws: &WeightSystem,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    scan(f, interval, ws, grid, Orientation::Concave)
}

fn scan(
    f: &FunctionDef,
    interval: Interval,
    ws: &WeightSystem,
    grid: &GridSpec,
    orientation: Orientation,
) -> Result<MembershipReport> {
    grid.validate()?;
    let xs = interval.linspace(grid.nx);
    let ys = interval.linspace(grid.ny);
    let fx = xs.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let fy = ys.iter().map(|&y| f.eval(y)).collect::<Result<Vec<_>>>()?;
    let weights = grid
        .t_values()
        .into_iter()
        .map(|t| ws.eval(t))
        .collect::<Result<Vec<_>>>()?;

    let mut first = None;
    let mut max_slack = f64::NEG_INFINITY;
    let mut min_slack = f64::INFINITY;
    for (&x, &f_x) in xs.iter().zip(&fx) {
        for (&y, &f_y) in ys.iter().zip(&fy) {
            for w in &weights {
                let value = f.eval(w.t * x + (1.0 - w.t) * y)?;
                let weighted = w.wx * f_x + w.wy * f_y;
                let (lhs, rhs) = orient(orientation, value, weighted);
                let slack = rhs - lhs;
                max_slack = max_slack.max(slack);
                min_slack = min_slack.min(slack);
                if first.is_none() && -slack > grid.tol {
                    first = Some(ViolationCertificate {
                        x,
                        y,
                        t: w.t,
                        lhs,
                        rhs,
                        gap: lhs - rhs,
                        orientation,
                    });
                }
            }
        }
    }
    Ok(MembershipReport {
        verdict: first.map_or(Verdict::NoViolationAtResolution, Verdict::Violated),
        samples: grid.nx * grid.ny * grid.nt,
        max_slack,
        min_slack,
    })
}

/// First of `resolution` equally spaced points of `interval` where `f < 0`.
///
/// Any member of the Young class is non-negative, so a witness here rules
/// membership out without a full scan.
pub fn nonnegativity_witness(
    f: &FunctionDef,
    interval: Interval,
    resolution: usize,
) -> Result<Option<f64>> {
    if resolution < 2 {
        return Err(Error::InvalidSpec {
            what: "grid resolution",
            message: format!("need at least 2 points, got {resolution}"),
        });
    }
    for x in interval.linspace(resolution) {
        if f.eval(x)? < 0.0 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
