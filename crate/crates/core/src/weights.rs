//! Weight systems: the coefficient pair `(w_x(t), w_y(t))` multiplying `f(x)`
//! and `f(y)` on the right of a convexity-type inequality
//! `f(t x + (1 - t) y) <= w_x(t) f(x) + w_y(t) f(y)`.
//!
//! * Classical: `(t, 1 - t)`.
//! * Young(p): `w_x = (1/p) t^(1/p) + ((p-1)/p) t^(1+1/p)`,
//!   `w_y = ((p-1)/p)(1-t) t^(1/p) + (1/p) t^(1/p-1) (1-t)`.
//! * Nesbitt: `w_x = 2t²/(3-2t) + 2t(1-t)/(1+2t)`,
//!   `w_y = 2t(1-t)/(3-2t) + 2(1-t)²/(1+2t)`.
//!
//! For both non-classical systems `w_x = t L(t)` and `w_y = (1 - t) L(t)`,
//! where `L(t) >= 1` is the right-hand side of the lemma obtained from
//! Young's (resp. Nesbitt's) inequality. The Young `w_y` is singular at
//! `t = 0` for every `p > 1`, so the domain is `(0, 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate_unit, QuadSpec};
use crate::specfun::beta;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Classical,
    Young,
    Nesbitt,
}

/// A weight system; `p` is present exactly for Young and then `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightSystem {
    kind: WeightKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
}

impl WeightSystem {
    pub const CLASSICAL: WeightSystem = WeightSystem {
        kind: WeightKind::Classical,
        p: None,
    };
    pub const NESBITT: WeightSystem = WeightSystem {
        kind: WeightKind::Nesbitt,
        p: None,
    };

    pub fn young(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::Domain {
                function: "young weights",
                value: p,
                expected: "p > 1",
            });
        }
        Ok(WeightSystem {
            kind: WeightKind::Young,
            p: Some(p),
        })
    }

    pub fn new(kind: WeightKind, p: Option<f64>) -> Result<Self> {
        match (kind, p) {
            (WeightKind::Young, Some(p)) => Self::young(p),
            (WeightKind::Young, None) => Err(Error::InvalidSpec {
                what: "weight system",
                message: "young weights need p".into(),
            }),
            (_, Some(_)) => Err(Error::InvalidSpec {
                what: "weight system",
                message: format!("p is only meaningful for young weights, not {kind:?}"),
            }),
            (WeightKind::Classical, None) => Ok(Self::CLASSICAL),
            (WeightKind::Nesbitt, None) => Ok(Self::NESBITT),
        }
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn p(&self) -> Option<f64> {
        self.p
    }

    /// `(w_x(t), w_y(t))` for `t ∈ (0, 1]`.
    pub fn eval(&self, t: f64) -> Result<WeightPair> {
        check_t(t)?;
        let (wx, wy) = self.raw(t);
        Ok(WeightPair { wx, wy, t })
    }

    /// Lemma right-hand side; equals `w_x + w_y` identically.
    pub fn lemma_rhs(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(match (self.kind, self.p) {
            (WeightKind::Young, Some(p)) => {
                t.powf(1.0 / p - 1.0) / p + (1.0 - 1.0 / p) * t.powf(1.0 / p)
            }
            (WeightKind::Nesbitt, _) => {
                2.0 * t / (3.0 - 2.0 * t) + 2.0 * (1.0 - t) / (1.0 + 2.0 * t)
            }
            _ => 1.0,
        })
    }

    /// Weights without the domain check. At `t = 0` this returns the
    /// one-sided limits (infinite for the Young `w_y`).
    pub(crate) fn raw(&self, t: f64) -> (f64, f64) {
        let s = 1.0 - t;
        match (self.kind, self.p) {
            (WeightKind::Young, Some(p)) => {
                // (1 + (p-1) t)/p is exactly 1 at t = 1, so w_x(1) = 1
                let shape = (1.0 + (p - 1.0) * t) / p;
                let wx = t.powf(1.0 / p) * shape;
                let wy = if t == 0.0 {
                    f64::INFINITY
                } else {
                    s * t.powf(1.0 / p - 1.0) * shape
                };
                (wx, wy)
            }
            (WeightKind::Nesbitt, _) => {
                let wx = 2.0 * t * t / (3.0 - 2.0 * t) + 2.0 * t * s / (1.0 + 2.0 * t);
                let wy = 2.0 * t * s / (3.0 - 2.0 * t) + 2.0 * s * s / (1.0 + 2.0 * t);
                (wx, wy)
            }
            _ => (t, s),
        }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.p) {
            (WeightKind::Young, Some(p)) => write!(f, "young(p={p})"),
            (WeightKind::Nesbitt, _) => write!(f, "nesbitt"),
            _ => write!(f, "classical"),
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "weights",
            value: t,
            expected: "0 < t <= 1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightPair {
    pub wx: f64,
    pub wy: f64,
    pub t: f64,
}

impl WeightPair {
    pub fn sum(&self) -> f64 {
        self.wx + self.wy
    }
}

/// A weight moment: finite, or divergent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    Finite(f64),
    Divergent,
}

impl Moment {
    pub fn value(&self) -> Option<f64> {
        match self {
            Moment::Finite(v) => Some(*v),
            Moment::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Moment::Divergent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    Quadrature,
}

/// `m_jk = ∫₀¹ w_x^j w_y^k dt` for the five combinations the bounds use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub m10: Moment,
    pub m01: Moment,
    pub m20: Moment,
    pub m02: Moment,
    pub m11: Moment,
    pub method: MomentMethod,
}

impl MomentTable {
    pub fn entries(&self) -> [(&'static str, Moment); 5] {
        [
            ("m10", self.m10),
            ("m01", self.m01),
            ("m20", self.m20),
            ("m02", self.m02),
            ("m11", self.m11),
        ]
    }
}

pub fn nesbitt_m10() -> f64 {
    // ln(3√3/e)
    1.5 * 3f64.ln() - 1.0
}

pub fn nesbitt_m20() -> f64 {
    125.0 / 6.0 - 147.0 / 8.0 * 3f64.ln()
}

pub fn nesbitt_m11() -> f64 {
    117.0 / 8.0 * 3f64.ln() - 95.0 / 6.0
}

pub fn young_m10(p: f64) -> f64 {
    (p * p + 2.0 * p) / ((p + 1.0) * (2.0 * p + 1.0))
}

pub fn young_m01(p: f64) -> f64 {
    3.0 * p * p / ((p + 1.0) * (2.0 * p + 1.0))
}

pub fn young_m20(p: f64) -> f64 {
    1.0 / (p * (2.0 + p)) + (p - 1.0) / (p * (1.0 + p)) + (p - 1.0).powi(2) / (p * (2.0 + 3.0 * p))
}

/// Coefficient of `f(b)g(b)` in the Young product bound; needs `2/p - 1 > 0`.
pub fn young_m02(p: f64) -> Result<f64> {
    let q = (p - 1.0) / p;
    let inner = beta(2.0 / p - 1.0, 3.0).map_err(|_| Error::DivergentCoefficient {
        coefficient: "β(2/p−1, 3)".into(),
        p,
    })?;
    Ok(q * q * beta(2.0 / p + 1.0, 3.0)?.value
        + 2.0 * (p - 1.0) / (p * p) * beta(2.0 / p, 3.0)?.value
        + inner.value / (p * p))
}

/// Cross coefficient of the Young product bound, as obtained by integrating
/// `w_x w_y` term by term.
pub fn young_m11(p: f64) -> Result<f64> {
    let q = (p - 1.0) / p;
    Ok(2.0 * (p - 1.0) / (p * p) * beta(2.0 / p + 1.0, 2.0)?.value
        + q * q * beta(2.0 / p + 2.0, 2.0)?.value
        + beta(2.0 / p, 2.0)?.value / (p * p))
}

/// The cross coefficient as printed in the statement of the Young product
/// bound. It is not `∫ w_x w_y` except at `p = 2`; kept for the erratum table.
pub fn young_m11_theorem_display(p: f64) -> Result<f64> {
    let q = (p - 1.0) / p;
    Ok((p - 1.0) / (p * p) * beta(2.0 / p, 2.0)?.value
        + q * q * beta(2.0 / p + 2.0, 2.0)?.value
        + beta(2.0 / p + 1.0, 2.0)?.value / p)
}

/// Moments from their closed forms (rational, Beta, and `ln 3` expressions).
pub fn moments_closed_form(ws: &WeightSystem) -> MomentTable {
    let f = Moment::Finite;
    let (m10, m01, m20, m02, m11) = match (ws.kind, ws.p) {
        (WeightKind::Young, Some(p)) => (
            f(young_m10(p)),
            f(young_m01(p)),
            f(young_m20(p)),
            young_m02(p).map_or(Moment::Divergent, f),
            young_m11(p).map_or(Moment::Divergent, f),
        ),
        (WeightKind::Nesbitt, _) => (
            f(nesbitt_m10()),
            f(nesbitt_m10()),
            f(nesbitt_m20()),
            f(nesbitt_m20()),
            f(nesbitt_m11()),
        ),
        _ => (f(0.5), f(0.5), f(1.0 / 3.0), f(1.0 / 3.0), f(1.0 / 6.0)),
    };
    MomentTable {
        m10,
        m01,
        m20,
        m02,
        m11,
        method: MomentMethod::ClosedForm,
    }
}

/// Leading exponent `e` of `t^e` at `t → 0` for `w_x^j w_y^k` (Young only).
fn young_exponent(p: f64, j: i32, k: i32) -> f64 {
    j as f64 / p + k as f64 * (1.0 / p - 1.0)
}

/// Moments by adaptive quadrature of the weight products. An integral that
/// fails to converge is recorded as divergent.
pub fn moments(ws: &WeightSystem, spec: &QuadSpec) -> Result<MomentTable> {
    let one = |j: i32, k: i32| -> Result<Moment> {
        let mut local = spec.without_singularity();
        if let Some(p) = ws.p {
            let e = young_exponent(p, j, k);
            if e < 0.0 && e > -1.0 {
                local = local.with_singularity(e);
            }
        }
        let r = integrate_unit(
            |t| {
                let (wx, wy) = ws.raw(t);
                Ok(wx.powi(j) * wy.powi(k))
            },
            &local,
        )?;
        Ok(if r.converged {
            Moment::Finite(r.value)
        } else {
            Moment::Divergent
        })
    };
    Ok(MomentTable {
        m10: one(1, 0)?,
        m01: one(0, 1)?,
        m20: one(2, 0)?,
        m02: one(0, 2)?,
        m11: one(1, 1)?,
        method: MomentMethod::Quadrature,
    })
}

/// Gap in Young's inequality, `a^p/p + b^q/q - ab` with `1/p + 1/q = 1`.
/// Non-negative, zero iff `a^p = b^q`.
pub fn young_inequality(a: f64, b: f64, p: f64) -> Result<f64> {
    for (v, function) in [(a, "young_inequality a"), (b, "young_inequality b")] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain {
                function,
                value: v,
                expected: "positive",
            });
        }
    }
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Domain {
            function: "young_inequality p",
            value: p,
            expected: "p > 1",
        });
    }
    let q = p / (p - 1.0);
    Ok(a.powf(p) / p + b.powf(q) / q - a * b)
}

/// Gap in Nesbitt's inequality, `a/(b+c) + b/(a+c) + c/(a+b) - 3/2`.
pub fn nesbitt_inequality(a: f64, b: f64, c: f64) -> Result<f64> {
    for v in [a, b, c] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain {
                function: "nesbitt_inequality",
                value: v,
                expected: "positive",
            });
        }
    }
    Ok(a / (b + c) + b / (a + c) + c / (a + b) - 1.5)
}

/// Whether `w_x(t) >= t` and `w_y(t) >= 1 - t` on the grid `t = i/n`,
/// `i = 1..=n`, together with the smallest margin seen. When it holds, every
/// non-negative classically convex function also satisfies `ws`.
pub fn dominates_classical(ws: &WeightSystem, resolution: usize) -> Result<(bool, f64)> {
    if resolution < 2 {
        return Err(Error::InvalidSpec {
            what: "grid resolution",
            message: format!("need at least 2 points, got {resolution}"),
        });
    }
    let mut margin = f64::INFINITY;
    let mut holds = true;
    for i in 1..=resolution {
        let t = i as f64 / resolution as f64;
        let w = ws.eval(t)?;
        let (dx, dy) = (w.wx - t, w.wy - (1.0 - t));
        holds &= dx >= 0.0 && dy >= 0.0;
        margin = margin.min(dx).min(dy);
    }
    Ok((holds, margin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn young(p: f64) -> WeightSystem {
        WeightSystem::young(p).unwrap()
    }

    const PS: [f64; 6] = [1.01, 1.1, 1.5, 2.0, 3.0, 10.0];

    fn t_grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| 1e-4 + (1.0 - 1e-4) * i as f64 / (n - 1) as f64)
    }

    #[test]
    fn eval_examples() {
        let w = young(2.0).eval(0.25).unwrap();
        assert!((w.wx - 0.3125).abs() < 1e-15);
        assert!((w.wy - 0.9375).abs() < 1e-15);
        let w = WeightSystem::NESBITT.eval(0.5).unwrap();
        assert_eq!((w.wx, w.wy), (0.5, 0.5));
        let w = WeightSystem::CLASSICAL.eval(0.3).unwrap();
        assert_eq!((w.wx, w.wy), (0.3, 0.7));
    }

    #[test]
    fn eval_rejects_out_of_domain() {
        for t in [0.0, -0.1, 1.0 + 1e-15, f64::NAN] {
            assert!(young(2.0).eval(t).is_err());
            assert!(WeightSystem::NESBITT.lemma_rhs(t).is_err());
        }
    }

    #[test]
    fn constructor_invariants() {
        assert!(WeightSystem::young(1.0).is_err());
        assert!(WeightSystem::young(0.5).is_err());
        assert!(WeightSystem::new(WeightKind::Young, None).is_err());
        assert!(WeightSystem::new(WeightKind::Nesbitt, Some(2.0)).is_err());
        assert_eq!(
            WeightSystem::new(WeightKind::Classical, None).unwrap(),
            WeightSystem::CLASSICAL
        );
    }

    #[test]
    fn lemma_examples() {
        assert!((young(2.0).lemma_rhs(0.25).unwrap() - 1.25).abs() < 1e-15);
        assert!((WeightSystem::NESBITT.lemma_rhs(0.25).unwrap() - 1.2).abs() < 1e-15);
        assert_eq!(WeightSystem::CLASSICAL.lemma_rhs(0.77).unwrap(), 1.0);
    }

    #[test]
    fn sum_identity_and_lemma_positivity() {
        let mut systems: Vec<WeightSystem> = PS.iter().map(|&p| young(p)).collect();
        systems.push(WeightSystem::NESBITT);
        for ws in systems {
            for t in t_grid(999) {
                let w = ws.eval(t).unwrap();
                let rhs = ws.lemma_rhs(t).unwrap();
                assert!((w.sum() - rhs).abs() <= 1e-12 * rhs.max(1.0), "{ws} t={t}");
                assert!(rhs - 1.0 >= -1e-12, "{ws} t={t}");
            }
        }
    }

    #[test]
    fn nesbitt_symmetry() {
        for i in 1..1000 {
            let t = i as f64 / 1000.0;
            let w = WeightSystem::NESBITT.eval(t).unwrap();
            let m = WeightSystem::NESBITT.eval(1.0 - t).unwrap();
            assert!((w.wy - m.wx).abs() <= 1e-12);
        }
    }

    #[test]
    fn young_endpoint_exact() {
        for p in PS.into_iter().chain([1.0 + 1e-8, 1.37, 7.3]) {
            let w = young(p).eval(1.0).unwrap();
            assert_eq!(w.wx, 1.0, "p={p}");
            assert_eq!(w.wy, 0.0, "p={p}");
        }
    }

    #[test]
    fn young_degenerates_to_classical() {
        let ws = young(1.0 + 1e-8);
        for i in 0..=99 {
            let t = 0.01 + 0.99 * i as f64 / 99.0;
            let w = ws.eval(t).unwrap();
            assert!((w.wx - t).abs() <= 1e-6);
            assert!((w.wy - (1.0 - t)).abs() <= 1e-6);
        }
    }

    #[test]
    fn closed_form_examples() {
        let m = moments_closed_form(&young(2.0));
        assert!((m.m10.value().unwrap() - 8.0 / 15.0).abs() < 1e-15);
        assert!((m.m01.value().unwrap() - 12.0 / 15.0).abs() < 1e-15);
        assert!(m.m02.is_divergent());

        // 40-digit reference values for the Nesbitt constants
        let n = moments_closed_form(&WeightSystem::NESBITT);
        assert!((n.m10.value().unwrap() - 0.647_918_433_002_164_537).abs() < 1e-15);
        assert!((n.m20.value().unwrap() - 0.646_332_529_056_817_754).abs() < 1e-14);
        assert!((n.m11.value().unwrap() - 0.233_871_388_437_770_903).abs() < 1e-14);

        let c = moments_closed_form(&WeightSystem::CLASSICAL);
        assert_eq!(c.m10, Moment::Finite(0.5));
        assert_eq!(c.m11, Moment::Finite(1.0 / 6.0));
    }

    #[test]
    fn young_product_coefficients_reference() {
        // 40-digit mpmath values (Beta forms, cross-checked by substituted quadrature)
        assert!((young_m20(1.5) - 0.349_450_549_450_549_45).abs() < 1e-14);
        assert!((young_m11(1.5).unwrap() - 0.207_692_307_692_307_69).abs() < 1e-14);
        assert!((young_m11_theorem_display(1.5).unwrap() - 0.164_835_164_835_164_84).abs() < 1e-14);
        assert!((young_m02(1.9).unwrap() - 5.040_660_488_936_351_0).abs() < 1e-11);
        assert!((young_m11(2.0).unwrap() - young_m11_theorem_display(2.0).unwrap()).abs() < 1e-14);
        assert!(matches!(
            young_m02(2.0),
            Err(Error::DivergentCoefficient { .. })
        ));
        assert!(matches!(
            young_m02(3.0),
            Err(Error::DivergentCoefficient { .. })
        ));
    }

    #[test]
    fn moment_routes_agree() {
        let spec = QuadSpec::default();
        let mut systems: Vec<WeightSystem> = [1.01, 1.1, 1.5, 1.9, 2.0, 3.0, 10.0]
            .iter()
            .map(|&p| young(p))
            .collect();
        systems.push(WeightSystem::NESBITT);
        systems.push(WeightSystem::CLASSICAL);
        for ws in systems {
            let closed = moments_closed_form(&ws);
            let quad = moments(&ws, &spec).unwrap();
            for ((name, c), (_, q)) in closed.entries().into_iter().zip(quad.entries()) {
                match (c, q) {
                    (Moment::Finite(c), Moment::Finite(q)) => {
                        assert!((c - q).abs() <= 1e-9, "{ws} {name}: {c} vs {q}")
                    }
                    (Moment::Divergent, Moment::Divergent) => {}
                    _ => panic!("{ws} {name}: {c:?} vs {q:?}"),
                }
            }
        }
    }

    #[test]
    fn inequality_gaps() {
        assert!(young_inequality(1.0, 1.0, 2.0).unwrap().abs() < 1e-15);
        assert!((young_inequality(2.0, 1.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((young_inequality(8.0, 4.0, 3.0).unwrap() - 144.0).abs() < 1e-12);
        assert!(young_inequality(0.0, 1.0, 2.0).is_err());
        assert!(young_inequality(1.0, 1.0, 1.0).is_err());

        assert!(nesbitt_inequality(1.0, 1.0, 1.0).unwrap().abs() < 1e-15);
        assert!((nesbitt_inequality(1.0, 2.0, 3.0).unwrap() - 0.2).abs() < 1e-15);
        let g = nesbitt_inequality(0.25, 0.5, 0.75).unwrap();
        assert!((g - 0.2).abs() < 1e-15);
        assert!((g - (WeightSystem::NESBITT.lemma_rhs(0.25).unwrap() - 1.0)).abs() < 1e-15);
        assert!(nesbitt_inequality(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn domination() {
        assert_eq!(
            dominates_classical(&WeightSystem::CLASSICAL, 999).unwrap(),
            (true, 0.0)
        );
        assert!(dominates_classical(&young(2.0), 999).unwrap().0);
        assert!(dominates_classical(&WeightSystem::NESBITT, 999).unwrap().0);
        assert!(dominates_classical(&young(2.0), 1).is_err());
    }
}
