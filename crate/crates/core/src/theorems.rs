//! Hadamard-type bounds for the classical, Young and Nesbitt classes.
//!
//! Every function here evaluates both sides of a bound for concrete `f`
//! (and `g`) on an interval and reports whether it held. Membership of `f`
//! in the class is not checked; callers decide whether the hypothesis is
//! met (see [`crate::membership`]).

use serde::{Deserialize, Serialize};

use crate::quadrature::{integrate, QuadSpec};
use crate::specfun::beta;
use crate::weights::{
    self, moments, moments_closed_form, nesbitt_m10, nesbitt_m11, nesbitt_m20, young_m01,
    young_m10, young_m11_theorem_display, Moment,
};
use crate::{Error, FunctionDef, Interval, Result, WeightSystem};

const MIN_CHECK_TOL: f64 = 1e-8;

fn check_tol(quad_error: f64) -> f64 {
    MIN_CHECK_TOL.max(10.0 * quad_error)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub name: String,
    pub left_value: f64,
    pub middle_value: f64,
    pub right_value: f64,
    pub left_holds: bool,
    pub right_holds: bool,
    /// `(middle - left, right - middle)`
    pub margins: (f64, f64),
    pub quad_error: f64,
    pub check_tol: f64,
}

impl SandwichReport {
    fn new(name: &str, left: f64, middle: f64, right: f64, quad_error: f64) -> Self {
        let tol = check_tol(quad_error);
        let margins = (middle - left, right - middle);
        Self {
            name: name.to_string(),
            left_value: left,
            middle_value: middle,
            right_value: right,
            left_holds: margins.0 >= -tol,
            right_holds: margins.1 >= -tol,
            margins,
            quad_error,
            check_tol: tol,
        }
    }

    pub fn holds(&self) -> bool {
        self.left_holds && self.right_holds
    }
}

/// `lhs <= bound` with
/// `bound = offset + coeff_aa f(a)g(a) + coeff_bb f(b)g(b) + coeff_n N`.
///
/// For the symmetric bounds `coeff_m` is set, `coeff_aa = coeff_bb = coeff_m`
/// and the bound is evaluated as `offset + coeff_m M + coeff_n N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductBoundReport {
    pub name: String,
    pub lhs: f64,
    /// `(1/(b-a)) ∫ f g`
    pub integral_avg: f64,
    pub fa_ga: f64,
    pub fb_gb: f64,
    /// `f(a)g(a) + f(b)g(b)`
    pub m: f64,
    /// `f(a)g(b) + f(b)g(a)`
    pub n: f64,
    pub coeff_aa: f64,
    pub coeff_bb: f64,
    pub coeff_m: Option<f64>,
    pub coeff_n: f64,
    pub offset: f64,
    pub bound: f64,
    pub holds: bool,
    pub margin: f64,
    pub quad_error: f64,
    pub check_tol: f64,
}

struct Endpoints {
    fa_ga: f64,
    fb_gb: f64,
    m: f64,
    n: f64,
}

fn endpoints(f: &FunctionDef, g: &FunctionDef, interval: Interval) -> Result<Endpoints> {
    let (fa, fb) = (f.eval(interval.a())?, f.eval(interval.b())?);
    let (ga, gb) = (g.eval(interval.a())?, g.eval(interval.b())?);
    Ok(Endpoints {
        fa_ga: fa * ga,
        fb_gb: fb * gb,
        m: fa * ga + fb * gb,
        n: fa * gb + fb * ga,
    })
}

enum Coefficients {
    Symmetric { m: f64, n: f64 },
    Split { aa: f64, bb: f64, n: f64 },
}

fn product_report(
    name: &str,
    lhs: f64,
    avg: (f64, f64),
    ends: &Endpoints,
    coeffs: Coefficients,
    offset: f64,
) -> ProductBoundReport {
    let (integral_avg, quad_error) = avg;
    let (coeff_aa, coeff_bb, coeff_m, coeff_n, bound) = match coeffs {
        Coefficients::Symmetric { m, n } => (m, m, Some(m), n, offset + m * ends.m + n * ends.n),
        Coefficients::Split { aa, bb, n } => (
            aa,
            bb,
            None,
            n,
            offset + aa * ends.fa_ga + bb * ends.fb_gb + n * ends.n,
        ),
    };
    let tol = check_tol(quad_error);
    let margin = bound - lhs;
    ProductBoundReport {
        name: name.to_string(),
        lhs,
        integral_avg,
        fa_ga: ends.fa_ga,
        fb_gb: ends.fb_gb,
        m: ends.m,
        n: ends.n,
        coeff_aa,
        coeff_bb,
        coeff_m,
        coeff_n,
        offset,
        bound,
        holds: margin >= -tol,
        margin,
        quad_error,
        check_tol: tol,
    }
}

/// `(1/(b-a)) ∫ₐᵇ h` and its error estimate, scaled the same way.
fn average<H>(what: &str, h: H, interval: Interval, spec: &QuadSpec) -> Result<(f64, f64)>
where
    H: FnMut(f64) -> Result<f64>,
{
    let r = integrate(h, interval, spec)?;
    if !r.converged {
        return Err(Error::NotConverged {
            what: what.to_string(),
            value: r.value,
            error_estimate: r.error_estimate,
        });
    }
    let w = interval.width();
    Ok((r.value / w, r.error_estimate / w))
}

fn mean_of(f: &FunctionDef, interval: Interval, spec: &QuadSpec) -> Result<(f64, f64)> {
    average(&format!("mean of {f}"), |x| f.eval(x), interval, spec)
}

fn mean_of_product(
    f: &FunctionDef,
    g: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<(f64, f64)> {
    average(
        &format!("mean of ({f})*({g})"),
        |x| Ok(f.eval(x)? * g.eval(x)?),
        interval,
        spec,
    )
}

fn require_young(p: f64) -> Result<()> {
    WeightSystem::young(p).map(|_| ())
}

/// Classical Hadamard sandwich `f(m) <= mean f <= (f(a)+f(b))/2`.
pub fn hadamard_classical(
    f: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<SandwichReport> {
    let (mean, err) = mean_of(f, interval, spec)?;
    let left = f.eval(interval.midpoint())?;
    let right = 0.5 * (f.eval(interval.a())? + f.eval(interval.b())?);
    Ok(SandwichReport::new(
        "hadamard_classical",
        left,
        mean,
        right,
        err,
    ))
}

/// Young right bound `mean f <= m10(p) f(a) + m01(p) f(b)`.
/// The left slot carries the mean and always holds.
pub fn young_right_bound(
    f: &FunctionDef,
    interval: Interval,
    p: f64,
    spec: &QuadSpec,
) -> Result<SandwichReport> {
    require_young(p)?;
    let (mean, err) = mean_of(f, interval, spec)?;
    let right = young_m10(p) * f.eval(interval.a())? + young_m01(p) * f.eval(interval.b())?;
    Ok(SandwichReport::new(
        "young_right_bound",
        mean,
        mean,
        right,
        err,
    ))
}

/// Left coefficient `2^(1/p) p/(p+1)` of the Young sandwich.
pub fn young_sandwich_left_coeff(p: f64) -> f64 {
    2f64.powf(1.0 / p) * p / (p + 1.0)
}

/// Right bracket of the Young sandwich in its Beta form,
/// `p(p+2)/((p+1)(1+2p)) + ((p-1)/p) B((1+p)/p, 2) + (1/p) B(1/p, 2)`.
pub fn young_sandwich_bracket_beta(p: f64) -> Result<f64> {
    Ok(p * (p + 2.0) / ((p + 1.0) * (1.0 + 2.0 * p))
        + (p - 1.0) / p * beta((1.0 + p) / p, 2.0)?.value
        + beta(1.0 / p, 2.0)?.value / p)
}

/// The same bracket simplified, `2p/(p+1)`.
pub fn young_sandwich_bracket(p: f64) -> f64 {
    2.0 * p / (p + 1.0)
}

/// Young sandwich
/// `2^(1/p) p/(p+1) f(m) <= mean f <= [2p/(p+1)] (f(a)+f(b))/2`.
pub fn young_sandwich(
    f: &FunctionDef,
    interval: Interval,
    p: f64,
    spec: &QuadSpec,
) -> Result<SandwichReport> {
    require_young(p)?;
    let from_beta = young_sandwich_bracket_beta(p)?;
    let simplified = young_sandwich_bracket(p);
    if (from_beta - simplified).abs() > 1e-12 * simplified {
        return Err(Error::ConstantMismatch {
            what: format!("young sandwich bracket at p = {p}"),
            left: from_beta,
            right: simplified,
        });
    }
    let (mean, err) = mean_of(f, interval, spec)?;
    let left = young_sandwich_left_coeff(p) * f.eval(interval.midpoint())?;
    let right = simplified * 0.5 * (f.eval(interval.a())? + f.eval(interval.b())?);
    Ok(SandwichReport::new(
        "young_sandwich",
        left,
        mean,
        right,
        err,
    ))
}

/// Young product bound with coefficients `m20(p)`, `m02(p)`, `m11(p)`.
/// Requires `1 < p < 2`; at `p >= 2` the `f(b)g(b)` coefficient diverges.
pub fn young_product_bound(
    f: &FunctionDef,
    g: &FunctionDef,
    interval: Interval,
    p: f64,
    spec: &QuadSpec,
) -> Result<ProductBoundReport> {
    require_young(p)?;
    let bb = weights::young_m02(p)?;
    let aa = weights::young_m20(p);
    let n = weights::young_m11(p)?;
    let ends = endpoints(f, g, interval)?;
    let avg = mean_of_product(f, g, interval, spec)?;
    Ok(product_report(
        "young_product_bound",
        avg.0,
        avg,
        &ends,
        Coefficients::Split { aa, bb, n },
        0.0,
    ))
}

/// Right coefficient `ln(3√3/e)` of the Nesbitt sandwich, per `f(a)+f(b)`.
pub fn nesbitt_right_coeff() -> f64 {
    nesbitt_m10()
}

/// Nesbitt sandwich `f(m) <= mean f <= ln(3√3/e) (f(a)+f(b))`.
pub fn nesbitt_sandwich(
    f: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<SandwichReport> {
    let (mean, err) = mean_of(f, interval, spec)?;
    let left = f.eval(interval.midpoint())?;
    let right = nesbitt_right_coeff() * (f.eval(interval.a())? + f.eval(interval.b())?);
    Ok(SandwichReport::new(
        "nesbitt_sandwich",
        left,
        mean,
        right,
        err,
    ))
}

/// Nesbitt product bound with `M` coefficient `125/6 - (147/8) ln 3`
/// and `N` coefficient `(117/8) ln 3 - 95/6`.
pub fn nesbitt_product_bound(
    f: &FunctionDef,
    g: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<ProductBoundReport> {
    let ends = endpoints(f, g, interval)?;
    let avg = mean_of_product(f, g, interval, spec)?;
    Ok(product_report(
        "nesbitt_product_bound",
        avg.0,
        avg,
        &ends,
        Coefficients::Symmetric {
            m: nesbitt_m20(),
            n: nesbitt_m11(),
        },
        0.0,
    ))
}

/// `5 - (30/8) ln 3`, coefficient of the similarly ordered Nesbitt bound.
pub fn nesbitt_similarly_ordered_coeff() -> f64 {
    5.0 - 30.0 / 8.0 * 3f64.ln()
}

/// Nesbitt bound for similarly ordered `f, g`, i.e.
/// `(f(a) - f(b))(g(a) - g(b)) >= 0`, which gives `N <= M`.
pub fn nesbitt_similarly_ordered_bound(
    f: &FunctionDef,
    g: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<ProductBoundReport> {
    let (a, b) = (interval.a(), interval.b());
    let product = (f.eval(a)? - f.eval(b)?) * (g.eval(a)? - g.eval(b)?);
    if product < 0.0 {
        return Err(Error::Ordering { product });
    }
    let ends = endpoints(f, g, interval)?;
    let avg = mean_of_product(f, g, interval, spec)?;
    Ok(product_report(
        "nesbitt_similarly_ordered_bound",
        avg.0,
        avg,
        &ends,
        Coefficients::Symmetric {
            m: nesbitt_similarly_ordered_coeff(),
            n: 0.0,
        },
        0.0,
    ))
}

/// Both classical product bounds, `(upper, lower)`:
/// `mean fg <= M/3 + N/6` and `2 f(m) g(m) <= mean fg + M/6 + N/3`.
pub fn pachpatte_bounds(
    f: &FunctionDef,
    g: &FunctionDef,
    interval: Interval,
    spec: &QuadSpec,
) -> Result<(ProductBoundReport, ProductBoundReport)> {
    let ends = endpoints(f, g, interval)?;
    let avg = mean_of_product(f, g, interval, spec)?;
    let upper = product_report(
        "pachpatte_upper",
        avg.0,
        avg,
        &ends,
        Coefficients::Symmetric {
            m: 1.0 / 3.0,
            n: 1.0 / 6.0,
        },
        0.0,
    );
    let mid = interval.midpoint();
    let lower = product_report(
        "pachpatte_lower",
        2.0 * f.eval(mid)? * g.eval(mid)?,
        avg,
        &ends,
        Coefficients::Symmetric {
            m: 1.0 / 6.0,
            n: 1.0 / 3.0,
        },
        avg.0,
    );
    Ok((upper, lower))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub name: String,
    pub p: Option<f64>,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConstantsRow {
    fn new(name: &str, p: Option<f64>, closed_form: f64, oracle: f64) -> Self {
        Self {
            name: name.to_string(),
            p,
            closed_form,
            oracle,
            abs_diff: (closed_form - oracle).abs(),
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

pub const ERRATUM_NOTE: &str = "erratum candidate";

fn finite_oracle(m: Moment, what: &str) -> Result<f64> {
    m.value().ok_or_else(|| Error::NotConverged {
        what: what.to_string(),
        value: f64::NAN,
        error_estimate: f64::INFINITY,
    })
}

/// Closed-form constants next to their quadrature oracles.
///
/// The p-independent Nesbitt and classical rows come first, then the Young
/// rows for each requested `p` in order. Young `m02` is omitted where it
/// diverges (`p >= 2`).
pub fn constants_table(p_values: &[f64], spec: &QuadSpec) -> Result<Vec<ConstantsRow>> {
    let mut rows = Vec::new();

    let nq = moments(&WeightSystem::NESBITT, spec)?;
    let q = |m: Moment, what: &str| finite_oracle(m, what);
    rows.push(ConstantsRow::new(
        "nesbitt_m10",
        None,
        nesbitt_m10(),
        q(nq.m10, "nesbitt m10")?,
    ));
    rows.push(ConstantsRow::new(
        "nesbitt_m01",
        None,
        nesbitt_m10(),
        q(nq.m01, "nesbitt m01")?,
    ));
    rows.push(ConstantsRow::new(
        "nesbitt_m20",
        None,
        nesbitt_m20(),
        q(nq.m20, "nesbitt m20")?,
    ));
    rows.push(ConstantsRow::new(
        "nesbitt_m02",
        None,
        nesbitt_m20(),
        q(nq.m02, "nesbitt m02")?,
    ));
    rows.push(ConstantsRow::new(
        "nesbitt_m11",
        None,
        nesbitt_m11(),
        q(nq.m11, "nesbitt m11")?,
    ));
    rows.push(ConstantsRow::new(
        "nesbitt_similarly_ordered",
        None,
        nesbitt_similarly_ordered_coeff(),
        q(nq.m20, "nesbitt m20")? + q(nq.m11, "nesbitt m11")?,
    ));

    let cq = moments(&WeightSystem::CLASSICAL, spec)?;
    let cc = moments_closed_form(&WeightSystem::CLASSICAL);
    for (name, c, o) in [
        ("classical_m10", cc.m10, cq.m10),
        ("classical_m20", cc.m20, cq.m20),
        ("classical_m11", cc.m11, cq.m11),
    ] {
        rows.push(ConstantsRow::new(name, None, q(c, name)?, q(o, name)?));
    }

    for &p in p_values {
        let ws = WeightSystem::young(p)?;
        let yq = moments(&ws, spec)?;
        let some = Some(p);
        rows.push(ConstantsRow::new(
            "young_m10",
            some,
            young_m10(p),
            q(yq.m10, "young m10")?,
        ));
        rows.push(ConstantsRow::new(
            "young_m01",
            some,
            young_m01(p),
            q(yq.m01, "young m01")?,
        ));
        rows.push(ConstantsRow::new(
            "young_sandwich_bracket",
            some,
            young_sandwich_bracket_beta(p)?,
            q(yq.m10, "young m10")? + q(yq.m01, "young m01")?,
        ));
        rows.push(ConstantsRow::new(
            "young_m20",
            some,
            weights::young_m20(p),
            q(yq.m20, "young m20")?,
        ));
        let m11 = q(yq.m11, "young m11")?;
        rows.push(ConstantsRow::new(
            "young_m11",
            some,
            weights::young_m11(p)?,
            m11,
        ));
        rows.push(
            ConstantsRow::new(
                "young_m11_theorem_display",
                some,
                young_m11_theorem_display(p)?,
                m11,
            )
            .with_note(ERRATUM_NOTE),
        );
        if let Ok(m02) = weights::young_m02(p) {
            rows.push(ConstantsRow::new(
                "young_m02",
                some,
                m02,
                q(yq.m02, "young m02")?,
            ));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Builtin;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    fn unit() -> Interval {
        Interval::UNIT
    }

    fn x() -> FunctionDef {
        FunctionDef::builtin(Builtin::Identity)
    }

    fn sq() -> FunctionDef {
        FunctionDef::builtin(Builtin::Square)
    }

    fn one() -> FunctionDef {
        FunctionDef::constant(1.0)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn hadamard_examples() {
        let r = hadamard_classical(&sq(), unit(), &spec()).unwrap();
        assert!(close(r.left_value, 0.25, 1e-15) && close(r.middle_value, 1.0 / 3.0, 1e-14));
        assert!(close(r.right_value, 0.5, 1e-15) && r.holds());
        let r = hadamard_classical(&one(), unit(), &spec()).unwrap();
        assert!(close(r.middle_value, 1.0, 1e-14) && r.holds());
        let r = hadamard_classical(&x(), unit(), &spec()).unwrap();
        assert!(close(r.left_value, 0.5, 0.0) && close(r.middle_value, 0.5, 1e-14) && r.holds());
    }

    #[test]
    fn young_right_examples() {
        let r = young_right_bound(&x(), unit(), 2.0, &spec()).unwrap();
        assert!(close(r.middle_value, 0.5, 1e-14) && close(r.right_value, 0.8, 1e-15) && r.holds());
        for p in [1.1, 2.0, 5.0] {
            let r =
                young_right_bound(&one(), Interval::new(1.0, 3.0).unwrap(), p, &spec()).unwrap();
            assert!(close(r.right_value, 2.0 * p / (p + 1.0), 1e-14));
        }
        let r = young_right_bound(&sq(), Interval::new(1.0, 3.0).unwrap(), 1.0 + 1e-8, &spec())
            .unwrap();
        assert!(close(r.right_value, 0.5 * (1.0 + 9.0), 1e-6 * 10.0));
        assert!(young_right_bound(&x(), unit(), 1.0, &spec()).is_err());
    }

    #[test]
    fn young_sandwich_examples() {
        let r = young_sandwich(&x(), unit(), 2.0, &spec()).unwrap();
        assert!(close(r.left_value, 2f64.sqrt() * 2.0 / 3.0 * 0.5, 1e-15));
        assert!(close(r.right_value, 2.0 / 3.0, 1e-15) && r.holds());
        let r = young_sandwich(&one(), unit(), 2.0, &spec()).unwrap();
        assert!(close(r.left_value, 0.942_809_041_582_063_4, 1e-15));
        assert!(close(r.right_value, 4.0 / 3.0, 1e-15));
        assert!(young_sandwich(&x(), unit(), 0.9, &spec()).is_err());
    }

    #[test]
    fn young_bracket_forms_agree() {
        for p in [1.0 + 1e-8, 1.01, 1.1, 1.5, 2.0, 3.0, 10.0, 100.0] {
            let b = young_sandwich_bracket_beta(p).unwrap();
            assert!((b - young_sandwich_bracket(p)).abs() <= 1e-12 * b, "p={p}");
        }
    }

    #[test]
    fn degeneration_to_classical() {
        let p = 1.0 + 1e-8;
        let iv = Interval::new(1.0, 3.0).unwrap();
        let battery = [sq(), x(), FunctionDef::builtin(Builtin::Exponential)];
        for f in &battery {
            let h = hadamard_classical(f, iv, &spec()).unwrap();
            let y = young_sandwich(f, iv, p, &spec()).unwrap();
            let r = young_right_bound(f, iv, p, &spec()).unwrap();
            assert!(close(
                y.left_value,
                h.left_value,
                1e-6 * h.left_value.abs().max(1.0)
            ));
            assert!(close(
                y.right_value,
                h.right_value,
                1e-6 * h.right_value.abs().max(1.0)
            ));
            assert!(close(
                r.right_value,
                h.right_value,
                1e-6 * h.right_value.abs().max(1.0)
            ));
        }
        assert!(close(young_m10(p), 0.5, 1e-6) && close(young_m01(p), 0.5, 1e-6));
    }

    #[test]
    fn young_product_examples() {
        let r = young_product_bound(&x(), &x(), unit(), 1.5, &spec()).unwrap();
        assert!(close(r.integral_avg, 1.0 / 3.0, 1e-14));
        assert!(close(r.coeff_n, 0.207_692_307_692_307_7, 1e-14));
        assert!(r.coeff_m.is_none() && r.holds);
        // f(a)=0, f(b)=1: only the f(b)g(b) coefficient contributes
        assert_eq!(r.bound, r.coeff_bb);
        for p in [2.0, 3.0] {
            let err = young_product_bound(&x(), &x(), unit(), p, &spec()).unwrap_err();
            assert!(matches!(err, Error::DivergentCoefficient { .. }), "{err:?}");
        }
    }

    #[test]
    fn nesbitt_examples() {
        let r = nesbitt_sandwich(&sq(), unit(), &spec()).unwrap();
        assert!(close(r.right_value, 0.647_918_433_002_164_5, 1e-15) && r.holds());
        let r = nesbitt_sandwich(&one(), unit(), &spec()).unwrap();
        assert!(close(r.right_value, 2.0 * 0.647_918_433_002_164_5, 1e-15));
        let r = nesbitt_sandwich(&x(), unit(), &spec()).unwrap();
        assert!(close(r.left_value, 0.5, 0.0) && r.holds());

        let r = nesbitt_product_bound(&x(), &x(), unit(), &spec()).unwrap();
        assert!(close(r.bound, 0.646_332_529_056_817_8, 1e-14) && r.holds);
        let r = nesbitt_product_bound(&one(), &one(), unit(), &spec()).unwrap();
        assert!(close(r.bound, 1.760_407_834_989_177_3, 1e-13) && r.holds);
    }

    #[test]
    fn nesbitt_square_of_lemma() {
        // m20 + 2 m11 + m02 = ∫ L(t)² dt
        let ws = WeightSystem::NESBITT;
        let r = integrate(|t| Ok(ws.lemma_rhs(t)?.powi(2)), unit(), &spec()).unwrap();
        let sum = 2.0 * nesbitt_m20() + 2.0 * nesbitt_m11();
        assert!((sum - r.value).abs() <= 1e-9);
    }

    #[test]
    fn similarly_ordered() {
        let r = nesbitt_similarly_ordered_bound(&x(), &x(), unit(), &spec()).unwrap();
        assert!(close(r.bound, 0.880_203_917_494_588_7, 1e-14) && r.holds);
        let anti = FunctionDef::parse("-x+1").unwrap();
        assert!(matches!(
            nesbitt_similarly_ordered_bound(&x(), &anti, unit(), &spec()),
            Err(Error::Ordering { .. })
        ));
        let r = nesbitt_similarly_ordered_bound(&one(), &one(), unit(), &spec()).unwrap();
        assert!(close(r.bound, 2.0 * 0.880_203_917_494_588_7, 1e-13) && r.holds);
        let sum = nesbitt_m20() + nesbitt_m11();
        assert!((nesbitt_similarly_ordered_coeff() - sum).abs() <= 1e-12);
    }

    #[test]
    fn pachpatte_equality_cases() {
        let (up, low) = pachpatte_bounds(&x(), &x(), unit(), &spec()).unwrap();
        assert!(close(up.lhs, up.bound, 1e-10) && up.holds);
        assert!(close(low.lhs, 0.5, 0.0) && close(low.bound, 0.5, 1e-10) && low.holds);
        let (up, _) = pachpatte_bounds(&one(), &one(), unit(), &spec()).unwrap();
        assert!(close(up.lhs, 1.0, 1e-14) && close(up.bound, 1.0, 1e-15));
    }

    #[test]
    fn violated_bound_is_reported() {
        // concave on [0, 1]: the right-hand inequality must fail
        let f = FunctionDef::parse("sin(3*x)").unwrap();
        let r = hadamard_classical(&f, unit(), &spec()).unwrap();
        assert!(!r.left_holds || !r.right_holds);
    }

    #[test]
    fn nonconvergent_mean_is_an_error() {
        let f = FunctionDef::parse("1/x").unwrap();
        let err = hadamard_classical(&f, unit(), &spec()).unwrap_err();
        assert!(
            matches!(err, Error::NotConverged { .. } | Error::Eval { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn coefficient_positivity() {
        for p in [1.01, 1.1, 1.5, 1.9] {
            assert!(weights::young_m20(p) > 0.0);
            assert!(weights::young_m02(p).unwrap() > 0.0);
            assert!(weights::young_m11(p).unwrap() > 0.0);
            assert!(young_sandwich_left_coeff(p) > 0.0);
        }
        for p in [2.0, 3.0, 10.0] {
            assert!(young_m10(p) > 0.0 && young_m01(p) > 0.0);
        }
        assert!(
            nesbitt_m20() > 0.0 && nesbitt_m11() > 0.0 && nesbitt_similarly_ordered_coeff() > 0.0
        );
    }

    #[test]
    fn constants_table_rows() {
        let rows = constants_table(&[1.5, 2.0], &spec()).unwrap();
        let find =
            |name: &str, p: Option<f64>| rows.iter().find(|r| r.name == name && r.p == p).unwrap();
        let r = find("young_m10", Some(2.0));
        assert!(close(r.closed_form, 8.0 / 15.0, 1e-15) && r.abs_diff <= 1e-9);
        let r = find("nesbitt_m11", None);
        assert!(close(r.closed_form, 0.233_871_388_437_770_9, 1e-14) && r.abs_diff <= 1e-9);
        let r = find("young_m11_theorem_display", Some(1.5));
        assert!(close(r.abs_diff, 0.042_857_142_857_142_86, 1e-9));
        assert_eq!(r.note.as_deref(), Some(ERRATUM_NOTE));
        assert!(find("young_m11_theorem_display", Some(2.0)).abs_diff <= 1e-9);
        assert!(rows
            .iter()
            .all(|r| r.name != "young_m02" || r.p == Some(1.5)));
        for r in rows.iter().filter(|r| r.note.is_none()) {
            assert!(r.abs_diff <= 1e-9, "{r:?}");
        }
    }
}
