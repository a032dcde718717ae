//! Browser demo: weight curves, membership checks and sandwich bounds.
//!
//! Every export takes plain numbers and strings and returns a JSON string,
//! either the result or `{"error": "..."}`, so the page needs no glue beyond
//! what wasm-bindgen generates.

use convexa::membership::check_convex;
use convexa::theorems::{self, SandwichReport};
use convexa::{FunctionDef, GridSpec, Interval, MembershipReport, QuadSpec, WeightSystem};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// A coarser grid than the CLI default keeps the page responsive.
const DEMO_GRID: GridSpec = GridSpec {
    nx: 25,
    ny: 25,
    nt: 49,
    t_min: 1e-4,
    tol: 1e-9,
};

#[derive(Debug, Serialize)]
pub struct Curve {
    pub system: String,
    pub t: Vec<f64>,
    pub wx: Vec<f64>,
    pub wy: Vec<f64>,
    pub lemma: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct Membership {
    pub system: String,
    pub report: MembershipReport,
}

#[derive(Debug, Serialize)]
pub struct Sandwiches {
    pub system: String,
    pub member: bool,
    pub reports: Vec<SandwichReport>,
}

fn system(class: &str, p: f64) -> Result<WeightSystem, String> {
    match class {
        "classical" => Ok(WeightSystem::CLASSICAL),
        "nesbitt" => Ok(WeightSystem::NESBITT),
        "young" => WeightSystem::young(p).map_err(|e| e.to_string()),
        other => Err(format!("unknown class {other:?}")),
    }
}

fn setup(
    src: &str,
    class: &str,
    p: f64,
    a: f64,
    b: f64,
) -> Result<(FunctionDef, WeightSystem, Interval), String> {
    let f = FunctionDef::parse(src).map_err(|e| e.to_string())?;
    let ws = system(class, p)?;
    let i = Interval::new(a, b).map_err(|e| e.to_string())?;
    Ok((f, ws, i))
}

/// Sample `w_x`, `w_y` and the lemma right-hand side at `n` points of `(0, 1]`.
pub fn curve(class: &str, p: f64, n: usize) -> Result<Curve, String> {
    let ws = system(class, p)?;
    if n < 2 {
        return Err("need at least 2 points".into());
    }
    let t = Interval::new(1e-3, 1.0)
        .map_err(|e| e.to_string())?
        .linspace(n);
    let mut c = Curve {
        system: ws.to_string(),
        t: Vec::with_capacity(n),
        wx: Vec::with_capacity(n),
        wy: Vec::with_capacity(n),
        lemma: Vec::with_capacity(n),
    };
    for &t in &t {
        let w = ws.eval(t).map_err(|e| e.to_string())?;
        c.t.push(t);
        c.wx.push(w.wx);
        c.wy.push(w.wy);
        c.lemma.push(ws.lemma_rhs(t).map_err(|e| e.to_string())?);
    }
    Ok(c)
}

pub fn membership(src: &str, class: &str, p: f64, a: f64, b: f64) -> Result<Membership, String> {
    let (f, ws, i) = setup(src, class, p, a, b)?;
    let report = check_convex(&f, i, &ws, &DEMO_GRID).map_err(|e| e.to_string())?;
    Ok(Membership {
        system: ws.to_string(),
        report,
    })
}

pub fn sandwiches(src: &str, class: &str, p: f64, a: f64, b: f64) -> Result<Sandwiches, String> {
    let (f, ws, i) = setup(src, class, p, a, b)?;
    let spec = QuadSpec::default();
    let member = check_convex(&f, i, &ws, &DEMO_GRID)
        .map_err(|e| e.to_string())?
        .holds();
    let reports = match ws.p() {
        Some(p) => vec![
            theorems::young_sandwich(&f, i, p, &spec),
            theorems::young_right_bound(&f, i, p, &spec),
        ],
        None if ws == WeightSystem::CLASSICAL => vec![theorems::hadamard_classical(&f, i, &spec)],
        None => vec![theorems::nesbitt_sandwich(&f, i, &spec)],
    };
    Ok(Sandwiches {
        system: ws.to_string(),
        member,
        reports: reports
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?,
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[wasm_bindgen]
pub fn weight_curve(class: &str, p: f64, n: usize) -> String {
    to_json(curve(class, p, n))
}

#[wasm_bindgen]
pub fn check_membership(src: &str, class: &str, p: f64, a: f64, b: f64) -> String {
    to_json(membership(src, class, p, a, b))
}

#[wasm_bindgen]
pub fn sandwich(src: &str, class: &str, p: f64, a: f64, b: f64) -> String {
    to_json(sandwiches(src, class, p, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn curve_has_lemma_above_one() {
        let v = parse(weight_curve("young", 2.0, 50));
        let lemma = v["lemma"].as_array().unwrap();
        assert_eq!(lemma.len(), 50);
        assert!(lemma.iter().all(|l| l.as_f64().unwrap() >= 1.0 - 1e-12));
        assert_eq!(v["system"], "young(p=2)");
    }

    #[test]
    fn classical_curve_is_linear() {
        let c = curve("classical", f64::NAN, 11).unwrap();
        for (t, wx) in c.t.iter().zip(&c.wx) {
            assert_eq!(t, wx);
        }
    }

    #[test]
    fn membership_verdicts() {
        let v = parse(check_membership("x^2", "nesbitt", 0.0, 0.0, 2.0));
        assert_eq!(
            v["report"]["verdict"]["status"],
            "no_violation_at_resolution"
        );
        let v = parse(check_membership("-1", "young", 2.0, 0.0, 1.0));
        assert_eq!(v["report"]["verdict"]["status"], "violated");
    }

    #[test]
    fn young_sandwich_values() {
        let v = parse(sandwich("x", "young", 2.0, 0.0, 1.0));
        assert_eq!(v["member"], true);
        let r = &v["reports"][0];
        assert!((r["left_value"].as_f64().unwrap() - 0.4714045207910317).abs() < 1e-12);
        assert!((r["right_value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn errors_are_json() {
        for s in [
            weight_curve("young", 0.5, 10),
            weight_curve("bogus", 2.0, 10),
            check_membership("x^", "classical", 0.0, 0.0, 1.0),
            sandwich("x", "classical", 0.0, 1.0, 0.0),
        ] {
            assert!(parse(s)["error"].is_string());
        }
    }
}
