//! Report model and the text / JSON / CSV renderers.

use std::fmt::Write as _;

use convexa::membership::Orientation;
use convexa::theorems::{ConstantsRow, ProductBoundReport, SandwichReport};
use convexa::{GridSpec, MembershipReport, Moment, QuadSpec, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{Class, Format};

pub const SCHEMA_VERSION: &str = "1";

/// Echo of the invocation, enough to reproduce a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub f_source: Option<String>,
    pub g_source: Option<String>,
    pub class: Option<Class>,
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_values: Vec<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub concave: bool,
    pub grid: Option<GridSpec>,
    pub quad: Option<QuadSpec>,
    pub format: Format,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn new(subcommand: &str, format: Format) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            f_source: None,
            g_source: None,
            class: None,
            p: None,
            p_values: Vec::new(),
            a: None,
            b: None,
            concave: false,
            grid: None,
            quad: None,
            format,
            out: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Overall {
    AllHold,
    ViolationFound,
    NumericFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    NumericFailure,
    Skipped,
}

/// A named check of the suite: a computed value against a target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub value: Option<f64>,
    pub target: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Membership {
        system: String,
        subject: String,
        orientation: Orientation,
        a: f64,
        b: f64,
        report: MembershipReport,
    },
    Sandwich(SandwichReport),
    Product(ProductBoundReport),
    Constant(ConstantsRow),
    Moment {
        system: String,
        p: Option<f64>,
        closed_form: Moment,
        quadrature: Moment,
        abs_diff: Option<f64>,
    },
    Check(CheckRecord),
    Note {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    /// Hypothesis checks (membership ahead of a theorem) and expected
    /// discrepancies are reported but do not decide `overall`.
    pub affects_overall: bool,
    pub record: Record,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub config: RunConfig,
    pub results: Vec<Entry>,
    pub overall: Overall,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<Entry>) -> Self {
        let counted = || results.iter().filter(|e| e.affects_overall);
        let overall = if counted().any(|e| e.status == Status::NumericFailure) {
            Overall::NumericFailure
        } else if counted().any(|e| e.status == Status::Violated) {
            Overall::ViolationFound
        } else {
            Overall::AllHold
        };
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            config,
            results,
            overall,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Overall::AllHold => 0,
            Overall::ViolationFound => 1,
            Overall::NumericFailure => 3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => render_text(self),
            Format::Json => render_json(self),
            Format::Csv => render_csv(self),
        }
    }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn status_tag(e: &Entry) -> &'static str {
    match (e.status, e.affects_overall) {
        (Status::Holds, true) => "[HOLDS]  ",
        (Status::Holds, false) => "[ok]     ",
        (Status::Violated, true) => "[FAILED] ",
        (Status::Violated, false) => "[note]   ",
        (Status::NumericFailure, _) => "[NUMERIC]",
        (Status::Skipped, _) => "[skipped]",
    }
}

fn fmt_moment(m: &Moment) -> String {
    match m {
        Moment::Finite(v) => format!("{v}"),
        Moment::Divergent => "divergent".to_string(),
    }
}

fn describe(record: &Record) -> String {
    match record {
        Record::Membership {
            system,
            subject,
            orientation,
            a,
            b,
            report,
        } => {
            let head =
                format!("{subject} {orientation:?} under {system} on [{a}, {b}]").to_lowercase();
            match &report.verdict {
                Verdict::NoViolationAtResolution => format!(
                    "{head}: no violation at resolution ({} samples, min slack {:e})",
                    report.samples, report.min_slack
                ),
                Verdict::Violated(c) => format!(
                    "{head}: violated at x={} y={} t={}: lhs={} rhs={} gap={}",
                    c.x, c.y, c.t, c.lhs, c.rhs, c.gap
                ),
            }
        }
        Record::Sandwich(s) => format!(
            "left={} middle={} right={} margins=({:e}, {:e})",
            s.left_value, s.middle_value, s.right_value, s.margins.0, s.margins.1
        ),
        Record::Product(r) => format!("lhs={} bound={} margin={:e}", r.lhs, r.bound, r.margin),
        Record::Constant(r) => {
            let mut s = format!(
                "closed_form={} oracle={} abs_diff={:e}",
                r.closed_form, r.oracle, r.abs_diff
            );
            if let Some(note) = &r.note {
                let _ = write!(s, " ({note})");
            }
            s
        }
        Record::Moment {
            closed_form,
            quadrature,
            abs_diff,
            ..
        } => {
            let mut s = format!(
                "closed_form={} quadrature={}",
                fmt_moment(closed_form),
                fmt_moment(quadrature)
            );
            if let Some(d) = abs_diff {
                let _ = write!(s, " abs_diff={d:e}");
            }
            s
        }
        Record::Check(c) => {
            let mut s = c.detail.clone();
            if let Some(v) = c.value {
                let _ = write!(s, " value={v}");
            }
            if let Some(t) = c.target {
                let _ = write!(s, " target={t}");
            }
            if let Some(t) = c.tolerance {
                let _ = write!(s, " tol={t:e}");
            }
            s
        }
        Record::Note { message } => message.clone(),
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for e in &report.results {
        let _ = writeln!(out, "{} {}: {}", status_tag(e), e.name, describe(&e.record));
    }
    let _ = writeln!(out, "overall: {:?}", report.overall);
    out
}

/// 17 significant digits, '.' decimal.
fn csv_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn is_tabular(report: &Report) -> bool {
    !report.results.is_empty()
        && report
            .results
            .iter()
            .all(|e| matches!(e.record, Record::Constant(_) | Record::Moment { .. }))
}

pub fn render_csv(report: &Report) -> String {
    if is_tabular(report) {
        return render_constants_csv(report);
    }
    let mut out = String::from("record,field,value\n");
    for e in &report.results {
        let value = serde_json::to_value(e).expect("entry serializes");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        for (field, v) in rows {
            if field == "name" {
                continue;
            }
            let _ = writeln!(
                out,
                "{},{},{}",
                csv_field(&e.name),
                csv_field(&field),
                csv_field(&v)
            );
        }
    }
    let _ = writeln!(out, "report,overall,{:?}", report.overall);
    out
}

fn render_constants_csv(report: &Report) -> String {
    let mut out = String::from("name,p,closed_form,oracle,abs_diff\n");
    let p_col = |p: Option<f64>| p.map(csv_number).unwrap_or_default();
    for e in &report.results {
        match &e.record {
            Record::Constant(r) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&r.name),
                    p_col(r.p),
                    csv_number(r.closed_form),
                    csv_number(r.oracle),
                    csv_number(r.abs_diff)
                );
            }
            Record::Moment {
                p,
                closed_form,
                quadrature,
                abs_diff,
                ..
            } => {
                let m = |m: &Moment| {
                    m.value()
                        .map(csv_number)
                        .unwrap_or_else(|| "divergent".into())
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&e.name),
                    p_col(*p),
                    m(closed_form),
                    m(quadrature),
                    abs_diff.map(csv_number).unwrap_or_default()
                );
            }
            _ => unreachable!("checked by is_tabular"),
        }
    }
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => {
            let s = match (n.as_i64(), n.as_u64(), n.as_f64()) {
                (Some(i), _, _) => i.to_string(),
                (_, Some(u), _) => u.to_string(),
                (_, _, Some(f)) => csv_number(f),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), s));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
    }
}
