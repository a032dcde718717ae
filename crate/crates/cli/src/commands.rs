//! Subcommand execution: turns parsed arguments into a [`Report`].

use convexa::membership::{check_concave, check_convex, Orientation};
use convexa::theorems::{self, ERRATUM_NOTE};
use convexa::weights::{moments, moments_closed_form};
use convexa::{Error, FunctionDef, GridSpec, Interval, Moment, QuadSpec, WeightKind, WeightSystem};

use crate::args::{Class, ClassArgs, Command, Format, IntervalArgs};
use crate::report::{Entry, Record, Report, RunConfig, Status};
use crate::verify::verify_paper;

/// Agreement required between a closed form and its quadrature oracle.
pub const AGREEMENT_TOL: f64 = 1e-9;

pub const DEFAULT_P_VALUES: [f64; 7] = [1.01, 1.1, 1.5, 1.9, 2.0, 3.0, 10.0];

/// A failure that prevents a report from being produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: if is_numeric(&e) { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

/// Numeric failures end up in the report; anything else is a usage error.
pub fn is_numeric(e: &Error) -> bool {
    matches!(
        e,
        Error::DivergentCoefficient { .. }
            | Error::NotConverged { .. }
            | Error::ConstantMismatch { .. }
    )
}

/// Run a parsed subcommand.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Check {
            f,
            class,
            interval,
            concave,
            grid,
            output,
        } => {
            let mut config = config_for("check", output.format, output.out.as_deref());
            config.f_source = Some(f.clone());
            config.concave = *concave;
            let grid = grid.spec();
            let ctx = Context::new(&mut config, class, interval, Some(grid), None)?;
            let func = parse_function(f)?;
            let orientation = if *concave {
                Orientation::Concave
            } else {
                Orientation::Convex
            };
            let entry = membership_entry("membership", &func, f, &ctx, orientation, true)?;
            Ok(Report::new(config, vec![entry]))
        }
        Command::Sandwich {
            f,
            class,
            interval,
            grid,
            quad,
            output,
        } => {
            let mut config = config_for("sandwich", output.format, output.out.as_deref());
            config.f_source = Some(f.clone());
            let ctx = Context::new(
                &mut config,
                class,
                interval,
                Some(grid.spec()),
                Some(quad.spec()),
            )?;
            let func = parse_function(f)?;
            let mut entries = vec![membership_entry(
                "membership",
                &func,
                f,
                &ctx,
                Orientation::Convex,
                false,
            )?];
            let spec = &ctx.quad;
            match ctx.ws.kind() {
                WeightKind::Classical => entries.push(sandwich_entry(
                    theorems::hadamard_classical(&func, ctx.interval, spec),
                )?),
                WeightKind::Young => {
                    let p = ctx.ws.p().expect("young has p");
                    entries.push(sandwich_entry(theorems::young_sandwich(
                        &func,
                        ctx.interval,
                        p,
                        spec,
                    ))?);
                    entries.push(sandwich_entry(theorems::young_right_bound(
                        &func,
                        ctx.interval,
                        p,
                        spec,
                    ))?);
                }
                WeightKind::Nesbitt => entries.push(sandwich_entry(theorems::nesbitt_sandwich(
                    &func,
                    ctx.interval,
                    spec,
                ))?),
            }
            Ok(Report::new(config, entries))
        }
        Command::Product {
            f,
            g,
            class,
            interval,
            grid,
            quad,
            output,
        } => {
            let mut config = config_for("product", output.format, output.out.as_deref());
            config.f_source = Some(f.clone());
            config.g_source = Some(g.clone());
            let ctx = Context::new(
                &mut config,
                class,
                interval,
                Some(grid.spec()),
                Some(quad.spec()),
            )?;
            let (ff, gg) = (parse_function(f)?, parse_function(g)?);
            let mut entries = vec![
                membership_entry("membership_f", &ff, f, &ctx, Orientation::Convex, false)?,
                membership_entry("membership_g", &gg, g, &ctx, Orientation::Convex, false)?,
            ];
            let (i, spec) = (ctx.interval, &ctx.quad);
            match ctx.ws.kind() {
                WeightKind::Classical => match theorems::pachpatte_bounds(&ff, &gg, i, spec) {
                    Ok((upper, lower)) => {
                        entries.push(product_entry(Ok(upper))?);
                        entries.push(product_entry(Ok(lower))?);
                    }
                    Err(e) => entries.push(failure_entry("pachpatte", e)?),
                },
                WeightKind::Young => {
                    let p = ctx.ws.p().expect("young has p");
                    entries.push(named_product(
                        "young_product_bound",
                        theorems::young_product_bound(&ff, &gg, i, p, spec),
                    )?);
                }
                WeightKind::Nesbitt => {
                    entries.push(named_product(
                        "nesbitt_product_bound",
                        theorems::nesbitt_product_bound(&ff, &gg, i, spec),
                    )?);
                    match theorems::nesbitt_similarly_ordered_bound(&ff, &gg, i, spec) {
                        Err(Error::Ordering { product }) => entries.push(Entry {
                            name: "nesbitt_similarly_ordered_bound".into(),
                            status: Status::Skipped,
                            affects_overall: false,
                            record: Record::Note {
                                message: format!(
                                    "f and g are not similarly ordered ((f(a)-f(b))(g(a)-g(b)) = {product})"
                                ),
                            },
                        }),
                        other => entries.push(named_product("nesbitt_similarly_ordered_bound", other)?),
                    }
                }
            }
            Ok(Report::new(config, entries))
        }
        Command::Constants { p, quad, output } => {
            let mut config = config_for("constants", output.format, output.out.as_deref());
            let p_values: Vec<f64> = if p.is_empty() {
                DEFAULT_P_VALUES.to_vec()
            } else {
                p.clone()
            };
            for &p in &p_values {
                WeightSystem::young(p)?;
            }
            let spec = quad.spec();
            spec.validate()?;
            config.p_values = p_values.clone();
            config.quad = Some(spec);
            let entries = match theorems::constants_table(&p_values, &spec) {
                Ok(rows) => rows
                    .into_iter()
                    .map(|row| {
                        let erratum = row.note.as_deref() == Some(ERRATUM_NOTE);
                        let name = match row.p {
                            Some(p) => format!("{}[p={p}]", row.name),
                            None => row.name.clone(),
                        };
                        Entry {
                            name,
                            status: agreement(row.abs_diff),
                            affects_overall: !erratum,
                            record: Record::Constant(row),
                        }
                    })
                    .collect(),
                Err(e) => vec![failure_entry("constants_table", e)?],
            };
            Ok(Report::new(config, entries))
        }
        Command::Moments {
            class,
            quad,
            output,
        } => {
            let mut config = config_for("moments", output.format, output.out.as_deref());
            let ws = weight_system(class)?;
            let spec = quad.spec();
            spec.validate()?;
            config.class = Some(class.class);
            config.p = class.p;
            config.quad = Some(spec);
            Ok(Report::new(config, moment_entries(&ws, &spec)?))
        }
        Command::VerifyPaper { quad, output } => {
            let spec = quad.spec();
            spec.validate()?;
            let mut report = verify_paper(&spec);
            report.config.format = output.format;
            report.config.out = output.out.as_ref().map(|p| p.display().to_string());
            Ok(report)
        }
    }
}

fn config_for(sub: &str, format: Format, out: Option<&std::path::Path>) -> RunConfig {
    let mut c = RunConfig::new(sub, format);
    c.out = out.map(|p| p.display().to_string());
    c
}

pub(crate) fn parse_function(src: &str) -> Result<FunctionDef, CliError> {
    FunctionDef::parse(src).map_err(|e| CliError::usage(format!("in {src:?}: {e}")))
}

pub(crate) fn weight_system(class: &ClassArgs) -> Result<WeightSystem, CliError> {
    match (class.class, class.p) {
        (Class::Classical, None) => Ok(WeightSystem::CLASSICAL),
        (Class::Nesbitt, None) => Ok(WeightSystem::NESBITT),
        (Class::Young, Some(p)) => Ok(WeightSystem::young(p)?),
        (Class::Young, None) => Err(CliError::usage("--class young requires --p")),
        (_, Some(_)) => Err(CliError::usage("--p is only valid with --class young")),
    }
}

struct Context {
    ws: WeightSystem,
    interval: Interval,
    grid: GridSpec,
    quad: QuadSpec,
}

impl Context {
    fn new(
        config: &mut RunConfig,
        class: &ClassArgs,
        interval: &IntervalArgs,
        grid: Option<GridSpec>,
        quad: Option<QuadSpec>,
    ) -> Result<Self, CliError> {
        let ws = weight_system(class)?;
        let i = Interval::new(interval.a, interval.b)?;
        if let Some(g) = &grid {
            g.validate()?;
        }
        if let Some(q) = &quad {
            q.validate()?;
        }
        config.class = Some(class.class);
        config.p = class.p;
        config.a = Some(interval.a);
        config.b = Some(interval.b);
        config.grid = grid;
        config.quad = quad;
        Ok(Self {
            ws,
            interval: i,
            grid: grid.unwrap_or_default(),
            quad: quad.unwrap_or_default(),
        })
    }
}

fn membership_entry(
    name: &str,
    f: &FunctionDef,
    src: &str,
    ctx: &Context,
    orientation: Orientation,
    affects_overall: bool,
) -> Result<Entry, CliError> {
    let report = match orientation {
        Orientation::Convex => check_convex(f, ctx.interval, &ctx.ws, &ctx.grid)?,
        Orientation::Concave => check_concave(f, ctx.interval, &ctx.ws, &ctx.grid)?,
    };
    Ok(Entry {
        name: name.to_string(),
        status: if report.holds() {
            Status::Holds
        } else {
            Status::Violated
        },
        affects_overall,
        record: Record::Membership {
            system: ctx.ws.to_string(),
            subject: src.to_string(),
            orientation,
            a: ctx.interval.a(),
            b: ctx.interval.b(),
            report,
        },
    })
}

/// Numeric errors become a failure entry; any other error aborts.
fn failure_entry(name: &str, e: Error) -> Result<Entry, CliError> {
    if !is_numeric(&e) {
        return Err(e.into());
    }
    Ok(Entry {
        name: name.to_string(),
        status: Status::NumericFailure,
        affects_overall: true,
        record: Record::Note {
            message: e.to_string(),
        },
    })
}

fn sandwich_entry(r: convexa::Result<theorems::SandwichReport>) -> Result<Entry, CliError> {
    match r {
        Ok(s) => Ok(Entry {
            name: s.name.clone(),
            status: holds(s.holds()),
            affects_overall: true,
            record: Record::Sandwich(s),
        }),
        Err(e) => failure_entry("sandwich", e),
    }
}

fn product_entry(r: convexa::Result<theorems::ProductBoundReport>) -> Result<Entry, CliError> {
    named_product("product", r)
}

fn named_product(
    name: &str,
    r: convexa::Result<theorems::ProductBoundReport>,
) -> Result<Entry, CliError> {
    match r {
        Ok(p) => Ok(Entry {
            name: p.name.clone(),
            status: holds(p.holds),
            affects_overall: true,
            record: Record::Product(p),
        }),
        Err(e) => failure_entry(name, e),
    }
}

fn holds(ok: bool) -> Status {
    if ok {
        Status::Holds
    } else {
        Status::Violated
    }
}

fn agreement(abs_diff: f64) -> Status {
    holds(abs_diff <= AGREEMENT_TOL)
}

pub(crate) fn moment_entries(ws: &WeightSystem, spec: &QuadSpec) -> Result<Vec<Entry>, CliError> {
    let closed = moments_closed_form(ws);
    let quad = match moments(ws, spec) {
        Ok(q) => q,
        Err(e) => return Ok(vec![failure_entry("moments", e)?]),
    };
    let entries = closed
        .entries()
        .iter()
        .zip(quad.entries())
        .map(|(&(name, c), (_, q))| {
            let (status, abs_diff) = match (c, q) {
                (Moment::Finite(c), Moment::Finite(q)) => {
                    (agreement((c - q).abs()), Some((c - q).abs()))
                }
                (Moment::Divergent, Moment::Divergent) => (Status::Holds, None),
                _ => (Status::Violated, None),
            };
            Entry {
                name: format!("{}_{name}", kind_name(ws.kind())),
                status,
                affects_overall: true,
                record: Record::Moment {
                    system: ws.to_string(),
                    p: ws.p(),
                    closed_form: c,
                    quadrature: q,
                    abs_diff,
                },
            }
        })
        .collect();
    Ok(entries)
}

pub(crate) fn kind_name(kind: WeightKind) -> &'static str {
    match kind {
        WeightKind::Classical => "classical",
        WeightKind::Young => "young",
        WeightKind::Nesbitt => "nesbitt",
    }
}
