use std::path::Path;

use serde_json::{json, Value};

use super::{Cli, Command, Format, Mode, Which};
use crate::error::{Error, Result};
use crate::fields::{elementary_differential, witness_pair, PolyMap, PolyVectorField, RationalPoint};
use crate::integrate::{
    fe_diagram_residual, fe_diagram_residual_additive, Catalog, CatalogEntry, DiagramResidual, Method, ResidualMode,
};
use crate::io::{parse_point, Document};
use crate::random::InstanceGenerator;
use crate::rational::{qi, Q};
use crate::series::{
    check_affine_root_condition, check_partitioned_qfe, check_quadratic_fe, modified_field_series_with, ButcherTableau,
    ConditionReport, SeriesMap,
};
use crate::trees::{check_order, enumerate_trees, Tree};
use crate::Limits;

/// Result of one invocation: what to print and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    pub error: Option<String>,
}

struct Report {
    passed: bool,
    json: Value,
    text: String,
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(r) => {
            let output = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&r.json).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => r.text,
            };
            Outcome { output, code: if r.passed { 0 } else { 1 }, error: None }
        }
        Err(e) => Outcome { output: String::new(), code: 2, error: Some(e.to_string()) },
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits { monomial_budget: cli.budget, ..Limits::default() }
}

fn catalog(cli: &Cli) -> Result<Catalog> {
    let mut c = Catalog::builtin();
    if let Some(path) = &cli.catalog {
        c.extend(Catalog::read(path)?);
    }
    Ok(c)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    if cli.list {
        return list(&catalog(cli)?);
    }
    match &cli.command {
        None => Err(Error::Precondition("no subcommand given (try --help)".into())),
        Some(Command::Trees) => trees(cli),
        Some(Command::Check { file, which, bilinear_only }) => check(file, *which, *bilinear_only),
        Some(Command::Modified { method }) => modified(cli, method),
        Some(Command::Verify { method, field, observable, point, mode, h, tol, threshold, degree }) => {
            let opts = VerifyOptions {
                method,
                fields: field,
                observable: observable.as_deref(),
                point: point.as_deref(),
                mode: *mode,
                h: *h,
                tol: *tol,
                threshold: *threshold,
                degree: *degree,
            };
            verify(cli, &opts)
        }
        Some(Command::Witness { u, v, out_dir }) => witness(u, v, out_dir.as_deref()),
    }
}

fn list(c: &Catalog) -> Result<Report> {
    let entries: Vec<Value> = c.iter().map(|(n, e)| json!({ "name": n, "kind": e.kind() })).collect();
    let text = c.iter().map(|(n, e)| format!("{n:<20} {}\n", e.kind())).collect();
    Ok(Report { passed: true, json: json!({ "command": "list", "methods": entries }), text })
}

fn trees(cli: &Cli) -> Result<Report> {
    check_order(cli.order, crate::trees::DEFAULT_MAX_ORDER)?;
    let groups = enumerate_trees(cli.order, cli.colors)?;
    let mut text = String::new();
    let mut listing = Vec::new();
    for t in groups.iter().flatten() {
        text.push_str(&format!("{:>2}  sigma={:<4} {}\n", t.order(), t.symmetry(), t));
        listing.push(json!({ "tree": t.to_string(), "order": t.order(), "symmetry": t.symmetry() }));
    }
    let count = listing.len();
    text.push_str(&format!("{count} trees\n"));
    Ok(Report {
        passed: true,
        json: json!({ "command": "trees", "max_order": cli.order, "colors": cli.colors, "count": count, "trees": listing }),
        text,
    })
}

fn condition_report(name: &str, r: &ConditionReport, residual_label: &str, colored: bool) -> Report {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "left": v.left.notation(colored),
                "right": v.right.notation(colored),
                "residual": v.residual.to_string(),
            })
        })
        .collect();
    let mut text = format!("{name}: {}\n", if r.holds { "holds" } else { "fails" });
    for v in &r.violations {
        text.push_str(&format!(
            "  ({}, {})  {residual_label} = {}\n",
            v.left.notation(colored),
            v.right.notation(colored),
            v.residual
        ));
    }
    Report {
        passed: r.holds,
        json: json!({ "command": "check", "check": name, "holds": r.holds, "violations": violations }),
        text,
    }
}

fn check(file: &Path, which: Which, bilinear_only: bool) -> Result<Report> {
    let phi = SeriesMap::read(file)?;
    let colored = phi.colors() > 1;
    Ok(match which {
        Which::Qfe => condition_report("qfe", &check_quadratic_fe(&phi)?, "b(u∘v)+b(v∘u)", colored),
        Which::NbAffine => condition_report("nb-affine", &check_affine_root_condition(&phi), "b(u)-b(v)", colored),
        Which::PQfe => {
            let name = if bilinear_only { "p-qfe (bilinear only)" } else { "p-qfe" };
            condition_report(name, &check_partitioned_qfe(&phi, bilinear_only), "b(u∘v)+b(v∘u)", colored)
        }
    })
}

/// Integrator series of a catalog method, or of a tableau or series file.
fn integrator_series(cli: &Cli, spec: &str) -> Result<SeriesMap> {
    let path = Path::new(spec);
    let method = if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let value: Value = serde_json::from_str(&text)?;
        match value.get("kind").and_then(Value::as_str) {
            Some("tableau") => Method::RungeKutta(ButcherTableau::from_json(&text)?),
            Some("series") => Method::Series(SeriesMap::from_json(&text)?),
            other => return Err(Error::Format(format!("expected a tableau or series file, found kind {other:?}"))),
        }
    } else {
        catalog(cli)?.method(spec)?
    };
    match method {
        Method::RungeKutta(t) => SeriesMap::from_tableau(&t, cli.order),
        Method::Series(s) => s.truncated(cli.order),
        Method::ExactFlow => SeriesMap::exact_flow(cli.order),
        Method::Partitioned(_) => Err(Error::Unsupported("partitioned methods are not B-series".into())),
    }
}

fn modified(cli: &Cli, spec: &str) -> Result<Report> {
    let a = integrator_series(cli, spec)?;
    let b = modified_field_series_with(&a, &limits(cli))?;
    let mut text = format!("modified field of {spec} through order {}\n  {:<16} {:<10} b/sigma\n", cli.order, "tree", "b");
    for (t, c) in b.iter() {
        text.push_str(&format!("  {:<16} {:<10} {}\n", t.to_string(), c.to_string(), b.differential_coefficient(t)));
    }
    let differential: Vec<Value> = b
        .iter()
        .map(|(t, _)| json!({ "tree": t.to_string(), "value": b.differential_coefficient(t).to_string() }))
        .collect();
    let json = json!({
        "command": "modified",
        "method": spec,
        "series": b.to_value(),
        "differential_coefficients": differential,
    });
    Ok(Report { passed: true, json, text })
}

struct VerifyOptions<'a> {
    method: &'a str,
    fields: &'a [std::path::PathBuf],
    observable: Option<&'a Path>,
    point: Option<&'a str>,
    mode: Mode,
    h: f64,
    tol: f64,
    threshold: f64,
    degree: u32,
}

fn residual_json(r: &DiagramResidual) -> Value {
    match r {
        DiagramResidual::Formal { order, components } => json!({
            "mode": "formal",
            "order": order,
            "first_nonzero_order": r.first_nonzero_order(),
            "components": components
                .iter()
                .map(|c| c.coeffs().iter().map(Q::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        DiagramResidual::Numeric { h, tol, components } => json!({
            "mode": "numeric",
            "h": h,
            "tol": tol,
            "max_abs": r.max_abs(),
            "components": components,
        }),
    }
}

fn verify(cli: &Cli, o: &VerifyOptions) -> Result<Report> {
    let entry = catalog(cli)?.get(o.method)?.clone();
    let parts_needed = match &entry {
        CatalogEntry::Splitting(s) => s.parts(),
        CatalogEntry::Method(_) => 1,
    };
    let mut gen = InstanceGenerator::new(cli.seed);
    let fields: Vec<PolyVectorField> = if o.fields.is_empty() {
        let mut dim = gen.range(1, 3);
        if let CatalogEntry::Method(Method::Partitioned(pm)) = &entry {
            // one coordinate per tableau
            dim = pm.tableaux().len();
        }
        (0..parts_needed).map(|_| gen.field(dim, 2)).collect()
    } else {
        o.fields.iter().map(|p| PolyVectorField::read(p)).collect::<Result<_>>()?
    };
    if fields.len() != parts_needed {
        return Err(Error::ShapeMismatch(format!("{} needs {parts_needed} field(s), got {}", o.method, fields.len())));
    }
    let dim = fields[0].dim();
    let observable = match o.observable {
        Some(p) => PolyMap::read(p)?,
        None => gen.observable(dim, 1, o.degree),
    };
    let point = match o.point {
        Some(p) => parse_point(p)?,
        None => gen.point(dim),
    };
    let lim = limits(cli);
    let residual = match (&entry, o.mode) {
        (CatalogEntry::Method(m), Mode::Formal) => {
            fe_diagram_residual(m, &fields[0], &observable, &point, ResidualMode::Formal { order: cli.order }, &lim)?
        }
        (CatalogEntry::Method(m), Mode::Numeric) => {
            fe_diagram_residual(m, &fields[0], &observable, &point, ResidualMode::Numeric { h: o.h, tol: o.tol }, &lim)?
        }
        (CatalogEntry::Splitting(s), Mode::Formal) => {
            fe_diagram_residual_additive(s, &fields, &observable, &point, cli.order, &lim)?
        }
        (CatalogEntry::Splitting(_), Mode::Numeric) => {
            return Err(Error::Unsupported("splittings are verified in formal mode".into()))
        }
    };
    let passed = match o.mode {
        Mode::Formal => residual.is_zero(),
        Mode::Numeric => residual.max_abs() <= o.threshold,
    };
    let mut text = format!("method {}  mode {:?}\n", o.method, o.mode);
    for (i, f) in fields.iter().enumerate() {
        text.push_str(&format!("  field[{}] = {f}\n", i + 1));
    }
    text.push_str(&format!(
        "  F = {}\n  y0 = ({})\n",
        observable.components().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
        point.coords().iter().map(Q::to_string).collect::<Vec<_>>().join(", ")
    ));
    match &residual {
        DiagramResidual::Formal { order, .. } => match residual.first_nonzero_order() {
            None => text.push_str(&format!("residual is zero through order {order}\n")),
            Some(k) => text.push_str(&format!("residual first nonzero at order {k}\n")),
        },
        DiagramResidual::Numeric { .. } => text.push_str(&format!("max residual {:e}\n", residual.max_abs())),
    }
    let json = json!({
        "command": "verify",
        "method": o.method,
        "seed": cli.seed,
        "fields": fields.iter().map(Document::to_value).collect::<Vec<_>>(),
        "observable": observable.to_value(),
        "point": point.to_value(),
        "residual": residual_json(&residual),
        "passed": passed,
    });
    Ok(Report { passed, json, text })
}

fn witness(u: &str, v: &str, out_dir: Option<&Path>) -> Result<Report> {
    let u: Tree = u.parse()?;
    let v: Tree = v.parse()?;
    if u.max_color() > 1 || v.max_color() > 1 {
        return Err(Error::Precondition("witness pairs are built for uncolored trees".into()));
    }
    let w = witness_pair(&u, &v);
    let dim = w.field.dim();
    let origin = RationalPoint::origin(dim);
    let du = elementary_differential(&u, &w.field, &origin)?;
    let dv = elementary_differential(&v, &w.field, &origin)?;
    let hessian = w.observable.differentiate(2).eval(&origin, &[du, dv])?[0].clone();
    let (su, sv) = (u.symmetry() as i64, v.symmetry() as i64);
    let expected = if u == v { qi(2 * su * sv) } else { qi(su * sv) };
    let mut written = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        let fp = dir.join("field.json");
        let op = dir.join("observable.json");
        w.field.write(&fp)?;
        w.observable.write(&op)?;
        written = vec![fp.display().to_string(), op.display().to_string()];
    }
    let passed = hessian == expected;
    let text = format!(
        "witness for ({u}, {v}) on R^{dim}\n  field = {}\n  F = {}\n  F''(u(f), v(f)) at 0 = {hessian} (expected {expected})\n{}",
        w.field,
        w.observable.components()[0],
        written.iter().map(|p| format!("  wrote {p}\n")).collect::<String>()
    );
    let json = json!({
        "command": "witness",
        "u": u.to_string(),
        "v": v.to_string(),
        "dim": dim,
        "field": w.field.to_value(),
        "observable": w.observable.to_value(),
        "hessian": hessian.to_string(),
        "expected": expected.to_string(),
        "files": written,
    });
    Ok(Report { passed, json, text })
}
