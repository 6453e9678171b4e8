use std::path::Path;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use polyquad::expansion::{default_schedule, fit_delta, mollified_limit, DeltaSample, LemmaSum};
use polyquad::geometry::{boundary_lattice_count, interior_lattice_count, pick_residual, IntPolygon};
use polyquad::numerics::rational::{parse, render, to_f64, ExactRational};
use polyquad::numerics::summation::observed_order;
use polyquad::numerics::{bernoulli_at_zero, bernoulli_poly, Poly2D};
use polyquad::quadrature::{
    accelerate_detailed, collected_accelerated_sum, integrate, trapezoid_analog, weighted_sum, Function2D,
};

use crate::args::{BernoulliArgs, ConvergenceArgs, FunctionArg, IntegrateArgs, LemmaArgs, Method, PolygonArg};
use crate::error::CliError;
use crate::output::{float, opt_float, Report};

/// A report, plus the contract it breaks if any. The report is still printed
/// when the contract fails.
pub struct Outcome {
    pub report: Report,
    pub violation: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, violation: None }
    }
}

const ROW_HEADERS: [&str; 6] = ["N", "method", "value", "exact", "abs_error", "est_order"];

fn read(path: &Path, field: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(field, format!("{}: {e}", path.display())))
}

pub fn load_polygon(arg: &PolygonArg) -> Result<IntPolygon, CliError> {
    IntPolygon::from_json(&read(&arg.polygon, "--polygon")?).map_err(|e| CliError::input("--polygon", e))
}

/// Parses `coef:xpow:ypow,...`.
pub fn parse_monomials(text: &str) -> Result<Poly2D, CliError> {
    let mut terms = Vec::new();
    for (idx, item) in text.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let parts: Vec<&str> = item.split(':').collect();
        let bad = |what: &str| CliError::input("--monomials", format!("term {idx} ({item:?}): {what}"));
        if parts.len() != 3 {
            return Err(bad("expected coef:xpow:ypow"));
        }
        let c = parse(parts[0]).ok_or_else(|| bad("coefficient must be an integer or p/q"))?;
        let i = parts[1].parse::<u32>().map_err(|_| bad("xpow must be a nonnegative integer"))?;
        let j = parts[2].parse::<u32>().map_err(|_| bad("ypow must be a nonnegative integer"))?;
        terms.push((c, i, j));
    }
    if terms.is_empty() {
        return Err(CliError::input("--monomials", "no terms given"));
    }
    Ok(Poly2D::new(terms))
}

pub fn load_function(arg: &FunctionArg) -> Result<Function2D, CliError> {
    if let Some(path) = &arg.function {
        return Function2D::from_json(&read(path, "--function")?).map_err(|e| CliError::input("--function", e));
    }
    if let Some(text) = &arg.monomials {
        return parse_monomials(text).map(Function2D::Polynomial);
    }
    let name = arg.builtin.as_deref().unwrap_or_default();
    Function2D::builtin(name).map_err(|e| CliError::input("--builtin", e))
}

fn resolve_method(method: Method, k: Option<usize>) -> Result<Method, CliError> {
    match (method, k) {
        (Method::Accelerated(0), None) => Ok(Method::Accelerated(2)),
        (Method::Accelerated(0), Some(k)) if (1..=6).contains(&k) => Ok(Method::Accelerated(k)),
        (Method::Accelerated(0), Some(k)) => Err(CliError::input("--k", format!("{k} is outside 1..=6"))),
        (Method::Accelerated(m), Some(k)) if m != k => {
            Err(CliError::input("--k", format!("conflicts with --method accelerated-{m}")))
        }
        (Method::Accelerated(_), _) => Ok(method),
        (_, Some(_)) => Err(CliError::input("--k", "only valid with --method accelerated")),
        (_, None) => Ok(method),
    }
}

struct RuleValue {
    value: f64,
    exact: Option<ExactRational>,
    points: u64,
}

fn evaluate(method: Method, g: &Function2D, p: &IntPolygon, n: u64) -> RuleValue {
    let from_sum = |s: polyquad::quadrature::WeightedSum| RuleValue { value: s.value, exact: s.exact, points: s.counts.total() };
    match method {
        Method::Weighted => from_sum(weighted_sum(g, p, n)),
        Method::Trapezoid => from_sum(trapezoid_analog(g, p, n)),
        Method::Collected => from_sum(collected_accelerated_sum(g, p, n)),
        Method::Accelerated(k) => {
            let a = accelerate_detailed(g, p, n, k);
            RuleValue { value: a.value, exact: a.exact, points: a.levels.iter().map(|l| l.counts.total()).sum() }
        }
    }
}

fn error_of(rule: &RuleValue, integral: &(f64, Option<ExactRational>)) -> (f64, Option<ExactRational>) {
    match (&rule.exact, &integral.1) {
        (Some(a), Some(b)) => {
            let e = (a - b).abs();
            (to_f64(&e), Some(e))
        }
        _ => ((rule.value - integral.0).abs(), None),
    }
}

fn check_finite(v: f64, what: &str) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Contract(format!("{what} is not finite")))
    }
}

fn render_opt(r: &Option<ExactRational>) -> String {
    r.as_ref().map(render).unwrap_or_default()
}

fn json_opt(r: &Option<ExactRational>) -> Value {
    r.as_ref().map_or(Value::Null, |e| Value::String(render(e)))
}

pub fn cmd_integrate(args: &IntegrateArgs) -> Result<Outcome, CliError> {
    let method = resolve_method(args.method, args.k)?;
    if args.n == 0 {
        return Err(CliError::input("--N", "must be positive"));
    }
    let p = load_polygon(&args.polygon)?;
    let g = load_function(&args.function)?;
    let rule = evaluate(method, &g, &p, args.n);
    let integral = integrate(&g, &p);
    check_finite(rule.value, "rule value")?;
    check_finite(integral.0, "integral")?;
    let (err, err_exact) = error_of(&rule, &integral);

    let json = json!({
        "N": args.n,
        "method": method.name(),
        "value": rule.value,
        "exact": json_opt(&rule.exact),
        "points": rule.points,
        "integral": integral.0,
        "integral_exact": json_opt(&integral.1),
        "abs_error": err,
        "abs_error_exact": json_opt(&err_exact),
    });
    let mut report = Report::new(&ROW_HEADERS, json);
    report.push(vec![
        args.n.to_string(),
        method.name(),
        float(rule.value),
        render_opt(&rule.exact),
        float(err),
        String::new(),
    ]);
    report.notes.push(format!("points: {}", rule.points));
    match &integral.1 {
        Some(e) => report.notes.push(format!("integral: {} = {}", render(e), float(integral.0))),
        None => report.notes.push(format!("integral: {}", float(integral.0))),
    }
    Ok(report.into())
}

pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<Outcome, CliError> {
    let ns = &args.n_list;
    if ns.len() < 3 {
        return Err(CliError::input("--N-list", format!("needs at least 3 values, got {}", ns.len())));
    }
    if ns[0] == 0 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::input("--N-list", "values must be positive and strictly increasing"));
    }
    let methods: Vec<Method> = if args.method.is_empty() {
        if args.k.is_some() {
            return Err(CliError::input("--k", "only valid with --method accelerated"));
        }
        vec![Method::Weighted, Method::Accelerated(2), Method::Accelerated(3)]
    } else {
        args.method.iter().map(|&m| resolve_method(m, args.k)).collect::<Result<_, _>>()?
    };
    if let Some(w) = args.w {
        if ns.len() < w as usize + 1 {
            return Err(CliError::input("--w", format!("needs at least {} sample sizes", w + 1)));
        }
    }
    let p = load_polygon(&args.polygon)?;
    let g = load_function(&args.function)?;
    let integral = integrate(&g, &p);
    check_finite(integral.0, "integral")?;

    let mut report = Report::new(&ROW_HEADERS, Value::Null);
    let mut json_rows = Vec::new();
    for &method in &methods {
        let mut prev: Option<(u64, f64)> = None;
        for &n in ns {
            let rule = evaluate(method, &g, &p, n);
            check_finite(rule.value, "rule value")?;
            let (err, _) = error_of(&rule, &integral);
            let order = match prev {
                Some((pn, pe)) if pe > 0.0 && err > 0.0 => Some(observed_order(pe, err, n as f64 / pn as f64)),
                _ => None,
            };
            prev = Some((n, err));
            report.push(vec![
                n.to_string(),
                method.name(),
                float(rule.value),
                render_opt(&rule.exact),
                float(err),
                opt_float(order),
            ]);
            json_rows.push(json!({
                "N": n,
                "method": method.name(),
                "value": rule.value,
                "exact": json_opt(&rule.exact),
                "abs_error": err,
                "est_order": order,
            }));
        }
    }

    let mut json = json!({
        "integral": integral.0,
        "integral_exact": json_opt(&integral.1),
        "rows": json_rows,
    });
    if let Some(w) = args.w {
        let samples: Vec<DeltaSample> = ns.iter().map(|&n| (&weighted_sum(&g, &p, n)).into()).collect();
        let fit = fit_delta(&samples, w, false).map_err(|e| CliError::Contract(format!("expansion fit: {e}")))?;
        report.notes.push(format!("fit alpha0: {}", float(fit.alpha0)));
        for (j, d) in &fit.deltas {
            report.notes.push(format!("fit delta({j}): {}", float(*d)));
        }
        if fit.ill_conditioned {
            report.notes.push(format!("warning: fit is ill-conditioned (condition {:e})", fit.condition));
        }
        json["fit"] = serde_json::to_value(&fit).expect("fit is serializable");
    }
    report.json = json;
    Ok(report.into())
}

pub fn cmd_pick(arg: &PolygonArg) -> Result<Outcome, CliError> {
    let p = load_polygon(arg)?;
    let (i, b) = (interior_lattice_count(&p), boundary_lattice_count(&p));
    let area = p.area_exact();
    let residual = pick_residual(&p);
    let json = json!({
        "I": i,
        "B": b,
        "area": render(&area),
        "residual": render(&residual),
    });
    let mut report = Report::new(&["I", "B", "area", "residual"], json);
    report.push(vec![i.to_string(), b.to_string(), render(&area), render(&residual)]);
    let violation = (!residual.is_zero()).then(|| format!("Pick residual is {} (expected 0)", render(&residual)));
    Ok(Outcome { report, violation })
}

fn lemma_tolerance(spec: &LemmaSum) -> f64 {
    match spec {
        LemmaSum::Double { .. } => 1e-5,
        _ => 1e-6,
    }
}

pub fn cmd_lemma_sum(args: &LemmaArgs) -> Result<Outcome, CliError> {
    let (text, field) = match (&args.input.spec, &args.input.inline) {
        (Some(path), _) => (read(path, "--spec")?, "--spec"),
        (None, Some(t)) => (t.clone(), "--inline"),
        (None, None) => return Err(CliError::input("--spec", "missing")),
    };
    let spec = LemmaSum::from_json(&text).map_err(|e| CliError::input(field, e))?;
    let closed = spec.closed_form().map_err(|e| CliError::input(field, e))?;
    let mut json = json!({ "spec": serde_json::from_str::<Value>(&spec.to_json()).unwrap(), "closed_form": closed });
    let mut report = Report::new(&["quantity", "value"], Value::Null);
    report.push(vec!["closed_form".into(), float(closed)]);
    let mut violation = None;
    if args.verify {
        let lim = mollified_limit(&spec, &default_schedule()).map_err(|e| CliError::Contract(e.to_string()))?;
        let diff = (lim.limit - closed).abs();
        let scale = closed.abs().max(lim.scale);
        let tol = lemma_tolerance(&spec);
        let ok = diff <= tol * scale;
        report.push(vec!["oracle".into(), float(lim.limit)]);
        report.push(vec!["difference".into(), float(diff)]);
        report.push(vec!["tolerance".into(), float(tol * scale)]);
        report.push(vec!["verified".into(), ok.to_string()]);
        json["oracle"] = json!(lim.limit);
        json["difference"] = json!(diff);
        json["tolerance"] = json!(tol * scale);
        json["verified"] = json!(ok);
        if !ok {
            violation = Some(format!("closed form and oracle differ by {diff:e} (tolerance {:e})", tol * scale));
        }
    }
    report.json = json;
    Ok(Outcome { report, violation })
}

/// The worked example: `x^2 y^3` on the triangle `(0,0), (2,1), (1,2)`.
pub fn appendix_inputs() -> (IntPolygon, Function2D) {
    let p = IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).expect("valid triangle");
    let g = Poly2D::monomial(ExactRational::from_integer(1.into()), 2, 3);
    (p, g.into())
}

pub fn cmd_appendix_example() -> Result<Outcome, CliError> {
    let (p, g) = appendix_inputs();
    let integral = integrate(&g, &p).1.expect("polynomial integral is exact");
    let trap = trapezoid_analog(&g, &p, 4);
    let coll = collected_accelerated_sum(&g, &p, 2);
    let expected = |s: &str| parse(s).expect("literal");
    let rows: [(&str, Option<ExactRational>, Option<u64>, ExactRational, Option<u64>); 3] = [
        ("integral", Some(integral), None, expected("423/140"), None),
        ("trapezoid N=4", trap.exact.clone(), Some(trap.counts.total()), expected("54335/16384"), Some(31)),
        ("collected N=2", coll.exact.clone(), Some(coll.counts.total()), expected("37295/12288"), Some(21)),
    ];
    let mut report = Report::new(&["quantity", "exact", "decimal", "points", "expected", "match"], Value::Null);
    let mut json_rows = Vec::new();
    let mut mismatches = Vec::new();
    for (name, value, points, want, want_points) in rows {
        let ok = value.as_ref() == Some(&want) && points == want_points;
        if !ok {
            mismatches.push(name);
        }
        let decimal = value.as_ref().map(|v| format!("{:.3}", to_f64(v))).unwrap_or_default();
        report.push(vec![
            name.into(),
            render_opt(&value),
            decimal.clone(),
            points.map(|p| p.to_string()).unwrap_or_default(),
            render(&want),
            ok.to_string(),
        ]);
        json_rows.push(json!({
            "quantity": name,
            "exact": json_opt(&value),
            "decimal": decimal,
            "points": points,
            "expected": render(&want),
            "match": ok,
        }));
    }
    report.json = json!({ "rows": json_rows, "all_match": mismatches.is_empty() });
    let violation = (!mismatches.is_empty()).then(|| format!("mismatch in {}", mismatches.join(", ")));
    Ok(Outcome { report, violation })
}

pub fn cmd_bernoulli(args: &BernoulliArgs) -> Result<Outcome, CliError> {
    let b = bernoulli_poly(args.j);
    let at_zero = bernoulli_at_zero(args.j);
    let coeffs: Vec<String> = b.poly.coefficients().iter().map(render).collect();
    let json = json!({ "j": args.j, "polynomial": b.poly.to_string(), "coefficients": coeffs, "at_zero": render(&at_zero) });
    let mut report = Report::new(&["j", "B_j(x)", "B_j(0)"], json);
    report.push(vec![args.j.to_string(), b.poly.to_string(), render(&at_zero)]);
    Ok(report.into())
}
