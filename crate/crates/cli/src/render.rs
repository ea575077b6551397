//! Output formatting. Tables use 6 decimals; JSON and CSV carry full precision.

use std::fmt::Write;

use numrad::bounds::{BoundContext, BoundReport, EvalConfig, Side};
use numrad::harness::{SuiteReport, WitnessPair};
use numrad::linalg::ComplexMatrix;
use numrad::Result;
use serde::Serialize;

pub const EXAMPLE_K07: f64 = 1.5;
pub const EXAMPLE_MIN_V: f64 = 1.280776;
pub const EXAMPLE_K07_TOL: f64 = 1e-12;
pub const EXAMPLE_MIN_V_TOL: f64 = 1e-4;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| numrad::Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| numrad::Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn bounds_table(report: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension  {}", report.dim);
    let _ = writeln!(out, "omega      {:.6}  (theta {:.6})", report.omega, report.omega_theta);
    let _ = writeln!(out, "argmin v   {:.6}", report.argmin_v);
    let _ = writeln!(out);
    let width = report.bounds.iter().map(|b| b.bound.name.len()).max().unwrap_or(0).max(5);
    let _ = writeln!(out, "{:<width$}  side   {:>12}  {:>12}", "bound", "value", "slack");
    for b in &report.bounds {
        let side = match b.bound.side {
            Side::Upper => "upper",
            Side::Lower => "lower",
        };
        let _ = writeln!(out, "{:<width$}  {side}  {:>12.6}  {:>12.6}", b.bound.name, b.bound.value, b.slack);
    }
    let _ = writeln!(out);
    let width = report.chains.iter().map(|c| c.chain_name.len()).max().unwrap_or(0);
    for c in &report.chains {
        let _ = writeln!(out, "{:<width$}  {}", c.chain_name, verdict(c.holds));
        for l in c.failing_links() {
            let _ = writeln!(
                out,
                "    {} = {:.6} > {} = {:.6} (slack {:e}, tolerance {:e})",
                l.lesser.name, l.lesser.value, l.greater.name, l.greater.value, l.slack, l.tolerance
            );
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{}", if report.all_hold() { "all chains hold" } else { "chain violation" });
    out
}

pub fn bounds_csv(report: &BoundReport) -> Result<String> {
    let mut rows = vec![vec!["name".into(), "side".into(), "value".into(), "slack".into()]];
    rows.push(vec!["omega".into(), String::new(), report.omega.to_string(), String::new()]);
    for b in &report.bounds {
        let side = match b.bound.side {
            Side::Upper => "upper",
            Side::Lower => "lower",
        };
        rows.push(vec![b.bound.name.clone(), side.into(), b.bound.value.to_string(), b.slack.to_string()]);
    }
    csv_string(rows)
}

pub fn suite_status(report: &SuiteReport) -> String {
    let s = &report.summary;
    format!(
        "{} matrices, {} evaluated, {} violations, {} failures: {}",
        s.matrices,
        s.evaluated,
        s.violations.len(),
        s.failures.len(),
        if report.passed() { "PASS" } else { "FAIL" }
    )
}

pub fn suite_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    let cfg = &report.config;
    let families: Vec<&str> = cfg.families.iter().map(|f| f.name()).collect();
    let _ = writeln!(out, "families   {}", families.join(", "));
    let _ = writeln!(out, "dims       {:?}", cfg.dims);
    let _ = writeln!(out, "trials     {}  seed {}  tol {:e}", cfg.trials, cfg.seed, cfg.tol_rel);
    let _ = writeln!(out);
    let width = report.summary.bounds.iter().map(|b| b.name.len()).max().unwrap_or(0).max(5);
    let _ = writeln!(out, "{:<width$}  {:>12}  {:>12}", "bound", "mean slack", "min slack");
    for b in &report.summary.bounds {
        let _ = writeln!(out, "{:<width$}  {:>12.6}  {:>12.6}", b.name, b.mean_slack, b.min_slack);
    }
    let _ = writeln!(out);
    for v in &report.summary.violations {
        let _ =
            writeln!(out, "violation  {} {}: {} > {} (slack {:e})", v.matrix_id, v.chain, v.lesser, v.greater, v.slack);
    }
    for (id, e) in &report.summary.failures {
        let _ = writeln!(out, "failure    {id}: {e}");
    }
    let _ = writeln!(out, "{}", suite_status(report));
    out
}

#[derive(Debug, Serialize)]
pub struct ExampleOutcome {
    pub matrix: ComplexMatrix,
    pub omega: f64,
    pub kittaneh07: f64,
    pub min_v_29: f64,
    pub argmin_v: f64,
    pub difference: f64,
    pub expected_kittaneh07: f64,
    pub expected_min_v_29: f64,
    pub kittaneh07_pass: bool,
    pub min_v_29_pass: bool,
    pub pass: bool,
}

impl ExampleOutcome {
    pub fn compute(a: &ComplexMatrix, cfg: &EvalConfig) -> Result<Self> {
        let ctx = BoundContext::new(a, cfg)?;
        let kittaneh07 = ctx.kittaneh_07()?.value;
        let (min_v, argmin_v) = ctx.min_over_v_29()?;
        let kittaneh07_pass = (kittaneh07 - EXAMPLE_K07).abs() <= EXAMPLE_K07_TOL;
        let min_v_29_pass = (min_v.value - EXAMPLE_MIN_V).abs() <= EXAMPLE_MIN_V_TOL;
        Ok(Self {
            matrix: a.clone(),
            omega: ctx.omega()?,
            kittaneh07,
            min_v_29: min_v.value,
            argmin_v,
            difference: kittaneh07 - min_v.value,
            expected_kittaneh07: EXAMPLE_K07,
            expected_min_v_29: EXAMPLE_MIN_V,
            kittaneh07_pass,
            min_v_29_pass,
            pass: kittaneh07_pass && min_v_29_pass,
        })
    }
}

pub fn example_table(o: &ExampleOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "matrix\n{}", o.matrix);
    let _ = writeln!(out, "omega              {:.6}", o.omega);
    let _ = writeln!(
        out,
        "upper.kittaneh07   {:.6}   expected {:.6} +/- {:e}   {}",
        o.kittaneh07,
        o.expected_kittaneh07,
        EXAMPLE_K07_TOL,
        verdict(o.kittaneh07_pass)
    );
    let _ = writeln!(
        out,
        "upper.min_v_29     {:.6}   expected {:.6} +/- {:e}   {}",
        o.min_v_29,
        o.expected_min_v_29,
        EXAMPLE_MIN_V_TOL,
        verdict(o.min_v_29_pass)
    );
    let _ = writeln!(out, "argmin v           {:.6}", o.argmin_v);
    let _ = writeln!(out, "difference         {:.6}", o.difference);
    let _ = writeln!(out, "{}", verdict(o.pass));
    out
}

pub fn example_csv(o: &ExampleOutcome) -> Result<String> {
    csv_string(vec![
        vec!["quantity".into(), "value".into(), "expected".into(), "pass".into()],
        vec!["omega".into(), o.omega.to_string(), String::new(), String::new()],
        vec![
            "upper.kittaneh07".into(),
            o.kittaneh07.to_string(),
            o.expected_kittaneh07.to_string(),
            o.kittaneh07_pass.to_string(),
        ],
        vec![
            "upper.min_v_29".into(),
            o.min_v_29.to_string(),
            o.expected_min_v_29.to_string(),
            o.min_v_29_pass.to_string(),
        ],
        vec!["argmin_v".into(), o.argmin_v.to_string(), String::new(), String::new()],
        vec!["difference".into(), o.difference.to_string(), String::new(), String::new()],
    ])
}

pub fn witness_table(p: &WitnessPair) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "draws      {}", p.draws);
    for (label, w) in [("k02 better ", &p.k02_better), ("sq04 better", &p.sq04_better)] {
        let _ =
            writeln!(out, "{label}  {}  kittaneh02 {:.6}  sqrt(sq04) {:.6}", w.matrix_id, w.kittaneh02, w.sqrt_sq04);
    }
    out
}

pub fn witness_csv(p: &WitnessPair) -> Result<String> {
    let mut rows = vec![vec!["direction".into(), "matrix_id".into(), "kittaneh02".into(), "sqrt_sq04".into()]];
    for (label, w) in [("k02_better", &p.k02_better), ("sq04_better", &p.sq04_better)] {
        rows.push(vec![label.into(), w.matrix_id.clone(), w.kittaneh02.to_string(), w.sqrt_sq04.to_string()]);
    }
    csv_string(rows)
}
