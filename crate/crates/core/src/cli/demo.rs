//! The exotic pair `X₁ = X_{-1}(-5₂)`, `X₂ = X_{-1}(P(3,-3,-8))`: homotopy
//! equivalent traces told apart by `s(·;1)`.

use serde_json::json;

use super::commands::{lasagna_report, render_report};
use super::facts::FactsStore;
use super::table::render_table;
use super::{handlebody_subject, read_file, to_json, CliError, Output, RunConfig};
use crate::lasagna::{genus_and_shake_bounds, lee_structure_table, Handlebody, LasagnaSReport, SValue, Window};

pub const BUNDLED_X1: &str = include_str!("../../data/x1.hb");
pub const BUNDLED_X2: &str = include_str!("../../data/x2.hb");
pub const BUNDLED_FACTS: &str = include_str!("../../data/facts.txt");

fn structure_rows(x: &Handlebody, r: &LasagnaSReport) -> Result<(Vec<Vec<String>>, serde_json::Value), CliError> {
    let mut rows = Vec::new();
    let mut tables = Vec::new();
    for alpha in [0i64, 1] {
        let t = lee_structure_table(x, &[alpha], Window::Degree(0), &|b| r.value(b))?;
        for row in t.rows.iter().filter(|row| row.h == 0) {
            let beta = row.beta.as_ref().map_or("-".into(), |b| format!("{}", b[0]));
            rows.push(vec![x.name.clone(), alpha.to_string(), beta, row.q.to_string(), row.dim.to_string()]);
        }
        for g in &t.gaps {
            rows.push(vec![x.name.clone(), alpha.to_string(), g[0].to_string(), "s not exact".into(), "?".into()]);
        }
        tables.push(to_json(&t));
    }
    Ok((rows, json!(tables)))
}

/// Runs both reports, checks `s(X₁;1) = 3` against `s(X₂;1) = 1` (or the
/// bound `≤ 1` with `bounds_only`), and prints the degree-0 structure tables
/// and the shake-genus bounds.
pub fn cmd_exotic_demo(cfg: &RunConfig, facts_path: Option<&str>) -> Result<Output, CliError> {
    let facts = match facts_path {
        Some(p) => FactsStore::parse(&read_file(p)?)?,
        None => FactsStore::parse(BUNDLED_FACTS)?,
    };
    let x1 = Handlebody::parse(BUNDLED_X1)?;
    let x2 = Handlebody::parse(BUNDLED_X2)?;
    let classes = vec![vec![-1], vec![0], vec![1]];
    let r1 = lasagna_report(cfg, &x1, handlebody_subject(BUNDLED_X1).as_deref(), &classes, Some(&facts))?;
    let r2 = lasagna_report(cfg, &x2, handlebody_subject(BUNDLED_X2).as_deref(), &classes, Some(&facts))?;

    let mut failures = Vec::new();
    let (s1, s2) = (r1.value(&[1]), r2.value(&[1]));
    let summary = match (&s1, &s2) {
        (SValue::Exact(3), SValue::Exact(1)) if !cfg.bounds_only => {
            "s(X₁;1)=3, s(X₂;1)=1, EXOTIC PAIR CONFIRMED (s-level)".to_string()
        }
        (SValue::Exact(3), SValue::AtMost(b)) if cfg.bounds_only && *b < 3 => {
            format!("s(X₂;1) ≤ {b} < 3 = s(X₁;1), EXOTIC PAIR CONFIRMED (s-level)")
        }
        _ => {
            let expected = if cfg.bounds_only { "3 and a bound below 3" } else { "3 and 1" };
            failures.push(format!("expected s(X₁;1), s(X₂;1) = {expected}, found {s1} and {s2}"));
            format!("s(X₁;1) = {s1}, s(X₂;1) = {s2}, NOT CONFIRMED")
        }
    };

    let (mut rows, t1) = structure_rows(&x1, &r1)?;
    let (rows2, t2) = structure_rows(&x2, &r2)?;
    rows.extend(rows2);

    let uppers = |name: &str| -> Vec<(Vec<i64>, i64, String)> {
        if cfg.bounds_only {
            return Vec::new();
        }
        facts.genus_upper(name).into_iter().map(|(a, g, r)| (a, g, format!("fact {}", r.echo()))).collect()
    };
    let b1 = genus_and_shake_bounds(&x1, &r1, &uppers(&x1.name));
    let b2 = genus_and_shake_bounds(&x2, &r2, &uppers(&x2.name));
    let shake = |b: &[crate::lasagna::BoundRow]| b.iter().find(|r| r.alpha == [1]).cloned();
    let (k1, k2) = (shake(&b1), shake(&b2));
    let shake_text = |r: &Option<crate::lasagna::BoundRow>| match r {
        Some(r) => {
            let lower = r.shake_lower.unwrap_or(r.genus_lower);
            if r.sharp {
                format!("= {lower}")
            } else {
                format!("≥ {lower}")
            }
        }
        None => "unknown".into(),
    };
    let shake_line = format!("g_sh^-1(-5_2) {} vs g_sh^-1(P(3,-3,-8)) {}", shake_text(&k1), shake_text(&k2));
    if !cfg.bounds_only {
        let lower = |r: &Option<crate::lasagna::BoundRow>| r.as_ref().and_then(|r| r.shake_lower);
        if lower(&k1) != Some(1) || lower(&k2) != Some(0) {
            failures.push(format!("expected shake-genus lower bounds 1 and 0, found {shake_line}"));
        }
    }
    let bound_rows: Vec<Vec<String>> = [(&x1, &b1), (&x2, &b2)]
        .iter()
        .flat_map(|(x, b)| {
            b.iter().map(move |r| {
                vec![
                    x.name.clone(),
                    r.alpha[0].to_string(),
                    r.s.to_string(),
                    r.genus_lower.to_string(),
                    r.shake_lower.map_or("-".into(), |v| v.to_string()),
                    r.upper.as_ref().map_or("-".into(), |u| u.0.to_string()),
                ]
            })
        })
        .collect();

    let mut text = String::new();
    text.push_str(&render_report(&r1));
    text.push('\n');
    text.push_str(&render_report(&r2));
    text.push_str("\nLee lasagna structure tables in homological degree 0\n");
    text.push_str(&render_table(&["manifold", "alpha", "beta", "q", "dim"], &rows));
    text.push_str("\ngenus bounds\n");
    text.push_str(&render_table(&["manifold", "alpha", "s", "genus >=", "shake genus >=", "upper"], &bound_rows));
    text.push_str(&format!("{shake_line}\n\n{summary}\n"));
    for f in &failures {
        text.push_str(&format!("ASSERTION FAILED: {f}\n"));
    }

    let j = json!({
        "x1": r1,
        "x2": r2,
        "structure": { "x1": t1, "x2": t2 },
        "genus_bounds": { "x1": b1, "x2": b2 },
        "shake": shake_line,
        "summary": summary,
        "bounds_only": cfg.bounds_only,
        "failures": failures,
    });
    let mut out = Output::new(j, text);
    out.failure = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(out)
}
