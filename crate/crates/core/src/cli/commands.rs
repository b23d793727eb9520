use rayon::prelude::*;
use serde_json::json;

use super::facts::{normalize_knot, FactRecord, FactsStore};
use super::table::render_table;
use super::{handlebody_subject, load_diagram, read_file, to_json, CliError, Output, RunConfig};
use crate::khovanov::{khovanov_homology, khr2_table};
use crate::lasagna::{
    concordance_transfer, evaluate_class, ng_vanishing, ClassEntry, ConcordanceFact, Handlebody, LasagnaSReport,
    Provenance, SValue, Status, Step, TbCertificate, VerdictStatus,
};
use crate::lee::{self, lee_homology, s_record};
use crate::linkdiag::catalog;

/// Classical Khovanov homology, or `KhR₂` when `gl2` is set.
pub fn cmd_kh(cfg: &RunConfig, path: &str, gl2: bool) -> Result<Output, CliError> {
    let (name, d) = load_diagram(path)?;
    cfg.check_crossings(&d)?;
    let hom = if gl2 { khr2_table(&d, cfg.ring, None)? } else { khovanov_homology(&d, cfg.ring, None)? };
    let normalization = if gl2 { "gl2" } else { "classical" };
    let mut j = hom.to_json();
    j["link"] = json!(name);
    j["normalization"] = json!(normalization);
    let text = format!(
        "{normalization} Khovanov homology of {name} over {} (rows q, columns h)\n{}",
        cfg.ring.name(),
        hom.render()
    );
    Ok(Output::new(j, text))
}

/// Lee homology dimensions and the canonical pairs.
pub fn cmd_lee(cfg: &RunConfig, path: &str) -> Result<Output, CliError> {
    let (name, d) = load_diagram(path)?;
    cfg.check_crossings(&d)?;
    let lee = lee_homology(&d, None)?;
    let j = json!({ "link": name, "dims": lee.dims, "total": lee.total, "pairs": lee.pairs });
    let dims: Vec<Vec<String>> = lee.dims.iter().map(|(h, n)| vec![h.to_string(), n.to_string()]).collect();
    let pairs: Vec<Vec<String>> = lee
        .pairs
        .iter()
        .map(|p| {
            let o: String = p.orientation.iter().map(|&r| if r { '-' } else { '+' }).collect();
            vec![o, p.h.to_string(), format!("{:?}", p.span_levels), p.s().to_string()]
        })
        .collect();
    let text = format!(
        "Lee homology of {name}: total dimension {}\n{}\ncanonical pairs\n{}",
        lee.total,
        render_table(&["h", "dim"], &dims),
        render_table(&["orientation", "h", "levels", "s"], &pairs)
    );
    Ok(Output::new(j, text))
}

/// `s`, `s_gl2` and the writhe; an ingested `s` fact for a knot replaces the
/// computation and is labeled as such.
pub fn cmd_s(cfg: &RunConfig, path: &str, facts: Option<&FactsStore>) -> Result<Output, CliError> {
    let (name, d) = load_diagram(path)?;
    let fact = facts.filter(|_| d.n_components() == 1).and_then(|f| f.s_of(&name));
    let (rec, used) = match fact {
        Some((s, r)) => {
            let w = d.framed_writhe();
            // s(-K) = -s(K) for knots, so s_gl2 = s - w
            let rec = lee::SRecord {
                link: name.clone(),
                orientation: vec![false],
                s,
                s_gl2: s - w,
                w,
                provenance: lee::Provenance::IngestedFact,
            };
            (rec, vec![r.clone()])
        }
        None => {
            cfg.check_crossings(&d)?;
            (s_record(&name, &d, None)?, Vec::new())
        }
    };
    let mut j = to_json(&rec);
    if !used.is_empty() {
        j["facts"] = to_json(&used.iter().map(FactRecord::echo).collect::<Vec<_>>());
    }
    let prov = match rec.provenance {
        lee::Provenance::Computed => "computed",
        lee::Provenance::IngestedFact => "ingested-fact",
    };
    let mut text = render_table(
        &["link", "s", "s_gl2", "w", "provenance"],
        &[vec![rec.link.clone(), rec.s.to_string(), rec.s_gl2.to_string(), rec.w.to_string(), prov.into()]],
    );
    for r in &used {
        text.push_str(&format!("fact {}\n", r.echo()));
    }
    Ok(Output::new(j, text))
}

/// `a,b,...` as a class.
pub fn parse_class(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad class entry {t:?} in {text:?}"))))
        .collect()
}

fn fact_step(r: &FactRecord) -> Step {
    Step::new("ingested fact", r.echo(), Provenance::IngestedFact)
}

/// Computes every class, then applies the facts about the attaching knot of a
/// knot trace: a TB certificate can force vanishing, and a concordance or
/// slice record transfers the values of the partner trace.
pub fn lasagna_report(
    cfg: &RunConfig,
    x: &Handlebody,
    subject: Option<&str>,
    classes: &[Vec<i64>],
    facts: Option<&FactsStore>,
) -> Result<LasagnaSReport, CliError> {
    let budget = cfg.lasagna_budget();
    let mut entries: Vec<ClassEntry> = classes
        .par_iter()
        .map(|a| evaluate_class(x, a, cfg.r_max, &budget))
        .collect::<Result<_, _>>()?;
    let facts = facts.filter(|_| !cfg.bounds_only);
    let (Some(f), Some(k), 1) = (facts, subject, x.n_handles()) else {
        return Ok(LasagnaSReport::new(x.name.clone(), entries));
    };
    let n = x.framings()[0];

    let mirror = normalize_knot(&format!("mirror({k})"));
    if let Some((tb, rec)) = f.tb_lower(&mirror) {
        let cert = TbCertificate { component: 0, subject: mirror, tb, source: rec.source.clone() };
        let mut verdict = ng_vanishing(x, &[cert]);
        if matches!(verdict.status, VerdictStatus::Vanishing) {
            for e in &mut entries {
                if let SValue::Exact(v) = e.value {
                    return Err(CliError::Compute(format!(
                        "{} forces vanishing, but s({};{:?}) = {v} was computed",
                        rec.echo(),
                        x.name,
                        e.alpha
                    )));
                }
                e.chain.push(fact_step(rec));
                e.chain.push(Step::new("vanishing", "the lasagna module is zero", Provenance::TheoremComposition));
                e.value = SValue::MinusInfinity;
                e.status = Status::Exact;
                e.provenance = Provenance::TheoremComposition;
            }
            verdict.reasons.insert(0, format!("fact {}", rec.echo()));
            let mut report = LasagnaSReport::new(x.name.clone(), entries);
            report.verdict = verdict;
            return Ok(report);
        }
    }

    for (other, rec) in f.concordant(k) {
        let Some(od) = catalog::by_name(&other) else { continue };
        let y = if other == "unknot" {
            Handlebody::unknot_trace(n)
        } else {
            Handlebody::knot_trace(format!("X_{n}({other})"), &od, n)?
        };
        let src: Vec<ClassEntry> = classes
            .par_iter()
            .map(|a| evaluate_class(&y, a, cfg.r_max, &budget))
            .collect::<Result<_, _>>()?;
        let src = LasagnaSReport::new(y.name.clone(), src);
        let fact = ConcordanceFact { from: k.to_string(), to: other.clone(), source: rec.source.clone() };
        let moved = concordance_transfer(&src, &y, x, &fact)?;
        for (e, m) in entries.iter_mut().zip(moved.classes) {
            let Some(b) = m.value.exact() else { continue };
            match e.value {
                SValue::Exact(a) if a != b => {
                    return Err(CliError::Compute(format!(
                        "{} gives s({};{:?}) = {b}, but {a} was computed",
                        rec.echo(),
                        x.name,
                        e.alpha
                    )))
                }
                SValue::AtMost(u) if b > u => {
                    return Err(CliError::Compute(format!(
                        "{} gives s({};{:?}) = {b}, above the computed bound {u}",
                        rec.echo(),
                        x.name,
                        e.alpha
                    )))
                }
                SValue::Exact(_) => {}
                _ => {
                    let mut chain = std::mem::take(&mut e.chain);
                    chain.push(fact_step(rec));
                    chain.extend(m.chain);
                    *e = ClassEntry { chain, ..m };
                }
            }
        }
    }
    Ok(LasagnaSReport::new(x.name.clone(), entries))
}

fn class_label(a: &[i64]) -> String {
    a.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Computed => "computed",
        Provenance::IngestedFact => "ingested-fact",
        Provenance::TheoremComposition => "theorem-composition",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::Conditional => "conditional",
        Status::Bound => "bound",
        Status::Inapplicable => "inapplicable",
        Status::Unknown => "unknown",
    }
}

/// Class table, verdict and derivation chains.
pub(crate) fn render_report(r: &LasagnaSReport) -> String {
    let rows: Vec<Vec<String>> = r
        .classes
        .iter()
        .map(|e| {
            vec![
                class_label(&e.alpha),
                e.square.to_string(),
                e.value.to_string(),
                status_name(e.status).into(),
                provenance_name(e.provenance).into(),
            ]
        })
        .collect();
    let mut out = format!("lasagna s-invariants of {}\n", r.manifold);
    out.push_str(&render_table(&["alpha", "alpha^2", "s", "status", "provenance"], &rows));
    let verdict = match &r.verdict.status {
        VerdictStatus::Vanishing => "vanishing".to_string(),
        VerdictStatus::Nonvanishing { alpha, s } => format!("nonvanishing (s at {} is {s})", class_label(alpha)),
        VerdictStatus::Unknown => "unknown".to_string(),
    };
    out.push_str(&format!("verdict: {verdict}\n"));
    for reason in &r.verdict.reasons {
        out.push_str(&format!("  {reason}\n"));
    }
    for e in &r.classes {
        out.push_str(&format!("derivation of s at {}:\n", class_label(&e.alpha)));
        for s in &e.chain {
            out.push_str(&format!("  [{}] {}: {}\n", provenance_name(s.provenance), s.rule, s.detail));
        }
    }
    out
}

/// Per-class lasagna report of a handlebody file.
pub fn cmd_lasagna(
    cfg: &RunConfig,
    path: &str,
    facts: Option<&FactsStore>,
    classes: &[Vec<i64>],
) -> Result<Output, CliError> {
    let text = read_file(path)?;
    let x = Handlebody::parse(&text)?;
    let subject = handlebody_subject(&text);
    let classes: Vec<Vec<i64>> = if classes.is_empty() {
        let m = x.n_handles();
        std::iter::once(vec![0; m]).chain((0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect())).collect()
    } else {
        classes.to_vec()
    };
    for a in &classes {
        x.check_class(a)?;
    }
    let report = lasagna_report(cfg, &x, subject.as_deref(), &classes, facts)?;
    Ok(Output::new(to_json(&report), render_report(&report)))
}

/// Validates a facts file and lists its records.
pub fn cmd_facts_check(path: &str) -> Result<Output, CliError> {
    let store = FactsStore::parse(&read_file(path)?)?;
    let rows: Vec<Vec<String>> = store
        .records
        .iter()
        .map(|r| {
            vec![
                r.line.to_string(),
                r.kind.name().into(),
                r.subject.clone(),
                r.value.to_string(),
                if r.trusted { "trusted" } else { "untrusted" }.into(),
                r.source.clone(),
            ]
        })
        .collect();
    let text = format!(
        "{} records\n{}",
        store.records.len(),
        render_table(&["line", "kind", "subject", "value", "trust", "source"], &rows)
    );
    Ok(Output::new(to_json(&store), text))
}
