//! Text and CSV views of an [`Envelope`]. Both read only `command`, `inputs`
//! and `result`, never `timing`.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;

use rmra::catalog::{self, CatalogEntry, Status};
use rmra::search::{StageOutcome, StopReason, Verdict};

use crate::{AnalyzePayload, CatalogPayload, Envelope, IesPayload, SearchPayload, VerifyPayload};

fn payload<T: DeserializeOwned>(env: &Envelope) -> Option<T> {
    serde_json::from_value(env.result.clone()).ok()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Human-readable rendering. Falls back to pretty JSON for a result the
/// renderer does not recognise.
pub fn render_text(env: &Envelope) -> String {
    let text = match env.command.as_str() {
        "search" => payload(env).map(|p| search_text(&p)),
        "analyze" => payload(env).map(|p| analyze_text(env, &p)),
        "catalog" => payload(env).map(|p| catalog_text(&p)),
        "verify" => payload(env).map(|p| verify_text(&p)),
        "ies" => payload(env).map(|p| ies_text(&p)),
        _ => None,
    };
    text.unwrap_or_else(|| {
        serde_json::to_string_pretty(&env.result).expect("value serializes") + "\n"
    })
}

/// CSV (or JSON-lines) rendering where the command has a tabular result.
pub fn render_csv(env: &Envelope, jsonl: bool) -> Option<String> {
    match (env.command.as_str(), jsonl) {
        ("analyze", false) => {
            let p: AnalyzePayload = payload(env)?;
            let weights = p.faulty.as_ref().map_or(&p.weights, |f| &f.weights);
            let mut out = String::from("lag,weight\n");
            for (lag, w) in weights.iter().enumerate() {
                let _ = writeln!(out, "{lag},{w}");
            }
            Some(out)
        }
        ("catalog", false) => match payload(env)? {
            CatalogPayload::Comparison { comparison } => Some(catalog::comparison_csv(&comparison)),
            CatalogPayload::Entries { .. } => None,
        },
        ("catalog", true) => match payload(env)? {
            CatalogPayload::Entries { entries } => Some(catalog::export_jsonl(&entries)),
            CatalogPayload::Comparison { .. } => None,
        },
        _ => None,
    }
}

fn search_text(p: &SearchPayload) -> String {
    let o = &p.outcome;
    let mut out = format!("N = {}\n", o.n);
    for s in &o.stages {
        let line = match &s.outcome {
            StageOutcome::Found {
                array,
                candidate_index,
            } => {
                format!("found      {array} (candidate {candidate_index})")
            }
            StageOutcome::Exhausted => "exhausted".to_string(),
            StageOutcome::BudgetExceeded => "budget exceeded".to_string(),
        };
        let _ = writeln!(
            out,
            "L = {:>3}  {line}  [{} examined]",
            s.l, s.candidates_examined
        );
    }
    let verdict = match o.verdict {
        Verdict::Optimal { aperture } => format!("optimal, L = {aperture}"),
        Verdict::NearOptimal { aperture, reason } => {
            let why = match reason {
                StopReason::Budget => "candidate budget exhausted",
                StopReason::ApertureLimit => "aperture limit reached",
            };
            format!("near-optimal, L = {aperture} ({why})")
        }
        Verdict::NoneFound => "no valid array found".to_string(),
    };
    let _ = writeln!(out, "verdict: {verdict}");
    if let Some(best) = &o.best_array {
        let _ = writeln!(out, "best: {best}");
        let _ = writeln!(out, "ies:  {:?}", best.ies().spacings());
    }
    out
}

fn weight_rows(out: &mut String, title: &str, weights: &[u32]) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "  lag: {}",
        weights
            .iter()
            .enumerate()
            .map(|(i, _)| format!("{i:>3}"))
            .collect::<String>()
    );
    let _ = writeln!(
        out,
        "  w:   {}",
        weights
            .iter()
            .map(|w| format!("{w:>3}"))
            .collect::<String>()
    );
}

fn analyze_text(env: &Envelope, p: &AnalyzePayload) -> String {
    let mut out = format!("positions: {}\n", p.positions);
    let raw: Option<Vec<u32>> = env
        .inputs
        .get("positions")
        .and_then(|v| serde_json::from_value(v.clone()).ok());
    if let Some(raw) = raw {
        if raw != p.positions.positions() {
            let _ = writeln!(out, "  (canonicalized from [{}])", join(&raw));
        }
    }
    let _ = writeln!(out, "N = {}, L = {}", p.n, p.aperture);
    weight_rows(&mut out, "weights:", &p.weights);
    if p.holes.is_empty() {
        let _ = writeln!(out, "holes: none");
    } else {
        let _ = writeln!(out, "holes: [{}]", join(&p.holes));
    }
    let _ = writeln!(
        out,
        "doubly redundant up to lag {}",
        p.doubly_redundant_span
    );
    let _ = writeln!(out, "essential sensors: [{}]", join(&p.report.essential));
    let _ = writeln!(out, "fragility: {}", p.report.fragility);
    for f in p.report.failures.iter().filter(|f| !f.holes.is_empty()) {
        let _ = writeln!(out, "  without {}: holes [{}]", f.failed, join(&f.holes));
    }
    let v = &p.verdict;
    let _ = writeln!(out, "constraints:");
    for (name, ok) in [
        ("size", v.size_ok),
        ("hole-free", v.hole_free),
        ("doubly redundant", v.doubly_redundant),
        ("only endpoints essential", v.two_essential),
        ("sparse (w(L) = 1)", v.sparse),
    ] {
        let _ = writeln!(out, "  {name:<26}{}", yes_no(ok));
    }
    let _ = writeln!(out, "robust minimum redundancy: {}", yes_no(v.overall));
    if let Some(f) = &p.faulty {
        weight_rows(
            &mut out,
            &format!("weights without sensor {}:", f.failed),
            &f.weights,
        );
        if f.holes.is_empty() {
            let _ = writeln!(out, "holes: none");
        } else {
            let _ = writeln!(out, "holes: [{}]", join(&f.holes));
        }
    }
    out
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Optimal => "optimal",
        Status::NearOptimal => "near-optimal",
        Status::StageValid => "stage-valid",
        Status::Published => "published",
        Status::ApertureOnly => "aperture-only",
    }
}

fn entry_line(e: &CatalogEntry) -> String {
    let mut line = format!(
        "{:<10} N = {:>2}  L = {:>2}  {:<13}",
        e.family.to_string(),
        e.n,
        e.l,
        status_name(e.status)
    );
    if let Some(p) = &e.positions {
        let _ = write!(line, " {p}");
    }
    if !e.critical_interior_sensors.is_empty() {
        let _ = write!(line, " critical [{}]", join(&e.critical_interior_sensors));
    }
    let _ = write!(line, "  ({})", e.source);
    line
}

fn catalog_text(p: &CatalogPayload) -> String {
    let mut out = String::new();
    match p {
        CatalogPayload::Entries { entries } => {
            for e in entries {
                let _ = writeln!(out, "{}", entry_line(e));
            }
            let _ = writeln!(out, "{} entries", entries.len());
        }
        CatalogPayload::Comparison { comparison } => {
            let _ = writeln!(
                out,
                "{:>3} {:>6} {:>6} {:>6} {:>9}",
                "N", "symNA", "RMRA", "2FRA", "critical"
            );
            for r in comparison {
                let sym = r.sym_na.map_or("**".to_string(), |v| v.to_string());
                let crit = r
                    .two_fra_critical
                    .map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(
                    out,
                    "{:>3} {:>6} {:>6} {:>6} {:>9}",
                    r.n, sym, r.rmra, r.two_fra, crit
                );
            }
        }
    }
    out
}

fn verify_text(p: &VerifyPayload) -> String {
    let mut out = String::new();
    for e in &p.report.entries {
        let mark = if e.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(
            out,
            "{mark} {} N = {} L = {} {} ({}) {}",
            e.family,
            e.n,
            e.l,
            status_name(e.status),
            e.source,
            e.detail
        );
    }
    for c in &p.report.cross_checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
    }
    let failed =
        p.report.failures().count() + p.report.cross_checks.iter().filter(|c| !c.passed).count();
    let total = p.report.entries.len() + p.report.cross_checks.len();
    let _ = writeln!(out, "{} of {total} checks passed", total - failed);
    out
}

fn ies_text(p: &IesPayload) -> String {
    let mut out = format!(
        "positions: {}\nies: [{}]\n",
        p.array,
        join(p.ies.spacings())
    );
    if let Some(run) = p.ies.longest_repeated_run() {
        let _ = writeln!(
            out,
            "longest repeated spacing run: {} x {} at index {}",
            run.1,
            p.ies.spacings()[run.0],
            run.0
        );
    }
    if let Some(e) = &p.extension {
        let _ = writeln!(out, "extended by {}: {}", e.extra, e.array);
        let _ = writeln!(out, "ies: [{}]", join(e.ies.spacings()));
        let _ = writeln!(
            out,
            "N = {}, L = {}, valid: {}",
            e.array.len(),
            e.array.aperture(),
            yes_no(e.valid)
        );
    }
    out
}
