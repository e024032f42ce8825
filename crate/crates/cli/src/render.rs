use std::fmt::Write;

use hesslab::report::{CheckSummary, CorpusSummary, ReportDocument};
use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(Value::is_u64) => {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            let mut sorted: Vec<u64> = a.iter().filter_map(Value::as_u64).collect();
            sorted.sort_unstable();
            let is_perm = sorted.iter().enumerate().all(|(k, &x)| x == k as u64 + 1);
            if is_perm && a.len() <= 9 {
                format!("[{}]", parts.concat())
            } else {
                format!("[{}]", parts.join(","))
            }
        }
        other => other.to_string(),
    }
}

/// Key/value rendering of a report; certificate bodies are summarized.
pub fn report_table(r: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<16} {}", "outcome", scalar(&serde_json::to_value(r.outcome).expect("enum")));
    if let Value::Object(map) = &r.result {
        for (k, v) in map {
            match (k.as_str(), v) {
                ("certificates", Value::Array(cs)) if cs.is_empty() => {}
                ("certificates", Value::Array(cs)) => {
                    let mut counts = std::collections::BTreeMap::<String, usize>::new();
                    for c in cs {
                        *counts.entry(scalar(&c["status"])).or_default() += 1;
                    }
                    let parts: Vec<String> = counts.iter().map(|(s, n)| format!("{s} {n}")).collect();
                    let _ = writeln!(out, "{:<16} {}", "cells", parts.join(", "));
                }
                ("profile", Value::Array(ps)) => {
                    let items: Vec<String> = ps.iter().map(scalar).collect();
                    let _ = writeln!(out, "{:<16} {} elements: {}", "profile", items.len(), items.join(" "));
                }
                ("maximal", Value::Array(ps)) => {
                    let items: Vec<String> = ps.iter().map(scalar).collect();
                    let _ = writeln!(out, "{:<16} {}", "maximal", items.join(" "));
                }
                ("lifted", _) => {
                    let _ = writeln!(out, "{:<16} {}", "lifted", v);
                }
                (_, v) => {
                    let _ = writeln!(out, "{:<16} {}", k, scalar(v));
                }
            }
        }
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(out, "{:<16} {:.1} ms", "time", t.total_ms);
    }
    out
}

pub fn corpus_table(s: &CorpusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "corpus {}", s.corpus);
    let width = s.lines.iter().map(|l| l.id.len()).max().unwrap_or(0);
    for l in &s.lines {
        let mark = if l.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "  {mark}  {:<width$}  {}  ({})", l.id, l.detail, l.comment);
    }
    let passed = s.lines.iter().filter(|l| l.passed).count();
    let _ = writeln!(out, "  {passed}/{} passed", s.lines.len());
    out
}

pub fn check_table(s: &CheckSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}/{} certificates verified", s.verified, s.certificates);
    for f in &s.failures {
        let _ = writeln!(out, "  FAIL {f}");
    }
    if s.ok() {
        let _ = writeln!(out, "ok");
    }
    out
}
