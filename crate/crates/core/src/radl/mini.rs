//! Mini-grammars for the structured strings embedded in RADL lists: quality
//! gates, monitoring entries and traffic slices. Each has a strict parser
//! and a canonical renderer that round-trip.

use crate::confidence::parse_confidence;
use crate::ident::Identifier;
use crate::model::{GateAction, GateCheck, MonitorEntry, QualityGate, TrafficSlice};

/// Parses `[check ":"] [threshold] ["->" action]`, e.g.
/// `schema: null-rate < 1 % -> halt`. Every part is optional (their absence
/// is the linter's business, rule E3-002), but present parts must be valid.
pub(crate) fn parse_gate(text: &str) -> Result<QualityGate, String> {
    let (lhs, action) = match text.rsplit_once("->") {
        Some((lhs, rhs)) => {
            let token = rhs.trim();
            let action = GateAction::from_token(token).map_err(|e| e.to_string())?;
            (lhs.trim(), Some(action))
        }
        None => (text.trim(), None),
    };

    let (check, threshold_expr) = match lhs.split_once(':') {
        Some((prefix, rest)) if GateCheck::from_token(prefix.trim()).is_ok() => {
            (Some(GateCheck::from_token(prefix.trim()).unwrap()), rest.trim())
        }
        _ => match GateCheck::from_token(lhs) {
            Ok(check) => (Some(check), ""),
            Err(_) => (None, lhs),
        },
    };

    let threshold = if threshold_expr.is_empty() {
        None
    } else {
        Some(parse_confidence(threshold_expr).map_err(|e| e.to_string())?)
    };

    Ok(QualityGate {
        check,
        threshold,
        on_failure: action,
    })
}

pub(crate) fn render_gate(gate: &QualityGate) -> String {
    let mut out = String::new();
    match (&gate.check, &gate.threshold) {
        (Some(c), Some(t)) => out.push_str(&format!("{c}: {t}")),
        (Some(c), None) => out.push_str(c.as_token()),
        (None, Some(t)) => out.push_str(&t.to_string()),
        (None, None) => {}
    }
    if let Some(a) = &gate.on_failure {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&format!("-> {a}"));
    }
    out
}

/// Parses `model ":" metric+ "->" threshold`, e.g.
/// `m-demand: mae p95-latency -> mae > 6 min`. All parts are required.
pub(crate) fn parse_monitor(text: &str) -> Result<MonitorEntry, String> {
    let (model, rest) = text
        .split_once(':')
        .ok_or("monitoring entry needs `model: metrics -> threshold`")?;
    let model_id: Identifier = model
        .trim()
        .parse()
        .map_err(|e: crate::ident::InvalidIdentifier| e.to_string())?;
    let (metrics_part, threshold_part) = rest
        .rsplit_once("->")
        .ok_or("monitoring entry needs an alert threshold after `->`")?;
    let metrics: Vec<String> = metrics_part.split_whitespace().map(String::from).collect();
    if metrics.is_empty() {
        return Err("monitoring entry names no metrics".to_string());
    }
    let alert_threshold = parse_confidence(threshold_part.trim()).map_err(|e| e.to_string())?;
    Ok(MonitorEntry {
        model_id,
        metrics,
        alert_threshold,
    })
}

pub(crate) fn render_monitor(entry: &MonitorEntry) -> String {
    format!(
        "{}: {} -> {}",
        entry.model_id,
        entry.metrics.join(" "),
        entry.alert_threshold
    )
}

/// Parses `label ":" percent`, e.g. `canary: 5`. Range checking is the
/// linter's business (rule E8-002); the number only has to be a finite
/// decimal.
pub(crate) fn parse_slice(text: &str) -> Result<TrafficSlice, String> {
    let (label, number) = text
        .split_once(':')
        .ok_or("traffic slice needs `label: percent`")?;
    let label = label.trim();
    if label.is_empty() {
        return Err("traffic slice has an empty label".to_string());
    }
    let percent: f64 = number
        .trim()
        .parse()
        .ok()
        .filter(|p: &f64| p.is_finite())
        .ok_or_else(|| format!("traffic slice percent `{}` is not a decimal", number.trim()))?;
    Ok(TrafficSlice {
        label: label.to_string(),
        percent,
    })
}

pub(crate) fn render_slice(slice: &TrafficSlice) -> String {
    format!("{}: {}", slice.label, slice.percent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_forms_parse_and_round_trip() {
        let full = parse_gate("schema: null-rate < 1 % -> halt").unwrap();
        assert_eq!(full.check, Some(GateCheck::Schema));
        assert_eq!(full.threshold.as_ref().unwrap().metric, "null-rate");
        assert_eq!(full.on_failure, Some(GateAction::Halt));
        assert_eq!(render_gate(&full), "schema: null-rate < 1 % -> halt");

        let partial = parse_gate("distribution -> alert_continue").unwrap();
        assert_eq!(partial.check, Some(GateCheck::Distribution));
        assert!(partial.threshold.is_none());
        assert_eq!(render_gate(&partial), "distribution -> alert_continue");

        let bare_threshold = parse_gate("ks-statistic < 0.1").unwrap();
        assert!(bare_threshold.check.is_none());
        assert!(bare_threshold.on_failure.is_none());
        assert_eq!(render_gate(&bare_threshold), "ks-statistic < 0.1");

        let empty = parse_gate("").unwrap();
        assert_eq!(empty, QualityGate { check: None, threshold: None, on_failure: None });
        assert_eq!(render_gate(&empty), "");

        for text in [
            "schema: null-rate < 1 % -> halt",
            "completeness: rows >= 1000 -> activate_fallback",
            "-> halt",
        ] {
            let gate = parse_gate(text).unwrap();
            assert_eq!(parse_gate(&render_gate(&gate)).unwrap(), gate);
        }
    }

    #[test]
    fn gate_rejects_bad_parts() {
        assert!(parse_gate("schema: null-rate < 1 % -> explode").is_err());
        assert!(parse_gate("schema: not a spec -> halt").is_err());
    }

    #[test]
    fn monitor_entries_round_trip() {
        let entry = parse_monitor("m-demand: mae p95-latency -> mae > 6 min").unwrap();
        assert_eq!(entry.model_id.as_str(), "m-demand");
        assert_eq!(entry.metrics, vec!["mae", "p95-latency"]);
        assert_eq!(parse_monitor(&render_monitor(&entry)).unwrap(), entry);

        assert!(parse_monitor("no-colon-here").is_err());
        assert!(parse_monitor("m: -> x > 1").is_err(), "no metrics");
        assert!(parse_monitor("m: mae").is_err(), "no threshold");
    }

    #[test]
    fn slices_round_trip() {
        let s = parse_slice("canary: 5").unwrap();
        assert_eq!((s.label.as_str(), s.percent), ("canary", 5.0));
        assert_eq!(render_slice(&s), "canary: 5");
        let s = parse_slice("stable: 92.5").unwrap();
        assert_eq!(parse_slice(&render_slice(&s)).unwrap(), s);
        assert!(parse_slice("nocolon").is_err());
        assert!(parse_slice(": 5").is_err());
        assert!(parse_slice("canary: lots").is_err());
    }
}
