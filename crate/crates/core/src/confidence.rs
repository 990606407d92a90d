//! Confidence expressions: the quantified guarantees attached to boundary
//! contracts, quality gates, monitoring alerts and concern thresholds.

use std::fmt;

/// Comparison operator inside a confidence expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Comparator {
    pub fn as_str(self) -> &'static str {
        match self {
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
            Comparator::Eq => "=",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Self> {
        match s {
            "<" => Some(Comparator::Lt),
            "<=" => Some(Comparator::Le),
            ">" => Some(Comparator::Gt),
            ">=" => Some(Comparator::Ge),
            "=" => Some(Comparator::Eq),
            _ => None,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed confidence expression: `metric cmp value [unit] [@ condition]`.
///
/// Examples: `precision >= 0.92 @ P95 latency < 50 ms`, `MAE <= 5.5 min`,
/// `null-rate < 1 %`, `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceSpec {
    pub metric: String,
    pub comparator: Comparator,
    pub value: f64,
    pub unit: Option<String>,
    pub condition: Option<String>,
}

/// Why a confidence expression failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfidenceError {
    #[error("confidence expression is empty")]
    Empty,
    #[error("confidence `{0}` is missing a comparator (one of <, <=, >, >=, =)")]
    MissingComparator(String),
    #[error("confidence `{0}` is missing a metric before the comparator")]
    MissingMetric(String),
    #[error("confidence `{expr}` has a non-numeric value `{value}`")]
    NonNumericValue { expr: String, value: String },
    #[error("confidence `{expr}` has unexpected trailing tokens starting at `{token}`")]
    TrailingTokens { expr: String, token: String },
}

/// Parses a confidence expression.
///
/// The grammar is a single whitespace-separated line: one metric token, one
/// comparator, one finite decimal (an attached unit such as `1%` is split
/// off), an optional unit token, and an optional free-text condition after
/// `@`.
pub fn parse_confidence(expr: &str) -> Result<ConfidenceSpec, ConfidenceError> {
    let expr_owned = expr.trim().to_string();
    if expr_owned.is_empty() {
        return Err(ConfidenceError::Empty);
    }

    let (head, condition) = match expr_owned.split_once('@') {
        Some((h, c)) => (h.trim(), Some(c.trim().to_string())),
        None => (expr_owned.as_str(), None),
    };
    if let Some(c) = &condition {
        if c.is_empty() {
            return Err(ConfidenceError::TrailingTokens {
                expr: expr_owned.clone(),
                token: "@".to_string(),
            });
        }
    }

    let tokens: Vec<&str> = head.split_whitespace().collect();
    let cmp_at = tokens
        .iter()
        .position(|t| Comparator::from_str_opt(t).is_some())
        .ok_or_else(|| ConfidenceError::MissingComparator(expr_owned.clone()))?;
    if cmp_at == 0 {
        return Err(ConfidenceError::MissingMetric(expr_owned.clone()));
    }
    if cmp_at != 1 {
        // Two tokens before the comparator: the metric must be one token.
        return Err(ConfidenceError::TrailingTokens {
            expr: expr_owned.clone(),
            token: tokens[1].to_string(),
        });
    }
    let metric = tokens[0].to_string();
    let comparator = Comparator::from_str_opt(tokens[1]).expect("position() found it");

    let value_tok = tokens
        .get(2)
        .ok_or_else(|| ConfidenceError::NonNumericValue {
            expr: expr_owned.clone(),
            value: String::new(),
        })?;

    // Split an attached unit off the numeric token, e.g. `50ms` or `1%`.
    let split_at = value_tok
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || *c == '.' || *c == '-'))
        .map(|(i, _)| i)
        .unwrap_or(value_tok.len());
    let (num_part, attached_unit) = value_tok.split_at(split_at);
    let value: f64 = num_part
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| ConfidenceError::NonNumericValue {
            expr: expr_owned.clone(),
            value: value_tok.to_string(),
        })?;

    let mut unit = if attached_unit.is_empty() {
        None
    } else {
        Some(attached_unit.to_string())
    };
    let mut next = 3;
    if unit.is_none() {
        if let Some(tok) = tokens.get(3) {
            unit = Some(tok.to_string());
            next = 4;
        }
    }
    if let Some(extra) = tokens.get(next) {
        let token = extra.to_string();
        return Err(ConfidenceError::TrailingTokens { expr: expr_owned, token });
    }

    Ok(ConfidenceSpec {
        metric,
        comparator,
        value,
        unit,
        condition,
    })
}

impl fmt::Display for ConfidenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.metric, self.comparator, self.value)?;
        if let Some(unit) = &self.unit {
            write!(f, " {unit}")?;
        }
        if let Some(cond) = &self.condition {
            write!(f, " @ {cond}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_threshold_with_unit() {
        let c = parse_confidence("MAE <= 5.5 min").unwrap();
        assert_eq!(c.metric, "MAE");
        assert_eq!(c.comparator, Comparator::Le);
        assert_eq!(c.value, 5.5);
        assert_eq!(c.unit.as_deref(), Some("min"));
        assert_eq!(c.condition, None);
    }

    #[test]
    fn parses_conditioned_expression() {
        let c = parse_confidence("precision >= 0.92 @ P95 latency < 50 ms").unwrap();
        assert_eq!(c.metric, "precision");
        assert_eq!(c.comparator, Comparator::Ge);
        assert_eq!(c.value, 0.92);
        assert_eq!(c.unit, None);
        assert_eq!(c.condition.as_deref(), Some("P95 latency < 50 ms"));
    }

    #[test]
    fn parses_minimal_equality() {
        let c = parse_confidence("x = 0").unwrap();
        assert_eq!(c.metric, "x");
        assert_eq!(c.comparator, Comparator::Eq);
        assert_eq!(c.value, 0.0);
        assert_eq!(c.unit, None);
        assert_eq!(c.condition, None);
    }

    #[test]
    fn parses_percent_unit_attached_or_spaced() {
        let spaced = parse_confidence("null-rate < 1 %").unwrap();
        assert_eq!(spaced.unit.as_deref(), Some("%"));
        let attached = parse_confidence("null-rate < 1%").unwrap();
        assert_eq!(attached.unit.as_deref(), Some("%"));
        assert_eq!(attached.value, 1.0);
    }

    #[test]
    fn missing_comparator_is_reported() {
        assert!(matches!(
            parse_confidence("precision 0.92"),
            Err(ConfidenceError::MissingComparator(_))
        ));
    }

    #[test]
    fn non_numeric_value_is_reported() {
        assert!(matches!(
            parse_confidence("precision >= high"),
            Err(ConfidenceError::NonNumericValue { .. })
        ));
        assert!(matches!(
            parse_confidence("precision >="),
            Err(ConfidenceError::NonNumericValue { .. })
        ));
    }

    #[test]
    fn trailing_tokens_are_rejected() {
        assert!(matches!(
            parse_confidence("MAE <= 5.5 min extra"),
            Err(ConfidenceError::TrailingTokens { .. })
        ));
    }

    #[test]
    fn display_round_trips_through_parse() {
        for expr in [
            "MAE <= 5.5 min",
            "precision >= 0.92 @ P95 latency < 50 ms",
            "x = 0",
            "null-rate < 1 %",
        ] {
            let c = parse_confidence(expr).unwrap();
            let again = parse_confidence(&c.to_string()).unwrap();
            assert_eq!(again, c, "{expr}");
        }
    }
}
