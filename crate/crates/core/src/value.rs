//! Scalar value forms shared by the document model and the RADL format:
//! the raw [`Value`] enum and the [`DurationSpec`] literal.

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

/// A duration literal such as `P1D`, `PT2H` or `PT15M`, normalized to whole
/// seconds. The accepted shape is `P[nW][nD][T[nH][nM][nS]]` with at least
/// one component; the canonical rendering decomposes seconds back into
/// days/hours/minutes/seconds (weeks fold into days).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DurationSpec {
    seconds: u64,
}

/// Error for a malformed duration literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid duration `{0}`: expected P[nW][nD][T[nH][nM][nS]] with at least one component")]
pub struct InvalidDuration(pub String);

impl DurationSpec {
    pub fn from_seconds(seconds: u64) -> Self {
        DurationSpec { seconds }
    }

    pub fn seconds(self) -> u64 {
        self.seconds
    }

    pub fn is_positive(self) -> bool {
        self.seconds > 0
    }
}

impl FromStr for DurationSpec {
    type Err = InvalidDuration;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || InvalidDuration(s.to_string());
        let rest = s.strip_prefix('P').ok_or_else(err)?;
        let (date_part, time_part) = match rest.split_once('T') {
            Some((d, t)) => (d, Some(t)),
            None => (rest, None),
        };

        let mut seconds: u64 = 0;
        let mut components = 0usize;

        let mut eat = |part: &str, units: &[(char, u64)]| -> Result<(), InvalidDuration> {
            let mut digits = String::new();
            let mut unit_at = 0usize;
            for c in part.chars() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    continue;
                }
                let pos = units[unit_at..]
                    .iter()
                    .position(|(u, _)| *u == c)
                    .ok_or_else(err)?;
                if digits.is_empty() {
                    return Err(err());
                }
                let n: u64 = digits.parse().map_err(|_| err())?;
                let (_, factor) = units[unit_at + pos];
                seconds = n
                    .checked_mul(factor)
                    .and_then(|v| seconds.checked_add(v))
                    .ok_or_else(err)?;
                unit_at += pos + 1;
                components += 1;
                digits.clear();
            }
            if digits.is_empty() {
                Ok(())
            } else {
                Err(err())
            }
        };

        eat(date_part, &[('W', 7 * 86_400), ('D', 86_400)])?;
        if let Some(t) = time_part {
            eat(t, &[('H', 3_600), ('M', 60), ('S', 1)])?;
        }
        if components == 0 {
            return Err(err());
        }
        Ok(DurationSpec { seconds })
    }
}

impl fmt::Display for DurationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rest = self.seconds;
        let days = rest / 86_400;
        rest %= 86_400;
        let hours = rest / 3_600;
        rest %= 3_600;
        let minutes = rest / 60;
        let secs = rest % 60;

        f.write_str("P")?;
        if days > 0 {
            write!(f, "{days}D")?;
        }
        if hours > 0 || minutes > 0 || secs > 0 || days == 0 {
            f.write_str("T")?;
            if hours > 0 {
                write!(f, "{hours}H")?;
            }
            if minutes > 0 {
                write!(f, "{minutes}M")?;
            }
            if secs > 0 || (hours == 0 && minutes == 0) {
                write!(f, "{secs}S")?;
            }
        }
        Ok(())
    }
}

/// A raw scalar or list as it appears on the right-hand side of a RADL
/// entry. Typed entities are built from these; unknown keys keep them as-is
/// so canonical serialization can re-emit them.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Quoted free text, e.g. `"18 months, 2.1M trips"`.
    Str(String),
    /// Bare word, e.g. `production` or `operator-dashboard`.
    Token(String),
    /// Decimal number, e.g. `0.92` or `-3`.
    Num(f64),
    /// `true` / `false`.
    Bool(bool),
    /// Calendar date, e.g. `2025-11-03`.
    Date(NaiveDate),
    /// Duration literal, e.g. `PT2H`.
    Duration(DurationSpec),
    /// Bracketed list, e.g. `[a, b]` — elements are themselves scalars.
    List(Vec<Value>),
}

impl Value {
    /// Human-readable name of the value's form, used in error messages.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Str(_) => "string",
            Value::Token(_) => "token",
            Value::Num(_) => "number",
            Value::Bool(_) => "boolean",
            Value::Date(_) => "date",
            Value::Duration(_) => "duration",
            Value::List(_) => "list",
        }
    }
}
