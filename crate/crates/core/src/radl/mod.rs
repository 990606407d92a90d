//! RADL, the plain-text storage format: a line-oriented block format, one
//! block per entity, `key = value` entries, `#` comments.
//!
//! ```text
//! # radl 1
//!
//! [e1.boundary "route-updates"]
//! consumer = city-dashboard
//! provider = route-optimization
//! output_type = continuous
//! confidence = "mae < 5.5 min"
//! update_frequency = PT1H
//! fallback = cached_last_known_good
//! ```
//!
//! [`parse`] turns source text into a raw [`crate::model::Document`]
//! (collecting *all* errors, not just the first); [`serialize`] renders a
//! document back to canonical text — blocks ordered by kind then identifier,
//! fixed key order, LF endings — such that parsing the output reproduces the
//! document.

mod mini;
mod parse;
mod serialize;

pub use parse::parse;
pub use serialize::serialize;

use std::fmt;

use crate::span::SourceSpan;

/// A syntax or vocabulary error found while parsing RADL text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    /// Token class the parser was looking for, when that is meaningful.
    pub expected: Option<String>,
}

impl ParseError {
    pub fn new(message: impl Into<String>, span: SourceSpan) -> ParseError {
        ParseError {
            message: message.into(),
            span,
            expected: None,
        }
    }

    pub fn expecting(
        message: impl Into<String>,
        span: SourceSpan,
        expected: impl Into<String>,
    ) -> ParseError {
        ParseError {
            message: message.into(),
            span,
            expected: Some(expected.into()),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
