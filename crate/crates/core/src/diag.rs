//! Diagnostics shared by link resolution and the linter.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::span::SourceSpan;

/// How bad a finding is. `Error` findings make a document non-compliant and
/// drive the CLI exit code; `Warning` findings are advisories; `Info` is
/// reserved for purely informational output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Severity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// A single finding against a document, identified by a stable rule id such
/// as `E1-001` or `X-001`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: &'static str,
    pub severity: Severity,
    pub message: String,
    pub span: SourceSpan,
    /// Identifier (or best available name) of the thing the finding is about.
    pub subject: String,
}

impl Diagnostic {
    pub fn new(
        rule: &'static str,
        severity: Severity,
        message: impl Into<String>,
        span: SourceSpan,
        subject: impl Into<String>,
    ) -> Self {
        Diagnostic {
            rule,
            severity,
            message: message.into(),
            span,
            subject: subject.into(),
        }
    }

    /// Stable ordering: file, then line, then rule id, then column/subject as
    /// tie-breakers. Every diagnostic list in the crate is sorted with this.
    pub fn sort_key(&self) -> (String, u32, &'static str, u32, String) {
        (
            self.span.file.clone(),
            self.span.line_start,
            self.rule,
            self.span.col_start,
            self.subject.clone(),
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}[{}]: {} ({})",
            self.span, self.severity, self.rule, self.message, self.subject
        )
    }
}

/// Serializes as the flat report object consumed by CI tooling:
/// `{rule, severity, message, file, line, col, subject}`.
impl Serialize for Diagnostic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Diagnostic", 7)?;
        s.serialize_field("rule", self.rule)?;
        s.serialize_field("severity", &self.severity)?;
        s.serialize_field("message", &self.message)?;
        s.serialize_field("file", &self.span.file)?;
        s.serialize_field("line", &self.span.line_start)?;
        s.serialize_field("col", &self.span.col_start)?;
        s.serialize_field("subject", &self.subject)?;
        s.end()
    }
}

/// Sorts diagnostics into the stable report order.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by_key(|d| d.sort_key());
}
