//! Report emission: ANSI-aware text rendering and newline-terminated
//! single-object JSON.

use std::io::IsTerminal;

use radai_core::{Diagnostic, ParseError, Severity};

/// Whether the process should style its stdout output. Styling is dropped
/// when stdout is not a terminal or when `RADAI_NO_COLOR` is set (to any
/// value), so piped output and CI logs stay byte-stable.
pub fn use_color() -> bool {
    std::env::var_os("RADAI_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub fn severity_label(severity: Severity, color: bool) -> String {
    let code = match severity {
        Severity::Error => "31;1",
        Severity::Warning => "33;1",
        Severity::Info => "36",
    };
    paint(severity.as_str(), code, color)
}

/// One text line per finding:
/// `<file>:<line>:<col>: <severity>[<rule>]: <message> (<subject>)`.
pub fn render_diagnostic(d: &Diagnostic, color: bool) -> String {
    format!(
        "{}:{}:{}: {}[{}]: {} ({})",
        d.span.file,
        d.span.line_start,
        d.span.col_start,
        severity_label(d.severity, color),
        d.rule,
        d.message,
        d.subject
    )
}

pub fn print_parse_errors(errors: &[ParseError]) {
    for e in errors {
        eprintln!("{e}");
    }
    eprintln!("{} parse error(s)", errors.len());
}

pub fn print_structure_errors(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}", render_diagnostic(d, false));
    }
    eprintln!("{} structural error(s)", diags.len());
}

/// Prints the single JSON report object, newline-terminated.
pub fn print_json(value: &serde_json::Value) {
    println!("{value}");
}
