//! The RADL parser: source text to raw [`Document`], collecting every error
//! found rather than stopping at the first one.

use chrono::NaiveDate;

use crate::ident::Identifier;
use crate::model::{
    AiAdr, Arc42Section, AttachmentKind, AttachmentRef, BoundaryContract, Concern, ConcernCell,
    DebtCategory, DebtEntry, DebtSeverity, DebtStatus, DeploymentPolicy, DeploymentStrategy,
    DiagramElement, Document, Extras, FallbackBehavior, LineageEdge, MetaBlock,
    ModelEntry, ModelStatus, MonitorEntry, OperationalAiView, OutputType, Pipeline, PipelineStage,
    PrivacyClass, QualityGate, QualityScenario, RegionContract, RetrainingPolicy,
    RetrainingTrigger, RiskClass, RollbackPolicy, ScenarioEnvironment, ScenarioSource,
    SectionMarker, StageKind, Stereotype, TrafficSlice, UnknownToken,
};
use crate::radl::mini::{parse_gate, parse_monitor, parse_slice};
use crate::radl::ParseError;
use crate::span::{NodeSpan, SourceSpan};
use crate::value::{DurationSpec, Value};

const KNOWN_KINDS: &str = "meta, arc42.section, e1.boundary, e2.model, e3.pipeline, e3.stage, \
                           e4.cell, e5.adr, e6.scenario, e7.debt, e8.ops, c4.element, \
                           c4.lineage, attach";

/// Parses RADL text into a raw (unresolved) document.
///
/// Entities mirror the blocks in source order. On failure, returns every
/// error found — bad lines are skipped and parsing continues, so one typo
/// does not hide the next. `file` is used for spans only.
pub fn parse(source: &str, file: &str) -> Result<Document, Vec<ParseError>> {
    let mut errors: Vec<ParseError> = Vec::new();
    let blocks = scan(source, file, &mut errors);

    let mut doc = Document::default();
    for block in blocks {
        build(block, &mut doc, &mut errors);
    }

    if errors.is_empty() {
        Ok(doc)
    } else {
        errors.sort_by(|a, b| {
            (a.span.line_start, a.span.col_start, &a.message).cmp(&(
                b.span.line_start,
                b.span.col_start,
                &b.message,
            ))
        });
        Err(errors)
    }
}

// ---------------------------------------------------------------------------
// Line scanner
// ---------------------------------------------------------------------------

struct RawEntry {
    key: String,
    value: Value,
    span: SourceSpan,
}

struct RawBlock {
    kind: String,
    id: Option<Identifier>,
    header_span: SourceSpan,
    last_line: u32,
    entries: Vec<Option<RawEntry>>,
}

enum State {
    /// Before the first block header.
    Preamble,
    /// Inside the block most recently pushed.
    InBlock,
    /// After a malformed block header: swallow entries without complaining
    /// about each one.
    Skipping,
}

fn scan(source: &str, file: &str, errors: &mut Vec<ParseError>) -> Vec<RawBlock> {
    let mut blocks: Vec<RawBlock> = Vec::new();
    let mut state = State::Preamble;

    // `str::lines` splits on `\n` and swallows a preceding `\r`, which is
    // exactly the CRLF normalization the format promises.
    for (idx, line) in source.lines().enumerate() {
        let line_no = (idx + 1) as u32;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            check_version_comment(trimmed, file, line_no, errors);
            continue;
        }

        let content = strip_comment(line);
        let body = content.trim();
        if body.is_empty() {
            continue;
        }

        if body.starts_with('[') {
            match parse_header(body, file, line_no) {
                Ok((kind, id)) => {
                    blocks.push(RawBlock {
                        kind,
                        id,
                        header_span: line_span(file, line_no, 1, content.len() as u32),
                        last_line: line_no,
                        entries: Vec::new(),
                    });
                    state = State::InBlock;
                }
                Err(e) => {
                    errors.push(e);
                    state = State::Skipping;
                }
            }
            continue;
        }

        match state {
            State::Preamble => {
                errors.push(ParseError::expecting(
                    "entry outside any block".to_string(),
                    line_span(file, line_no, 1, content.len() as u32),
                    "a `[kind \"id\"]` block header first",
                ));
            }
            State::Skipping => {}
            State::InBlock => match parse_entry(content, file, line_no) {
                Ok(entry) => {
                    let block = blocks.last_mut().expect("InBlock implies a block");
                    if block
                        .entries
                        .iter()
                        .flatten()
                        .any(|existing| existing.key == entry.key)
                    {
                        errors.push(ParseError::new(
                            format!("duplicate key `{}` in this block", entry.key),
                            entry.span,
                        ));
                    } else {
                        block.last_line = line_no;
                        block.entries.push(Some(entry));
                    }
                }
                Err(e) => errors.push(e),
            },
        }
    }
    blocks
}

fn line_span(file: &str, line: u32, col_start: u32, col_end: u32) -> SourceSpan {
    SourceSpan::new(file, line, col_start.max(1), col_end.max(1))
}

/// A comment line whose first word is `radl` declares the format version;
/// only version 1 exists.
fn check_version_comment(trimmed: &str, file: &str, line_no: u32, errors: &mut Vec<ParseError>) {
    let rest = trimmed[1..].trim_start();
    let mut words = rest.split_whitespace();
    if words.next() != Some("radl") {
        return;
    }
    let version = words.next();
    if version != Some("1") || words.next().is_some() {
        errors.push(ParseError::expecting(
            format!("unsupported format version `{}`", rest),
            line_span(file, line_no, 1, trimmed.len() as u32),
            "`# radl 1`",
        ));
    }
}

/// Cuts a trailing `# comment` off a line, ignoring `#` inside strings.
fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        if in_string {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_string = false;
            }
        } else if c == '"' {
            in_string = true;
        } else if c == '#' {
            return &line[..i];
        }
    }
    line
}

/// Parses `[kind]` or `[kind "id"]`.
fn parse_header(
    body: &str,
    file: &str,
    line_no: u32,
) -> Result<(String, Option<Identifier>), ParseError> {
    let span = || line_span(file, line_no, 1, body.len() as u32);
    let Some(inner) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return Err(ParseError::expecting(
            "malformed block header".to_string(),
            span(),
            "`[kind \"id\"]`",
        ));
    };
    let inner = inner.trim();
    let (kind, rest) = match inner.find(char::is_whitespace) {
        Some(i) => (&inner[..i], inner[i..].trim_start()),
        None => (inner, ""),
    };
    if kind.is_empty() {
        return Err(ParseError::expecting(
            "missing block kind".to_string(),
            span(),
            KNOWN_KINDS,
        ));
    }

    if rest.is_empty() {
        return Ok((kind.to_string(), None));
    }
    let Some(after_quote) = rest.strip_prefix('"') else {
        return Err(ParseError::expecting(
            format!("unexpected `{rest}` after block kind"),
            span(),
            "a quoted identifier",
        ));
    };
    let Some(end) = after_quote.find('"') else {
        return Err(ParseError::new(
            "unterminated block identifier".to_string(),
            span(),
        ));
    };
    let id_text = &after_quote[..end];
    let trailing = after_quote[end + 1..].trim();
    if !trailing.is_empty() {
        return Err(ParseError::new(
            format!("unexpected `{trailing}` after block identifier"),
            span(),
        ));
    }
    let id = Identifier::new(id_text).map_err(|e| ParseError::new(e.to_string(), span()))?;
    Ok((kind.to_string(), Some(id)))
}

/// Parses `key = value`.
fn parse_entry(content: &str, file: &str, line_no: u32) -> Result<RawEntry, ParseError> {
    let Some(eq) = content.find('=') else {
        return Err(ParseError::expecting(
            "malformed entry".to_string(),
            line_span(file, line_no, 1, content.len() as u32),
            "`key = value`",
        ));
    };
    let key = content[..eq].trim();
    if key.is_empty() || !Identifier::is_valid(key) {
        return Err(ParseError::expecting(
            format!("invalid key `{key}`"),
            line_span(file, line_no, 1, eq as u32),
            "a letter followed by letters, digits, `.`, `_` or `-`",
        ));
    }
    let after_eq = &content[eq + 1..];
    let lead = after_eq.len() - after_eq.trim_start().len();
    let value_text = after_eq.trim();
    let col = (eq + 1 + lead + 1) as u32;
    let span = line_span(file, line_no, col, col + value_text.len() as u32);
    let value = lex_value(value_text, &span)?;
    Ok(RawEntry {
        key: key.to_string(),
        value,
        span,
    })
}

// ---------------------------------------------------------------------------
// Value lexer
// ---------------------------------------------------------------------------

fn lex_value(text: &str, span: &SourceSpan) -> Result<Value, ParseError> {
    if text.is_empty() {
        return Err(ParseError::expecting(
            "missing value".to_string(),
            span.clone(),
            "a quoted string, token, number, date, duration or list",
        ));
    }
    if text.starts_with('"') {
        let (s, consumed) = lex_quoted(text, span)?;
        if consumed != text.len() {
            return Err(ParseError::new(
                format!("unexpected `{}` after string", text[consumed..].trim()),
                span.clone(),
            ));
        }
        return Ok(Value::Str(s));
    }
    if text.starts_with('[') {
        let Some(inner) = text.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return Err(ParseError::expecting(
                "unterminated list".to_string(),
                span.clone(),
                "`]`",
            ));
        };
        let mut items = Vec::new();
        for part in split_list(inner) {
            let item = part.trim();
            if item.is_empty() {
                return Err(ParseError::new("empty list item".to_string(), span.clone()));
            }
            if item.starts_with('[') {
                return Err(ParseError::new(
                    "nested lists are not supported".to_string(),
                    span.clone(),
                ));
            }
            items.push(lex_value(item, span)?);
        }
        return Ok(Value::List(items));
    }
    lex_token(text, span)
}

/// Lexes a double-quoted string with `\\ \" \n \t \r` escapes. Returns the
/// decoded text and the number of bytes consumed including both quotes.
fn lex_quoted(text: &str, span: &SourceSpan) -> Result<(String, usize), ParseError> {
    let mut out = String::new();
    let mut iter = text.char_indices();
    iter.next(); // opening quote
    while let Some((i, c)) = iter.next() {
        match c {
            '\\' => match iter.next() {
                Some((_, '\\')) => out.push('\\'),
                Some((_, '"')) => out.push('"'),
                Some((_, 'n')) => out.push('\n'),
                Some((_, 't')) => out.push('\t'),
                Some((_, 'r')) => out.push('\r'),
                Some((_, other)) => {
                    return Err(ParseError::expecting(
                        format!("unknown escape `\\{other}`"),
                        span.clone(),
                        "\\\\, \\\", \\n, \\t or \\r",
                    ));
                }
                None => break,
            },
            '"' => return Ok((out, i + 1)),
            _ => out.push(c),
        }
    }
    Err(ParseError::new("unterminated string".to_string(), span.clone()))
}

/// Splits list items on commas that are outside strings.
fn split_list(inner: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in inner.char_indices() {
        if in_string {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_string = false;
            }
        } else if c == '"' {
            in_string = true;
        } else if c == ',' {
            parts.push(&inner[start..i]);
            start = i + 1;
        }
    }
    parts.push(&inner[start..]);
    if parts.len() == 1 && parts[0].trim().is_empty() {
        return Vec::new();
    }
    parts
}

fn looks_like_date(text: &str) -> bool {
    let b = text.as_bytes();
    b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, c)| matches!(i, 4 | 7) || c.is_ascii_digit())
}

fn looks_like_number(text: &str) -> bool {
    let t = text.strip_prefix(['+', '-']).unwrap_or(text);
    !t.is_empty()
        && t.chars().filter(|c| *c == '.').count() <= 1
        && t.chars().all(|c| c.is_ascii_digit() || c == '.')
        && t.chars().any(|c| c.is_ascii_digit())
}

fn lex_token(text: &str, span: &SourceSpan) -> Result<Value, ParseError> {
    if text.chars().any(char::is_whitespace) {
        return Err(ParseError::expecting(
            format!("unexpected text `{text}`"),
            span.clone(),
            "a single value; quote text that contains spaces",
        ));
    }
    match text {
        "true" => return Ok(Value::Bool(true)),
        "false" => return Ok(Value::Bool(false)),
        _ => {}
    }
    if looks_like_date(text) {
        return match NaiveDate::parse_from_str(text, "%Y-%m-%d") {
            Ok(d) => Ok(Value::Date(d)),
            Err(_) => Err(ParseError::new(
                format!("`{text}` is not a valid calendar date"),
                span.clone(),
            )),
        };
    }
    if looks_like_number(text) {
        return match text.parse::<f64>() {
            Ok(n) if n.is_finite() => Ok(Value::Num(n)),
            _ => Err(ParseError::new(
                format!("`{text}` is not a finite number"),
                span.clone(),
            )),
        };
    }
    if text.starts_with('P') {
        if let Ok(d) = text.parse::<DurationSpec>() {
            return Ok(Value::Duration(d));
        }
    }
    if Identifier::is_valid(text) {
        return Ok(Value::Token(text.to_string()));
    }
    Err(ParseError::expecting(
        format!("unrecognized token `{text}`"),
        span.clone(),
        "a quoted string, token, number, date, duration or list",
    ))
}

// ---------------------------------------------------------------------------
// Block schemas
// ---------------------------------------------------------------------------

/// Pulls typed fields out of a raw block, reporting schema violations and
/// leaving unknown keys behind as extras.
struct Fields {
    kind: &'static str,
    entries: Vec<Option<RawEntry>>,
    block_span: SourceSpan,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<RawEntry> {
        self.entries
            .iter_mut()
            .find(|slot| slot.as_ref().is_some_and(|e| e.key == key))
            .and_then(Option::take)
    }

    fn req(&mut self, key: &str, errors: &mut Vec<ParseError>) -> Option<RawEntry> {
        let entry = self.take(key);
        if entry.is_none() {
            errors.push(ParseError::expecting(
                format!("{} block is missing required key `{key}`", self.kind),
                self.block_span.clone(),
                format!("`{key} = ...`"),
            ));
        }
        entry
    }

    /// Unclaimed keys, in source order.
    fn extras(self) -> Extras {
        self.entries
            .into_iter()
            .flatten()
            .map(|e| (e.key, e.value))
            .collect()
    }
}

fn wrong_kind(entry: &RawEntry, expected: &str) -> ParseError {
    ParseError::expecting(
        format!(
            "key `{}` has a {} value",
            entry.key,
            entry.value.kind_name()
        ),
        entry.span.clone(),
        expected.to_string(),
    )
}

fn as_text(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<String> {
    match entry.value {
        Value::Str(s) => Some(s),
        _ => {
            errors.push(wrong_kind(&entry, "a quoted string"));
            None
        }
    }
}

fn as_ident(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<Identifier> {
    match &entry.value {
        Value::Token(t) => match Identifier::new(t) {
            Ok(id) => Some(id),
            Err(e) => {
                errors.push(ParseError::new(e.to_string(), entry.span.clone()));
                None
            }
        },
        _ => {
            errors.push(wrong_kind(&entry, "a bare identifier"));
            None
        }
    }
}

fn as_token<T>(
    entry: RawEntry,
    from_token: impl Fn(&str) -> Result<T, UnknownToken>,
    errors: &mut Vec<ParseError>,
) -> Option<T> {
    match &entry.value {
        Value::Token(t) => match from_token(t) {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(ParseError::new(e.to_string(), entry.span.clone()));
                None
            }
        },
        _ => {
            errors.push(wrong_kind(&entry, "a bare token"));
            None
        }
    }
}

fn as_confidence(
    entry: RawEntry,
    errors: &mut Vec<ParseError>,
) -> Option<crate::confidence::ConfidenceSpec> {
    match &entry.value {
        Value::Str(s) => match crate::confidence::parse_confidence(s) {
            Ok(c) => Some(c),
            Err(e) => {
                errors.push(ParseError::new(e.to_string(), entry.span.clone()));
                None
            }
        },
        _ => {
            errors.push(wrong_kind(&entry, "a quoted `metric cmp value [unit] [@ condition]`"));
            None
        }
    }
}

fn as_duration(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<DurationSpec> {
    match entry.value {
        Value::Duration(d) => Some(d),
        _ => {
            errors.push(wrong_kind(&entry, "a duration such as P1D or PT2H"));
            None
        }
    }
}

fn as_date(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<NaiveDate> {
    match entry.value {
        Value::Date(d) => Some(d),
        _ => {
            errors.push(wrong_kind(&entry, "a date, YYYY-MM-DD"));
            None
        }
    }
}

fn as_bool(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<bool> {
    match entry.value {
        Value::Bool(b) => Some(b),
        _ => {
            errors.push(wrong_kind(&entry, "true or false"));
            None
        }
    }
}

fn as_integer(entry: RawEntry, max: f64, errors: &mut Vec<ParseError>) -> Option<u64> {
    match entry.value {
        Value::Num(n) if n >= 0.0 && n.fract() == 0.0 && n <= max => Some(n as u64),
        _ => {
            errors.push(wrong_kind(&entry, "a non-negative integer"));
            None
        }
    }
}

fn as_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Option<(Vec<Value>, SourceSpan)> {
    match entry.value {
        Value::List(items) => Some((items, entry.span)),
        _ => {
            errors.push(wrong_kind(&entry, "a [bracketed, list]"));
            None
        }
    }
}

fn ident_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Vec<Identifier> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Token(t) => match Identifier::new(&t) {
                Ok(id) => out.push(id),
                Err(e) => errors.push(ParseError::new(e.to_string(), span.clone())),
            },
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "bare identifiers",
            )),
        }
    }
    out
}

fn text_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Vec<String> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Str(s) => out.push(s),
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "quoted strings",
            )),
        }
    }
    out
}

fn token_list<T>(
    entry: RawEntry,
    from_token: impl Fn(&str) -> Result<T, UnknownToken>,
    errors: &mut Vec<ParseError>,
) -> Vec<T> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Token(t) => match from_token(&t) {
                Ok(v) => out.push(v),
                Err(e) => errors.push(ParseError::new(e.to_string(), span.clone())),
            },
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "bare tokens",
            )),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Entity builders
// ---------------------------------------------------------------------------

fn build(block: RawBlock, doc: &mut Document, errors: &mut Vec<ParseError>) {
    let header_span = block.header_span.clone();
    let node_span = NodeSpan::from(SourceSpan {
        file: header_span.file.clone(),
        line_start: header_span.line_start,
        line_end: block.last_line,
        col_start: 1,
        col_end: 1,
    });

    let kind: &'static str = match block.kind.as_str() {
        "meta" => "meta",
        "arc42.section" => "arc42.section",
        "e1.boundary" => "e1.boundary",
        "e2.model" => "e2.model",
        "e3.pipeline" => "e3.pipeline",
        "e3.stage" => "e3.stage",
        "e4.cell" => "e4.cell",
        "e5.adr" => "e5.adr",
        "e6.scenario" => "e6.scenario",
        "e7.debt" => "e7.debt",
        "e8.ops" => "e8.ops",
        "c4.element" => "c4.element",
        "c4.lineage" => "c4.lineage",
        "attach" => "attach",
        other => {
            errors.push(ParseError::expecting(
                format!("unknown block kind `{other}`"),
                header_span,
                KNOWN_KINDS,
            ));
            return;
        }
    };

    // Identifier discipline per kind.
    let takes_id = !matches!(kind, "e4.cell" | "e8.ops" | "c4.lineage");
    if takes_id && block.id.is_none() {
        errors.push(ParseError::expecting(
            format!("{kind} block needs an identifier"),
            header_span.clone(),
            format!("`[{kind} \"some-id\"]`"),
        ));
    }
    if !takes_id && block.id.is_some() {
        errors.push(ParseError::expecting(
            format!("{kind} block takes no identifier"),
            header_span.clone(),
            format!("`[{kind}]`"),
        ));
    }

    let id = block.id;
    let mut f = Fields {
        kind,
        entries: block.entries,
        block_span: header_span.clone(),
    };

    match kind {
        "meta" => {
            let title = f.take("title").and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let Some(project_id) = id else { return };
            if doc.meta.is_some() {
                errors.push(ParseError::new(
                    "duplicate meta block in this file".to_string(),
                    header_span,
                ));
                return;
            }
            doc.meta = Some(MetaBlock {
                project_id,
                title,
                extra,
                span: node_span,
            });
        }
        "arc42.section" => {
            let title = f.take("title").and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let Some(id) = id else { return };
            let section = match Arc42Section::from_token(id.as_str()) {
                Ok(s) => s,
                Err(e) => {
                    errors.push(ParseError::new(e.to_string(), header_span));
                    return;
                }
            };
            doc.sections.push(SectionMarker {
                section,
                title,
                extra,
                span: node_span,
            });
        }
        "e1.boundary" => {
            let consumer = f.req("consumer", errors).and_then(|e| as_ident(e, errors));
            let provider = f.req("provider", errors).and_then(|e| as_ident(e, errors));
            let output_type = f
                .take("output_type")
                .and_then(|e| as_token(e, OutputType::from_token, errors));
            let confidence = f.take("confidence").and_then(|e| as_confidence(e, errors));
            let update_frequency = f
                .take("update_frequency")
                .and_then(|e| as_duration(e, errors));
            let fallback = f
                .take("fallback")
                .and_then(|e| as_token(e, FallbackBehavior::from_token, errors));
            let fallback_note = f.take("fallback_note").and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let (Some(interface_id), Some(consumer), Some(provider)) = (id, consumer, provider)
            else {
                return;
            };
            doc.boundaries.push(BoundaryContract {
                interface_id,
                consumer,
                provider,
                output_type,
                confidence,
                update_frequency,
                fallback,
                fallback_note,
                extra,
                span: node_span,
            });
        }
        "e2.model" => {
            let version = f.take("version").and_then(|e| as_text(e, errors));
            let framework = f.take("framework").and_then(|e| as_text(e, errors));
            let dataset_hash = f.take("dataset_hash").and_then(|e| as_text(e, errors));
            let lineage_ref = f.take("lineage_ref").and_then(|e| as_ident(e, errors));
            let hyperparams_ref = f.take("hyperparams_ref").and_then(|e| as_ident(e, errors));
            let primary_metric = f
                .take("primary_metric")
                .and_then(|e| as_confidence(e, errors));
            let status = f
                .take("status")
                .and_then(|e| as_token(e, ModelStatus::from_token, errors));
            let owner = f.take("owner").and_then(|e| as_text(e, errors));
            let last_retrained = f.take("last_retrained").and_then(|e| as_date(e, errors));
            let model_card = f.take("model_card").and_then(|e| as_ident(e, errors));
            let extra = f.extras();
            let Some(model_id) = id else { return };
            doc.models.push(ModelEntry {
                model_id,
                version,
                framework,
                dataset_hash,
                lineage_ref,
                hyperparams_ref,
                primary_metric,
                status,
                owner,
                last_retrained,
                model_card,
                extra,
                span: node_span,
            });
        }
        "e3.pipeline" => {
            let data_cards = f
                .take("data_cards")
                .map(|e| ident_list(e, errors))
                .unwrap_or_default();
            let extra = f.extras();
            let Some(pipeline_id) = id else { return };
            doc.pipelines.push(Pipeline {
                pipeline_id,
                data_cards,
                extra,
                span: node_span,
            });
        }
        "e3.stage" => {
            let pipeline = f.req("pipeline", errors).and_then(|e| as_ident(e, errors));
            let stage_kind = f
                .req("kind", errors)
                .and_then(|e| as_token(e, StageKind::from_token, errors));
            let seq = f
                .req("seq", errors)
                .and_then(|e| as_integer(e, u32::MAX as f64, errors));
            let gates = f
                .take("gates")
                .map(|e| gate_list(e, errors))
                .unwrap_or_default();
            let reads_from = f
                .take("reads_from")
                .map(|e| ident_list(e, errors))
                .unwrap_or_default();
            let writes_to = f
                .take("writes_to")
                .map(|e| ident_list(e, errors))
                .unwrap_or_default();
            let extra = f.extras();
            let (Some(stage_id), Some(pipeline), Some(kind), Some(seq)) =
                (id, pipeline, stage_kind, seq)
            else {
                return;
            };
            if reads_from.contains(&stage_id) || writes_to.contains(&stage_id) {
                errors.push(ParseError::new(
                    format!("stage `{stage_id}` cannot read from or write to itself"),
                    header_span,
                ));
                return;
            }
            doc.stages.push(PipelineStage {
                stage_id,
                pipeline,
                kind,
                seq: seq as u32,
                gates,
                reads_from,
                writes_to,
                extra,
                span: node_span,
            });
        }
        "e4.cell" => {
            let component = f.req("component", errors).and_then(|e| as_ident(e, errors));
            let concern = f
                .req("concern", errors)
                .and_then(|e| as_token(e, Concern::from_token, errors));
            let method = f.req("method", errors).and_then(|e| as_text(e, errors));
            let threshold = f.take("threshold").and_then(|e| as_confidence(e, errors));
            let monitoring_frequency = f
                .req("monitoring_frequency", errors)
                .and_then(|e| as_duration(e, errors));
            let owner = f.req("owner", errors).and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let (Some(component), Some(concern), Some(method), Some(freq), Some(owner)) =
                (component, concern, method, monitoring_frequency, owner)
            else {
                return;
            };
            doc.concern_matrix.push(ConcernCell {
                component,
                concern,
                method,
                threshold,
                monitoring_frequency: freq,
                owner,
                extra,
                span: node_span,
            });
        }
        "e5.adr" => {
            let title = f.req("title", errors).and_then(|e| as_text(e, errors));
            let status = f
                .req("status", errors)
                .and_then(|e| as_token(e, crate::model::AdrStatus::from_token, errors));
            let context = f.take("context").and_then(|e| as_text(e, errors));
            let decision = f.take("decision").and_then(|e| as_text(e, errors));
            let consequences = f.take("consequences").and_then(|e| as_text(e, errors));
            let model_alternatives = f
                .take("model_alternatives")
                .map(|e| text_list(e, errors))
                .unwrap_or_default();
            let dataset = f.take("dataset").and_then(|e| as_text(e, errors));
            let fairness_bias = f.take("fairness_bias").and_then(|e| as_text(e, errors));
            let model_lifetime = f.take("model_lifetime").and_then(|e| as_text(e, errors));
            let retraining_trigger = f
                .take("retraining_trigger")
                .and_then(|e| as_text(e, errors));
            let explainability = f.take("explainability").and_then(|e| as_text(e, errors));
            let regulatory = f.take("regulatory").and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let (Some(adr_id), Some(title), Some(status)) = (id, title, status) else {
                return;
            };
            doc.adrs.push(AiAdr {
                adr_id,
                title,
                status,
                context,
                decision,
                consequences,
                model_alternatives,
                dataset,
                fairness_bias,
                model_lifetime,
                retraining_trigger,
                explainability,
                regulatory,
                extra,
                span: node_span,
            });
        }
        "e6.scenario" => {
            let source = f.req("source", errors).and_then(|e| match &e.value {
                Value::Token(t) => match ScenarioSource::from_token(t) {
                    Ok(s) => Some(s),
                    Err(err) => {
                        errors.push(ParseError::new(err.to_string(), e.span.clone()));
                        None
                    }
                },
                Value::Str(s) => Some(ScenarioSource::Other(s.clone())),
                _ => {
                    errors.push(wrong_kind(&e, "a source token or quoted text"));
                    None
                }
            });
            let stimulus = f.req("stimulus", errors).and_then(|e| as_text(e, errors));
            let environment = f
                .req("environment", errors)
                .and_then(|e| as_token(e, ScenarioEnvironment::from_token, errors));
            let response = f.req("response", errors).and_then(|e| as_text(e, errors));
            let response_deadline = f
                .take("response_deadline")
                .and_then(|e| as_duration(e, errors));
            let extra = f.extras();
            let (Some(scenario_id), Some(source), Some(stimulus), Some(environment), Some(response)) =
                (id, source, stimulus, environment, response)
            else {
                return;
            };
            doc.scenarios.push(QualityScenario {
                scenario_id,
                source,
                stimulus,
                environment,
                response,
                response_deadline,
                extra,
                span: node_span,
            });
        }
        "e7.debt" => {
            let category = f
                .req("category", errors)
                .and_then(|e| as_token(e, DebtCategory::from_token, errors));
            let components = f
                .req("components", errors)
                .map(|e| ident_list(e, errors))
                .unwrap_or_default();
            let severity = f
                .req("severity", errors)
                .and_then(|e| as_token(e, DebtSeverity::from_token, errors));
            let effort = f.req("effort", errors).and_then(|e| as_text(e, errors));
            let owner = f.req("owner", errors).and_then(|e| as_text(e, errors));
            let status = f
                .req("status", errors)
                .and_then(|e| as_token(e, DebtStatus::from_token, errors));
            let extra = f.extras();
            let (Some(debt_id), Some(category), Some(severity), Some(effort), Some(owner), Some(status)) =
                (id, category, severity, effort, owner, status)
            else {
                return;
            };
            if components.is_empty() {
                errors.push(ParseError::new(
                    format!("debt entry `{debt_id}` must name at least one component"),
                    header_span,
                ));
                return;
            }
            doc.debts.push(DebtEntry {
                debt_id,
                category,
                components,
                severity,
                effort,
                owner,
                status,
                extra,
                span: node_span,
            });
        }
        "e8.ops" => {
            let monitoring = f.take("monitoring").map(|e| monitor_list(e, errors));

            let triggers_entry = f.take("retraining.triggers");
            let automation = f
                .take("retraining.automation")
                .and_then(|e| as_token(e, crate::model::AutomationLevel::from_token, errors));
            let approval = f
                .take("retraining.approval")
                .and_then(|e| as_text(e, errors));
            let retraining = if triggers_entry.is_some()
                || automation.is_some()
                || approval.is_some()
            {
                let triggers = triggers_entry
                    .map(|e| token_list(e, RetrainingTrigger::from_token, errors))
                    .unwrap_or_default();
                Some(RetrainingPolicy {
                    triggers,
                    automation,
                    approval,
                })
            } else {
                None
            };

            let strategy = f
                .take("deployment.strategy")
                .and_then(|e| as_token(e, DeploymentStrategy::from_token, errors));
            let promotion_criteria = f
                .take("deployment.promotion_criteria")
                .and_then(|e| as_text(e, errors));
            let traffic_split = f
                .take("deployment.traffic_split")
                .map(|e| slice_list(e, errors));
            let deployment = if strategy.is_some()
                || promotion_criteria.is_some()
                || traffic_split.is_some()
            {
                Some(DeploymentPolicy {
                    strategy,
                    promotion_criteria,
                    traffic_split,
                })
            } else {
                None
            };

            let rb_triggers = f.take("rollback.triggers").and_then(|e| as_text(e, errors));
            let retention_depth = f
                .take("rollback.retention_depth")
                .and_then(|e| as_integer(e, u64::MAX as f64, errors));
            let downstream_note = f
                .take("rollback.downstream_note")
                .and_then(|e| as_text(e, errors));
            let rollback = if rb_triggers.is_some()
                || retention_depth.is_some()
                || downstream_note.is_some()
            {
                Some(RollbackPolicy {
                    triggers: rb_triggers,
                    retention_depth,
                    downstream_note,
                })
            } else {
                None
            };

            let extra = f.extras();
            if doc.ops_view.is_some() {
                errors.push(ParseError::new(
                    "duplicate e8.ops block in this file".to_string(),
                    header_span,
                ));
                return;
            }
            doc.ops_view = Some(OperationalAiView {
                monitoring,
                retraining,
                deployment,
                rollback,
                extra,
                span: node_span,
            });
        }
        "c4.element" => {
            let name = f.req("name", errors).and_then(|e| as_text(e, errors));
            let stereotype = f
                .take("stereotype")
                .and_then(|e| as_token(e, Stereotype::from_token, errors));
            let deterministic = f
                .req("deterministic", errors)
                .and_then(|e| as_bool(e, errors));
            let risk_class = f
                .take("risk_class")
                .and_then(|e| as_token(e, RiskClass::from_token, errors));
            let region_confidence = f
                .take("region_confidence")
                .and_then(|e| as_confidence(e, errors));
            let region_fallback = f.take("region_fallback").and_then(|e| as_text(e, errors));
            let region_degradation = f
                .take("region_degradation")
                .and_then(|e| as_text(e, errors));
            let extra = f.extras();
            let (Some(element_id), Some(name), Some(deterministic)) = (id, name, deterministic)
            else {
                return;
            };
            let region_contract = if region_confidence.is_some()
                || region_fallback.is_some()
                || region_degradation.is_some()
            {
                Some(RegionContract {
                    confidence: region_confidence,
                    fallback: region_fallback,
                    degradation: region_degradation,
                })
            } else {
                None
            };
            doc.elements.push(DiagramElement {
                element_id,
                name,
                stereotype,
                deterministic,
                risk_class,
                region_contract,
                extra,
                span: node_span,
            });
        }
        "c4.lineage" => {
            let from = f.req("from", errors).and_then(|e| as_ident(e, errors));
            let to = f.req("to", errors).and_then(|e| as_ident(e, errors));
            let schema_note = f.take("schema").and_then(|e| as_text(e, errors));
            let freshness = f.take("freshness").and_then(|e| as_duration(e, errors));
            let privacy_class = f
                .take("privacy")
                .and_then(|e| as_token(e, PrivacyClass::from_token, errors));
            let extra = f.extras();
            let (Some(from), Some(to)) = (from, to) else { return };
            if from == to {
                errors.push(ParseError::new(
                    format!("lineage edge `{from} -> {to}` loops back to its source"),
                    header_span,
                ));
                return;
            }
            doc.lineage_edges.push(LineageEdge {
                from,
                to,
                schema_note,
                freshness,
                privacy_class,
                extra,
                span: node_span,
            });
        }
        "attach" => {
            let kind_field = f.req("kind", errors).and_then(|e| match &e.value {
                Value::Token(t) => match AttachmentKind::from_token(t) {
                    Ok(k) => Some(k),
                    Err(err) => {
                        errors.push(ParseError::new(err.to_string(), e.span.clone()));
                        None
                    }
                },
                Value::Str(s) => Some(AttachmentKind::Other(s.clone())),
                _ => {
                    errors.push(wrong_kind(&e, "an attachment kind token or quoted text"));
                    None
                }
            });
            let uri = f.req("uri", errors).and_then(|e| {
                let span = e.span.clone();
                let uri = as_text(e, errors)?;
                if uri.trim().is_empty() {
                    errors.push(ParseError::new(
                        "attachment uri must not be empty".to_string(),
                        span,
                    ));
                    return None;
                }
                Some(uri)
            });
            let extra = f.extras();
            let (Some(attach_id), Some(kind), Some(uri)) = (id, kind_field, uri) else {
                return;
            };
            doc.attachments.push(AttachmentRef {
                attach_id,
                kind,
                uri,
                extra,
                span: node_span,
            });
        }
        _ => unreachable!("kind validated above"),
    }
}

fn gate_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Vec<QualityGate> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Str(s) => match parse_gate(&s) {
                Ok(g) => out.push(g),
                Err(msg) => errors.push(ParseError::new(
                    format!("bad quality gate `{s}`: {msg}"),
                    span.clone(),
                )),
            },
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "quoted gate strings",
            )),
        }
    }
    out
}

fn monitor_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Vec<MonitorEntry> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Str(s) => match parse_monitor(&s) {
                Ok(m) => out.push(m),
                Err(msg) => errors.push(ParseError::new(
                    format!("bad monitoring entry `{s}`: {msg}"),
                    span.clone(),
                )),
            },
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "quoted monitoring entries",
            )),
        }
    }
    out
}

fn slice_list(entry: RawEntry, errors: &mut Vec<ParseError>) -> Vec<TrafficSlice> {
    let key = entry.key.clone();
    let Some((items, span)) = as_list(entry, errors) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for item in items {
        match item {
            Value::Str(s) => match parse_slice(&s) {
                Ok(t) => out.push(t),
                Err(msg) => errors.push(ParseError::new(
                    format!("bad traffic slice `{s}`: {msg}"),
                    span.clone(),
                )),
            },
            other => errors.push(ParseError::expecting(
                format!("key `{key}` has a {} list item", other.kind_name()),
                span.clone(),
                "quoted `label: percent` strings",
            )),
        }
    }
    out
}
