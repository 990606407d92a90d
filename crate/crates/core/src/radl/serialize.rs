//! Canonical RADL rendering: one stable byte string per document value.

use std::fmt::Write as _;

use crate::ident::Identifier;
use crate::model::{
    AiAdr, AttachmentRef, BoundaryContract, ConcernCell, DiagramElement, Document, Extras,
    LineageEdge, MetaBlock, ModelEntry, OperationalAiView, Pipeline, PipelineStage,
    QualityScenario, SectionMarker,
};
use crate::radl::mini::{render_gate, render_monitor, render_slice};
use crate::value::Value;

/// Renders a document as canonical RADL text.
///
/// The output is a pure function of the document's *value*: spans are
/// ignored, blocks appear in a fixed kind order and are sorted within each
/// kind, keys follow a fixed per-kind order with unknown keys trailing in
/// their stored order, and strings are escaped deterministically. Feeding
/// the output back through [`parse`](crate::radl::parse) reproduces an
/// equal document, and re-serializing that reproduces identical bytes —
/// which makes generated files diff cleanly under version control.
pub fn serialize(doc: &Document) -> String {
    let mut blocks: Vec<String> = Vec::new();

    if let Some(meta) = &doc.meta {
        blocks.push(render_meta(meta));
    }

    let mut sections: Vec<&SectionMarker> = doc.sections.iter().collect();
    sections.sort_by_key(|s| s.section.as_token());
    blocks.extend(sections.into_iter().map(render_section));

    let mut boundaries: Vec<&BoundaryContract> = doc.boundaries.iter().collect();
    boundaries.sort_by_key(|b| b.interface_id.as_str());
    blocks.extend(boundaries.into_iter().map(render_boundary));

    let mut models: Vec<&ModelEntry> = doc.models.iter().collect();
    models.sort_by_key(|m| m.model_id.as_str());
    blocks.extend(models.into_iter().map(render_model));

    let mut pipelines: Vec<&Pipeline> = doc.pipelines.iter().collect();
    pipelines.sort_by_key(|p| p.pipeline_id.as_str());
    blocks.extend(pipelines.into_iter().map(render_pipeline));

    let mut stages: Vec<&PipelineStage> = doc.stages.iter().collect();
    stages.sort_by_key(|s| s.stage_id.as_str());
    blocks.extend(stages.into_iter().map(render_stage));

    let mut cells: Vec<&ConcernCell> = doc.concern_matrix.iter().collect();
    cells.sort_by_key(|c| (c.component.as_str(), c.concern.as_token()));
    blocks.extend(cells.into_iter().map(render_cell));

    let mut adrs: Vec<&AiAdr> = doc.adrs.iter().collect();
    adrs.sort_by_key(|a| a.adr_id.as_str());
    blocks.extend(adrs.into_iter().map(render_adr));

    let mut scenarios: Vec<&QualityScenario> = doc.scenarios.iter().collect();
    scenarios.sort_by_key(|s| s.scenario_id.as_str());
    blocks.extend(scenarios.into_iter().map(render_scenario));

    let mut debts: Vec<&crate::model::DebtEntry> = doc.debts.iter().collect();
    debts.sort_by_key(|d| d.debt_id.as_str());
    blocks.extend(debts.into_iter().map(render_debt));

    if let Some(ops) = &doc.ops_view {
        blocks.push(render_ops(ops));
    }

    let mut elements: Vec<&DiagramElement> = doc.elements.iter().collect();
    elements.sort_by_key(|e| e.element_id.as_str());
    blocks.extend(elements.into_iter().map(render_element));

    let mut edges: Vec<&LineageEdge> = doc.lineage_edges.iter().collect();
    edges.sort_by_key(|e| {
        (
            e.from.as_str(),
            e.to.as_str(),
            e.schema_note.as_deref(),
            e.freshness.map(|d| d.seconds()),
            e.privacy_class.map(|p| p.as_token()),
        )
    });
    blocks.extend(edges.into_iter().map(render_edge));

    let mut attachments: Vec<&AttachmentRef> = doc.attachments.iter().collect();
    attachments.sort_by_key(|a| a.attach_id.as_str());
    blocks.extend(attachments.into_iter().map(render_attachment));

    let mut out = String::from("# radl 1\n");
    for block in blocks {
        out.push('\n');
        out.push_str(&block);
    }
    out
}

// ---------------------------------------------------------------------------
// Entry formatting
// ---------------------------------------------------------------------------

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Str(s) => out.push_str(&quote(s)),
        Value::Token(t) => out.push_str(t),
        Value::Num(n) => {
            let _ = write!(out, "{n}");
        }
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Date(d) => {
            let _ = write!(out, "{}", d.format("%Y-%m-%d"));
        }
        Value::Duration(d) => {
            let _ = write!(out, "{d}");
        }
        Value::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item);
            }
            out.push(']');
        }
    }
}

struct Block {
    buf: String,
}

impl Block {
    fn open(kind: &str, id: Option<&Identifier>) -> Block {
        let buf = match id {
            Some(id) => format!("[{kind} \"{id}\"]\n"),
            None => format!("[{kind}]\n"),
        };
        Block { buf }
    }

    /// `key = <already formatted value>`.
    fn raw(&mut self, key: &str, rendered: &str) {
        let _ = writeln!(self.buf, "{key} = {rendered}");
    }

    fn quoted(&mut self, key: &str, text: &str) {
        self.raw(key, &quote(text));
    }

    fn opt_quoted(&mut self, key: &str, text: &Option<String>) {
        if let Some(text) = text {
            self.quoted(key, text);
        }
    }

    /// Bare rendering for tokens, identifiers, durations, dates, numbers.
    fn bare(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.buf, "{key} = {value}");
    }

    fn opt_bare(&mut self, key: &str, value: &Option<impl std::fmt::Display>) {
        if let Some(value) = value {
            self.bare(key, value);
        }
    }

    fn bare_list(&mut self, key: &str, items: impl IntoIterator<Item = impl std::fmt::Display>) {
        let rendered: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
        self.raw(key, &format!("[{}]", rendered.join(", ")));
    }

    fn quoted_list<S: AsRef<str>>(&mut self, key: &str, items: impl IntoIterator<Item = S>) {
        let rendered: Vec<String> = items.into_iter().map(|i| quote(i.as_ref())).collect();
        self.raw(key, &format!("[{}]", rendered.join(", ")));
    }

    fn extras(&mut self, extras: &Extras) {
        for (key, value) in extras {
            let mut rendered = String::new();
            write_value(&mut rendered, value);
            self.raw(key, &rendered);
        }
    }

    fn finish(self) -> String {
        self.buf
    }
}

// ---------------------------------------------------------------------------
// Per-kind renderers, key order matching the parser's schemas
// ---------------------------------------------------------------------------

fn render_meta(meta: &MetaBlock) -> String {
    let mut b = Block::open("meta", Some(&meta.project_id));
    b.opt_quoted("title", &meta.title);
    b.extras(&meta.extra);
    b.finish()
}

fn render_section(s: &SectionMarker) -> String {
    let id = Identifier::new(s.section.as_token()).expect("section tokens are identifiers");
    let mut b = Block::open("arc42.section", Some(&id));
    b.opt_quoted("title", &s.title);
    b.extras(&s.extra);
    b.finish()
}

fn render_boundary(c: &BoundaryContract) -> String {
    let mut b = Block::open("e1.boundary", Some(&c.interface_id));
    b.bare("consumer", &c.consumer);
    b.bare("provider", &c.provider);
    b.opt_bare("output_type", &c.output_type);
    if let Some(conf) = &c.confidence {
        b.quoted("confidence", &conf.to_string());
    }
    b.opt_bare("update_frequency", &c.update_frequency);
    b.opt_bare("fallback", &c.fallback);
    b.opt_quoted("fallback_note", &c.fallback_note);
    b.extras(&c.extra);
    b.finish()
}

fn render_model(m: &ModelEntry) -> String {
    let mut b = Block::open("e2.model", Some(&m.model_id));
    b.opt_quoted("version", &m.version);
    b.opt_quoted("framework", &m.framework);
    b.opt_quoted("dataset_hash", &m.dataset_hash);
    b.opt_bare("lineage_ref", &m.lineage_ref);
    b.opt_bare("hyperparams_ref", &m.hyperparams_ref);
    if let Some(metric) = &m.primary_metric {
        b.quoted("primary_metric", &metric.to_string());
    }
    b.opt_bare("status", &m.status);
    b.opt_quoted("owner", &m.owner);
    if let Some(date) = &m.last_retrained {
        b.bare("last_retrained", date.format("%Y-%m-%d"));
    }
    b.opt_bare("model_card", &m.model_card);
    b.extras(&m.extra);
    b.finish()
}

fn render_pipeline(p: &Pipeline) -> String {
    let mut b = Block::open("e3.pipeline", Some(&p.pipeline_id));
    if !p.data_cards.is_empty() {
        b.bare_list("data_cards", &p.data_cards);
    }
    b.extras(&p.extra);
    b.finish()
}

fn render_stage(s: &PipelineStage) -> String {
    let mut b = Block::open("e3.stage", Some(&s.stage_id));
    b.bare("pipeline", &s.pipeline);
    b.bare("kind", s.kind);
    b.bare("seq", s.seq);
    if !s.gates.is_empty() {
        b.quoted_list("gates", s.gates.iter().map(render_gate));
    }
    if !s.reads_from.is_empty() {
        b.bare_list("reads_from", &s.reads_from);
    }
    if !s.writes_to.is_empty() {
        b.bare_list("writes_to", &s.writes_to);
    }
    b.extras(&s.extra);
    b.finish()
}

fn render_cell(c: &ConcernCell) -> String {
    let mut b = Block::open("e4.cell", None);
    b.bare("component", &c.component);
    b.bare("concern", c.concern);
    b.quoted("method", &c.method);
    if let Some(t) = &c.threshold {
        b.quoted("threshold", &t.to_string());
    }
    b.bare("monitoring_frequency", c.monitoring_frequency);
    b.quoted("owner", &c.owner);
    b.extras(&c.extra);
    b.finish()
}

fn render_adr(a: &AiAdr) -> String {
    let mut b = Block::open("e5.adr", Some(&a.adr_id));
    b.quoted("title", &a.title);
    b.bare("status", a.status);
    b.opt_quoted("context", &a.context);
    b.opt_quoted("decision", &a.decision);
    b.opt_quoted("consequences", &a.consequences);
    if !a.model_alternatives.is_empty() {
        b.quoted_list("model_alternatives", &a.model_alternatives);
    }
    b.opt_quoted("dataset", &a.dataset);
    b.opt_quoted("fairness_bias", &a.fairness_bias);
    b.opt_quoted("model_lifetime", &a.model_lifetime);
    b.opt_quoted("retraining_trigger", &a.retraining_trigger);
    b.opt_quoted("explainability", &a.explainability);
    b.opt_quoted("regulatory", &a.regulatory);
    b.extras(&a.extra);
    b.finish()
}

fn render_scenario(s: &QualityScenario) -> String {
    let mut b = Block::open("e6.scenario", Some(&s.scenario_id));
    match s.source.as_token() {
        Some(token) => b.bare("source", token),
        None => {
            if let crate::model::ScenarioSource::Other(text) = &s.source {
                b.quoted("source", text);
            }
        }
    }
    b.quoted("stimulus", &s.stimulus);
    b.bare("environment", s.environment);
    b.quoted("response", &s.response);
    b.opt_bare("response_deadline", &s.response_deadline);
    b.extras(&s.extra);
    b.finish()
}

fn render_debt(d: &crate::model::DebtEntry) -> String {
    let mut b = Block::open("e7.debt", Some(&d.debt_id));
    b.bare("category", d.category);
    b.bare_list("components", &d.components);
    b.bare("severity", d.severity);
    b.quoted("effort", &d.effort);
    b.quoted("owner", &d.owner);
    b.bare("status", d.status);
    b.extras(&d.extra);
    b.finish()
}

fn render_ops(ops: &OperationalAiView) -> String {
    let mut b = Block::open("e8.ops", None);
    // `monitoring` and `retraining.triggers` are written even when empty:
    // their presence is what signals that the subsection exists at all.
    if let Some(monitors) = &ops.monitoring {
        b.quoted_list("monitoring", monitors.iter().map(render_monitor));
    }
    if let Some(r) = &ops.retraining {
        b.bare_list("retraining.triggers", &r.triggers);
        b.opt_bare("retraining.automation", &r.automation);
        b.opt_quoted("retraining.approval", &r.approval);
    }
    if let Some(d) = &ops.deployment {
        b.opt_bare("deployment.strategy", &d.strategy);
        b.opt_quoted("deployment.promotion_criteria", &d.promotion_criteria);
        if let Some(split) = &d.traffic_split {
            b.quoted_list("deployment.traffic_split", split.iter().map(render_slice));
        }
    }
    if let Some(r) = &ops.rollback {
        b.opt_quoted("rollback.triggers", &r.triggers);
        b.opt_bare("rollback.retention_depth", &r.retention_depth);
        b.opt_quoted("rollback.downstream_note", &r.downstream_note);
    }
    b.extras(&ops.extra);
    b.finish()
}

fn render_element(e: &DiagramElement) -> String {
    let mut b = Block::open("c4.element", Some(&e.element_id));
    b.quoted("name", &e.name);
    b.opt_bare("stereotype", &e.stereotype);
    b.bare("deterministic", e.deterministic);
    b.opt_bare("risk_class", &e.risk_class);
    if let Some(rc) = &e.region_contract {
        if let Some(conf) = &rc.confidence {
            b.quoted("region_confidence", &conf.to_string());
        }
        b.opt_quoted("region_fallback", &rc.fallback);
        b.opt_quoted("region_degradation", &rc.degradation);
    }
    b.extras(&e.extra);
    b.finish()
}

fn render_edge(e: &LineageEdge) -> String {
    let mut b = Block::open("c4.lineage", None);
    b.bare("from", &e.from);
    b.bare("to", &e.to);
    b.opt_quoted("schema", &e.schema_note);
    b.opt_bare("freshness", &e.freshness);
    b.opt_bare("privacy", &e.privacy_class);
    b.extras(&e.extra);
    b.finish()
}

fn render_attachment(a: &AttachmentRef) -> String {
    let mut b = Block::open("attach", Some(&a.attach_id));
    match a.kind.as_token() {
        Some(token) => b.bare("kind", token),
        None => {
            if let crate::model::AttachmentKind::Other(text) = &a.kind {
                b.quoted("kind", text);
            }
        }
    }
    b.quoted("uri", &a.uri);
    b.extras(&a.extra);
    b.finish()
}
