//! Link resolution: verifies that every identifier reference in a document
//! lands on a declared entity of a suitable kind, and that identifiers are
//! unique. Documents that survive this are *resolved* and safe for the
//! linter, the lineage graph and the scoring layers.

use std::collections::BTreeMap;
use std::fmt;

use crate::diag::{sort_diagnostics, Diagnostic, Severity};
use crate::ident::Identifier;
use crate::lint::registry::{X_001, X_002};
use crate::model::{Document, Stereotype};
use crate::span::SourceSpan;

/// What kind of entity an identifier names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Element(Option<Stereotype>),
    Model,
    Pipeline,
    Stage,
    Boundary,
    Adr,
    Scenario,
    Debt,
    Attachment,
}

impl EntityKind {
    fn noun(self) -> &'static str {
        match self {
            EntityKind::Element(_) => "element",
            EntityKind::Model => "model",
            EntityKind::Pipeline => "pipeline",
            EntityKind::Stage => "stage",
            EntityKind::Boundary => "boundary contract",
            EntityKind::Adr => "decision record",
            EntityKind::Scenario => "scenario",
            EntityKind::Debt => "debt entry",
            EntityKind::Attachment => "attachment",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityKind::Element(Some(st)) => write!(f, "element({st})"),
            other => f.write_str(other.noun()),
        }
    }
}

/// Builds the total identifier index over all declared entities.
///
/// On a resolved document its size equals the number of declared entities;
/// on a raw document with duplicates, the first declaration wins.
pub fn entity_index(doc: &Document) -> BTreeMap<Identifier, EntityKind> {
    let mut index = BTreeMap::new();
    let mut add = |id: &Identifier, kind: EntityKind| {
        index.entry(id.clone()).or_insert(kind);
    };

    for e in &doc.elements {
        add(&e.element_id, EntityKind::Element(e.stereotype));
    }
    for m in &doc.models {
        add(&m.model_id, EntityKind::Model);
    }
    for p in &doc.pipelines {
        add(&p.pipeline_id, EntityKind::Pipeline);
    }
    for s in &doc.stages {
        add(&s.stage_id, EntityKind::Stage);
    }
    for b in &doc.boundaries {
        add(&b.interface_id, EntityKind::Boundary);
    }
    for a in &doc.adrs {
        add(&a.adr_id, EntityKind::Adr);
    }
    for s in &doc.scenarios {
        add(&s.scenario_id, EntityKind::Scenario);
    }
    for d in &doc.debts {
        add(&d.debt_id, EntityKind::Debt);
    }
    for a in &doc.attachments {
        add(&a.attach_id, EntityKind::Attachment);
    }
    index
}

/// What a reference site is allowed to point at.
#[derive(Clone, Copy)]
enum Expected {
    Element,
    GraphNode, // element or stage
    Pipeline,
    Attachment,
    Model,
}

impl Expected {
    fn matches(self, kind: EntityKind) -> bool {
        match (self, kind) {
            (Expected::Element, EntityKind::Element(_)) => true,
            (Expected::GraphNode, EntityKind::Element(_) | EntityKind::Stage) => true,
            (Expected::Pipeline, EntityKind::Pipeline) => true,
            (Expected::Attachment, EntityKind::Attachment) => true,
            (Expected::Model, EntityKind::Model) => true,
            _ => false,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Expected::Element => "an element",
            Expected::GraphNode => "an element or pipeline stage",
            Expected::Pipeline => "a pipeline",
            Expected::Attachment => "an attachment",
            Expected::Model => "a model",
        }
    }
}

/// Verifies all cross-references and identifier uniqueness.
///
/// Returns the document unchanged when everything resolves, or the full
/// sorted list of X-001 (dangling / wrong-kind reference) and X-002
/// (duplicate identifier) diagnostics — never both. Resolution is
/// idempotent: resolving a resolved document returns it as-is.
pub fn resolve_links(doc: Document) -> Result<Document, Vec<Diagnostic>> {
    let mut diags = duplicate_diagnostics(&doc);
    diags.extend(reference_diagnostics(&doc));
    if diags.is_empty() {
        Ok(doc)
    } else {
        sort_diagnostics(&mut diags);
        Err(diags)
    }
}

/// All X-001 diagnostics of a document: every reference site whose target is
/// undeclared or of the wrong kind. Also used by the linter, which re-emits
/// integrity problems as ordinary diagnostics.
pub(crate) fn reference_diagnostics(doc: &Document) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let index = entity_index(doc);
    let mut check = |id: &Identifier, expected: Expected, site: &str, span: &SourceSpan| {
        match index.get(id) {
            None => diags.push(Diagnostic::new(
                X_001,
                Severity::Error,
                format!("{site} references undeclared identifier `{id}`"),
                span.clone(),
                id.as_str(),
            )),
            Some(kind) if !expected.matches(*kind) => diags.push(Diagnostic::new(
                X_001,
                Severity::Error,
                format!(
                    "{site} references `{id}`, which is a {kind}, not {}",
                    expected.describe()
                ),
                span.clone(),
                id.as_str(),
            )),
            Some(_) => {}
        }
    };

    for b in &doc.boundaries {
        let site = format!("boundary contract `{}`", b.interface_id);
        check(&b.consumer, Expected::Element, &site, b.span.span());
        check(&b.provider, Expected::Element, &site, b.span.span());
    }
    for m in &doc.models {
        let site = format!("model `{}`", m.model_id);
        if let Some(r) = &m.lineage_ref {
            check(r, Expected::GraphNode, &site, m.span.span());
        }
        if let Some(r) = &m.hyperparams_ref {
            check(r, Expected::Attachment, &site, m.span.span());
        }
        if let Some(r) = &m.model_card {
            check(r, Expected::Attachment, &site, m.span.span());
        }
    }
    for p in &doc.pipelines {
        let site = format!("pipeline `{}`", p.pipeline_id);
        for card in &p.data_cards {
            check(card, Expected::Attachment, &site, p.span.span());
        }
    }
    for s in &doc.stages {
        let site = format!("stage `{}`", s.stage_id);
        check(&s.pipeline, Expected::Pipeline, &site, s.span.span());
        for r in &s.reads_from {
            check(r, Expected::GraphNode, &site, s.span.span());
        }
        for w in &s.writes_to {
            check(w, Expected::GraphNode, &site, s.span.span());
        }
    }
    for c in &doc.concern_matrix {
        let site = format!("concern cell for `{}`", c.component);
        check(&c.component, Expected::Element, &site, c.span.span());
    }
    for d in &doc.debts {
        let site = format!("debt entry `{}`", d.debt_id);
        for comp in &d.components {
            check(comp, Expected::Element, &site, d.span.span());
        }
    }
    if let Some(ops) = &doc.ops_view {
        if let Some(monitoring) = &ops.monitoring {
            for entry in monitoring {
                check(
                    &entry.model_id,
                    Expected::Model,
                    "operational monitoring entry",
                    ops.span.span(),
                );
            }
        }
    }
    for e in &doc.lineage_edges {
        let site = format!("lineage edge `{} -> {}`", e.from, e.to);
        check(&e.from, Expected::GraphNode, &site, e.span.span());
        check(&e.to, Expected::GraphNode, &site, e.span.span());
    }

    drop(check);
    diags
}

/// All X-002 diagnostics of a document: duplicate identifiers across every
/// entity kind, repeated section markers and repeated concern cells.
pub(crate) fn duplicate_diagnostics(doc: &Document) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut seen: BTreeMap<String, EntityKind> = BTreeMap::new();
    // Entities share one namespace; the second claim on a name loses.
    let mut claim = |id: &'_ Identifier, kind: EntityKind, span: &'_ SourceSpan,
                     diags: &mut Vec<Diagnostic>| {
        if let Some(first_kind) = seen.get(id.as_str()) {
            diags.push(Diagnostic::new(
                X_002,
                Severity::Error,
                format!(
                    "duplicate identifier `{id}`: already declared as a {}",
                    first_kind.noun()
                ),
                span.clone(),
                id.as_str(),
            ));
        } else {
            seen.insert(id.as_str().to_string(), kind);
        }
    };

    for e in &doc.elements {
        claim(&e.element_id, EntityKind::Element(e.stereotype), e.span.span(), &mut diags);
    }
    for m in &doc.models {
        claim(&m.model_id, EntityKind::Model, m.span.span(), &mut diags);
    }
    for p in &doc.pipelines {
        claim(&p.pipeline_id, EntityKind::Pipeline, p.span.span(), &mut diags);
    }
    for s in &doc.stages {
        claim(&s.stage_id, EntityKind::Stage, s.span.span(), &mut diags);
    }
    for b in &doc.boundaries {
        claim(&b.interface_id, EntityKind::Boundary, b.span.span(), &mut diags);
    }
    for a in &doc.adrs {
        claim(&a.adr_id, EntityKind::Adr, a.span.span(), &mut diags);
    }
    for s in &doc.scenarios {
        claim(&s.scenario_id, EntityKind::Scenario, s.span.span(), &mut diags);
    }
    for d in &doc.debts {
        claim(&d.debt_id, EntityKind::Debt, d.span.span(), &mut diags);
    }
    for a in &doc.attachments {
        claim(&a.attach_id, EntityKind::Attachment, a.span.span(), &mut diags);
    }

    // Section markers are presence flags, not referenceable entities, but a
    // section written twice is still a duplicate declaration.
    let mut sections_seen = BTreeMap::new();
    for s in &doc.sections {
        if sections_seen.insert(s.section, ()).is_some() {
            diags.push(Diagnostic::new(
                X_002,
                Severity::Error,
                format!("section `{}` is marked more than once", s.section),
                s.span.span().clone(),
                s.section.as_token(),
            ));
        }
    }

    // Concern cells are keyed by (component, concern).
    let mut cells_seen = BTreeMap::new();
    for c in &doc.concern_matrix {
        let key = (c.component.clone(), c.concern);
        if cells_seen.insert(key, ()).is_some() {
            diags.push(Diagnostic::new(
                X_002,
                Severity::Error,
                format!(
                    "duplicate concern cell: `{}` already has a `{}` row",
                    c.component, c.concern
                ),
                c.span.span().clone(),
                format!("{}/{}", c.component, c.concern),
            ));
        }
    }

    drop(claim);
    diags
}

/// Merges per-file documents (in file order) into one raw document.
///
/// Entity lists concatenate; cross-file duplicate identifiers are caught by
/// the subsequent [`resolve_links`] pass. Only the two singleton blocks need
/// checking here: a second meta or operational view is an X-002 error.
pub fn merge_documents(docs: Vec<Document>) -> Result<Document, Vec<Diagnostic>> {
    let mut merged = Document::default();
    let mut diags = Vec::new();

    for doc in docs {
        match (&merged.meta, doc.meta) {
            (None, meta) => merged.meta = meta,
            (Some(_), Some(second)) => diags.push(Diagnostic::new(
                X_002,
                Severity::Error,
                "more than one meta block across input files".to_string(),
                second.span.span().clone(),
                second.project_id.as_str(),
            )),
            (Some(_), None) => {}
        }
        match (&merged.ops_view, doc.ops_view) {
            (None, ops) => merged.ops_view = ops,
            (Some(_), Some(second)) => diags.push(Diagnostic::new(
                X_002,
                Severity::Error,
                "more than one operational view block across input files".to_string(),
                second.span.span().clone(),
                "ops",
            )),
            (Some(_), None) => {}
        }

        merged.sections.extend(doc.sections);
        merged.boundaries.extend(doc.boundaries);
        merged.models.extend(doc.models);
        merged.pipelines.extend(doc.pipelines);
        merged.stages.extend(doc.stages);
        merged.concern_matrix.extend(doc.concern_matrix);
        merged.adrs.extend(doc.adrs);
        merged.scenarios.extend(doc.scenarios);
        merged.debts.extend(doc.debts);
        merged.elements.extend(doc.elements);
        merged.lineage_edges.extend(doc.lineage_edges);
        merged.attachments.extend(doc.attachments);
    }

    if diags.is_empty() {
        Ok(merged)
    } else {
        sort_diagnostics(&mut diags);
        Err(diags)
    }
}
