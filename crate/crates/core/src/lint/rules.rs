//! Rule implementations behind [`lint`].

use std::collections::BTreeSet;

use crate::diag::{sort_diagnostics, Diagnostic};
use crate::ident::Identifier;
use crate::lineage::{LineageGraph, MAX_CYCLES};
use crate::lint::registry::{
    self, LintProfile, C4_002, C4_003, C4_004, E1_001, E1_002, E1_003, E1_004, E2_001, E2_002,
    E2_003, E3_001, E3_002, E4_001, E5_001, E6_001, E6_002, E7_002, E8_001, E8_002, L_001, X_003,
};
use crate::model::{
    duplicate_diagnostics, entity_index, reference_diagnostics, BoundaryContract, DebtCategory,
    Document, EntityKind, Stereotype,
};
use crate::span::SourceSpan;

/// Checks a document against every rule enabled by `profile` and returns the
/// diagnostics sorted by (file, line, rule, column, subject).
///
/// Linting expects a resolved document but tolerates a raw one: reference
/// integrity (the X family and its per-family re-checks E2-003, E7-002 and
/// C4-002) is simply reported as diagnostics instead of failing.
pub fn lint(doc: &Document, profile: LintProfile) -> Vec<Diagnostic> {
    let graph = LineageGraph::from_document(doc);
    let mut out = Vec::new();

    out.extend(duplicate_diagnostics(doc));
    out.extend(reference_diagnostics(doc));
    boundary_rules(doc, &graph, &mut out);
    registry_rules(doc, &mut out);
    pipeline_rules(doc, &mut out);
    concern_rules(doc, &mut out);
    adr_rules(doc, &mut out);
    scenario_rules(doc, &mut out);
    debt_rules(doc, &mut out);
    ops_rules(doc, &mut out);
    diagram_rules(doc, &graph, &mut out);
    cycle_rules(doc, &graph, &mut out);
    unknown_key_rules(doc, &mut out);

    out.retain(|d| profile.includes(d.rule));
    sort_diagnostics(&mut out);
    out
}

fn emit(
    out: &mut Vec<Diagnostic>,
    rule: &'static str,
    message: String,
    span: &SourceSpan,
    subject: impl Into<String>,
) {
    let severity = registry::rule_info(rule).expect("rule is registered").severity;
    out.push(Diagnostic::new(rule, severity, message, span.clone(), subject));
}

/// Source location of a graph edge: the declaring lineage edge, or the stage
/// whose wiring produced it.
fn edge_span(doc: &Document, from: &Identifier, to: &Identifier) -> SourceSpan {
    if let Some(e) = doc
        .lineage_edges
        .iter()
        .find(|e| e.from == *from && e.to == *to)
    {
        return e.span.span().clone();
    }
    if let Some(s) = doc
        .stages
        .iter()
        .find(|s| s.stage_id == *to && s.reads_from.contains(from))
    {
        return s.span.span().clone();
    }
    if let Some(s) = doc
        .stages
        .iter()
        .find(|s| s.stage_id == *from && s.writes_to.contains(to))
    {
        return s.span.span().clone();
    }
    SourceSpan::synthetic()
}

/// Source location of a graph node (element or stage).
fn node_span(doc: &Document, id: &Identifier) -> SourceSpan {
    if let Some(e) = doc.elements.iter().find(|e| e.element_id == *id) {
        return e.span.span().clone();
    }
    if let Some(s) = doc.stages.iter().find(|s| s.stage_id == *id) {
        return s.span.span().clone();
    }
    SourceSpan::synthetic()
}

/// Whether `contract` covers the partition-crossing edge between
/// `det`/`nondet`, irrespective of the edge's direction: a contract is
/// between a deterministic consumer and a non-deterministic provider.
fn covers(contract: &BoundaryContract, det: &Identifier, nondet: &Identifier) -> bool {
    contract.consumer == *det && contract.provider == *nondet
}

fn boundary_rules(doc: &Document, graph: &LineageGraph, out: &mut Vec<Diagnostic>) {
    // E1-001: every crossing needs a covering contract.
    for (from, to) in graph.boundary_crossings() {
        let (det, nondet) = if graph.is_deterministic(&from) == Some(true) {
            (&from, &to)
        } else {
            (&to, &from)
        };
        if !doc.boundaries.iter().any(|b| covers(b, det, nondet)) {
            emit(
                out,
                E1_001,
                format!(
                    "edge `{from} -> {to}` crosses the determinism partition but no \
                     boundary contract covers consumer `{det}` / provider `{nondet}`"
                ),
                &edge_span(doc, &from, &to),
                format!("{from}->{to}"),
            );
        }
    }

    for b in &doc.boundaries {
        // E1-002: all four contract parts present (and the refresh interval
        // positive).
        let mut missing = Vec::new();
        if b.output_type.is_none() {
            missing.push("output_type");
        }
        if b.confidence.is_none() {
            missing.push("confidence");
        }
        match &b.update_frequency {
            None => missing.push("update_frequency"),
            Some(d) if !d.is_positive() => missing.push("update_frequency (must be positive)"),
            Some(_) => {}
        }
        if b.fallback.is_none() {
            missing.push("fallback");
        }
        if !missing.is_empty() {
            emit(
                out,
                E1_002,
                format!(
                    "boundary contract `{}` lacks required parts: {}",
                    b.interface_id,
                    missing.join(", ")
                ),
                b.span.span(),
                b.interface_id.as_str(),
            );
        }

        // E1-003: the contract must point from the deterministic side
        // (consumer) to the non-deterministic side (provider). Endpoints
        // that do not resolve to elements are X-001's business.
        let consumer = doc.element(b.consumer.as_str());
        let provider = doc.element(b.provider.as_str());
        let mut wrong = Vec::new();
        if let Some(c) = consumer {
            if !c.deterministic {
                wrong.push(format!("consumer `{}` is non-deterministic", c.element_id));
            }
        }
        if let Some(p) = provider {
            if p.deterministic {
                wrong.push(format!("provider `{}` is deterministic", p.element_id));
            }
        }
        if !wrong.is_empty() {
            emit(
                out,
                E1_003,
                format!(
                    "boundary contract `{}` contradicts the determinism partition: {}",
                    b.interface_id,
                    wrong.join("; ")
                ),
                b.span.span(),
                b.interface_id.as_str(),
            );
            continue;
        }

        // E1-004: a directionally sound contract should match a real edge.
        if let (Some(c), Some(p)) = (consumer, provider) {
            let touches = graph.has_edge(&c.element_id, &p.element_id)
                || graph.has_edge(&p.element_id, &c.element_id);
            if !touches {
                emit(
                    out,
                    E1_004,
                    format!(
                        "boundary contract `{}` matches no edge between `{}` and `{}`",
                        b.interface_id, b.consumer, b.provider
                    ),
                    b.span.span(),
                    b.interface_id.as_str(),
                );
            }
        }
    }
}

fn registry_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    let index = entity_index(doc);
    let filled = |o: &Option<String>| o.as_deref().is_some_and(|s| !s.trim().is_empty());

    for m in &doc.models {
        // E2-001: the registry row must answer all operational questions.
        let mut missing = Vec::new();
        if !filled(&m.version) {
            missing.push("version");
        }
        if !filled(&m.framework) {
            missing.push("framework");
        }
        if m.dataset_hash.is_none() {
            missing.push("dataset_hash");
        }
        if m.primary_metric.is_none() {
            missing.push("primary_metric");
        }
        if m.status.is_none() {
            missing.push("status");
        }
        if !filled(&m.owner) {
            missing.push("owner");
        }
        if m.last_retrained.is_none() {
            missing.push("last_retrained");
        }
        if !missing.is_empty() {
            emit(
                out,
                E2_001,
                format!(
                    "model `{}` is missing registry fields: {}",
                    m.model_id,
                    missing.join(", ")
                ),
                m.span.span(),
                m.model_id.as_str(),
            );
        }

        // E2-002: hash shape.
        if let Some(h) = &m.dataset_hash {
            if !m.dataset_hash_is_well_formed() {
                emit(
                    out,
                    E2_002,
                    format!(
                        "model `{}` has a malformed dataset_hash `{h}`: expected 8 to 64 \
                         lowercase hex characters",
                        m.model_id
                    ),
                    m.span.span(),
                    m.model_id.as_str(),
                );
            }
        }

        // E2-003: lineage_ref must land in the lineage graph.
        if let Some(r) = &m.lineage_ref {
            let ok = matches!(
                index.get(r),
                Some(EntityKind::Element(_)) | Some(EntityKind::Stage)
            );
            if !ok {
                emit(
                    out,
                    E2_003,
                    format!(
                        "model `{}` has a dangling lineage_ref `{r}`: no element or \
                         pipeline stage declares it",
                        m.model_id
                    ),
                    m.span.span(),
                    m.model_id.as_str(),
                );
            }
        }
    }
}

fn pipeline_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    for s in &doc.stages {
        if s.gates.is_empty() {
            emit(
                out,
                E3_001,
                format!("stage `{}` has no quality gates", s.stage_id),
                s.span.span(),
                s.stage_id.as_str(),
            );
        }
        for (i, gate) in s.gates.iter().enumerate() {
            if gate.is_complete() {
                continue;
            }
            let mut missing = Vec::new();
            if gate.check.is_none() {
                missing.push("check");
            }
            if gate.threshold.is_none() {
                missing.push("threshold");
            }
            if gate.on_failure.is_none() {
                missing.push("failure action");
            }
            emit(
                out,
                E3_002,
                format!(
                    "gate {} of stage `{}` is missing: {}",
                    i + 1,
                    s.stage_id,
                    missing.join(", ")
                ),
                s.span.span(),
                s.stage_id.as_str(),
            );
        }
    }
}

fn concern_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    for e in &doc.elements {
        if e.stereotype != Some(Stereotype::MlModel) {
            continue;
        }
        let rows = doc
            .concern_matrix
            .iter()
            .filter(|c| c.component == e.element_id)
            .count();
        if rows == 0 {
            emit(
                out,
                E4_001,
                format!(
                    "element `{}` carries the ml_model stereotype but has no concern \
                     matrix rows (expected fairness, explainability, human_oversight, \
                     privacy, safety)",
                    e.element_id
                ),
                e.span.span(),
                e.element_id.as_str(),
            );
        }
    }
}

fn adr_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    use crate::model::AdrStatus;
    for a in &doc.adrs {
        if a.status != AdrStatus::Accepted {
            continue;
        }
        let missing: Vec<&str> = a
            .ai_fields()
            .iter()
            .filter(|(_, present)| !present)
            .map(|(name, _)| *name)
            .collect();
        if !missing.is_empty() {
            emit(
                out,
                E5_001,
                format!(
                    "accepted decision record `{}` is missing AI fields: {}",
                    a.adr_id,
                    missing.join(", ")
                ),
                a.span.span(),
                a.adr_id.as_str(),
            );
        }
    }
}

/// Whether free text contains a measurable quantity: some token that (after
/// leading sign/approximation marks) starts with a digit. Tokens are split
/// on whitespace, comparators and bracketing punctuation so that forms like
/// `p95<200ms`, `>2σ`, `(15%)` and `MAE > 5.5 min` all count, while bare
/// labels like `v2` do not.
fn has_quantified_token(text: &str) -> bool {
    text.split(|c: char| {
        c.is_whitespace() || matches!(c, '<' | '>' | '=' | '(' | ')' | ',' | ';' | ':' | '≤' | '≥')
    })
    .any(|token| {
        let t = token.trim_start_matches(['+', '-', '~', '±']);
        let mut chars = t.chars();
        match chars.next() {
            Some(c) if c.is_ascii_digit() => true,
            Some('.') => chars.next().is_some_and(|c| c.is_ascii_digit()),
            _ => false,
        }
    })
}

fn scenario_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    for s in &doc.scenarios {
        if !has_quantified_token(&s.stimulus) {
            emit(
                out,
                E6_001,
                format!(
                    "scenario `{}` stimulus \"{}\" contains no quantified trigger",
                    s.scenario_id, s.stimulus
                ),
                s.span.span(),
                s.scenario_id.as_str(),
            );
        }
        let positive = s.response_deadline.as_ref().is_some_and(|d| d.is_positive());
        if !positive {
            emit(
                out,
                E6_002,
                format!(
                    "scenario `{}` has no positive response_deadline",
                    s.scenario_id
                ),
                s.span.span(),
                s.scenario_id.as_str(),
            );
        }
    }
}

fn debt_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    // E7-001 (unrecognized category) cannot occur past parsing: the category
    // vocabulary is a closed enum. E7-002 re-checks the blast radius.
    let index = entity_index(doc);
    for d in &doc.debts {
        let unknown: Vec<&str> = d
            .components
            .iter()
            .filter(|c| !matches!(index.get(*c), Some(EntityKind::Element(_))))
            .map(|c| c.as_str())
            .collect();
        if !unknown.is_empty() {
            emit(
                out,
                E7_002,
                format!(
                    "debt entry `{}` names unknown components: {}",
                    d.debt_id,
                    unknown.join(", ")
                ),
                d.span.span(),
                d.debt_id.as_str(),
            );
        }
    }
}

fn ops_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    let Some(ops) = &doc.ops_view else {
        return;
    };
    let filled = |o: &Option<String>| o.as_deref().is_some_and(|s| !s.trim().is_empty());
    let mut problems = Vec::new();

    match &ops.monitoring {
        None => problems.push("monitoring (missing)".to_string()),
        Some(entries) if entries.is_empty() => {
            problems.push("monitoring (needs at least one entry)".to_string())
        }
        Some(_) => {}
    }

    match &ops.retraining {
        None => problems.push("retraining (missing)".to_string()),
        Some(r) => {
            if r.triggers.is_empty() {
                problems.push("retraining (no triggers)".to_string());
            }
            if r.automation.is_none() {
                problems.push("retraining (no automation level)".to_string());
            }
            if !filled(&r.approval) {
                problems.push("retraining (no approval step)".to_string());
            }
        }
    }

    match &ops.deployment {
        None => problems.push("deployment (missing)".to_string()),
        Some(d) => {
            if d.strategy.is_none() {
                problems.push("deployment (no strategy)".to_string());
            }
            if !filled(&d.promotion_criteria) {
                problems.push("deployment (no promotion criteria)".to_string());
            }
        }
    }

    match &ops.rollback {
        None => problems.push("rollback (missing)".to_string()),
        Some(r) => {
            if !filled(&r.triggers) {
                problems.push("rollback (no triggers)".to_string());
            }
            if !r.retention_depth.is_some_and(|d| d >= 1) {
                problems.push("rollback (retention depth must be at least 1)".to_string());
            }
            if !filled(&r.downstream_note) {
                problems.push("rollback (no downstream retraining note)".to_string());
            }
        }
    }

    if !problems.is_empty() {
        emit(
            out,
            E8_001,
            format!("operational view is incomplete: {}", problems.join("; ")),
            ops.span.span(),
            "ops",
        );
    }

    // E8-002: traffic slices must be sane percentages.
    if let Some(slices) = ops.deployment.as_ref().and_then(|d| d.traffic_split.as_ref()) {
        let mut bad = Vec::new();
        for s in slices {
            if !(0.0..=100.0).contains(&s.percent) {
                bad.push(format!("`{}` is {} (outside 0..=100)", s.label, s.percent));
            }
        }
        let total: f64 = slices.iter().map(|s| s.percent).sum();
        if total > 100.0 + 1e-9 {
            bad.push(format!("slices sum to {total}"));
        }
        if !bad.is_empty() {
            emit(
                out,
                E8_002,
                format!("traffic split out of range: {}", bad.join("; ")),
                ops.span.span(),
                "ops",
            );
        }
    }
}

fn diagram_rules(doc: &Document, graph: &LineageGraph, out: &mut Vec<Diagnostic>) {
    let index = entity_index(doc);

    // C4-001 (unknown stereotype token) cannot occur past parsing: the
    // stereotype vocabulary is a closed enum.

    // C4-002: lineage edges must connect declared graph nodes.
    for e in &doc.lineage_edges {
        let resolves = |id: &Identifier| {
            matches!(
                index.get(id),
                Some(EntityKind::Element(_)) | Some(EntityKind::Stage)
            )
        };
        let mut bad = Vec::new();
        if !resolves(&e.from) {
            bad.push(e.from.as_str());
        }
        if !resolves(&e.to) {
            bad.push(e.to.as_str());
        }
        if !bad.is_empty() {
            emit(
                out,
                C4_002,
                format!(
                    "lineage edge `{} -> {}` has unresolved endpoints: {}",
                    e.from,
                    e.to,
                    bad.join(", ")
                ),
                e.span.span(),
                format!("{}->{}", e.from, e.to),
            );
        }
    }

    // C4-003: non-deterministic elements that sit on a crossing edge must
    // advertise a complete region contract.
    let mut exposed: BTreeSet<&Identifier> = BTreeSet::new();
    for (from, to) in graph.boundary_crossings() {
        for id in [from, to] {
            if graph.is_deterministic(&id) == Some(false) {
                if let Some(e) = doc.elements.iter().find(|e| e.element_id == id) {
                    exposed.insert(&e.element_id);
                }
            }
        }
    }
    for e in &doc.elements {
        if !exposed.contains(&e.element_id) {
            continue;
        }
        match &e.region_contract {
            None => emit(
                out,
                C4_003,
                format!(
                    "element `{}` is non-deterministic and sits on a partition-crossing \
                     edge but declares no region contract",
                    e.element_id
                ),
                e.span.span(),
                e.element_id.as_str(),
            ),
            Some(rc) if !rc.is_complete() => {
                let mut missing = Vec::new();
                if rc.confidence.is_none() {
                    missing.push("region_confidence");
                }
                if rc.fallback.is_none() {
                    missing.push("region_fallback");
                }
                if rc.degradation.is_none() {
                    missing.push("region_degradation");
                }
                emit(
                    out,
                    C4_003,
                    format!(
                        "element `{}` has an incomplete region contract: missing {}",
                        e.element_id,
                        missing.join(", ")
                    ),
                    e.span.span(),
                    e.element_id.as_str(),
                );
            }
            Some(_) => {}
        }
    }

    // C4-004: an ml_model element cannot be deterministic.
    for e in &doc.elements {
        if e.stereotype == Some(Stereotype::MlModel) && e.deterministic {
            emit(
                out,
                C4_004,
                format!(
                    "element `{}` carries the ml_model stereotype but is flagged \
                     deterministic",
                    e.element_id
                ),
                e.span.span(),
                e.element_id.as_str(),
            );
        }
    }
}

fn cycle_rules(doc: &Document, graph: &LineageGraph, out: &mut Vec<Diagnostic>) {
    let report = graph.cycles();
    for cycle in &report.cycles {
        let covered = doc.debts.iter().any(|d| {
            d.category == DebtCategory::HiddenFeedbackLoop
                && d.components.iter().any(|c| cycle.contains(c))
        });
        if !covered {
            let path: Vec<&str> = cycle.iter().map(|n| n.as_str()).collect();
            let first = &cycle[0];
            emit(
                out,
                L_001,
                format!(
                    "lineage cycle `{} -> {}` has no hidden_feedback_loop debt entry \
                     covering any of its nodes",
                    path.join(" -> "),
                    first
                ),
                &node_span(doc, first),
                first.as_str(),
            );
        }
    }
    if report.truncated {
        emit(
            out,
            L_001,
            format!(
                "cycle enumeration stopped after {MAX_CYCLES} cycles; further cycles \
                 were not checked for debt coverage"
            ),
            &SourceSpan::synthetic(),
            "lineage-graph",
        );
    }
}

fn unknown_key_rules(doc: &Document, out: &mut Vec<Diagnostic>) {
    let mut warn = |extra: &crate::model::Extras, span: &SourceSpan, subject: &str| {
        if extra.is_empty() {
            return;
        }
        let keys: Vec<&str> = extra.iter().map(|(k, _)| k.as_str()).collect();
        emit(
            out,
            X_003,
            format!("unknown keys preserved verbatim: {}", keys.join(", ")),
            span,
            subject,
        );
    };

    if let Some(m) = &doc.meta {
        warn(&m.extra, m.span.span(), m.project_id.as_str());
    }
    for s in &doc.sections {
        warn(&s.extra, s.span.span(), s.section.as_token());
    }
    for b in &doc.boundaries {
        warn(&b.extra, b.span.span(), b.interface_id.as_str());
    }
    for m in &doc.models {
        warn(&m.extra, m.span.span(), m.model_id.as_str());
    }
    for p in &doc.pipelines {
        warn(&p.extra, p.span.span(), p.pipeline_id.as_str());
    }
    for s in &doc.stages {
        warn(&s.extra, s.span.span(), s.stage_id.as_str());
    }
    for c in &doc.concern_matrix {
        let subject = format!("{}/{}", c.component, c.concern);
        warn(&c.extra, c.span.span(), &subject);
    }
    for a in &doc.adrs {
        warn(&a.extra, a.span.span(), a.adr_id.as_str());
    }
    for s in &doc.scenarios {
        warn(&s.extra, s.span.span(), s.scenario_id.as_str());
    }
    for d in &doc.debts {
        warn(&d.extra, d.span.span(), d.debt_id.as_str());
    }
    if let Some(ops) = &doc.ops_view {
        warn(&ops.extra, ops.span.span(), "ops");
    }
    for e in &doc.elements {
        warn(&e.extra, e.span.span(), e.element_id.as_str());
    }
    for e in &doc.lineage_edges {
        let subject = format!("{}->{}", e.from, e.to);
        warn(&e.extra, e.span.span(), &subject);
    }
    for a in &doc.attachments {
        warn(&a.extra, a.span.span(), a.attach_id.as_str());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confidence::parse_confidence;
    use crate::model::{
        AdrStatus, AiAdr, AutomationLevel, Concern, ConcernCell, DebtEntry, DebtSeverity,
        DebtStatus, DeploymentPolicy, DeploymentStrategy, DiagramElement, LineageEdge,
        MonitorEntry, OperationalAiView, QualityScenario, RegionContract, RetrainingPolicy,
        RetrainingTrigger, RollbackPolicy, ScenarioEnvironment, ScenarioSource, TrafficSlice,
    };
    use crate::span::NodeSpan;
    use crate::value::DurationSpec;

    fn id(s: &str) -> Identifier {
        s.parse().unwrap()
    }

    fn element(eid: &str, stereotype: Option<Stereotype>, deterministic: bool) -> DiagramElement {
        DiagramElement {
            element_id: id(eid),
            name: eid.to_string(),
            stereotype,
            deterministic,
            risk_class: None,
            region_contract: Some(RegionContract {
                confidence: Some(parse_confidence("accuracy >= 0.9").unwrap()),
                fallback: Some("use cache".into()),
                degradation: Some("stale results".into()),
            }),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        }
    }

    fn edge(from: &str, to: &str) -> LineageEdge {
        LineageEdge {
            from: id(from),
            to: id(to),
            schema_note: None,
            freshness: None,
            privacy_class: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        }
    }

    fn contract(cid: &str, consumer: &str, provider: &str) -> BoundaryContract {
        BoundaryContract {
            interface_id: id(cid),
            consumer: id(consumer),
            provider: id(provider),
            output_type: Some(crate::model::OutputType::Continuous),
            confidence: Some(parse_confidence("mae < 5.5 min").unwrap()),
            update_frequency: Some("PT1H".parse().unwrap()),
            fallback: Some(crate::model::FallbackBehavior::CachedLastKnownGood),
            fallback_note: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        }
    }

    fn rules_of(diags: &[Diagnostic]) -> Vec<&str> {
        diags.iter().map(|d| d.rule).collect()
    }

    #[test]
    fn empty_document_is_clean() {
        assert!(lint(&Document::default(), LintProfile::Full).is_empty());
    }

    #[test]
    fn covered_crossing_is_clean_and_uncovered_fires_e1_001() {
        let mut doc = Document::default();
        doc.elements.push(element("dash", None, true));
        doc.elements.push(element("scorer", Some(Stereotype::Monitor), false));
        doc.lineage_edges.push(edge("scorer", "dash"));
        doc.boundaries.push(contract("score-feed", "dash", "scorer"));
        assert!(lint(&doc, LintProfile::Full).is_empty());

        // Coverage is direction-independent: flip the edge, still covered.
        doc.lineage_edges[0] = edge("dash", "scorer");
        assert!(lint(&doc, LintProfile::Full).is_empty());

        doc.boundaries.clear();
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E1_001]);
        assert_eq!(diags[0].subject, "dash->scorer");
    }

    #[test]
    fn incomplete_contract_fires_one_e1_002_naming_parts() {
        let mut doc = Document::default();
        doc.elements.push(element("dash", None, true));
        doc.elements.push(element("scorer", Some(Stereotype::Monitor), false));
        doc.lineage_edges.push(edge("scorer", "dash"));
        let mut c = contract("score-feed", "dash", "scorer");
        c.fallback = None;
        doc.boundaries.push(c);
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E1_002]);
        assert!(diags[0].message.contains("fallback"));
        assert!(!diags[0].message.contains("confidence"));
    }

    #[test]
    fn reversed_contract_fires_e1_003_not_e1_004() {
        let mut doc = Document::default();
        doc.elements.push(element("dash", None, true));
        doc.elements.push(element("scorer", Some(Stereotype::Monitor), false));
        doc.lineage_edges.push(edge("scorer", "dash"));
        doc.boundaries.push(contract("score-feed", "scorer", "dash"));
        let diags = lint(&doc, LintProfile::Full);
        // The reversed contract covers nothing, so the crossing is bare too.
        assert_eq!(rules_of(&diags), vec![E1_001, E1_003]);
    }

    #[test]
    fn unmatched_contract_fires_e1_004() {
        let mut doc = Document::default();
        doc.elements.push(element("dash", None, true));
        doc.elements.push(element("scorer", Some(Stereotype::Monitor), false));
        doc.boundaries.push(contract("score-feed", "dash", "scorer"));
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E1_004]);
    }

    #[test]
    fn dangling_lineage_ref_fires_both_x001_and_e2_003() {
        let mut doc = Document::default();
        doc.models.push(crate::model::ModelEntry {
            model_id: id("m"),
            version: Some("1".into()),
            framework: Some("xgb".into()),
            dataset_hash: Some("abcdef12".into()),
            lineage_ref: Some(id("nowhere")),
            hyperparams_ref: None,
            primary_metric: Some(parse_confidence("mae < 6 min").unwrap()),
            status: Some(crate::model::ModelStatus::Production),
            owner: Some("team".into()),
            last_retrained: Some(chrono::NaiveDate::from_ymd_opt(2024, 11, 2).unwrap()),
            model_card: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E2_003, "X-001"]);
    }

    #[test]
    fn scenario_quantification_scan() {
        for good in [
            "MAE > 5.5 min for 3 consecutive days",
            "p95<200ms",
            "latency exceeds 2σ",
            "drift (15%) sustained",
            "~12 months of use",
        ] {
            assert!(has_quantified_token(good), "{good:?} should count");
        }
        for bad in ["respond quickly", "v2 rollout stalls", "many alerts", ""] {
            assert!(!has_quantified_token(bad), "{bad:?} should not count");
        }
    }

    #[test]
    fn scenario_rules_fire() {
        let mut doc = Document::default();
        doc.scenarios.push(QualityScenario {
            scenario_id: id("s"),
            source: ScenarioSource::DataDrift,
            stimulus: "inputs drift a lot".into(),
            environment: ScenarioEnvironment::Serving,
            response: "retrain".into(),
            response_deadline: Some(DurationSpec::from_seconds(0)),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E6_001, E6_002]);
    }

    #[test]
    fn ops_view_completeness_and_traffic_split() {
        let mut doc = Document::default();
        doc.models.push(crate::model::ModelEntry {
            model_id: id("m"),
            version: Some("1".into()),
            framework: Some("xgb".into()),
            dataset_hash: Some("abcdef12".into()),
            lineage_ref: None,
            hyperparams_ref: None,
            primary_metric: Some(parse_confidence("mae < 6 min").unwrap()),
            status: Some(crate::model::ModelStatus::Production),
            owner: Some("team".into()),
            last_retrained: Some(chrono::NaiveDate::from_ymd_opt(2024, 11, 2).unwrap()),
            model_card: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        let complete = OperationalAiView {
            monitoring: Some(vec![MonitorEntry {
                model_id: id("m"),
                metrics: vec!["mae".into()],
                alert_threshold: parse_confidence("mae > 6 min").unwrap(),
            }]),
            retraining: Some(RetrainingPolicy {
                triggers: vec![RetrainingTrigger::DriftBased],
                automation: Some(AutomationLevel::SemiAutomated),
                approval: Some("ml lead signs off".into()),
            }),
            deployment: Some(DeploymentPolicy {
                strategy: Some(DeploymentStrategy::Canary),
                promotion_criteria: Some("mae within 5% of incumbent".into()),
                traffic_split: Some(vec![
                    TrafficSlice { label: "canary".into(), percent: 5.0 },
                    TrafficSlice { label: "stable".into(), percent: 95.0 },
                ]),
            }),
            rollback: Some(RollbackPolicy {
                triggers: Some("mae regression".into()),
                retention_depth: Some(3),
                downstream_note: Some("re-run dependent retraining".into()),
            }),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        };
        doc.ops_view = Some(complete.clone());
        assert!(lint(&doc, LintProfile::Full).is_empty());

        let mut broken = complete.clone();
        broken.rollback = None;
        broken.retraining.as_mut().unwrap().approval = None;
        doc.ops_view = Some(broken);
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E8_001]);
        assert!(diags[0].message.contains("rollback (missing)"));
        assert!(diags[0].message.contains("no approval step"));

        let mut overfull = complete;
        overfull
            .deployment
            .as_mut()
            .unwrap()
            .traffic_split
            .as_mut()
            .unwrap()[0]
            .percent = 50.0;
        doc.ops_view = Some(overfull);
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E8_002]);
        assert!(diags[0].message.contains("145"));
    }

    #[test]
    fn uncovered_cycle_warns_and_coverage_silences() {
        let mut doc = Document::default();
        doc.elements.push(element("a", Some(Stereotype::Monitor), false));
        doc.elements.push(element("b", Some(Stereotype::FeatureStore), false));
        doc.lineage_edges.push(edge("a", "b"));
        doc.lineage_edges.push(edge("b", "a"));
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![L_001]);
        assert!(diags[0].message.contains("a -> b"));

        doc.debts.push(DebtEntry {
            debt_id: id("d-loop"),
            category: DebtCategory::HiddenFeedbackLoop,
            components: vec![id("b")],
            severity: DebtSeverity::Medium,
            effort: "2 sprints".into(),
            owner: "platform".into(),
            status: DebtStatus::Open,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        assert!(lint(&doc, LintProfile::Full).is_empty());
    }

    #[test]
    fn ml_model_rules_c4_and_e4() {
        let mut doc = Document::default();
        let mut e = element("scorer", Some(Stereotype::MlModel), true);
        e.region_contract = None;
        doc.elements.push(e);
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![C4_004, E4_001]);
    }

    #[test]
    fn exposed_region_needs_complete_contract() {
        let mut doc = Document::default();
        doc.elements.push(element("dash", None, true));
        let mut scorer = element("scorer", Some(Stereotype::Monitor), false);
        scorer.region_contract.as_mut().unwrap().degradation = None;
        doc.elements.push(scorer);
        doc.lineage_edges.push(edge("scorer", "dash"));
        doc.boundaries.push(contract("score-feed", "dash", "scorer"));
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![C4_003]);
        assert!(diags[0].message.contains("region_degradation"));

        // Interior non-determinism needs no region contract.
        let mut doc2 = Document::default();
        let mut store = element("store", Some(Stereotype::FeatureStore), false);
        store.region_contract = None;
        let mut scorer2 = element("scorer", Some(Stereotype::Monitor), false);
        scorer2.region_contract = None;
        doc2.elements.push(store);
        doc2.elements.push(scorer2);
        doc2.lineage_edges.push(edge("store", "scorer"));
        doc2.concern_matrix.push(ConcernCell {
            component: id("scorer"),
            concern: Concern::Fairness,
            method: "quarterly audit".into(),
            threshold: None,
            monitoring_frequency: DurationSpec::from_seconds(86_400),
            owner: "ethics board".into(),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        assert!(lint(&doc2, LintProfile::Full).is_empty());
    }

    #[test]
    fn profile_filters_rules() {
        let mut doc = Document::default();
        doc.adrs.push(AiAdr {
            adr_id: id("adr-1"),
            title: "pick a model".into(),
            status: AdrStatus::Accepted,
            context: None,
            decision: None,
            consequences: None,
            model_alternatives: Vec::new(),
            dataset: None,
            fairness_bias: None,
            model_lifetime: None,
            retraining_trigger: None,
            explainability: None,
            regulatory: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        assert!(lint(&doc, LintProfile::Stage1).is_empty());
        let diags = lint(&doc, LintProfile::Stage2);
        assert_eq!(rules_of(&diags), vec![E5_001]);
        assert!(diags[0].message.contains("retraining_trigger"));
    }

    #[test]
    fn stage_gate_rules() {
        use crate::model::{PipelineStage, QualityGate, StageKind};
        let mut doc = Document::default();
        doc.pipelines.push(crate::model::Pipeline {
            pipeline_id: id("p"),
            data_cards: Vec::new(),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        doc.stages.push(PipelineStage {
            stage_id: id("bare"),
            pipeline: id("p"),
            kind: StageKind::Collection,
            seq: 1,
            gates: Vec::new(),
            reads_from: Vec::new(),
            writes_to: Vec::new(),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        doc.stages.push(PipelineStage {
            stage_id: id("half"),
            pipeline: id("p"),
            kind: StageKind::Preprocessing,
            seq: 2,
            gates: vec![QualityGate {
                check: Some(crate::model::GateCheck::Schema),
                threshold: None,
                on_failure: Some(crate::model::GateAction::Halt),
            }],
            reads_from: Vec::new(),
            writes_to: Vec::new(),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        });
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![E3_001, E3_002]);
        assert!(diags[1].message.contains("threshold"));
    }

    #[test]
    fn unknown_keys_warn_only_in_full_profile() {
        let mut doc = Document::default();
        let mut e = element("dash", None, true);
        e.extra.push(("color".into(), crate::value::Value::Token("blue".into())));
        doc.elements.push(e);
        assert!(lint(&doc, LintProfile::Stage3).is_empty());
        let diags = lint(&doc, LintProfile::Full);
        assert_eq!(rules_of(&diags), vec![X_003]);
        assert!(diags[0].message.contains("color"));
    }
}
