//! Cross-cutting invariants, checked both exhaustively against the
//! urban-mobility fixture and statistically against generated inputs:
//!
//! * removing one entity from a clean document only ever surfaces
//!   reference-integrity findings or findings about the relationship the
//!   removed entity itself satisfied — never unrelated complaints about
//!   entities that stayed;
//! * adoption-stage lint profiles nest;
//! * compliance scores fall monotonically when artifacts are removed and
//!   rise monotonically when artifacts are added;
//! * concern coverage under the plain-notation mask never exceeds coverage
//!   of the annotated document;
//! * impact analysis agrees with a brute-force transitive closure and cycle
//!   detection agrees with a topological sort;
//! * chance-corrected agreement stays within its mathematical bounds;
//! * every report is a pure function of the document.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::sync::OnceLock;

use proptest::prelude::*;
use radai_core::model::{
    AdrStatus, AiAdr, Arc42Section, AttachmentKind, AttachmentRef, DebtCategory, DebtEntry,
    DebtSeverity, DebtStatus, DiagramElement, ModelEntry, QualityScenario, ScenarioEnvironment,
    ScenarioSource, SectionMarker, Stereotype,
};
use radai_core::{
    concern_coverage, emit, fleiss_kappa, lint, merge_documents, parse, resolve_links,
    score_document, Concern10, DiagramFormat, DiagramRequest, DiagramView, Document, Identifier,
    LineageGraph, LintProfile, NodeSpan, NotationProfile,
};
use radai_testgen::{assert_score_le, digraph, document, graph_document, rater_matrix};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/mobility")
}

fn mobility() -> &'static Document {
    static DOC: OnceLock<Document> = OnceLock::new();
    DOC.get_or_init(|| {
        let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
            .expect("fixture directory exists")
            .map(|e| e.expect("readable entry").path())
            .filter(|p| p.extension().is_some_and(|x| x == "radl"))
            .collect();
        paths.sort();
        let docs: Vec<Document> = paths
            .iter()
            .map(|p| {
                let text = fs::read_to_string(p).expect("readable fixture");
                parse(&text, &p.file_name().unwrap().to_string_lossy())
                    .unwrap_or_else(|e| panic!("{} fails to parse: {e:?}", p.display()))
            })
            .collect();
        let merged = merge_documents(docs).expect("no cross-file duplicates");
        resolve_links(merged).expect("every reference resolves")
    })
}

fn id(s: &str) -> Identifier {
    s.parse().unwrap()
}

// ---------------------------------------------------------------------------
// Lint-cleanliness monotonicity under removal
// ---------------------------------------------------------------------------

/// Every way of deleting exactly one entity from the document, labeled by
/// what was deleted.
fn single_removals(doc: &Document) -> Vec<(&'static str, String, Document)> {
    let mut out: Vec<(&'static str, String, Document)> = Vec::new();

    macro_rules! drop_each {
        ($kind:literal, $field:ident, $label:expr) => {
            for i in 0..doc.$field.len() {
                let mut d = doc.clone();
                let gone = d.$field.remove(i);
                out.push(($kind, $label(&gone), d));
            }
        };
    }

    drop_each!("section", sections, |s: &SectionMarker| s
        .section
        .as_token()
        .to_string());
    drop_each!("element", elements, |e: &DiagramElement| e
        .element_id
        .to_string());
    drop_each!("boundary", boundaries, |b: &radai_core::model::BoundaryContract| b
        .interface_id
        .to_string());
    drop_each!("model", models, |m: &ModelEntry| m.model_id.to_string());
    drop_each!("pipeline", pipelines, |p: &radai_core::model::Pipeline| p
        .pipeline_id
        .to_string());
    drop_each!("stage", stages, |s: &radai_core::model::PipelineStage| s
        .stage_id
        .to_string());
    drop_each!("cell", concern_matrix, |c: &radai_core::model::ConcernCell| {
        format!("{}/{}", c.component, c.concern.as_token())
    });
    drop_each!("adr", adrs, |a: &AiAdr| a.adr_id.to_string());
    drop_each!("scenario", scenarios, |s: &QualityScenario| s
        .scenario_id
        .to_string());
    drop_each!("debt", debts, |d: &DebtEntry| d.debt_id.to_string());
    drop_each!("edge", lineage_edges, |e: &radai_core::model::LineageEdge| {
        format!("{}->{}", e.from, e.to)
    });
    drop_each!("attachment", attachments, |a: &AttachmentRef| a
        .attach_id
        .to_string());

    if doc.ops_view.is_some() {
        let mut d = doc.clone();
        d.ops_view = None;
        out.push(("ops", "ops".to_string(), d));
    }
    if doc.meta.is_some() {
        let mut d = doc.clone();
        d.meta = None;
        out.push(("meta", "meta".to_string(), d));
    }
    out
}

/// Rules a single removal may legitimately surface. Reference integrity
/// (X-001 and its specialized forms) is always fair game; beyond that, each
/// kind may only expose the coverage relationship it satisfied itself: a
/// deleted contract uncovers its crossing, a deleted debt uncovers its
/// cycle, a deleted edge strands its contract, a deleted cell can empty a
/// component's concern row.
fn allowed_after_removing(kind: &str) -> &'static [&'static str] {
    const ALWAYS: [&str; 4] = ["X-001", "E2-003", "E7-002", "C4-002"];
    match kind {
        "boundary" => &["X-001", "E2-003", "E7-002", "C4-002", "E1-001"],
        "cell" => &["X-001", "E2-003", "E7-002", "C4-002", "E4-001"],
        "debt" => &["X-001", "E2-003", "E7-002", "C4-002", "L-001"],
        "edge" => &["X-001", "E2-003", "E7-002", "C4-002", "E1-004"],
        _ => &ALWAYS,
    }
}

#[test]
fn removal_from_clean_document_only_surfaces_reference_or_coverage_findings() {
    let doc = mobility();
    assert!(
        lint(doc, LintProfile::Full).is_empty(),
        "the fixture must start clean"
    );

    let removals = single_removals(doc);
    assert!(removals.len() > 50, "the fixture should exercise every kind");
    for (kind, label, reduced) in removals {
        let allowed = allowed_after_removing(kind);
        for d in lint(&reduced, LintProfile::Full) {
            assert!(
                allowed.contains(&d.rule),
                "removing {kind} `{label}` raised {} about `{}`: {} (allowed: {allowed:?})",
                d.rule,
                d.subject,
                d.message
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Compliance-score monotonicity
// ---------------------------------------------------------------------------

/// Deletes the masked entities from the fixture; one mask bit per entity in
/// a fixed traversal order.
fn apply_removal_mask(mut doc: Document, mask: &[bool]) -> Document {
    let mut bits = mask.iter().copied();
    let mut take = move || bits.next().unwrap_or(false);

    macro_rules! filter {
        ($field:ident) => {
            doc.$field.retain(|_| !take());
        };
    }
    filter!(sections);
    filter!(elements);
    filter!(boundaries);
    filter!(models);
    filter!(pipelines);
    filter!(stages);
    filter!(concern_matrix);
    filter!(adrs);
    filter!(scenarios);
    filter!(debts);
    filter!(lineage_edges);
    filter!(attachments);
    if take() {
        doc.ops_view = None;
    }
    if take() {
        doc.meta = None;
    }
    doc
}

/// Self-contained artifacts whose addition must never lower a score. Each
/// one uses a fresh identifier so it cannot collide with or re-resolve
/// anything already present.
fn single_additions(doc: &Document) -> Vec<(&'static str, Document)> {
    let span = NodeSpan::synthetic();
    let mut out: Vec<(&'static str, Document)> = Vec::new();

    if let Some(section) = Arc42Section::ALL.iter().find(|s| !doc.has_section(**s)) {
        let mut d = doc.clone();
        d.sections.push(SectionMarker {
            section: *section,
            title: None,
            extra: Vec::new(),
            span: span.clone(),
        });
        out.push(("section", d));
    }

    let mut d = doc.clone();
    d.elements.push(DiagramElement {
        element_id: id("zz-added-model-element"),
        name: "Added scorer".to_string(),
        stereotype: Some(Stereotype::MlModel),
        deterministic: false,
        risk_class: None,
        region_contract: None,
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("ml element", d));

    let mut d = doc.clone();
    d.elements.push(DiagramElement {
        element_id: id("zz-added-gateway"),
        name: "Added gateway".to_string(),
        stereotype: Some(Stereotype::HumanInTheLoop),
        deterministic: true,
        risk_class: None,
        region_contract: None,
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("oversight element", d));

    let mut d = doc.clone();
    d.models.push(ModelEntry {
        model_id: id("zz-added-model"),
        version: None,
        framework: None,
        dataset_hash: None,
        lineage_ref: None,
        hyperparams_ref: None,
        primary_metric: None,
        status: None,
        owner: None,
        last_retrained: None,
        model_card: None,
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("model", d));

    let mut d = doc.clone();
    d.adrs.push(AiAdr {
        adr_id: id("zz-added-adr"),
        title: "Added decision".to_string(),
        status: AdrStatus::Accepted,
        context: Some("context".to_string()),
        decision: Some("decision".to_string()),
        consequences: Some("consequences".to_string()),
        model_alternatives: vec!["baseline".to_string()],
        dataset: Some("dataset".to_string()),
        fairness_bias: Some("bias review".to_string()),
        model_lifetime: Some("12 months".to_string()),
        retraining_trigger: Some("drift alarm".to_string()),
        explainability: Some("feature attributions".to_string()),
        regulatory: Some("transparency notice".to_string()),
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("adr", d));

    let mut d = doc.clone();
    d.scenarios.push(QualityScenario {
        scenario_id: id("zz-added-scenario"),
        source: ScenarioSource::DataDrift,
        stimulus: "error rate exceeds 5 % for 2 hours".to_string(),
        environment: ScenarioEnvironment::Serving,
        response: "alert and fall back".to_string(),
        response_deadline: Some(radai_core::DurationSpec::from_seconds(3600)),
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("scenario", d));

    let mut d = doc.clone();
    d.attachments.push(AttachmentRef {
        attach_id: id("zz-added-attachment"),
        kind: AttachmentKind::SupplementaryTraining,
        uri: "docs/training-supplement.md".to_string(),
        extra: Vec::new(),
        span: span.clone(),
    });
    out.push(("attachment", d));

    if let Some(first) = doc.elements.first() {
        let mut d = doc.clone();
        d.debts.push(DebtEntry {
            debt_id: id("zz-added-debt"),
            category: DebtCategory::Entanglement,
            components: vec![first.element_id.clone()],
            severity: DebtSeverity::Low,
            effort: "small".to_string(),
            owner: "platform team".to_string(),
            status: DebtStatus::Open,
            extra: Vec::new(),
            span: span.clone(),
        });
        out.push(("debt", d));
    }

    out
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        ..ProptestConfig::default()
    })]

    #[test]
    fn score_never_rises_when_fixture_artifacts_are_removed(
        mask in prop::collection::vec(any::<bool>(), 64)
    ) {
        let full = mobility();
        let reduced = apply_removal_mask(full.clone(), &mask);
        assert_score_le(&score_document(&reduced), &score_document(full));
    }

    #[test]
    fn score_never_falls_when_artifacts_are_added(doc in document()) {
        let base = score_document(&doc);
        for (what, grown) in single_additions(&doc) {
            let after = score_document(&grown);
            for (a, b) in base.categories.iter().zip(&after.categories) {
                prop_assert!(
                    a.score <= b.score,
                    "adding a {what} lowered category {} from {} to {}",
                    a.index, a.score, b.score
                );
            }
        }
    }

    #[test]
    fn lint_profiles_nest(doc in document()) {
        let key = |d: &radai_core::Diagnostic| (d.rule, d.subject.clone(), d.message.clone());
        let full: BTreeSet<_> = lint(&doc, LintProfile::Full).iter().map(key).collect();
        let mut previous: BTreeSet<_> = BTreeSet::new();
        for profile in [
            LintProfile::Stage1,
            LintProfile::Stage2,
            LintProfile::Stage3,
            LintProfile::Full,
        ] {
            let current: BTreeSet<_> = lint(&doc, profile).iter().map(key).collect();
            prop_assert!(
                previous.is_subset(&current),
                "a later adoption stage dropped diagnostics of an earlier one ({profile:?})"
            );
            prop_assert!(current.is_subset(&full));
            previous = current;
        }
    }

    #[test]
    fn masked_notation_never_covers_more_concerns(doc in document()) {
        let plain = concern_coverage(&doc, NotationProfile::Standard);
        let annotated = concern_coverage(&doc, NotationProfile::Radai);
        for concern in Concern10::ALL {
            prop_assert!(
                plain.status_of(*concern) <= annotated.status_of(*concern),
                "{} is better covered without the notation",
                concern.as_token()
            );
        }
    }

    #[test]
    fn every_report_is_a_pure_function_of_the_document(doc in document()) {
        prop_assert_eq!(
            format!("{:?}", lint(&doc, LintProfile::Full)),
            format!("{:?}", lint(&doc, LintProfile::Full))
        );
        prop_assert_eq!(
            format!("{:?}", score_document(&doc)),
            format!("{:?}", score_document(&doc))
        );
        prop_assert_eq!(
            format!("{:?}", concern_coverage(&doc, NotationProfile::Radai)),
            format!("{:?}", concern_coverage(&doc, NotationProfile::Radai))
        );
        for view in DiagramView::ALL {
            for format in DiagramFormat::ALL {
                let req = DiagramRequest {
                    view,
                    format,
                    include_risk_labels: true,
                };
                prop_assert_eq!(emit(&doc, &req), emit(&doc, &req));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Graph analyses against brute-force oracles
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 512,
        ..ProptestConfig::default()
    })]

    #[test]
    fn impact_matches_transitive_closure(
        (n, edges) in digraph(12),
        det in prop::collection::vec(any::<bool>(), 12)
    ) {
        let doc = graph_document(n, &edges, &det);
        let graph = LineageGraph::from_document(&doc);

        // Floyd–Warshall boolean closure: reach[i][j] ⇔ a path of at least
        // one edge leads from i to j.
        let mut reach = vec![vec![false; n]; n];
        for &(a, b) in &edges {
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }

        for i in 0..n {
            let start = id(&format!("n{i}"));
            let got = graph.impact(&start).expect("every node is declared");
            let want: BTreeSet<Identifier> = (0..n)
                .filter(|&j| reach[i][j])
                .map(|j| id(&format!("n{j}")))
                .collect();
            prop_assert_eq!(&got, &want, "impact set of n{} diverges from the closure row", i);
        }

        // Kahn's algorithm: the graph is acyclic exactly when every node can
        // be peeled off in dependency order.
        let mut indegree = vec![0usize; n];
        for &(_, b) in &edges {
            indegree[b] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut peeled = 0usize;
        while let Some(v) = queue.pop() {
            peeled += 1;
            for &(a, b) in &edges {
                if a == v {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        queue.push(b);
                    }
                }
            }
        }
        let report = graph.cycles();
        prop_assert_eq!(
            report.cycles.is_empty(),
            peeled == n,
            "cycle detection disagrees with the topological sort"
        );

        // Each reported cycle must actually be one.
        for cycle in &report.cycles {
            for (step, from) in cycle.iter().enumerate() {
                let to = &cycle[(step + 1) % cycle.len()];
                prop_assert!(graph.has_edge(from, to), "reported cycle skips a missing edge");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Agreement statistics
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1024,
        ..ProptestConfig::default()
    })]

    #[test]
    fn kappa_stays_within_bounds(m in rater_matrix()) {
        let outcome = fleiss_kappa(&m);
        prop_assert!(outcome.value.is_finite());
        prop_assert!(
            (-1.0 - 1e-9..=1.0 + 1e-9).contains(&outcome.value),
            "kappa {} escaped [-1, 1]",
            outcome.value
        );
        if outcome.degenerate {
            prop_assert_eq!(outcome.value, 1.0);
        }
    }
}
