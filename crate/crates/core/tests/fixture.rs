//! End-to-end checks against the urban-mobility fixture document under
//! `fixtures/mobility/`: it parses, resolves, lints clean, and produces the
//! reference compliance, concern and lineage results the documentation
//! advertises.

use std::fs;
use std::path::PathBuf;

use radai_core::model::Stereotype;
use radai_core::{
    concern_coverage, emit, emit_lineage_overlay, entity_index, lint, merge_documents, parse,
    resolve_links, score_document, Concern10, ConcernStatus, DiagramFormat, DiagramRequest,
    DiagramView, Document, EntityKind, Identifier, LineageGraph, LintProfile, NotationProfile,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/mobility")
}

/// Loads every fixture file in lexicographic order and merges them into the
/// one mobility document.
fn mobility() -> Document {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .expect("fixture directory exists")
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "radl"))
        .collect();
    paths.sort();
    assert_eq!(paths.len(), 12, "fixture file count");

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
}

fn id(s: &str) -> Identifier {
    s.parse().unwrap()
}

#[test]
fn fixture_lints_clean_under_the_full_profile() {
    let doc = mobility();
    let diagnostics = lint(&doc, LintProfile::Full);
    assert!(
        diagnostics.is_empty(),
        "expected a clean fixture, got: {diagnostics:#?}"
    );
}

#[test]
fn fixture_inventory_matches_the_documented_shape() {
    let doc = mobility();
    assert_eq!(doc.project_id(), "urban-mobility");
    assert_eq!(doc.sections.len(), 12);
    assert_eq!(doc.elements.len(), 6);
    assert_eq!(doc.lineage_edges.len(), 8);
    assert_eq!(doc.boundaries.len(), 2);
    assert_eq!(doc.models.len(), 2);
    assert_eq!(doc.stages.len(), 4);
    assert_eq!(doc.concern_matrix.len(), 10);
    assert_eq!(doc.adrs.len(), 2);
    assert_eq!(doc.scenarios.len(), 2);
    assert_eq!(doc.debts.len(), 2);
    assert!(doc.ops_view.is_some());
    assert_eq!(doc.attachments.len(), 3);

    let index = entity_index(&doc);
    match index.get(&id("federated-feature-store")) {
        Some(EntityKind::Element(Some(Stereotype::FeatureStore))) => {}
        other => panic!("federated-feature-store resolves to {other:?}"),
    }
}

#[test]
fn fixture_compliance_score_is_nineteen_of_twenty() {
    let doc = mobility();
    let score = score_document(&doc);
    let per_category: Vec<u8> = score.categories.iter().map(|c| c.score).collect();
    assert_eq!(per_category, [2, 2, 2, 2, 1, 2, 2, 2, 2, 2]);
    assert_eq!(score.total, 19);
    assert_eq!(score.percent, 95);
    // The one lost point: no supplementary training-procedure attachment.
    assert_eq!(
        score.categories[4].missing,
        vec!["attach:supplementary_training".to_string()]
    );
}

#[test]
fn fixture_concern_coverage_separates_the_two_profiles() {
    let doc = mobility();

    let radai = concern_coverage(&doc, NotationProfile::Radai);
    let counts = radai.counts();
    assert_eq!((counts.full, counts.partial, counts.none), (8, 2, 0));
    assert_eq!(
        radai.status_of(Concern10::AbCanaryDeployment),
        ConcernStatus::Partial
    );
    assert_eq!(
        radai.status_of(Concern10::ResponsibleAi),
        ConcernStatus::Partial
    );

    let standard = concern_coverage(&doc, NotationProfile::Standard);
    let counts = standard.counts();
    assert_eq!((counts.full, counts.partial, counts.none), (0, 2, 8));
    assert_eq!(
        standard.status_of(Concern10::PipelineQualityGates),
        ConcernStatus::Partial
    );
    assert_eq!(
        standard.status_of(Concern10::DataLineage),
        ConcernStatus::Partial
    );
}

#[test]
fn fixture_lineage_supports_the_drift_cascade_analysis() {
    let doc = mobility();
    let graph = LineageGraph::from_document(&doc);

    // The feature store fans out to all three consumers of its features.
    for downstream in ["demand-prediction", "anomaly-detection", "drift-monitor"] {
        assert!(
            graph.has_edge(&id("federated-feature-store"), &id(downstream)),
            "missing edge to {downstream}"
        );
    }
    assert!(graph.has_edge(&id("demand-prediction"), &id("route-optimization")));
    assert!(graph.has_edge(&id("anomaly-detection"), &id("route-optimization")));

    // Degraded anomaly flags cascade straight into route planning.
    let impact = graph.impact(&id("anomaly-detection")).expect("known node");
    let reached: Vec<&str> = impact.iter().map(|i| i.as_str()).collect();
    assert_eq!(reached, ["route-optimization"]);

    let mut crossings = graph.boundary_crossings();
    crossings.sort();
    let pairs: Vec<(&str, &str)> = crossings
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    assert_eq!(
        pairs,
        [
            ("operator-dashboard", "federated-feature-store"),
            ("operator-dashboard", "route-optimization"),
        ]
    );

    let cycles = graph.cycles();
    assert!(!cycles.truncated);
    assert!(cycles.cycles.is_empty(), "cycles: {:?}", cycles.cycles);
}

#[test]
fn removing_either_contract_produces_exactly_one_uncovered_crossing() {
    let full = mobility();
    for drop in ["store-override", "route-override"] {
        let mut doc = full.clone();
        doc.boundaries.retain(|b| b.interface_id.as_str() != drop);
        let complaints: Vec<_> = lint(&doc, LintProfile::Full)
            .into_iter()
            .filter(|d| d.rule == "E1-001")
            .collect();
        assert_eq!(complaints.len(), 1, "dropping {drop}: {complaints:#?}");
    }
}

#[test]
fn fixture_boundary_diagram_places_every_component() {
    let doc = mobility();
    let puml = emit(
        &doc,
        &DiagramRequest {
            view: DiagramView::Boundary,
            format: DiagramFormat::Puml,
            include_risk_labels: true,
        },
    );

    let det = puml.find("package \"deterministic\"").unwrap();
    let nondet = puml.find("package \"non-deterministic\"").unwrap();
    assert!(det < nondet);
    let in_nondet = |id: &str| puml.find(&format!("as \"{id}\"")).unwrap() > nondet;
    for stereotyped in [
        "federated-feature-store",
        "demand-prediction",
        "route-optimization",
        "anomaly-detection",
        "drift-monitor",
    ] {
        assert!(in_nondet(stereotyped), "{stereotyped} region");
    }
    let dashboard = puml.find("as \"operator-dashboard\"").unwrap();
    assert!(det < dashboard && dashboard < nondet);
    assert!(puml.contains("\u{ab}ML Model\u{bb} Anomaly Detection [high-risk]"));
    assert_eq!(puml.matches("[high-risk]").count(), 1);
}

#[test]
fn fixture_lineage_diagram_has_exactly_eight_edges() {
    let doc = mobility();
    let puml = emit_lineage_overlay(&doc, DiagramFormat::Puml);
    assert_eq!(puml.matches("..>").count(), 8);
    assert!(puml.contains(
        "\"federated-feature-store\" ..> \"demand-prediction\" : \
         schema=demand-features-v2; fresh=PT1H; privacy=personal"
    ));

    let dot = emit_lineage_overlay(&doc, DiagramFormat::Dot);
    assert_eq!(dot.matches("style=dotted").count(), 8);
}
