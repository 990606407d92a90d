//! Deterministic diagram text generation.
//!
//! Four views over one document, each emitted as PlantUML or Graphviz dot
//! text with identical content across the two formats:
//!
//! * **context** — every element plus one arrow per boundary contract,
//!   showing who consumes which AI interface;
//! * **component** — every element plus the raw data-flow wiring as solid
//!   arrows;
//! * **lineage** — the data-lineage overlay: dotted arrows annotated with
//!   schema, freshness and privacy notes where declared;
//! * **boundary** — elements grouped into a deterministic and a
//!   non-deterministic region, region contracts printed as notes, and the
//!   boundary-contract arrows that cross between the regions.
//!
//! Output is a pure function of the document and request: entities are
//! sorted (elements and notes by id, edges by endpoints and annotations,
//! contracts by interface id), so emission is byte-stable across runs and
//! machines. Layout is left entirely to the downstream renderer.

use crate::model::{BoundaryContract, DiagramElement, Document, LineageEdge};

/// Which view of the document to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramView {
    Context,
    Component,
    Lineage,
    Boundary,
}

impl DiagramView {
    pub const ALL: [DiagramView; 4] = [
        DiagramView::Context,
        DiagramView::Component,
        DiagramView::Lineage,
        DiagramView::Boundary,
    ];

    pub fn as_token(self) -> &'static str {
        match self {
            DiagramView::Context => "context",
            DiagramView::Component => "component",
            DiagramView::Lineage => "lineage",
            DiagramView::Boundary => "boundary",
        }
    }
}

impl std::str::FromStr for DiagramView {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiagramView::ALL
            .iter()
            .copied()
            .find(|v| v.as_token() == s)
            .ok_or_else(|| {
                format!("unknown diagram view `{s}`: expected context, component, lineage or boundary")
            })
    }
}

/// Output syntax.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Puml,
    Dot,
}

impl DiagramFormat {
    pub const ALL: [DiagramFormat; 2] = [DiagramFormat::Puml, DiagramFormat::Dot];

    pub fn as_token(self) -> &'static str {
        match self {
            DiagramFormat::Puml => "puml",
            DiagramFormat::Dot => "dot",
        }
    }
}

impl std::str::FromStr for DiagramFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiagramFormat::ALL
            .iter()
            .copied()
            .find(|f| f.as_token() == s)
            .ok_or_else(|| format!("unknown diagram format `{s}`: expected puml or dot"))
    }
}

/// One rendering request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramRequest {
    pub view: DiagramView,
    pub format: DiagramFormat,
    pub include_risk_labels: bool,
}

/// Renders one view of a resolved document as diagram text.
pub fn emit(doc: &Document, req: &DiagramRequest) -> String {
    let mut w = Writer::new(req.format);
    w.header();
    match req.view {
        DiagramView::Context => {
            w.elements(doc, req.include_risk_labels);
            w.contract_edges(doc);
        }
        DiagramView::Component => {
            w.elements(doc, req.include_risk_labels);
            w.stage_nodes(doc);
            w.lineage_edges(doc, false);
        }
        DiagramView::Lineage => {
            w.elements(doc, req.include_risk_labels);
            w.stage_nodes(doc);
            w.lineage_edges(doc, true);
        }
        DiagramView::Boundary => {
            w.regions(doc, req.include_risk_labels);
            w.region_notes(doc);
            w.contract_edges(doc);
        }
    }
    w.footer();
    w.out
}

/// Renders the data-lineage overlay: shorthand for the lineage view.
pub fn emit_lineage_overlay(doc: &Document, format: DiagramFormat) -> String {
    emit(
        doc,
        &DiagramRequest {
            view: DiagramView::Lineage,
            format,
            include_risk_labels: false,
        },
    )
}

/// Display label of an element: guillemet stereotype, name, optional risk
/// suffix such as `[high-risk]`.
fn label(e: &DiagramElement, include_risk: bool) -> String {
    let mut label = String::new();
    if let Some(st) = e.stereotype {
        label.push('\u{ab}');
        label.push_str(st.display_name());
        label.push('\u{bb}');
        label.push(' ');
    }
    label.push_str(&e.name);
    if include_risk {
        if let Some(risk) = e.risk_class {
            label.push_str(" [");
            label.push_str(&risk.as_token().replace('_', "-"));
            label.push(']');
        }
    }
    label
}

/// Annotation string of a lineage edge: the present fields joined as
/// `schema=…; fresh=…; privacy=…`.
fn edge_annotation(e: &LineageEdge) -> String {
    let mut parts = Vec::new();
    if let Some(s) = &e.schema_note {
        parts.push(format!("schema={s}"));
    }
    if let Some(f) = &e.freshness {
        parts.push(format!("fresh={f}"));
    }
    if let Some(p) = &e.privacy_class {
        parts.push(format!("privacy={}", p.as_token()));
    }
    parts.join("; ")
}

fn sorted_elements(doc: &Document) -> Vec<&DiagramElement> {
    let mut elements: Vec<&DiagramElement> = doc.elements.iter().collect();
    elements.sort_by(|a, b| a.element_id.cmp(&b.element_id));
    elements
}

fn sorted_edges(doc: &Document) -> Vec<&LineageEdge> {
    let mut edges: Vec<&LineageEdge> = doc.lineage_edges.iter().collect();
    edges.sort_by_key(|e| {
        (
            e.from.clone(),
            e.to.clone(),
            e.schema_note.clone(),
            e.freshness.map(|f| f.seconds()),
            e.privacy_class.map(|p| p.as_token()),
        )
    });
    edges
}

fn sorted_contracts(doc: &Document) -> Vec<&BoundaryContract> {
    let mut contracts: Vec<&BoundaryContract> = doc.boundaries.iter().collect();
    contracts.sort_by(|a, b| a.interface_id.cmp(&b.interface_id));
    contracts
}

/// Format-specific line emitter; content decisions live in [`emit`].
struct Writer {
    format: DiagramFormat,
    out: String,
}

impl Writer {
    fn new(format: DiagramFormat) -> Writer {
        Writer {
            format,
            out: String::new(),
        }
    }

    fn line(&mut self, indent: usize, text: &str) {
        for _ in 0..indent {
            self.out.push_str("  ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn header(&mut self) {
        match self.format {
            DiagramFormat::Puml => {
                self.line(0, "' generated by radai (radl 1)");
                self.line(0, "@startuml");
            }
            DiagramFormat::Dot => {
                self.line(0, "// generated by radai (radl 1)");
                self.line(0, "digraph radai {");
            }
        }
    }

    fn footer(&mut self) {
        match self.format {
            DiagramFormat::Puml => self.line(0, "@enduml"),
            DiagramFormat::Dot => self.line(0, "}"),
        }
    }

    fn node(&mut self, indent: usize, id: &str, label: &str, boxed: bool) {
        match self.format {
            DiagramFormat::Puml => {
                let kind = if boxed { "rectangle" } else { "component" };
                self.line(indent, &format!("{kind} \"{label}\" as \"{id}\""));
            }
            DiagramFormat::Dot => {
                let shape = if boxed { ", shape=box" } else { "" };
                self.line(indent, &format!("\"{id}\" [label=\"{label}\"{shape}];"));
            }
        }
    }

    fn edge(&mut self, from: &str, to: &str, label: &str, dotted: bool) {
        match self.format {
            DiagramFormat::Puml => {
                let arrow = if dotted { "..>" } else { "-->" };
                if label.is_empty() {
                    self.line(0, &format!("\"{from}\" {arrow} \"{to}\""));
                } else {
                    self.line(0, &format!("\"{from}\" {arrow} \"{to}\" : {label}"));
                }
            }
            DiagramFormat::Dot => {
                let mut attrs = Vec::new();
                if dotted {
                    attrs.push("style=dotted".to_string());
                }
                if !label.is_empty() {
                    attrs.push(format!("label=\"{label}\""));
                }
                if attrs.is_empty() {
                    self.line(1, &format!("\"{from}\" -> \"{to}\";"));
                } else {
                    self.line(1, &format!("\"{from}\" -> \"{to}\" [{}];", attrs.join(", ")));
                }
            }
        }
    }

    fn elements(&mut self, doc: &Document, include_risk: bool) {
        let indent = match self.format {
            DiagramFormat::Puml => 0,
            DiagramFormat::Dot => 1,
        };
        for e in sorted_elements(doc) {
            self.node(indent, e.element_id.as_str(), &label(e, include_risk), false);
        }
    }

    /// Pipeline stages referenced by lineage edges, drawn as plain boxes so
    /// every edge endpoint is declared.
    fn stage_nodes(&mut self, doc: &Document) {
        let indent = match self.format {
            DiagramFormat::Puml => 0,
            DiagramFormat::Dot => 1,
        };
        let mut stage_ids: Vec<&str> = doc
            .stages
            .iter()
            .map(|s| s.stage_id.as_str())
            .filter(|id| {
                doc.lineage_edges
                    .iter()
                    .any(|e| e.from.as_str() == *id || e.to.as_str() == *id)
            })
            .collect();
        stage_ids.sort_unstable();
        stage_ids.dedup();
        for id in stage_ids {
            self.node(indent, id, id, true);
        }
    }

    fn lineage_edges(&mut self, doc: &Document, annotated: bool) {
        for e in sorted_edges(doc) {
            let annotation = if annotated {
                edge_annotation(e)
            } else {
                String::new()
            };
            self.edge(e.from.as_str(), e.to.as_str(), &annotation, annotated);
        }
    }

    fn contract_edges(&mut self, doc: &Document) {
        for b in sorted_contracts(doc) {
            self.edge(
                b.consumer.as_str(),
                b.provider.as_str(),
                b.interface_id.as_str(),
                false,
            );
        }
    }

    /// The two determinism regions; a region is omitted when empty.
    fn regions(&mut self, doc: &Document, include_risk: bool) {
        let elements = sorted_elements(doc);
        for (region, deterministic) in [("deterministic", true), ("non-deterministic", false)] {
            let members: Vec<&&DiagramElement> = elements
                .iter()
                .filter(|e| e.deterministic == deterministic)
                .collect();
            if members.is_empty() {
                continue;
            }
            match self.format {
                DiagramFormat::Puml => {
                    self.line(0, &format!("package \"{region}\" {{"));
                    for e in members {
                        self.node(1, e.element_id.as_str(), &label(e, include_risk), false);
                    }
                    self.line(0, "}");
                }
                DiagramFormat::Dot => {
                    let cluster = region.replace('-', "_");
                    self.line(1, &format!("subgraph cluster_{cluster} {{"));
                    self.line(2, &format!("label=\"{region}\";"));
                    for e in members {
                        self.node(2, e.element_id.as_str(), &label(e, include_risk), false);
                    }
                    self.line(1, "}");
                }
            }
        }
    }

    /// One note per declared region contract, attached to its element.
    fn region_notes(&mut self, doc: &Document) {
        for e in sorted_elements(doc) {
            let Some(rc) = &e.region_contract else { continue };
            let mut lines = Vec::new();
            if let Some(c) = &rc.confidence {
                lines.push(format!("confidence: {c}"));
            }
            if let Some(f) = &rc.fallback {
                lines.push(format!("fallback: {f}"));
            }
            if let Some(d) = &rc.degradation {
                lines.push(format!("degradation: {d}"));
            }
            if lines.is_empty() {
                continue;
            }
            let id = e.element_id.as_str();
            match self.format {
                DiagramFormat::Puml => {
                    self.line(0, &format!("note right of \"{id}\""));
                    for l in &lines {
                        self.line(1, l);
                    }
                    self.line(0, "end note");
                }
                DiagramFormat::Dot => {
                    self.line(
                        1,
                        &format!("\"{id}__contract\" [shape=note, label=\"{}\"];", lines.join("\\n")),
                    );
                    self.line(
                        1,
                        &format!("\"{id}__contract\" -> \"{id}\" [style=dashed, arrowhead=none];"),
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::resolve_links;
    use crate::radl::parse;

    fn doc(source: &str) -> Document {
        resolve_links(parse(source, "diagram.radl").expect("parses")).expect("resolves")
    }

    fn sample() -> Document {
        doc(concat!(
            "[c4.element \"dashboard\"]\nname = \"Dashboard\"\ndeterministic = true\n",
            "[c4.element \"scorer\"]\nname = \"Scorer\"\nstereotype = ml_model\n",
            "deterministic = false\nrisk_class = high_risk\n",
            "region_confidence = \"f1 >= 0.9\"\nregion_fallback = \"rules\"\n",
            "region_degradation = \"flag results\"\n",
            "[c4.element \"store\"]\nname = \"Store\"\nstereotype = feature_store\ndeterministic = false\n",
            "[c4.lineage]\nfrom = store\nto = scorer\nprivacy = personal\nfreshness = PT4H\n",
            "[c4.lineage]\nfrom = scorer\nto = dashboard\nschema = \"scores-v2\"\n",
            "[e1.boundary \"scores\"]\nconsumer = dashboard\nprovider = scorer\n",
            "output_type = categorical\nconfidence = \"f1 >= 0.9\"\n",
            "update_frequency = P1D\nfallback = rule_based_default\n",
            "[e4.cell]\ncomponent = scorer\nconcern = fairness\nmethod = \"audit\"\n",
            "monitoring_frequency = P30D\nowner = \"gov\"\n",
        ))
    }

    #[test]
    fn empty_document_gives_bare_skeletons() {
        let empty = Document::default();
        for view in DiagramView::ALL {
            let puml = emit(
                &empty,
                &DiagramRequest {
                    view,
                    format: DiagramFormat::Puml,
                    include_risk_labels: true,
                },
            );
            assert_eq!(puml, "' generated by radai (radl 1)\n@startuml\n@enduml\n");
            let dot = emit(
                &empty,
                &DiagramRequest {
                    view,
                    format: DiagramFormat::Dot,
                    include_risk_labels: true,
                },
            );
            assert_eq!(dot, "// generated by radai (radl 1)\ndigraph radai {\n}\n");
        }
    }

    #[test]
    fn emission_is_deterministic_and_puml_is_balanced() {
        let d = sample();
        for view in DiagramView::ALL {
            for format in DiagramFormat::ALL {
                let req = DiagramRequest {
                    view,
                    format,
                    include_risk_labels: true,
                };
                let once = emit(&d, &req);
                assert_eq!(once, emit(&d, &req));
                if format == DiagramFormat::Puml {
                    assert_eq!(once.matches("@startuml").count(), 1);
                    assert_eq!(once.matches("@enduml").count(), 1);
                }
            }
        }
    }

    #[test]
    fn every_element_is_declared_exactly_once_in_sorted_order() {
        let d = sample();
        for view in DiagramView::ALL {
            let puml = emit(
                &d,
                &DiagramRequest {
                    view,
                    format: DiagramFormat::Puml,
                    include_risk_labels: false,
                },
            );
            for id in ["dashboard", "scorer", "store"] {
                assert_eq!(
                    puml.matches(&format!("as \"{id}\"")).count(),
                    1,
                    "{id} in {view:?}"
                );
            }
            let dash = puml.find("as \"dashboard\"").unwrap();
            let scorer = puml.find("as \"scorer\"").unwrap();
            let store = puml.find("as \"store\"").unwrap();
            if view != DiagramView::Boundary {
                assert!(dash < scorer && scorer < store);
            }
        }
    }

    #[test]
    fn lineage_view_renders_dotted_annotated_edges() {
        let puml = emit_lineage_overlay(&sample(), DiagramFormat::Puml);
        assert!(puml.contains("\"store\" ..> \"scorer\" : fresh=PT4H; privacy=personal"));
        assert!(puml.contains("\"scorer\" ..> \"dashboard\" : schema=scores-v2"));
        assert_eq!(puml.matches("..>").count(), 2);

        let dot = emit_lineage_overlay(&sample(), DiagramFormat::Dot);
        assert!(dot.contains(
            "\"store\" -> \"scorer\" [style=dotted, label=\"fresh=PT4H; privacy=personal\"];"
        ));
        assert_eq!(dot.matches("style=dotted").count(), 2);
    }

    #[test]
    fn boundary_view_groups_by_determinism_and_labels_risk() {
        let d = sample();
        let puml = emit(
            &d,
            &DiagramRequest {
                view: DiagramView::Boundary,
                format: DiagramFormat::Puml,
                include_risk_labels: true,
            },
        );
        let det = puml.find("package \"deterministic\"").unwrap();
        let nondet = puml.find("package \"non-deterministic\"").unwrap();
        assert!(det < puml.find("as \"dashboard\"").unwrap());
        assert!(nondet < puml.find("as \"scorer\"").unwrap());
        assert!(puml.contains("\u{ab}ML Model\u{bb} Scorer [high-risk]"));
        assert!(puml.contains("note right of \"scorer\""));
        assert!(puml.contains("fallback: rules"));
        assert!(puml.contains("\"dashboard\" --> \"scorer\" : scores"));

        let unlabeled = emit(
            &d,
            &DiagramRequest {
                view: DiagramView::Boundary,
                format: DiagramFormat::Puml,
                include_risk_labels: false,
            },
        );
        assert!(!unlabeled.contains("[high-risk]"));
    }

    #[test]
    fn dot_output_mirrors_puml_content() {
        let d = sample();
        for view in DiagramView::ALL {
            let puml = emit(
                &d,
                &DiagramRequest {
                    view,
                    format: DiagramFormat::Puml,
                    include_risk_labels: true,
                },
            );
            let dot = emit(
                &d,
                &DiagramRequest {
                    view,
                    format: DiagramFormat::Dot,
                    include_risk_labels: true,
                },
            );
            let puml_edges = puml.matches("-->").count() + puml.matches("..>").count();
            let dot_edges = dot
                .lines()
                .filter(|l| l.contains(" -> ") && !l.contains("arrowhead=none"))
                .count();
            assert_eq!(puml_edges, dot_edges, "{view:?}");
            for id in ["dashboard", "scorer", "store"] {
                assert!(dot.contains(&format!("\"{id}\" [label=")), "{id} in {view:?}");
            }
        }
    }

    #[test]
    fn stage_endpoints_are_declared_in_lineage_views() {
        let d = doc(concat!(
            "[c4.element \"sink\"]\nname = \"Sink\"\ndeterministic = false\n",
            "[e3.pipeline \"p\"]\n",
            "[e3.stage \"train\"]\npipeline = p\nkind = training\nseq = 1\n",
            "gates = [\"schema -> halt\"]\n",
            "[c4.lineage]\nfrom = train\nto = sink\n",
        ));
        let puml = emit_lineage_overlay(&d, DiagramFormat::Puml);
        assert!(puml.contains("rectangle \"train\" as \"train\""));
        let dot = emit_lineage_overlay(&d, DiagramFormat::Dot);
        assert!(dot.contains("\"train\" [label=\"train\", shape=box];"));
    }
}
