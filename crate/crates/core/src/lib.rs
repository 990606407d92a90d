//! Core library of the `radai` toolchain: a typed document model for
//! AI-augmented architecture documentation, the RADL text format that
//! stores it, reference resolution, lint rules with adoption-stage
//! profiles, lineage-graph analysis, compliance scoring and diagram
//! rendering.
//!
//! The usual flow is parse → resolve → lint:
//!
//! ```
//! use radai_core::{lint, parse, resolve_links, LintProfile, Severity};
//!
//! let source = r#"
//! ## radl 1
//!
//! [c4.element "scorer"]
//! name = "Risk Scorer"
//! stereotype = ml_model
//! deterministic = false
//!
//! [e4.cell]
//! component = scorer
//! concern = fairness
//! method = "quarterly cohort audit"
//! monitoring_frequency = P90D
//! owner = "governance board"
//! "#;
//!
//! let doc = parse(source, "demo.radl").expect("well-formed text");
//! let doc = resolve_links(doc).expect("every reference points at a declared entity");
//! let diagnostics = lint(&doc, LintProfile::Full);
//! // The fairness concern is covered, but the other four are still open.
//! assert!(diagnostics.iter().all(|d| d.severity == Severity::Warning));
//! ```

pub mod compliance;
pub mod confidence;
pub mod diag;
pub mod diagram;
pub mod ident;
pub mod lineage;
pub mod lint;
pub mod model;
pub mod radl;
pub mod span;
pub mod value;

pub use compliance::{
    aggregate_raters, concern_coverage, fleiss_kappa, score_document, score_profile,
    AnnexCategory, ArtifactKind, CategoryScore, ComplianceScore, Concern10, ConcernCounts,
    ConcernEntry, ConcernReport, ConcernStatus, FrameworkProfile, InvalidRaterMatrix,
    KappaOutcome, NotationProfile, RaterMatrix, RaterSummary, ScoreMode, ANNEX_CATEGORIES,
    CATEGORY_COUNT,
};
pub use confidence::{parse_confidence, Comparator, ConfidenceError, ConfidenceSpec};
pub use diag::{sort_diagnostics, Diagnostic, Severity};
pub use diagram::{emit, emit_lineage_overlay, DiagramFormat, DiagramRequest, DiagramView};
pub use ident::{Identifier, InvalidIdentifier};
pub use lineage::{CycleReport, LineageGraph, MAX_CYCLES};
pub use lint::{all_rules, explain, lint, rule_info, AdoptionStage, LintProfile, RuleInfo};
pub use model::{entity_index, merge_documents, resolve_links};
pub use model::{Document, EntityKind};
pub use radl::{parse, serialize, ParseError};
pub use span::{NodeSpan, SourceSpan};
pub use value::{DurationSpec, InvalidDuration, Value};
