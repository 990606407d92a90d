//! The document model: typed entities describing an AI-augmented software
//! ecosystem (boundary contracts, model registry, pipelines, concern matrix,
//! decision records, quality scenarios, debt register, operational view,
//! diagram elements, lineage edges and attachments), plus the [`Document`]
//! that aggregates them.
//!
//! Construction is strict about vocabularies — every enum field rejects
//! out-of-vocabulary tokens — while *content gaps* (a contract missing its
//! fallback, an accepted decision record without its rationale fields) are
//! representable on purpose: they are the linter's business, not the
//! parser's.

mod resolve;

pub use resolve::{entity_index, merge_documents, resolve_links, EntityKind};
pub(crate) use resolve::{duplicate_diagnostics, reference_diagnostics};

use chrono::NaiveDate;

use crate::confidence::ConfidenceSpec;
use crate::ident::Identifier;
use crate::span::NodeSpan;
use crate::value::{DurationSpec, Value};

/// Unknown `key = value` entries preserved verbatim from a block. They are
/// not interpreted, survive canonical serialization, and surface as linter
/// warnings (X-003).
pub type Extras = Vec<(String, Value)>;

/// Error for an out-of-vocabulary enum token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {what} `{token}`: expected one of {expected}")]
pub struct UnknownToken {
    pub what: &'static str,
    pub token: String,
    pub expected: &'static str,
}

/// Defines a closed token vocabulary: `as_token`, `from_token`, `Display`
/// and an `ALL` listing, keeping the wire spelling next to the variant.
macro_rules! token_enum {
    ($(#[$meta:meta])* $name:ident, $what:literal, { $($variant:ident => $token:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_token(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }

            pub fn from_token(token: &str) -> Result<Self, UnknownToken> {
                match token {
                    $($token => Ok($name::$variant),)+
                    _ => Err(UnknownToken {
                        what: $what,
                        token: token.to_string(),
                        expected: concat!($("`", $token, "` "),+),
                    }),
                }
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.as_token())
            }
        }

        impl serde::Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_token())
            }
        }
    };
}

token_enum!(
    /// What kind of output an AI component hands across a boundary.
    OutputType, "output type", {
        Categorical => "categorical",
        Continuous => "continuous",
        Generative => "generative",
    }
);

token_enum!(
    /// What consumers do when the AI side cannot meet its contract.
    FallbackBehavior, "fallback behavior", {
        RuleBasedDefault => "rule_based_default",
        CachedLastKnownGood => "cached_last_known_good",
        HumanEscalation => "human_escalation",
    }
);

token_enum!(
    /// Rollout state of a registered model.
    ModelStatus, "model status", {
        Shadow => "shadow",
        Canary => "canary",
        Production => "production",
    }
);

token_enum!(
    /// The processing role a pipeline stage plays.
    StageKind, "stage kind", {
        Collection => "collection",
        Preprocessing => "preprocessing",
        FeatureEngineering => "feature_engineering",
        Training => "training",
        Inference => "inference",
        Feedback => "feedback",
    }
);

token_enum!(
    /// What property a quality gate verifies.
    GateCheck, "gate check", {
        Schema => "schema",
        Distribution => "distribution",
        Completeness => "completeness",
    }
);

token_enum!(
    /// What happens when a quality gate fails.
    GateAction, "gate action", {
        Halt => "halt",
        AlertContinue => "alert_continue",
        ActivateFallback => "activate_fallback",
    }
);

token_enum!(
    /// Cross-cutting concern columns of the concern matrix.
    Concern, "concern", {
        Fairness => "fairness",
        Explainability => "explainability",
        HumanOversight => "human_oversight",
        Privacy => "privacy",
        Safety => "safety",
    }
);

token_enum!(
    /// Lifecycle state of a decision record.
    AdrStatus, "decision status", {
        Proposed => "proposed",
        Accepted => "accepted",
        Deprecated => "deprecated",
        Superseded => "superseded",
    }
);

token_enum!(
    /// Where a quality scenario plays out.
    ScenarioEnvironment, "scenario environment", {
        Training => "training",
        Serving => "serving",
        Monitoring => "monitoring",
    }
);

token_enum!(
    /// Category of an ML-specific technical debt entry.
    DebtCategory, "debt category", {
        BoundaryErosion => "boundary_erosion",
        Entanglement => "entanglement",
        HiddenFeedbackLoop => "hidden_feedback_loop",
        DataDependency => "data_dependency",
        PipelineDebt => "pipeline_debt",
    }
);

token_enum!(
    /// Severity of a debt entry.
    DebtSeverity, "debt severity", {
        Low => "low",
        Medium => "medium",
        High => "high",
    }
);

token_enum!(
    /// Workflow state of a debt entry.
    DebtStatus, "debt status", {
        Open => "open",
        InProgress => "in_progress",
        Resolved => "resolved",
    }
);

token_enum!(
    /// What causes a retraining run.
    RetrainingTrigger, "retraining trigger", {
        Scheduled => "scheduled",
        PerformanceBased => "performance_based",
        DriftBased => "drift_based",
    }
);

token_enum!(
    /// How automated the retraining loop is.
    AutomationLevel, "automation level", {
        Manual => "manual",
        SemiAutomated => "semi_automated",
        FullyAutomated => "fully_automated",
    }
);

token_enum!(
    /// How new model versions reach production traffic.
    DeploymentStrategy, "deployment strategy", {
        Canary => "canary",
        BlueGreen => "blue_green",
        Shadow => "shadow",
    }
);

token_enum!(
    /// AI-specific stereotype of a diagram element.
    Stereotype, "stereotype", {
        MlModel => "ml_model",
        DataPipeline => "data_pipeline",
        FeatureStore => "feature_store",
        Monitor => "monitor",
        HumanInTheLoop => "human_in_the_loop",
    }
);

token_enum!(
    /// Regulatory risk class of a diagram element.
    RiskClass, "risk class", {
        HighRisk => "high_risk",
        LimitedRisk => "limited_risk",
        MinimalRisk => "minimal_risk",
    }
);

token_enum!(
    /// Privacy classification of the data flowing along a lineage edge.
    PrivacyClass, "privacy class", {
        Public => "public",
        Internal => "internal",
        Personal => "personal",
        Sensitive => "sensitive",
    }
);

impl Stereotype {
    /// Guillemet label used in rendered diagrams.
    pub fn display_name(self) -> &'static str {
        match self {
            Stereotype::MlModel => "ML Model",
            Stereotype::DataPipeline => "Data Pipeline",
            Stereotype::FeatureStore => "Feature Store",
            Stereotype::Monitor => "Monitor",
            Stereotype::HumanInTheLoop => "Human-in-the-Loop",
        }
    }
}

token_enum!(
    /// The twelve base template sections a document can mark as written.
    Arc42Section, "arc42 section", {
        IntroductionGoals => "introduction_goals",
        Constraints => "constraints",
        ContextScope => "context_scope",
        SolutionStrategy => "solution_strategy",
        BuildingBlockView => "building_block_view",
        RuntimeView => "runtime_view",
        DeploymentView => "deployment_view",
        CrosscuttingConcepts => "crosscutting_concepts",
        ArchitectureDecisions => "architecture_decisions",
        QualityRequirements => "quality_requirements",
        RisksTechnicalDebt => "risks_technical_debt",
        Glossary => "glossary",
    }
);

impl Arc42Section {
    /// Conventional 1..=12 section number.
    pub fn number(self) -> u8 {
        match self {
            Arc42Section::IntroductionGoals => 1,
            Arc42Section::Constraints => 2,
            Arc42Section::ContextScope => 3,
            Arc42Section::SolutionStrategy => 4,
            Arc42Section::BuildingBlockView => 5,
            Arc42Section::RuntimeView => 6,
            Arc42Section::DeploymentView => 7,
            Arc42Section::CrosscuttingConcepts => 8,
            Arc42Section::ArchitectureDecisions => 9,
            Arc42Section::QualityRequirements => 10,
            Arc42Section::RisksTechnicalDebt => 11,
            Arc42Section::Glossary => 12,
        }
    }
}

/// Sources a quality scenario can originate from. The three AI-specific
/// sources are closed tokens; anything else is free text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScenarioSource {
    DataDrift,
    ModelStaleness,
    AdversarialInput,
    Other(String),
}

impl ScenarioSource {
    pub fn from_token(token: &str) -> Result<Self, UnknownToken> {
        match token {
            "data_drift" => Ok(ScenarioSource::DataDrift),
            "model_staleness" => Ok(ScenarioSource::ModelStaleness),
            "adversarial_input" => Ok(ScenarioSource::AdversarialInput),
            _ => Err(UnknownToken {
                what: "scenario source",
                token: token.to_string(),
                expected: "`data_drift` `model_staleness` `adversarial_input` (or quoted text)",
            }),
        }
    }

    /// Closed-vocabulary token, or `None` for free-text sources.
    pub fn as_token(&self) -> Option<&'static str> {
        match self {
            ScenarioSource::DataDrift => Some("data_drift"),
            ScenarioSource::ModelStaleness => Some("model_staleness"),
            ScenarioSource::AdversarialInput => Some("adversarial_input"),
            ScenarioSource::Other(_) => None,
        }
    }
}

/// Kinds of supplementary artifacts a document can attach. The four common
/// kinds are closed tokens; anything else is free text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AttachmentKind {
    ModelCard,
    DataCard,
    Hyperparams,
    SupplementaryTraining,
    Other(String),
}

impl AttachmentKind {
    pub fn from_token(token: &str) -> Result<Self, UnknownToken> {
        match token {
            "model_card" => Ok(AttachmentKind::ModelCard),
            "data_card" => Ok(AttachmentKind::DataCard),
            "hyperparams" => Ok(AttachmentKind::Hyperparams),
            "supplementary_training" => Ok(AttachmentKind::SupplementaryTraining),
            _ => Err(UnknownToken {
                what: "attachment kind",
                token: token.to_string(),
                expected:
                    "`model_card` `data_card` `hyperparams` `supplementary_training` (or quoted text)",
            }),
        }
    }

    pub fn as_token(&self) -> Option<&'static str> {
        match self {
            AttachmentKind::ModelCard => Some("model_card"),
            AttachmentKind::DataCard => Some("data_card"),
            AttachmentKind::Hyperparams => Some("hyperparams"),
            AttachmentKind::SupplementaryTraining => Some("supplementary_training"),
            AttachmentKind::Other(_) => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Entities
// ---------------------------------------------------------------------------

/// Project header of a document.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaBlock {
    pub project_id: Identifier,
    pub title: Option<String>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// Marks one base template section as written.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionMarker {
    pub section: Arc42Section,
    pub title: Option<String>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// The four-part contract annotating an interface that crosses the
/// deterministic / non-deterministic partition. The four annotation parts
/// are optional here so that incomplete contracts parse and lint (E1-002)
/// instead of failing.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryContract {
    pub interface_id: Identifier,
    /// Deterministic-side endpoint.
    pub consumer: Identifier,
    /// Non-deterministic-side (AI) endpoint.
    pub provider: Identifier,
    pub output_type: Option<OutputType>,
    pub confidence: Option<ConfidenceSpec>,
    pub update_frequency: Option<DurationSpec>,
    pub fallback: Option<FallbackBehavior>,
    pub fallback_note: Option<String>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// One row of the model registry. Registry fields are optional so that
/// incomplete rows parse and lint (E2-001) instead of failing; the hash is
/// kept verbatim and its shape is checked by E2-002.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelEntry {
    pub model_id: Identifier,
    pub version: Option<String>,
    pub framework: Option<String>,
    pub dataset_hash: Option<String>,
    /// Lineage-graph node the training data came from.
    pub lineage_ref: Option<Identifier>,
    pub hyperparams_ref: Option<Identifier>,
    pub primary_metric: Option<ConfidenceSpec>,
    pub status: Option<ModelStatus>,
    pub owner: Option<String>,
    pub last_retrained: Option<NaiveDate>,
    pub model_card: Option<Identifier>,
    pub extra: Extras,
    pub span: NodeSpan,
}

impl ModelEntry {
    /// Whether `dataset_hash` is 8..=64 lowercase hex characters.
    pub fn dataset_hash_is_well_formed(&self) -> bool {
        match &self.dataset_hash {
            None => false,
            Some(h) => {
                (8..=64).contains(&h.len())
                    && h.chars().all(|c| c.is_ascii_digit() || ('a'..='f').contains(&c))
            }
        }
    }
}

/// A data pipeline. Its stages are declared as separate blocks and live
/// flat on the [`Document`]; use [`Document::stages_of`] for the ordered
/// view.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    pub pipeline_id: Identifier,
    pub data_cards: Vec<Identifier>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// A quality gate guarding a pipeline stage. All three fields are required
/// for a gate to be effective; missing ones are representable and fire
/// E3-002.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityGate {
    pub check: Option<GateCheck>,
    pub threshold: Option<ConfidenceSpec>,
    pub on_failure: Option<GateAction>,
}

impl QualityGate {
    pub fn is_complete(&self) -> bool {
        self.check.is_some() && self.threshold.is_some() && self.on_failure.is_some()
    }
}

/// One stage of a pipeline. `seq` orders stages within their pipeline
/// (ties break by stage id); `reads_from` / `writes_to` contribute edges to
/// the lineage graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineStage {
    pub stage_id: Identifier,
    pub pipeline: Identifier,
    pub kind: StageKind,
    pub seq: u32,
    pub gates: Vec<QualityGate>,
    pub reads_from: Vec<Identifier>,
    pub writes_to: Vec<Identifier>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// One cell of the concern matrix: how a given concern is addressed for a
/// given component. `(component, concern)` is unique per document.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcernCell {
    pub component: Identifier,
    pub concern: Concern,
    pub method: String,
    pub threshold: Option<ConfidenceSpec>,
    pub monitoring_frequency: DurationSpec,
    pub owner: String,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// An architecture decision record extended with the seven AI rationale
/// fields. The seven fields are optional while a record is in draft; an
/// accepted record must fill all of them (E5-001).
#[derive(Debug, Clone, PartialEq)]
pub struct AiAdr {
    pub adr_id: Identifier,
    pub title: String,
    pub status: AdrStatus,
    pub context: Option<String>,
    pub decision: Option<String>,
    pub consequences: Option<String>,
    pub model_alternatives: Vec<String>,
    pub dataset: Option<String>,
    pub fairness_bias: Option<String>,
    pub model_lifetime: Option<String>,
    pub retraining_trigger: Option<String>,
    pub explainability: Option<String>,
    pub regulatory: Option<String>,
    pub extra: Extras,
    pub span: NodeSpan,
}

impl AiAdr {
    /// The seven AI rationale fields as (name, present-and-nonempty).
    pub fn ai_fields(&self) -> [(&'static str, bool); 7] {
        let filled = |o: &Option<String>| o.as_deref().is_some_and(|s| !s.trim().is_empty());
        [
            ("model_alternatives", !self.model_alternatives.is_empty()),
            ("dataset", filled(&self.dataset)),
            ("fairness_bias", filled(&self.fairness_bias)),
            ("model_lifetime", filled(&self.model_lifetime)),
            ("retraining_trigger", filled(&self.retraining_trigger)),
            ("explainability", filled(&self.explainability)),
            ("regulatory", filled(&self.regulatory)),
        ]
    }
}

/// A quality scenario with an AI-specific stimulus source. The response
/// deadline is optional so its absence lints (E6-002) instead of failing.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityScenario {
    pub scenario_id: Identifier,
    pub source: ScenarioSource,
    pub stimulus: String,
    pub environment: ScenarioEnvironment,
    pub response: String,
    pub response_deadline: Option<DurationSpec>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// One entry of the ML-specific debt register.
#[derive(Debug, Clone, PartialEq)]
pub struct DebtEntry {
    pub debt_id: Identifier,
    pub category: DebtCategory,
    /// Blast radius: the affected diagram elements. Never empty.
    pub components: Vec<Identifier>,
    pub severity: DebtSeverity,
    pub effort: String,
    pub owner: String,
    pub status: DebtStatus,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// Per-model monitoring line of the operational view.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorEntry {
    pub model_id: Identifier,
    pub metrics: Vec<String>,
    pub alert_threshold: ConfidenceSpec,
}

/// Retraining policy subsection of the operational view.
#[derive(Debug, Clone, PartialEq)]
pub struct RetrainingPolicy {
    pub triggers: Vec<RetrainingTrigger>,
    pub automation: Option<AutomationLevel>,
    pub approval: Option<String>,
}

/// Share of traffic routed to one deployment label.
#[derive(Debug, Clone, PartialEq)]
pub struct TrafficSlice {
    pub label: String,
    pub percent: f64,
}

/// Deployment policy subsection of the operational view.
#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentPolicy {
    pub strategy: Option<DeploymentStrategy>,
    pub promotion_criteria: Option<String>,
    pub traffic_split: Option<Vec<TrafficSlice>>,
}

/// Rollback policy subsection of the operational view.
#[derive(Debug, Clone, PartialEq)]
pub struct RollbackPolicy {
    pub triggers: Option<String>,
    pub retention_depth: Option<u64>,
    pub downstream_note: Option<String>,
}

/// The operational view: monitoring, retraining, deployment and rollback.
/// All four subsections are required for the view to be complete; absent
/// or incomplete ones fire E8-001.
#[derive(Debug, Clone, PartialEq)]
pub struct OperationalAiView {
    pub monitoring: Option<Vec<MonitorEntry>>,
    pub retraining: Option<RetrainingPolicy>,
    pub deployment: Option<DeploymentPolicy>,
    pub rollback: Option<RollbackPolicy>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// The three-property contract a non-deterministic region advertises in
/// diagrams.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionContract {
    pub confidence: Option<ConfidenceSpec>,
    pub fallback: Option<String>,
    pub degradation: Option<String>,
}

impl RegionContract {
    pub fn is_complete(&self) -> bool {
        self.confidence.is_some() && self.fallback.is_some() && self.degradation.is_some()
    }
}

/// A box in the architecture diagram, optionally stereotyped, and assigned
/// to one side of the deterministic / non-deterministic partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramElement {
    pub element_id: Identifier,
    pub name: String,
    pub stereotype: Option<Stereotype>,
    pub deterministic: bool,
    pub risk_class: Option<RiskClass>,
    pub region_contract: Option<RegionContract>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// A data-flow edge of the lineage overlay. Endpoints name diagram
/// elements or pipeline stages; `from != to` always holds.
#[derive(Debug, Clone, PartialEq)]
pub struct LineageEdge {
    pub from: Identifier,
    pub to: Identifier,
    pub schema_note: Option<String>,
    pub freshness: Option<DurationSpec>,
    pub privacy_class: Option<PrivacyClass>,
    pub extra: Extras,
    pub span: NodeSpan,
}

/// A supplementary artifact (model card, data card, hyperparameter
/// snapshot, ...) other entities reference by id.
#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentRef {
    pub attach_id: Identifier,
    pub kind: AttachmentKind,
    pub uri: String,
    pub extra: Extras,
    pub span: NodeSpan,
}

// ---------------------------------------------------------------------------
// Document
// ---------------------------------------------------------------------------

/// One documented ecosystem: the root aggregate every operation works on.
///
/// A parsed document is *raw* until [`resolve_links`] has verified that all
/// identifier references land on declared entities and that identifiers are
/// unique; the linter and the scoring/diagram layers expect resolved input.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub meta: Option<MetaBlock>,
    pub sections: Vec<SectionMarker>,
    pub boundaries: Vec<BoundaryContract>,
    pub models: Vec<ModelEntry>,
    pub pipelines: Vec<Pipeline>,
    pub stages: Vec<PipelineStage>,
    pub concern_matrix: Vec<ConcernCell>,
    pub adrs: Vec<AiAdr>,
    pub scenarios: Vec<QualityScenario>,
    pub debts: Vec<DebtEntry>,
    pub ops_view: Option<OperationalAiView>,
    pub elements: Vec<DiagramElement>,
    pub lineage_edges: Vec<LineageEdge>,
    pub attachments: Vec<AttachmentRef>,
}

impl Document {
    /// Project identifier; `untitled` when no meta block was written.
    pub fn project_id(&self) -> &str {
        self.meta
            .as_ref()
            .map(|m| m.project_id.as_str())
            .unwrap_or("untitled")
    }

    /// Project title; empty when not set.
    pub fn title(&self) -> &str {
        self.meta
            .as_ref()
            .and_then(|m| m.title.as_deref())
            .unwrap_or("")
    }

    /// The set of base template sections marked as written.
    pub fn base_sections(&self) -> std::collections::BTreeSet<Arc42Section> {
        self.sections.iter().map(|s| s.section).collect()
    }

    pub fn has_section(&self, section: Arc42Section) -> bool {
        self.sections.iter().any(|s| s.section == section)
    }

    /// Stages of one pipeline, ordered by (seq, stage id).
    pub fn stages_of(&self, pipeline_id: &Identifier) -> Vec<&PipelineStage> {
        let mut stages: Vec<&PipelineStage> = self
            .stages
            .iter()
            .filter(|s| &s.pipeline == pipeline_id)
            .collect();
        stages.sort_by(|a, b| a.seq.cmp(&b.seq).then_with(|| a.stage_id.cmp(&b.stage_id)));
        stages
    }

    pub fn element(&self, id: &str) -> Option<&DiagramElement> {
        self.elements.iter().find(|e| e.element_id == *id)
    }

    pub fn is_empty(&self) -> bool {
        self == &Document::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enum_tokens_round_trip() {
        for v in Stereotype::ALL {
            assert_eq!(Stereotype::from_token(v.as_token()).unwrap(), *v);
        }
        for v in FallbackBehavior::ALL {
            assert_eq!(FallbackBehavior::from_token(v.as_token()).unwrap(), *v);
        }
        for v in Arc42Section::ALL {
            assert_eq!(Arc42Section::from_token(v.as_token()).unwrap(), *v);
        }
    }

    #[test]
    fn out_of_vocabulary_tokens_are_rejected() {
        let err = ModelStatus::from_token("retired").unwrap_err();
        assert_eq!(err.what, "model status");
        assert!(err.expected.contains("`production`"));
        assert!(GateAction::from_token("explode").is_err());
        assert!(ScenarioSource::from_token("boredom").is_err());
        assert!(AttachmentKind::from_token("poster").is_err());
    }

    #[test]
    fn section_numbers_cover_one_through_twelve() {
        let nums: Vec<u8> = Arc42Section::ALL.iter().map(|s| s.number()).collect();
        assert_eq!(nums, (1..=12).collect::<Vec<u8>>());
    }

    #[test]
    fn dataset_hash_shape_check() {
        let mut m = ModelEntry {
            model_id: "m".parse().unwrap(),
            version: None,
            framework: None,
            dataset_hash: Some("a1b2c3d4".into()),
            lineage_ref: None,
            hyperparams_ref: None,
            primary_metric: None,
            status: None,
            owner: None,
            last_retrained: None,
            model_card: None,
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        };
        assert!(m.dataset_hash_is_well_formed());
        m.dataset_hash = Some("A1B2C3D4".into());
        assert!(!m.dataset_hash_is_well_formed(), "uppercase rejected");
        m.dataset_hash = Some("abc".into());
        assert!(!m.dataset_hash_is_well_formed(), "too short");
        m.dataset_hash = Some("g".repeat(12));
        assert!(!m.dataset_hash_is_well_formed(), "non-hex");
        m.dataset_hash = Some("0".repeat(65));
        assert!(!m.dataset_hash_is_well_formed(), "too long");
        m.dataset_hash = None;
        assert!(!m.dataset_hash_is_well_formed());
    }

    #[test]
    fn stages_of_orders_by_seq_then_id() {
        let mut doc = Document::default();
        let pipeline: Identifier = "p".parse().unwrap();
        for (id, seq) in [("b-stage", 2), ("a-stage", 2), ("z-stage", 1)] {
            doc.stages.push(PipelineStage {
                stage_id: id.parse().unwrap(),
                pipeline: pipeline.clone(),
                kind: StageKind::Collection,
                seq,
                gates: Vec::new(),
                reads_from: Vec::new(),
                writes_to: Vec::new(),
                extra: Vec::new(),
                span: NodeSpan::synthetic(),
            });
        }
        let order: Vec<&str> = doc
            .stages_of(&pipeline)
            .iter()
            .map(|s| s.stage_id.as_str())
            .collect();
        assert_eq!(order, vec!["z-stage", "a-stage", "b-stage"]);
    }

    #[test]
    fn accepted_adr_reports_missing_ai_fields() {
        let adr = AiAdr {
            adr_id: "d1".parse().unwrap(),
            title: "t".into(),
            status: AdrStatus::Accepted,
            context: None,
            decision: None,
            consequences: None,
            model_alternatives: vec!["XGBoost".into()],
            dataset: Some("18 months".into()),
            fairness_bias: Some("  ".into()),
            model_lifetime: None,
            retraining_trigger: Some("MAE > 5.5 min".into()),
            explainability: None,
            regulatory: Some("transparency".into()),
            extra: Vec::new(),
            span: NodeSpan::synthetic(),
        };
        let missing: Vec<&str> = adr
            .ai_fields()
            .iter()
            .filter(|(_, present)| !present)
            .map(|(name, _)| *name)
            .collect();
        assert_eq!(missing, vec!["fairness_bias", "model_lifetime", "explainability"]);
    }
}
