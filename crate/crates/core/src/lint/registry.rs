//! The rule registry: every diagnostic rule the toolchain can emit, its
//! default severity, the extension family it belongs to, the adoption stage
//! at which it first applies, and a human explanation.

use std::fmt;
use std::str::FromStr;

use crate::diag::Severity;
use crate::model::UnknownToken;

// Rule identifiers. Families: E1..E8 extend the written architecture views,
// C4 covers the diagram model, L covers lineage-graph analysis, and X covers
// cross-reference integrity.
pub const E1_001: &str = "E1-001";
pub const E1_002: &str = "E1-002";
pub const E1_003: &str = "E1-003";
pub const E1_004: &str = "E1-004";
pub const E2_001: &str = "E2-001";
pub const E2_002: &str = "E2-002";
pub const E2_003: &str = "E2-003";
pub const E3_001: &str = "E3-001";
pub const E3_002: &str = "E3-002";
pub const E4_001: &str = "E4-001";
pub const E5_001: &str = "E5-001";
pub const E6_001: &str = "E6-001";
pub const E6_002: &str = "E6-002";
pub const E7_001: &str = "E7-001";
pub const E7_002: &str = "E7-002";
pub const E8_001: &str = "E8-001";
pub const E8_002: &str = "E8-002";
pub const C4_001: &str = "C4-001";
pub const C4_002: &str = "C4-002";
pub const C4_003: &str = "C4-003";
pub const C4_004: &str = "C4-004";
pub const L_001: &str = "L-001";
pub const X_001: &str = "X-001";
pub const X_002: &str = "X-002";
pub const X_003: &str = "X-003";

/// The adoption stage at which a rule first becomes active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AdoptionStage {
    One,
    Two,
    Three,
    FullOnly,
}

impl AdoptionStage {
    fn level(self) -> u8 {
        match self {
            AdoptionStage::One => 1,
            AdoptionStage::Two => 2,
            AdoptionStage::Three => 3,
            AdoptionStage::FullOnly => 4,
        }
    }
}

/// Which subset of rules a lint run enforces. Teams adopt the notation
/// incrementally: boundary and registry rules first, decision records and
/// scenarios second, debt and operations third, everything else last. Each
/// profile is a strict superset of the previous one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub enum LintProfile {
    Stage1,
    Stage2,
    Stage3,
    #[default]
    Full,
}

impl LintProfile {
    pub const ALL: [LintProfile; 4] = [
        LintProfile::Stage1,
        LintProfile::Stage2,
        LintProfile::Stage3,
        LintProfile::Full,
    ];

    fn level(self) -> u8 {
        match self {
            LintProfile::Stage1 => 1,
            LintProfile::Stage2 => 2,
            LintProfile::Stage3 => 3,
            LintProfile::Full => 4,
        }
    }

    pub fn as_token(self) -> &'static str {
        match self {
            LintProfile::Stage1 => "stage1",
            LintProfile::Stage2 => "stage2",
            LintProfile::Stage3 => "stage3",
            LintProfile::Full => "full",
        }
    }

    /// Whether a rule id is enforced under this profile. Unknown rule ids
    /// are never enforced.
    pub fn includes(self, rule_id: &str) -> bool {
        rule_info(rule_id).is_some_and(|r| r.stage.level() <= self.level())
    }
}

impl fmt::Display for LintProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_token())
    }
}

impl FromStr for LintProfile {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LintProfile::ALL
            .iter()
            .copied()
            .find(|p| p.as_token() == s)
            .ok_or_else(|| UnknownToken {
                what: "lint profile",
                token: s.to_string(),
                expected: "stage1, stage2, stage3, full",
            })
    }
}

/// Static description of one rule.
pub struct RuleInfo {
    pub id: &'static str,
    pub severity: Severity,
    pub family: &'static str,
    pub family_name: &'static str,
    pub stage: AdoptionStage,
    pub title: &'static str,
    pub detail: &'static str,
}

const E1_NAME: &str = "AI Boundary Delineation";
const E2_NAME: &str = "Model Registry View";
const E3_NAME: &str = "Data Pipeline View";
const E4_NAME: &str = "Responsible AI Concepts";
const E5_NAME: &str = "AI Decision Records";
const E6_NAME: &str = "AI Quality Scenarios";
const E7_NAME: &str = "AI Debt Register";
const E8_NAME: &str = "Operational AI View";
const C4_NAME: &str = "Diagram Model";
const L_NAME: &str = "Lineage Analysis";
const X_NAME: &str = "Cross-Reference Integrity";

static REGISTRY: &[RuleInfo] = &[
    RuleInfo {
        id: E1_001,
        severity: Severity::Error,
        family: "E1",
        family_name: E1_NAME,
        stage: AdoptionStage::One,
        title: "non-determinism crossing without a boundary contract",
        detail: "An edge whose endpoints sit on different sides of the determinism \
                 partition must be covered by a boundary contract between those two \
                 elements, so consumers know what guarantees they get from the \
                 non-deterministic side.",
    },
    RuleInfo {
        id: E1_002,
        severity: Severity::Error,
        family: "E1",
        family_name: E1_NAME,
        stage: AdoptionStage::One,
        title: "boundary contract missing required parts",
        detail: "A boundary contract must state all four parts: output_type, \
                 confidence, update_frequency, and fallback. Partial contracts give \
                 consumers a false sense of coverage.",
    },
    RuleInfo {
        id: E1_003,
        severity: Severity::Error,
        family: "E1",
        family_name: E1_NAME,
        stage: AdoptionStage::One,
        title: "boundary contract direction conflicts with the determinism partition",
        detail: "The provider of a boundary contract must be a non-deterministic \
                 element and the consumer a deterministic one; a contract written the \
                 other way round documents the wrong interface.",
    },
    RuleInfo {
        id: E1_004,
        severity: Severity::Warning,
        family: "E1",
        family_name: E1_NAME,
        stage: AdoptionStage::One,
        title: "boundary contract matches no crossing edge",
        detail: "No edge in the diagram model crosses the determinism partition \
                 between this contract's consumer and provider. The contract is \
                 either stale or its endpoints are misdeclared.",
    },
    RuleInfo {
        id: E2_001,
        severity: Severity::Error,
        family: "E2",
        family_name: E2_NAME,
        stage: AdoptionStage::One,
        title: "model registry entry missing required fields",
        detail: "Every model entry must record version, framework, dataset_hash, \
                 primary_metric, status, owner, and last_retrained, so the registry \
                 answers the operational questions a reader actually has.",
    },
    RuleInfo {
        id: E2_002,
        severity: Severity::Error,
        family: "E2",
        family_name: E2_NAME,
        stage: AdoptionStage::One,
        title: "malformed dataset hash",
        detail: "dataset_hash must be a lowercase hexadecimal digest of 8 to 64 \
                 characters; anything else cannot identify the training snapshot.",
    },
    RuleInfo {
        id: E2_003,
        severity: Severity::Error,
        family: "E2",
        family_name: E2_NAME,
        stage: AdoptionStage::One,
        title: "model lineage reference does not resolve",
        detail: "A model's lineage_ref must name a declared pipeline stage or \
                 diagram element; a dangling reference breaks provenance tracing \
                 from the registry into the lineage graph.",
    },
    RuleInfo {
        id: E3_001,
        severity: Severity::Warning,
        family: "E3",
        family_name: E3_NAME,
        stage: AdoptionStage::FullOnly,
        title: "pipeline stage with no quality gates",
        detail: "A stage without gates passes data along unchecked. Declare at \
                 least one gate, even if it only asserts schema conformance.",
    },
    RuleInfo {
        id: E3_002,
        severity: Severity::Error,
        family: "E3",
        family_name: E3_NAME,
        stage: AdoptionStage::FullOnly,
        title: "quality gate missing check, threshold, or failure action",
        detail: "A gate is only executable when it states what to check, the \
                 threshold to compare against, and what happens on failure.",
    },
    RuleInfo {
        id: E4_001,
        severity: Severity::Warning,
        family: "E4",
        family_name: E4_NAME,
        stage: AdoptionStage::FullOnly,
        title: "ml_model element absent from the concern matrix",
        detail: "Each element with the ml_model stereotype should appear in the \
                 concern matrix with rows for fairness, explainability, privacy, \
                 safety, and human oversight. An element with no rows at all has \
                 not been considered.",
    },
    RuleInfo {
        id: E5_001,
        severity: Severity::Error,
        family: "E5",
        family_name: E5_NAME,
        stage: AdoptionStage::Two,
        title: "accepted decision record missing AI-specific fields",
        detail: "Once a decision record is accepted it must carry all seven AI \
                 fields: model_choice, alternatives, training_data, fairness_impact, \
                 expected_lifetime, retraining_trigger, and explainability. Proposed \
                 records may still be drafts.",
    },
    RuleInfo {
        id: E6_001,
        severity: Severity::Error,
        family: "E6",
        family_name: E6_NAME,
        stage: AdoptionStage::Two,
        title: "scenario stimulus has no quantified trigger",
        detail: "A quality scenario's stimulus must contain a measurable quantity \
                 (a number, optionally with a comparator and unit) so the scenario \
                 can be tested rather than debated.",
    },
    RuleInfo {
        id: E6_002,
        severity: Severity::Error,
        family: "E6",
        family_name: E6_NAME,
        stage: AdoptionStage::Two,
        title: "scenario missing a positive response deadline",
        detail: "Every scenario needs a response_deadline greater than zero; \
                 without one the required reaction time is unspecified.",
    },
    RuleInfo {
        id: E7_001,
        severity: Severity::Error,
        family: "E7",
        family_name: E7_NAME,
        stage: AdoptionStage::Three,
        title: "debt entry with unrecognized category",
        detail: "Debt categories form a closed vocabulary (boundary_erosion, \
                 entanglement, hidden_feedback_loop, data_dependency, \
                 pipeline_debt). The parser enforces this vocabulary, so under \
                 normal operation this rule is already satisfied when linting \
                 begins.",
    },
    RuleInfo {
        id: E7_002,
        severity: Severity::Error,
        family: "E7",
        family_name: E7_NAME,
        stage: AdoptionStage::Three,
        title: "debt entry names unknown components",
        detail: "The components list of a debt entry is its blast radius; every \
                 name in it must resolve to a declared diagram element.",
    },
    RuleInfo {
        id: E8_001,
        severity: Severity::Error,
        family: "E8",
        family_name: E8_NAME,
        stage: AdoptionStage::Three,
        title: "operational view subsection missing or incomplete",
        detail: "The operational view must cover retraining (triggers, automation, \
                 approval), deployment (strategy, promotion criteria), rollback \
                 (triggers, retention depth, downstream note), and monitoring (at \
                 least one entry).",
    },
    RuleInfo {
        id: E8_002,
        severity: Severity::Error,
        family: "E8",
        family_name: E8_NAME,
        stage: AdoptionStage::Three,
        title: "canary traffic split out of range",
        detail: "Each traffic slice must be between 0 and 100 percent and the \
                 slices must sum to at most 100.",
    },
    RuleInfo {
        id: C4_001,
        severity: Severity::Error,
        family: "C4",
        family_name: C4_NAME,
        stage: AdoptionStage::FullOnly,
        title: "unknown stereotype token",
        detail: "Element stereotypes form a closed vocabulary (ml_model, \
                 data_pipeline, feature_store, monitor, human_in_the_loop). The \
                 parser enforces this vocabulary, so under normal operation this \
                 rule is already satisfied when linting begins.",
    },
    RuleInfo {
        id: C4_002,
        severity: Severity::Error,
        family: "C4",
        family_name: C4_NAME,
        stage: AdoptionStage::FullOnly,
        title: "lineage edge endpoint unresolved",
        detail: "Both endpoints of a lineage edge must name a declared diagram \
                 element or pipeline stage; otherwise the overlay draws provenance \
                 from or to nothing.",
    },
    RuleInfo {
        id: C4_003,
        severity: Severity::Error,
        family: "C4",
        family_name: C4_NAME,
        stage: AdoptionStage::FullOnly,
        title: "non-deterministic element on a crossing edge lacks a region contract",
        detail: "When a non-deterministic element sits on an edge that crosses the \
                 determinism partition, the element itself must carry a complete \
                 region contract (confidence, fallback, degradation) so the boundary \
                 diagram can annotate the region.",
    },
    RuleInfo {
        id: C4_004,
        severity: Severity::Error,
        family: "C4",
        family_name: C4_NAME,
        stage: AdoptionStage::FullOnly,
        title: "ml_model element flagged deterministic",
        detail: "An element stereotyped ml_model is non-deterministic by nature; \
                 declaring deterministic = true on it contradicts the partition and \
                 hides real boundary crossings.",
    },
    RuleInfo {
        id: L_001,
        severity: Severity::Warning,
        family: "L",
        family_name: L_NAME,
        stage: AdoptionStage::FullOnly,
        title: "lineage cycle without hidden-feedback-loop debt coverage",
        detail: "A cycle in the lineage graph is a hidden feedback loop unless it \
                 is acknowledged: some debt entry of category hidden_feedback_loop \
                 in the E7 register must list a component on the cycle. Cycles are \
                 not forbidden outright because pipelines may loop by design; this \
                 rule pairs detection with the E7 register instead.",
    },
    RuleInfo {
        id: X_001,
        severity: Severity::Error,
        family: "X",
        family_name: X_NAME,
        stage: AdoptionStage::One,
        title: "dangling identifier reference",
        detail: "An identifier is referenced but no entity of a suitable kind \
                 declares it. Every reference must land on a declared entity.",
    },
    RuleInfo {
        id: X_002,
        severity: Severity::Error,
        family: "X",
        family_name: X_NAME,
        stage: AdoptionStage::One,
        title: "duplicate identifier",
        detail: "Identifiers share one namespace across all entity kinds and all \
                 input files; declaring the same identifier twice makes references \
                 ambiguous.",
    },
    RuleInfo {
        id: X_003,
        severity: Severity::Warning,
        family: "X",
        family_name: X_NAME,
        stage: AdoptionStage::FullOnly,
        title: "unknown keys preserved",
        detail: "A block contains keys outside its schema. They are preserved \
                 verbatim through serialization, but tools ignore them; check for \
                 typos or move the data to an attachment.",
    },
];

/// All rules in registry order (families E1..E8, then C4, L, X).
pub fn all_rules() -> &'static [RuleInfo] {
    REGISTRY
}

/// Looks up one rule.
pub fn rule_info(rule_id: &str) -> Option<&'static RuleInfo> {
    REGISTRY.iter().find(|r| r.id == rule_id)
}

/// One-paragraph human explanation of a rule, naming the extension family it
/// enforces. Returns `None` for unknown rule ids.
pub fn explain(rule_id: &str) -> Option<String> {
    let info = rule_info(rule_id)?;
    Some(format!(
        "{} ({}, {} family \u{2014} {}): {}. {}",
        info.id, info.severity, info.family, info.family_name, info.title, info.detail
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_twenty_five_unique_rules() {
        assert_eq!(REGISTRY.len(), 25);
        let mut ids: Vec<_> = REGISTRY.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 25);
    }

    #[test]
    fn explain_names_the_extension_family() {
        let text = explain("E1-001").unwrap();
        assert!(text.contains("AI Boundary Delineation"));
        assert!(text.contains("error"));

        let text = explain("L-001").unwrap();
        assert!(text.to_lowercase().contains("hidden feedback loop"));
        assert!(text.contains("E7"));

        assert!(explain("Z-999").is_none());
    }

    #[test]
    fn profiles_nest_strictly() {
        for rule in REGISTRY {
            let mut active_before = false;
            for profile in LintProfile::ALL {
                let active = profile.includes(rule.id);
                assert!(!active_before || active, "{} dropped by {profile}", rule.id);
                active_before = active;
            }
            assert!(LintProfile::Full.includes(rule.id));
        }
    }

    #[test]
    fn stage_one_covers_boundary_and_registry_rules() {
        let p = LintProfile::Stage1;
        for id in [E1_001, E1_002, E1_003, E1_004, E2_001, E2_002, E2_003, X_001, X_002] {
            assert!(p.includes(id), "{id} should be active in stage1");
        }
        for id in [E5_001, E6_001, E7_002, E8_001, C4_003, L_001, X_003] {
            assert!(!p.includes(id), "{id} should not be active in stage1");
        }
        assert!(LintProfile::Stage2.includes(E5_001));
        assert!(!LintProfile::Stage2.includes(E7_002));
        assert!(LintProfile::Stage3.includes(E8_002));
        assert!(!LintProfile::Stage3.includes(L_001));
    }

    #[test]
    fn profile_tokens_round_trip() {
        for p in LintProfile::ALL {
            assert_eq!(p.as_token().parse::<LintProfile>().unwrap(), p);
        }
        assert!("stage4".parse::<LintProfile>().is_err());
    }
}
