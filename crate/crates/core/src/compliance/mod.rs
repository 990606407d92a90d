//! EU AI Act Annex IV addressability scoring.
//!
//! Two scoring modes share one report shape: *profile* mode returns the
//! built-in reference ratings for a documentation framework configuration,
//! and *document* mode scores an actual resolved [`Document`] against the
//! category-to-artifact mapping. The module also aggregates independent
//! rater matrices (mean, spread, per-item mode, Fleiss' kappa) and produces
//! the ten-concern coverage report used to compare notation profiles.

mod concerns;
mod raters;

pub use concerns::{
    concern_coverage, Concern10, ConcernCounts, ConcernEntry, ConcernReport, ConcernStatus,
    NotationProfile,
};
pub use raters::{
    aggregate_raters, fleiss_kappa, InvalidRaterMatrix, KappaOutcome, RaterMatrix, RaterSummary,
};

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::Severity;
use crate::lint::registry::{
    C4_004, E1_002, E1_003, E2_001, E2_002, E2_003, E5_001, E6_001, E6_002, E8_001, E8_002,
};
use crate::lint::{lint, LintProfile};
use crate::model::{Arc42Section, AttachmentKind, Document, Stereotype};

/// Number of Annex IV requirement categories in the rubric.
pub const CATEGORY_COUNT: usize = 10;

/// Reference ratings per category for plain arc42 (no AI extensions).
pub const STD_ARC42: [u8; CATEGORY_COUNT] = [2, 1, 1, 0, 0, 1, 1, 0, 0, 1];
/// Reference ratings per category for plain C4 (no AI extensions).
pub const STD_C4: [u8; CATEGORY_COUNT] = [1, 1, 1, 0, 0, 0, 1, 1, 0, 0];
/// Reference ratings per category for arc42 with the AI extension sections.
pub const RADAI_ARC42: [u8; CATEGORY_COUNT] = [2, 2, 2, 2, 1, 2, 2, 2, 2, 2];
/// Reference ratings per category for C4 with the AI diagram extensions.
pub const RADAI_C4: [u8; CATEGORY_COUNT] = [2, 2, 2, 1, 1, 1, 2, 2, 1, 1];

/// The four framework configurations with built-in reference ratings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameworkProfile {
    StdArc42,
    StdC4,
    RadaiArc42,
    RadaiC4,
}

impl FrameworkProfile {
    pub const ALL: &'static [FrameworkProfile] = &[
        FrameworkProfile::StdArc42,
        FrameworkProfile::StdC4,
        FrameworkProfile::RadaiArc42,
        FrameworkProfile::RadaiC4,
    ];

    pub fn as_token(self) -> &'static str {
        match self {
            FrameworkProfile::StdArc42 => "std_arc42",
            FrameworkProfile::StdC4 => "std_c4",
            FrameworkProfile::RadaiArc42 => "radai_arc42",
            FrameworkProfile::RadaiC4 => "radai_c4",
        }
    }

    /// Per-category reference ratings for this configuration.
    pub fn ratings(self) -> &'static [u8; CATEGORY_COUNT] {
        match self {
            FrameworkProfile::StdArc42 => &STD_ARC42,
            FrameworkProfile::StdC4 => &STD_C4,
            FrameworkProfile::RadaiArc42 => &RADAI_ARC42,
            FrameworkProfile::RadaiC4 => &RADAI_C4,
        }
    }
}

impl std::str::FromStr for FrameworkProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.as_token() == s)
            .ok_or_else(|| {
                format!("unknown framework profile `{s}`: expected std_arc42, std_c4, radai_arc42 or radai_c4")
            })
    }
}

// ---------------------------------------------------------------------------
// Category → artifact mapping
// ---------------------------------------------------------------------------

/// Kinds of documentation artifacts the Annex IV mapping can demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    /// A base arc42 section marker.
    Section(Arc42Section),
    /// A boundary contract between the deterministic and AI sides.
    BoundaryContract,
    /// A model registry entry.
    ModelEntry,
    /// A data pipeline declaration.
    Pipeline,
    /// A responsible-AI concern matrix cell.
    ConcernCell,
    /// An AI decision record.
    DecisionRecord,
    /// An AI quality scenario.
    QualityScenario,
    /// An AI debt register entry.
    DebtEntry,
    /// The operational AI view.
    OpsView,
    /// A diagram element carrying any AI stereotype.
    StereotypedElement,
    /// A data lineage edge.
    LineageEdge,
    /// Elements present on both sides of the determinism partition, i.e.
    /// a renderable non-determinism boundary view.
    BoundaryRegions,
    /// A human-in-the-loop diagram element.
    HumanOversight,
    /// An attachment of kind `supplementary_training`: training artifacts
    /// beyond what architecture documentation itself can carry.
    TrainingAttachment,
}

impl ArtifactKind {
    /// Stable token used in gap listings and JSON reports.
    pub fn token(self) -> String {
        match self {
            ArtifactKind::Section(s) => format!("arc42:{}", s.as_token()),
            ArtifactKind::BoundaryContract => "e1:boundary_contract".to_string(),
            ArtifactKind::ModelEntry => "e2:model_entry".to_string(),
            ArtifactKind::Pipeline => "e3:pipeline".to_string(),
            ArtifactKind::ConcernCell => "e4:concern_cell".to_string(),
            ArtifactKind::DecisionRecord => "e5:decision_record".to_string(),
            ArtifactKind::QualityScenario => "e6:quality_scenario".to_string(),
            ArtifactKind::DebtEntry => "e7:debt_entry".to_string(),
            ArtifactKind::OpsView => "e8:ops_view".to_string(),
            ArtifactKind::StereotypedElement => "c4:stereotyped_element".to_string(),
            ArtifactKind::LineageEdge => "c4:lineage_edge".to_string(),
            ArtifactKind::BoundaryRegions => "c4:boundary_regions".to_string(),
            ArtifactKind::HumanOversight => "c4:human_in_the_loop".to_string(),
            ArtifactKind::TrainingAttachment => "attach:supplementary_training".to_string(),
        }
    }
}

/// One Annex IV requirement category and the artifact kinds that address it.
#[derive(Debug, Clone, Copy)]
pub struct AnnexCategory {
    pub index: u8,
    pub name: &'static str,
    pub mapped: &'static [ArtifactKind],
}

use Arc42Section as S;
use ArtifactKind as K;

/// The ten Annex IV requirement categories with their artifact mapping.
pub static ANNEX_CATEGORIES: [AnnexCategory; CATEGORY_COUNT] = [
    AnnexCategory {
        index: 1,
        name: "General system description",
        mapped: &[
            K::Section(S::IntroductionGoals),
            K::Section(S::ContextScope),
            K::BoundaryContract,
        ],
    },
    AnnexCategory {
        index: 2,
        name: "System elements & development process",
        mapped: &[K::Section(S::BuildingBlockView), K::ModelEntry],
    },
    AnnexCategory {
        index: 3,
        name: "Design specifications & architecture",
        mapped: &[
            K::Section(S::BuildingBlockView),
            K::Section(S::RuntimeView),
            K::Section(S::DeploymentView),
            K::StereotypedElement,
        ],
    },
    AnnexCategory {
        index: 4,
        name: "Data & data governance",
        mapped: &[K::Pipeline, K::LineageEdge],
    },
    AnnexCategory {
        index: 5,
        name: "Training methodologies & techniques",
        mapped: &[K::DecisionRecord, K::TrainingAttachment],
    },
    AnnexCategory {
        index: 6,
        name: "Risk assessment & management",
        mapped: &[K::Section(S::RisksTechnicalDebt), K::DebtEntry],
    },
    AnnexCategory {
        index: 7,
        name: "Lifecycle change description",
        mapped: &[K::ModelEntry, K::OpsView],
    },
    AnnexCategory {
        index: 8,
        name: "Performance metrics & accuracy",
        mapped: &[K::QualityScenario, K::BoundaryRegions],
    },
    AnnexCategory {
        index: 9,
        name: "Human oversight measures",
        mapped: &[K::ConcernCell, K::HumanOversight],
    },
    AnnexCategory {
        index: 10,
        name: "Post-market monitoring",
        mapped: &[K::OpsView],
    },
];

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Whether a score came from the built-in rubric or an actual document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    Profile,
    Document,
}

/// Score for a single requirement category.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CategoryScore {
    pub index: u8,
    pub name: &'static str,
    /// 0 = not addressable, 1 = partial, 2 = fully addressable.
    pub score: u8,
    /// Artifact-kind tokens that lack a clean artifact; empty at score 2.
    pub missing: Vec<String>,
}

/// The full addressability report: ten category scores plus totals.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComplianceScore {
    pub mode: ScoreMode,
    pub categories: Vec<CategoryScore>,
    /// Sum of the per-category scores, at most 20.
    pub total: u32,
    /// `100 * total / 20`, always a whole number of percent.
    pub percent: u32,
}

impl ComplianceScore {
    fn assemble(mode: ScoreMode, categories: Vec<CategoryScore>) -> ComplianceScore {
        let total: u32 = categories.iter().map(|c| u32::from(c.score)).sum();
        ComplianceScore {
            mode,
            categories,
            total,
            percent: total * 100 / 20,
        }
    }
}

/// Returns the built-in reference ratings for a framework configuration.
pub fn score_profile(profile: FrameworkProfile) -> ComplianceScore {
    let categories = ANNEX_CATEGORIES
        .iter()
        .zip(profile.ratings())
        .map(|(cat, &score)| CategoryScore {
            index: cat.index,
            name: cat.name,
            score,
            missing: Vec::new(),
        })
        .collect();
    ComplianceScore::assemble(ScoreMode::Profile, categories)
}

/// Scores a resolved document against the Annex IV artifact mapping.
///
/// Per category: 2 when every mapped artifact kind has at least one artifact
/// that is free of that kind's own lint errors, 1 when at least one mapped
/// kind is present at all, 0 otherwise. Scoring is monotone: adding an
/// artifact to a document never lowers any category score, because an
/// artifact's cleanliness depends only on itself once references resolve.
pub fn score_document(doc: &Document) -> ComplianceScore {
    let inventory = Inventory::collect(doc);
    let categories = ANNEX_CATEGORIES
        .iter()
        .map(|cat| {
            let present = cat.mapped.iter().any(|k| inventory.present(*k));
            let missing: Vec<String> = cat
                .mapped
                .iter()
                .filter(|k| !inventory.clean(**k))
                .map(|k| k.token())
                .collect();
            let score = if missing.is_empty() {
                2
            } else if present {
                1
            } else {
                0
            };
            CategoryScore {
                index: cat.index,
                name: cat.name,
                score,
                missing,
            }
        })
        .collect();
    ComplianceScore::assemble(ScoreMode::Document, categories)
}

/// What the document contains, pre-digested for the scoring rules.
struct Inventory<'a> {
    doc: &'a Document,
    /// Error rules attached to each lint subject.
    errors: BTreeMap<String, BTreeSet<&'static str>>,
}

impl<'a> Inventory<'a> {
    fn collect(doc: &'a Document) -> Inventory<'a> {
        let mut errors: BTreeMap<String, BTreeSet<&'static str>> = BTreeMap::new();
        for d in lint(doc, LintProfile::Full) {
            if d.severity == Severity::Error {
                errors.entry(d.subject.clone()).or_default().insert(d.rule);
            }
        }
        Inventory { doc, errors }
    }

    fn dirty(&self, subject: &str, rules: &[&'static str]) -> bool {
        self.errors
            .get(subject)
            .is_some_and(|set| rules.iter().any(|r| set.contains(r)))
    }

    fn present(&self, kind: ArtifactKind) -> bool {
        let doc = self.doc;
        match kind {
            ArtifactKind::Section(s) => doc.has_section(s),
            ArtifactKind::BoundaryContract => !doc.boundaries.is_empty(),
            ArtifactKind::ModelEntry => !doc.models.is_empty(),
            ArtifactKind::Pipeline => !doc.pipelines.is_empty(),
            ArtifactKind::ConcernCell => !doc.concern_matrix.is_empty(),
            ArtifactKind::DecisionRecord => !doc.adrs.is_empty(),
            ArtifactKind::QualityScenario => !doc.scenarios.is_empty(),
            ArtifactKind::DebtEntry => !doc.debts.is_empty(),
            ArtifactKind::OpsView => doc.ops_view.is_some(),
            ArtifactKind::StereotypedElement => {
                doc.elements.iter().any(|e| e.stereotype.is_some())
            }
            ArtifactKind::LineageEdge => !doc.lineage_edges.is_empty(),
            ArtifactKind::BoundaryRegions => {
                doc.elements.iter().any(|e| e.deterministic)
                    && doc.elements.iter().any(|e| !e.deterministic)
            }
            ArtifactKind::HumanOversight => doc
                .elements
                .iter()
                .any(|e| e.stereotype == Some(Stereotype::HumanInTheLoop)),
            ArtifactKind::TrainingAttachment => doc
                .attachments
                .iter()
                .any(|a| a.kind == AttachmentKind::SupplementaryTraining),
        }
    }

    /// Presence of at least one artifact of the kind with no error from the
    /// kind's own rules. Kinds whose entities carry no dedicated error rules
    /// are clean exactly when present.
    fn clean(&self, kind: ArtifactKind) -> bool {
        let doc = self.doc;
        match kind {
            ArtifactKind::BoundaryContract => doc
                .boundaries
                .iter()
                .any(|b| !self.dirty(b.interface_id.as_str(), &[E1_002, E1_003])),
            ArtifactKind::ModelEntry => doc
                .models
                .iter()
                .any(|m| !self.dirty(m.model_id.as_str(), &[E2_001, E2_002, E2_003])),
            ArtifactKind::DecisionRecord => doc
                .adrs
                .iter()
                .any(|a| !self.dirty(a.adr_id.as_str(), &[E5_001])),
            ArtifactKind::QualityScenario => doc
                .scenarios
                .iter()
                .any(|s| !self.dirty(s.scenario_id.as_str(), &[E6_001, E6_002])),
            ArtifactKind::DebtEntry => {
                // A debt entry's category vocabulary and component references
                // are enforced upstream by the parser and the resolver, so a
                // resolved document's entries are clean by construction.
                !doc.debts.is_empty()
            }
            ArtifactKind::OpsView => {
                doc.ops_view.is_some() && !self.dirty("ops", &[E8_001, E8_002])
            }
            ArtifactKind::StereotypedElement => doc
                .elements
                .iter()
                .any(|e| e.stereotype.is_some() && !self.dirty(e.element_id.as_str(), &[C4_004])),
            other => self.present(other),
        }
    }
}
