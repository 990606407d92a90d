//! The ten-concern coverage report: which AI-specific documentation
//! concerns a document covers fully, partially, or not at all — evaluated
//! either on the whole document or on a "standard notation" view with every
//! AI extension masked out, to show what plain arc42/C4 would retain.

use crate::lineage::LineageGraph;
use crate::model::{Arc42Section, BoundaryContract, DeploymentStrategy, Document, Stereotype};

/// Which notation the document is evaluated as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NotationProfile {
    /// Plain arc42/C4: every AI extension artifact is masked before
    /// evaluation, stereotypes and risk/region markers are stripped, and
    /// all elements count as deterministic.
    Standard,
    /// The full extended notation, evaluated as-is.
    Radai,
}

impl NotationProfile {
    pub fn as_token(self) -> &'static str {
        match self {
            NotationProfile::Standard => "standard",
            NotationProfile::Radai => "radai",
        }
    }
}

impl std::str::FromStr for NotationProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(NotationProfile::Standard),
            "radai" => Ok(NotationProfile::Radai),
            _ => Err(format!(
                "unknown notation profile `{s}`: expected standard or radai"
            )),
        }
    }
}

/// The ten AI-specific documentation concerns the coverage report tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concern10 {
    ModelVersioning,
    FeatureStore,
    PipelineQualityGates,
    DriftDetection,
    RetrainingAutomation,
    NondeterminismBoundaries,
    AbCanaryDeployment,
    DataLineage,
    MlDebtTracking,
    ResponsibleAi,
}

impl Concern10 {
    pub const ALL: &'static [Concern10] = &[
        Concern10::ModelVersioning,
        Concern10::FeatureStore,
        Concern10::PipelineQualityGates,
        Concern10::DriftDetection,
        Concern10::RetrainingAutomation,
        Concern10::NondeterminismBoundaries,
        Concern10::AbCanaryDeployment,
        Concern10::DataLineage,
        Concern10::MlDebtTracking,
        Concern10::ResponsibleAi,
    ];

    pub fn as_token(self) -> &'static str {
        match self {
            Concern10::ModelVersioning => "model_versioning",
            Concern10::FeatureStore => "feature_store",
            Concern10::PipelineQualityGates => "pipeline_quality_gates",
            Concern10::DriftDetection => "drift_detection",
            Concern10::RetrainingAutomation => "retraining_automation",
            Concern10::NondeterminismBoundaries => "nondeterminism_boundaries",
            Concern10::AbCanaryDeployment => "ab_canary_deployment",
            Concern10::DataLineage => "data_lineage",
            Concern10::MlDebtTracking => "ml_debt_tracking",
            Concern10::ResponsibleAi => "responsible_ai",
        }
    }

    /// Human-readable label for text output.
    pub fn title(self) -> &'static str {
        match self {
            Concern10::ModelVersioning => "Model versioning & lifecycle",
            Concern10::FeatureStore => "Feature store usage",
            Concern10::PipelineQualityGates => "Pipeline quality gates",
            Concern10::DriftDetection => "Drift detection",
            Concern10::RetrainingAutomation => "Retraining automation",
            Concern10::NondeterminismBoundaries => "Non-determinism boundaries",
            Concern10::AbCanaryDeployment => "A/B & canary deployment",
            Concern10::DataLineage => "Data lineage",
            Concern10::MlDebtTracking => "ML debt tracking",
            Concern10::ResponsibleAi => "Responsible AI coverage",
        }
    }
}

impl serde::Serialize for Concern10 {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(self.as_token())
    }
}

/// Coverage level for one concern; ordered `None < Partial < Full`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcernStatus {
    None,
    Partial,
    Full,
}

/// One row of the coverage report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ConcernEntry {
    pub concern: Concern10,
    pub status: ConcernStatus,
}

/// Tally of the ten statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ConcernCounts {
    pub full: usize,
    pub partial: usize,
    pub none: usize,
}

/// The ten-concern coverage report for one notation profile.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConcernReport {
    pub profile: NotationProfile,
    pub entries: Vec<ConcernEntry>,
}

impl ConcernReport {
    pub fn status_of(&self, concern: Concern10) -> ConcernStatus {
        self.entries
            .iter()
            .find(|e| e.concern == concern)
            .map(|e| e.status)
            .expect("report always carries all ten concerns")
    }

    pub fn counts(&self) -> ConcernCounts {
        let mut counts = ConcernCounts {
            full: 0,
            partial: 0,
            none: 0,
        };
        for e in &self.entries {
            match e.status {
                ConcernStatus::Full => counts.full += 1,
                ConcernStatus::Partial => counts.partial += 1,
                ConcernStatus::None => counts.none += 1,
            }
        }
        counts
    }
}

/// Evaluates the ten-concern rubric on a resolved document.
///
/// Under [`NotationProfile::Standard`] the document is first reduced to what
/// plain notation can express; pipeline and lineage concerns can then only
/// reach *partial*, via a runtime-view section standing in for the missing
/// structured artifacts.
pub fn concern_coverage(doc: &Document, profile: NotationProfile) -> ConcernReport {
    let masked;
    let doc = match profile {
        NotationProfile::Radai => doc,
        NotationProfile::Standard => {
            masked = standard_view(doc);
            &masked
        }
    };
    let graph = LineageGraph::from_document(doc);
    let entries = Concern10::ALL
        .iter()
        .map(|c| ConcernEntry {
            concern: *c,
            status: evaluate(doc, &graph, *c),
        })
        .collect();
    ConcernReport { profile, entries }
}

/// Strips everything plain arc42/C4 cannot express.
fn standard_view(doc: &Document) -> Document {
    let mut d = doc.clone();
    d.boundaries.clear();
    d.models.clear();
    d.pipelines.clear();
    d.stages.clear();
    d.concern_matrix.clear();
    d.adrs.clear();
    d.scenarios.clear();
    d.debts.clear();
    d.ops_view = None;
    d.lineage_edges.clear();
    d.attachments.clear();
    for e in &mut d.elements {
        e.stereotype = None;
        e.risk_class = None;
        e.region_contract = None;
        e.deterministic = true;
    }
    d
}

fn covers(contract: &BoundaryContract, det: &crate::ident::Identifier, nondet: &crate::ident::Identifier) -> bool {
    contract.consumer == *det && contract.provider == *nondet
}

fn evaluate(doc: &Document, graph: &LineageGraph, concern: Concern10) -> ConcernStatus {
    use ConcernStatus::{Full, None as Nothing, Partial};

    let has_stereotype = |s: Stereotype| doc.elements.iter().any(|e| e.stereotype == Some(s));
    let ml_models = || {
        doc.elements
            .iter()
            .filter(|e| e.stereotype == Some(Stereotype::MlModel))
    };

    match concern {
        Concern10::ModelVersioning => {
            if !doc.models.is_empty() {
                Full
            } else if has_stereotype(Stereotype::MlModel) {
                // Models appear in diagrams but have no registry entries.
                Partial
            } else {
                Nothing
            }
        }
        Concern10::FeatureStore => {
            if has_stereotype(Stereotype::FeatureStore) {
                Full
            } else {
                Nothing
            }
        }
        Concern10::PipelineQualityGates => {
            let gated = !doc.stages.is_empty() && doc.stages.iter().all(|s| !s.gates.is_empty());
            if gated {
                Full
            } else if !doc.pipelines.is_empty()
                || !doc.stages.is_empty()
                || doc.has_section(Arc42Section::RuntimeView)
            {
                Partial
            } else {
                Nothing
            }
        }
        Concern10::DriftDetection => {
            let monitored = doc
                .ops_view
                .as_ref()
                .and_then(|o| o.monitoring.as_ref())
                .is_some_and(|m| !m.is_empty());
            if monitored {
                Full
            } else {
                Nothing
            }
        }
        Concern10::RetrainingAutomation => {
            let declared = doc
                .ops_view
                .as_ref()
                .is_some_and(|o| o.retraining.is_some());
            if declared {
                Full
            } else {
                Nothing
            }
        }
        Concern10::NondeterminismBoundaries => {
            if doc.boundaries.is_empty() {
                return Nothing;
            }
            let all_covered = graph.boundary_crossings().iter().all(|(from, to)| {
                let (det, nondet) = if graph.is_deterministic(from) == Some(true) {
                    (from, to)
                } else {
                    (to, from)
                };
                doc.boundaries.iter().any(|b| covers(b, det, nondet))
            });
            if all_covered {
                Full
            } else {
                Partial
            }
        }
        Concern10::AbCanaryDeployment => {
            let deployment = doc.ops_view.as_ref().and_then(|o| o.deployment.as_ref());
            match deployment.and_then(|d| d.strategy) {
                Some(DeploymentStrategy::Canary) | Some(DeploymentStrategy::Shadow) => {
                    let split = deployment
                        .and_then(|d| d.traffic_split.as_ref())
                        .is_some_and(|s| !s.is_empty());
                    if split {
                        Full
                    } else {
                        Partial
                    }
                }
                _ => Nothing,
            }
        }
        Concern10::DataLineage => {
            let annotated = doc.lineage_edges.iter().any(|e| {
                e.schema_note.is_some() || e.freshness.is_some() || e.privacy_class.is_some()
            });
            if annotated {
                Full
            } else if !doc.lineage_edges.is_empty() || doc.has_section(Arc42Section::RuntimeView)
            {
                Partial
            } else {
                Nothing
            }
        }
        Concern10::MlDebtTracking => {
            if doc.debts.is_empty() {
                return Nothing;
            }
            // A debt entry's blast radius: the named components plus
            // everything downstream of them in the lineage graph.
            let mut radius: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
            for debt in &doc.debts {
                for component in &debt.components {
                    radius.insert(component.as_str());
                    if let Some(reached) = graph.impact(component) {
                        // Collect into owned-free set via doc lookup below.
                        for id in reached {
                            if let Some(e) =
                                doc.elements.iter().find(|e| e.element_id == id)
                            {
                                radius.insert(e.element_id.as_str());
                            }
                        }
                    }
                }
            }
            let all_tracked = ml_models().all(|e| radius.contains(e.element_id.as_str()));
            if all_tracked {
                Full
            } else {
                Partial
            }
        }
        Concern10::ResponsibleAi => {
            if doc.concern_matrix.is_empty() {
                return Nothing;
            }
            let fully_covered = ml_models().all(|e| {
                crate::model::Concern::ALL.iter().all(|concern| {
                    doc.concern_matrix
                        .iter()
                        .any(|c| c.component == e.element_id && c.concern == *concern)
                })
            });
            if fully_covered {
                Full
            } else {
                Partial
            }
        }
    }
}
