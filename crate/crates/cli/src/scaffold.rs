//! `init` templates: one starter file per RADL block kind. Together they
//! form a small but complete credit-scoring document that parses, resolves
//! and lints clean, so a new project starts from a passing baseline instead
//! of a wall of findings.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// (file name, contents) for every template, in merge order.
pub const TEMPLATES: &[(&str, &str)] = &[
    (
        "00-meta.radl",
        r#"# radl 1
# Project header: exactly one [meta] block per document.

[meta "starter"]
title = "Starter Architecture"
"#,
    ),
    (
        "01-sections.radl",
        r#"# radl 1
# arc42 section markers. Keep the twelve standard sections and fill the
# titles in as the chapters take shape.

[arc42.section "introduction_goals"]
title = "Introduction and Goals"

[arc42.section "constraints"]
title = "Architecture Constraints"

[arc42.section "context_scope"]
title = "System Scope and Context"

[arc42.section "solution_strategy"]
title = "Solution Strategy"

[arc42.section "building_block_view"]
title = "Building Block View"

[arc42.section "runtime_view"]
title = "Runtime View"

[arc42.section "deployment_view"]
title = "Deployment View"

[arc42.section "crosscutting_concepts"]
title = "Cross-cutting Concepts"

[arc42.section "architecture_decisions"]
title = "Architecture Decisions"

[arc42.section "quality_requirements"]
title = "Quality Requirements"

[arc42.section "risks_technical_debt"]
title = "Risks and Technical Debt"

[arc42.section "glossary"]
title = "Glossary"
"#,
    ),
    (
        "10-elements.radl",
        r#"# radl 1
# Building blocks. Mark every block as deterministic or not; give AI blocks
# a stereotype (ml_model, data_pipeline, feature_store, monitor,
# human_in_the_loop) and, when they sit on a partition crossing, a region
# contract (confidence / fallback / degradation).

[c4.element "api-gateway"]
name = "API Gateway"
deterministic = true

[c4.element "risk-scorer"]
name = "Risk Scorer"
stereotype = ml_model
deterministic = false
risk_class = high_risk
region_confidence = "auc >= 0.8 @ weekly-eval"
region_fallback = "rule-based score table"
region_degradation = "scores flagged stale after 1 hour"

[c4.element "feature-db"]
name = "Feature Database"
stereotype = feature_store
deterministic = false

[c4.element "review-desk"]
name = "Review Desk"
stereotype = human_in_the_loop
deterministic = true
"#,
    ),
    (
        "15-lineage.radl",
        r#"# radl 1
# Data lineage edges. Annotate each edge with schema, freshness and privacy
# class so downstream impact stays traceable.

[c4.lineage]
from = feature-db
to = risk-scorer
schema = "applicant-features-v1"
freshness = PT1H
privacy = personal

[c4.lineage]
from = risk-scorer
to = api-gateway
schema = "score-response-v1"
freshness = PT5M
privacy = personal
"#,
    ),
    (
        "20-boundaries.radl",
        r#"# radl 1
# Boundary contracts: one per deterministic <-> non-deterministic interface.
# consumer = deterministic side, provider = non-deterministic side.

[e1.boundary "scores"]
consumer = api-gateway
provider = risk-scorer
output_type = continuous
confidence = "auc >= 0.8 @ weekly-eval"
update_frequency = PT5M
fallback = rule_based_default
fallback_note = "static score table maintained by the risk team"
"#,
    ),
    (
        "30-models.radl",
        r#"# radl 1
# Model registry entries: version, framework, dataset hash, lineage link,
# headline metric, rollout status and ownership.

[e2.model "scorer-model"]
version = "1.0.0"
framework = "xgboost"
dataset_hash = "0123456789abcdef"
lineage_ref = risk-scorer
primary_metric = "auc >= 0.8 @ weekly-eval"
status = production
owner = "risk platform team"
last_retrained = 2026-01-15
model_card = scorer-model-card
hyperparams_ref = scorer-hyperparams
"#,
    ),
    (
        "35-pipeline.radl",
        r#"# radl 1
# Pipelines group stages and point at their data cards.

[e3.pipeline "starter-pipeline"]
data_cards = [training-data-card]
"#,
    ),
    (
        "36-stages.radl",
        r#"# radl 1
# Pipeline stages. Every stage needs at least one quality gate:
# "<check>: <metric> <cmp> <value> [unit] [@ condition] -> <action>" with
# check in {schema, distribution, completeness} and action in
# {halt, alert_continue, activate_fallback}.

[e3.stage "ingest-events"]
pipeline = starter-pipeline
kind = collection
seq = 1
gates = ["schema: null-rate < 1 % -> halt"]
writes_to = [feature-db]

[e3.stage "train-scorer"]
pipeline = starter-pipeline
kind = training
seq = 2
gates = ["completeness: coverage >= 99 % -> halt"]
reads_from = [feature-db]
"#,
    ),
    (
        "40-concerns.radl",
        r#"# radl 1
# Responsible-AI concern matrix: one cell per (component, concern). Cover
# fairness, explainability, human_oversight, privacy and safety for every
# ML component.

[e4.cell]
component = risk-scorer
concern = fairness
method = "quarterly cohort audit across protected attributes"
threshold = "approval-gap <= 5 %"
monitoring_frequency = P90D
owner = "governance board"

[e4.cell]
component = risk-scorer
concern = explainability
method = "per-decision feature attributions stored with the score"
monitoring_frequency = P30D
owner = "risk platform team"

[e4.cell]
component = risk-scorer
concern = human_oversight
method = "low-confidence scores routed to the review desk"
monitoring_frequency = P7D
owner = "operations"

[e4.cell]
component = risk-scorer
concern = privacy
method = "feature minimization review and retention audit"
monitoring_frequency = P90D
owner = "data protection officer"

[e4.cell]
component = risk-scorer
concern = safety
method = "score bounds checked before release to the gateway"
monitoring_frequency = P1D
owner = "risk platform team"
"#,
    ),
    (
        "50-adrs.radl",
        r#"# radl 1
# Decision records. Accepted AI decisions need all seven AI fields:
# model_alternatives, dataset, fairness_bias, model_lifetime,
# retraining_trigger, explainability, regulatory.

[e5.adr "adr-001-scorer-choice"]
title = "Use gradient-boosted trees for risk scoring"
status = accepted
context = "Scores must be explainable to reviewers and cheap to serve."
decision = "XGBoost classifier over the curated feature set"
consequences = "Retraining pipeline and drift monitoring are required."
model_alternatives = ["XGBoost", "logistic regression", "neural network"]
dataset = "24 months of labeled applications, 800k rows"
fairness_bias = "max 5% approval-rate gap across cohorts"
model_lifetime = "~12 months before full refit"
retraining_trigger = "AUC < 0.8 on the weekly evaluation set"
explainability = "per-decision feature attributions for audits"
regulatory = "documented for internal model governance review"
"#,
    ),
    (
        "55-scenarios.radl",
        r#"# radl 1
# Quality scenarios: quantify the stimulus and give every scenario a
# response deadline.

[e6.scenario "feature-drift"]
source = data_drift
stimulus = "feature null-rate exceeds 5 % for 2 consecutive hours"
environment = serving
response = "alert on-call and activate the rule-based fallback"
response_deadline = PT30M
"#,
    ),
    (
        "60-debt.radl",
        r#"# radl 1
# ML technical-debt register. Categories: boundary_erosion, entanglement,
# hidden_feedback_loop, data_dependency, pipeline_debt.

[e7.debt "shared-feature-coupling"]
category = entanglement
components = [feature-db]
severity = medium
effort = "two sprints to split the shared feature groups"
owner = "risk platform team"
status = open
"#,
    ),
    (
        "65-ops.radl",
        r#"# radl 1
# Operations view: monitoring entries ("model: metrics -> threshold"),
# retraining policy, deployment policy and rollback policy.

[e8.ops]
monitoring = ["scorer-model: auc drift -> auc < 0.8"]
retraining.triggers = [drift_based, scheduled]
retraining.automation = semi_automated
retraining.approval = "risk lead signs off before promotion"
deployment.strategy = canary
deployment.promotion_criteria = "no alert for 7 days and AUC >= 0.8"
deployment.traffic_split = ["baseline: 90", "canary: 10"]
rollback.triggers = "AUC below 0.75 or error rate above 2%"
rollback.retention_depth = 2
rollback.downstream_note = "gateway keeps serving the cached score table"
"#,
    ),
    (
        "70-attachments.radl",
        r#"# radl 1
# Attachments: model cards, data cards, hyperparameter dumps and
# supplementary training material referenced from other blocks.

[attach "scorer-model-card"]
kind = model_card
uri = "docs/scorer-model-card.md"

[attach "training-data-card"]
kind = data_card
uri = "docs/training-data-card.md"

[attach "scorer-hyperparams"]
kind = hyperparams
uri = "models/scorer/hyperparams.json"
"#,
    ),
];

/// Writes every template into `dir`, creating it if needed. Refuses to
/// overwrite: an existing file of the same name aborts before anything is
/// written.
pub fn write_templates(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (name, _) in TEMPLATES {
        let path = dir.join(name);
        if path.exists() {
            bail!("{} already exists; refusing to overwrite", path.display());
        }
    }
    for (name, contents) in TEMPLATES {
        let path = dir.join(name);
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
