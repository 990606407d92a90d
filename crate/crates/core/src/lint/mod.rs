//! Linting: checks a document against the rule registry and reports
//! diagnostics. Rules are grouped in families (E1..E8 for the written
//! views, C4 for the diagram model, L for lineage analysis, X for
//! cross-reference integrity) and gated by adoption-stage profiles.

pub mod registry;
mod rules;

pub use registry::{all_rules, explain, rule_info, AdoptionStage, LintProfile, RuleInfo};
pub use rules::lint;
