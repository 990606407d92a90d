//! Proptest strategies shared by the radai test suites: canonically ordered,
//! reference-complete documents, random digraphs with a matching document
//! encoding, and rater matrices.
//!
//! Documents produced by [`document`] satisfy three properties the test
//! suites rely on:
//!
//! * every identifier reference points at a declared entity, so
//!   `resolve_links` succeeds;
//! * every entity list is sorted exactly the way the text serializer sorts
//!   it, and sort keys are unique, so a parse → serialize → parse cycle must
//!   reproduce the value verbatim;
//! * every embedded string re-lexes to the value it came from (metric and
//!   label words stay single tokens, numbers stay finite, free text round
//!   trips through quoting).

use chrono::NaiveDate;
use proptest::option;
use proptest::prelude::*;
use proptest::sample::select;

use radai_core::model::{
    AdrStatus, AiAdr, Arc42Section, AttachmentKind, AttachmentRef, AutomationLevel,
    BoundaryContract, Concern, ConcernCell, DebtCategory, DebtEntry, DebtSeverity, DebtStatus,
    DeploymentPolicy, DeploymentStrategy, DiagramElement, FallbackBehavior, GateAction, GateCheck,
    LineageEdge, MetaBlock, ModelEntry, ModelStatus, MonitorEntry, OperationalAiView, OutputType,
    Pipeline, PipelineStage, PrivacyClass, QualityGate, QualityScenario, RegionContract,
    RetrainingPolicy, RetrainingTrigger, RiskClass, RollbackPolicy, ScenarioEnvironment,
    ScenarioSource, SectionMarker, StageKind, Stereotype, TrafficSlice,
};
use radai_core::{
    ComplianceScore, ConfidenceSpec, Document, DurationSpec, Identifier, NodeSpan, RaterMatrix,
    SourceSpan, Value,
};

fn span() -> NodeSpan {
    NodeSpan::from(SourceSpan::synthetic())
}

fn ident(s: &str) -> Identifier {
    s.parse().expect("generated identifiers are valid")
}

/// A lowercase word that lexes as a bare identifier token (never a bool,
/// date, number or duration).
pub fn word() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9._-]{0,7}".prop_filter("bool literals lex specially", |w| {
        w != "true" && w != "false"
    })
}

/// A valid identifier.
pub fn identifier() -> impl Strategy<Value = Identifier> {
    word().prop_map(|w| ident(&w))
}

/// Free text, including the characters the quoting layer must escape.
pub fn free_text() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => "[ -~]{0,24}",
        1 => "[\"\\\\\n\t\r]{1,4}",
        1 => "[α-ωäöü€ -~]{1,12}",
    ]
}

/// Free text with at least one non-whitespace character.
pub fn nonblank_text() -> impl Strategy<Value = String> {
    ("[ -~]{0,8}", "[!-~]", "[ -~]{0,8}").prop_map(|(a, b, c)| format!("{a}{b}{c}"))
}

/// A finite decimal whose `Display` form re-lexes as a number.
pub fn safe_number() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-1_000_000i64..1_000_000).prop_map(|n| n as f64),
        (-1_000_000_000i64..1_000_000_000).prop_map(|n| n as f64 / 1000.0),
    ]
}

pub fn duration() -> impl Strategy<Value = DurationSpec> {
    (0u64..10_000_000).prop_map(DurationSpec::from_seconds)
}

pub fn date() -> impl Strategy<Value = NaiveDate> {
    (1990i32..2100, 1u32..=12, 1u32..=28)
        .prop_map(|(y, m, d)| NaiveDate::from_ymd_opt(y, m, d).expect("in range"))
}

pub fn confidence() -> impl Strategy<Value = ConfidenceSpec> {
    (
        word(),
        select(&["<", "<=", ">", ">=", "="][..]),
        safe_number(),
        option::of(word()),
        option::of(word()),
    )
        .prop_map(|(metric, cmp, value, unit, condition)| {
            radai_core::parse_confidence(&format!(
                "{metric} {cmp} {value}{}{}",
                unit.map(|u| format!(" {u}")).unwrap_or_default(),
                condition.map(|c| format!(" @ {c}")).unwrap_or_default(),
            ))
            .expect("generated confidence expressions are well-formed")
        })
}

/// A scalar extra value that re-lexes to itself.
fn scalar_value() -> impl Strategy<Value = Value> {
    prop_oneof![
        word().prop_map(Value::Token),
        free_text().prop_map(Value::Str),
        safe_number().prop_map(Value::Num),
        date().prop_map(Value::Date),
        duration().prop_map(Value::Duration),
        any::<bool>().prop_map(Value::Bool),
    ]
}

/// Unknown-key entries: keys are prefixed so they can never collide with a
/// schema key, and are unique within the entity.
pub fn extras() -> impl Strategy<Value = Vec<(String, Value)>> {
    prop::collection::btree_map(
        "x-[a-z0-9]{1,6}",
        prop_oneof![
            3 => scalar_value(),
            1 => prop::collection::vec(scalar_value(), 0..3).prop_map(Value::List),
        ],
        0..3,
    )
    .prop_map(|m| m.into_iter().collect())
}

fn gate() -> impl Strategy<Value = QualityGate> {
    (
        option::of(select(GateCheck::ALL)),
        option::of(confidence()),
        option::of(select(GateAction::ALL)),
    )
        .prop_filter_map("an empty gate has no text form", |(check, threshold, on_failure)| {
            if check.is_none() && threshold.is_none() && on_failure.is_none() {
                return None;
            }
            Some(QualityGate {
                check,
                threshold,
                on_failure,
            })
        })
}

fn region_contract() -> impl Strategy<Value = RegionContract> {
    (
        option::of(confidence()),
        option::of(free_text()),
        option::of(free_text()),
    )
        .prop_filter_map("an empty contract has no text form", |(c, f, d)| {
            if c.is_none() && f.is_none() && d.is_none() {
                return None;
            }
            Some(RegionContract {
                confidence: c,
                fallback: f,
                degradation: d,
            })
        })
}

fn scenario_source() -> impl Strategy<Value = ScenarioSource> {
    prop_oneof![
        Just(ScenarioSource::DataDrift),
        Just(ScenarioSource::ModelStaleness),
        Just(ScenarioSource::AdversarialInput),
        free_text().prop_map(ScenarioSource::Other),
    ]
}

fn attachment_kind() -> impl Strategy<Value = AttachmentKind> {
    prop_oneof![
        Just(AttachmentKind::ModelCard),
        Just(AttachmentKind::DataCard),
        Just(AttachmentKind::Hyperparams),
        Just(AttachmentKind::SupplementaryTraining),
        free_text().prop_map(AttachmentKind::Other),
    ]
}

// ---------------------------------------------------------------------------
// Whole documents
// ---------------------------------------------------------------------------

type ElementSpec = (
    String,
    Option<Stereotype>,
    bool,
    Option<RiskClass>,
    Option<RegionContract>,
    Vec<(String, Value)>,
);

type ModelSpec = (
    (Option<String>, Option<String>, Option<String>),
    (Option<usize>, Option<usize>, Option<usize>),
    (
        Option<ConfidenceSpec>,
        Option<ModelStatus>,
        Option<String>,
        Option<NaiveDate>,
    ),
    Vec<(String, Value)>,
);

type StageSpec = (
    usize,
    StageKind,
    u32,
    Vec<QualityGate>,
    Vec<usize>,
    Vec<usize>,
    Vec<(String, Value)>,
);

type BoundarySpec = (
    (usize, usize),
    (
        Option<OutputType>,
        Option<ConfidenceSpec>,
        Option<DurationSpec>,
        Option<FallbackBehavior>,
        Option<String>,
    ),
    Vec<(String, Value)>,
);

type CellSpec = (
    usize,
    Concern,
    String,
    Option<ConfidenceSpec>,
    DurationSpec,
    String,
    Vec<(String, Value)>,
);

type AdrSpec = (
    (String, AdrStatus),
    (Option<String>, Option<String>, Option<String>),
    (Vec<String>, Option<String>, Option<String>, Option<String>),
    (Option<String>, Option<String>, Option<String>),
    Vec<(String, Value)>,
);

type ScenarioSpec = (
    ScenarioSource,
    String,
    ScenarioEnvironment,
    String,
    Option<DurationSpec>,
    Vec<(String, Value)>,
);

type DebtSpec = (
    DebtCategory,
    Vec<usize>,
    DebtSeverity,
    String,
    String,
    DebtStatus,
    Vec<(String, Value)>,
);

type OpsSpec = (
    Option<Vec<(usize, Vec<String>, ConfidenceSpec)>>,
    Option<(Vec<RetrainingTrigger>, Option<AutomationLevel>, Option<String>)>,
    Option<(
        Option<DeploymentStrategy>,
        Option<String>,
        Option<Vec<(String, f64)>>,
    )>,
    Option<(Option<String>, Option<u64>, Option<String>)>,
    Vec<(String, Value)>,
);

type EdgeSpec = (
    (usize, usize),
    Option<String>,
    Option<DurationSpec>,
    Option<PrivacyClass>,
    Vec<(String, Value)>,
);

fn element_specs() -> impl Strategy<Value = Vec<ElementSpec>> {
    prop::collection::vec(
        (
            free_text(),
            option::of(select(Stereotype::ALL)),
            any::<bool>(),
            option::of(select(RiskClass::ALL)),
            option::of(region_contract()),
            extras(),
        ),
        0..6,
    )
}

fn model_specs() -> impl Strategy<Value = Vec<ModelSpec>> {
    prop::collection::vec(
        (
            (
                option::of(free_text()),
                option::of(free_text()),
                option::of("[0-9a-f]{8,16}"),
            ),
            (
                option::of(any::<usize>()),
                option::of(any::<usize>()),
                option::of(any::<usize>()),
            ),
            (
                option::of(confidence()),
                option::of(select(ModelStatus::ALL)),
                option::of(free_text()),
                option::of(date()),
            ),
            extras(),
        ),
        0..4,
    )
}

fn stage_specs() -> impl Strategy<Value = Vec<StageSpec>> {
    prop::collection::vec(
        (
            any::<usize>(),
            select(StageKind::ALL),
            0u32..100,
            prop::collection::vec(gate(), 0..3),
            prop::collection::vec(any::<usize>(), 0..3),
            prop::collection::vec(any::<usize>(), 0..3),
            extras(),
        ),
        0..4,
    )
}

fn ops_spec() -> impl Strategy<Value = OpsSpec> {
    (
        option::of(prop::collection::vec(
            (
                any::<usize>(),
                prop::collection::vec(word(), 1..3),
                confidence(),
            ),
            0..3,
        )),
        option::of((
            prop::collection::vec(select(RetrainingTrigger::ALL), 0..3),
            option::of(select(AutomationLevel::ALL)),
            option::of(free_text()),
        )),
        option::of(
            (
                option::of(select(DeploymentStrategy::ALL)),
                option::of(free_text()),
                option::of(prop::collection::vec((word(), safe_number()), 0..3)),
            )
                .prop_filter("an empty policy has no text form", |(s, p, t)| {
                    s.is_some() || p.is_some() || t.is_some()
                }),
        ),
        option::of(
            (
                option::of(free_text()),
                // Depth counts travel through the numeric literal form, so
                // they must stay exactly representable as f64.
                option::of(0u64..100_000),
                option::of(free_text()),
            )
                .prop_filter("an empty policy has no text form", |(t, r, d)| {
                    t.is_some() || r.is_some() || d.is_some()
                }),
        ),
        extras(),
    )
}

/// A canonically ordered document whose references all resolve.
pub fn document() -> impl Strategy<Value = Document> {
    let head = (
        option::of((word(), option::of(free_text()), extras())),
        prop::collection::btree_set(select(Arc42Section::ALL), 0..5),
        element_specs(),
        prop::collection::vec(extras(), 0..3), // pipelines
        prop::collection::vec((attachment_kind(), nonblank_text(), extras()), 0..3),
    );
    let middle = (
        model_specs(),
        stage_specs(),
        prop::collection::vec(select(Concern::ALL).prop_flat_map(cell_spec), 0..6),
        prop::collection::vec(boundary_spec(), 0..3),
        prop::collection::vec(edge_spec(), 0..6),
    );
    let tail = (
        prop::collection::vec(adr_spec(), 0..3),
        prop::collection::vec(scenario_spec(), 0..3),
        prop::collection::vec(debt_spec(), 0..3),
        option::of(ops_spec()),
    );
    (head, middle, tail).prop_map(|(head, middle, tail)| assemble(head, middle, tail))
}

fn cell_spec(concern: Concern) -> impl Strategy<Value = CellSpec> {
    (
        any::<usize>(),
        Just(concern),
        free_text(),
        option::of(confidence()),
        duration(),
        free_text(),
        extras(),
    )
}

fn boundary_spec() -> impl Strategy<Value = BoundarySpec> {
    (
        (any::<usize>(), any::<usize>()),
        (
            option::of(select(OutputType::ALL)),
            option::of(confidence()),
            option::of(duration()),
            option::of(select(FallbackBehavior::ALL)),
            option::of(free_text()),
        ),
        extras(),
    )
}

fn edge_spec() -> impl Strategy<Value = EdgeSpec> {
    (
        (any::<usize>(), any::<usize>()),
        option::of(free_text()),
        option::of(duration()),
        option::of(select(PrivacyClass::ALL)),
        extras(),
    )
}

fn adr_spec() -> impl Strategy<Value = AdrSpec> {
    (
        (free_text(), select(AdrStatus::ALL)),
        (
            option::of(free_text()),
            option::of(free_text()),
            option::of(free_text()),
        ),
        (
            prop::collection::vec(free_text(), 0..3),
            option::of(free_text()),
            option::of(free_text()),
            option::of(free_text()),
        ),
        (
            option::of(free_text()),
            option::of(free_text()),
            option::of(free_text()),
        ),
        extras(),
    )
}

fn scenario_spec() -> impl Strategy<Value = ScenarioSpec> {
    (
        scenario_source(),
        free_text(),
        select(ScenarioEnvironment::ALL),
        free_text(),
        option::of(duration()),
        extras(),
    )
}

fn debt_spec() -> impl Strategy<Value = DebtSpec> {
    (
        select(DebtCategory::ALL),
        prop::collection::vec(any::<usize>(), 1..3),
        select(DebtSeverity::ALL),
        free_text(),
        free_text(),
        select(DebtStatus::ALL),
        extras(),
    )
}

type Head = (
    Option<(String, Option<String>, Vec<(String, Value)>)>,
    std::collections::BTreeSet<Arc42Section>,
    Vec<ElementSpec>,
    Vec<Vec<(String, Value)>>,
    Vec<(AttachmentKind, String, Vec<(String, Value)>)>,
);

type Middle = (
    Vec<ModelSpec>,
    Vec<StageSpec>,
    Vec<CellSpec>,
    Vec<BoundarySpec>,
    Vec<EdgeSpec>,
);

type Tail = (
    Vec<AdrSpec>,
    Vec<ScenarioSpec>,
    Vec<DebtSpec>,
    Option<OpsSpec>,
);

/// Resolves index-based references against the generated pools and sorts
/// every list the way the serializer does.
fn assemble(head: Head, middle: Middle, tail: Tail) -> Document {
    let (meta, sections, element_specs, pipeline_specs, attachment_specs) = head;
    let (model_specs, stage_specs, cell_specs, boundary_specs, edge_specs) = middle;
    let (adr_specs, scenario_specs, debt_specs, ops_spec) = tail;

    let mut doc = Document::default();

    doc.meta = meta.map(|(pid, title, extra)| MetaBlock {
        project_id: ident(&format!("proj-{pid}")),
        title,
        extra,
        span: span(),
    });

    doc.sections = sections
        .into_iter()
        .map(|section| SectionMarker {
            section,
            title: None,
            extra: Vec::new(),
            span: span(),
        })
        .collect();
    doc.sections.sort_by_key(|s| s.section.as_token());

    let element_ids: Vec<Identifier> = (0..element_specs.len())
        .map(|i| ident(&format!("el{i}")))
        .collect();
    doc.elements = element_specs
        .into_iter()
        .enumerate()
        .map(
            |(i, (name, stereotype, deterministic, risk_class, region_contract, extra))| {
                DiagramElement {
                    element_id: element_ids[i].clone(),
                    name,
                    stereotype,
                    deterministic,
                    risk_class,
                    region_contract,
                    extra,
                    span: span(),
                }
            },
        )
        .collect();

    let pipeline_ids: Vec<Identifier> = (0..pipeline_specs.len())
        .map(|i| ident(&format!("pl{i}")))
        .collect();

    let attachment_ids: Vec<Identifier> = (0..attachment_specs.len())
        .map(|i| ident(&format!("at{i}")))
        .collect();
    doc.attachments = attachment_specs
        .into_iter()
        .enumerate()
        .map(|(i, (kind, uri, extra))| AttachmentRef {
            attach_id: attachment_ids[i].clone(),
            kind,
            uri,
            extra,
            span: span(),
        })
        .collect();

    doc.pipelines = pipeline_specs
        .into_iter()
        .enumerate()
        .map(|(i, extra)| Pipeline {
            pipeline_id: pipeline_ids[i].clone(),
            data_cards: pick_all(&attachment_ids, &[i]),
            extra,
            span: span(),
        })
        .collect();

    // Stages require a pipeline to belong to; without one the whole pool is
    // dropped so nothing can reference a stage that is never declared.
    let stage_ids: Vec<Identifier> = if pipeline_ids.is_empty() {
        Vec::new()
    } else {
        (0..stage_specs.len())
            .map(|i| ident(&format!("st{i}")))
            .collect()
    };
    // Stage wiring and lineage endpoints draw from elements and stages.
    let node_ids: Vec<Identifier> = element_ids
        .iter()
        .chain(stage_ids.iter())
        .cloned()
        .collect();

    if !stage_ids.is_empty() {
        doc.stages = stage_specs
            .into_iter()
            .enumerate()
            .map(
                |(i, (pipeline, kind, seq, gates, reads, writes, extra))| PipelineStage {
                    stage_id: stage_ids[i].clone(),
                    pipeline: pick(&pipeline_ids, pipeline).clone(),
                    kind,
                    seq,
                    gates,
                    reads_from: pick_nodes(&node_ids, &reads, &stage_ids[i]),
                    writes_to: pick_nodes(&node_ids, &writes, &stage_ids[i]),
                    extra,
                    span: span(),
                },
            )
            .collect();
    }

    let model_ids: Vec<Identifier> = (0..model_specs.len())
        .map(|i| ident(&format!("md{i}")))
        .collect();
    doc.models = model_specs
        .into_iter()
        .enumerate()
        .map(|(i, (texts, refs, rest, extra))| {
            let (version, framework, dataset_hash) = texts;
            let (lineage_ref, hyperparams_ref, model_card) = refs;
            let (primary_metric, status, owner, last_retrained) = rest;
            ModelEntry {
                model_id: model_ids[i].clone(),
                version,
                framework,
                dataset_hash,
                lineage_ref: lineage_ref.and_then(|r| try_pick(&node_ids, r)),
                hyperparams_ref: hyperparams_ref.and_then(|r| try_pick(&attachment_ids, r)),
                primary_metric,
                status,
                owner,
                last_retrained,
                model_card: model_card.and_then(|r| try_pick(&attachment_ids, r)),
                extra,
                span: span(),
            }
        })
        .collect();

    if !element_ids.is_empty() {
        let mut cells: Vec<ConcernCell> = cell_specs
            .into_iter()
            .map(
                |(component, concern, method, threshold, monitoring_frequency, owner, extra)| {
                    ConcernCell {
                        component: pick(&element_ids, component).clone(),
                        concern,
                        method,
                        threshold,
                        monitoring_frequency,
                        owner,
                        extra,
                        span: span(),
                    }
                },
            )
            .collect();
        cells.sort_by_key(|c| (c.component.clone(), c.concern.as_token()));
        cells.dedup_by_key(|c| (c.component.clone(), c.concern));
        doc.concern_matrix = cells;

        doc.boundaries = boundary_specs
            .into_iter()
            .enumerate()
            .map(|(i, ((consumer, provider), parts, extra))| {
                let (output_type, confidence, update_frequency, fallback, fallback_note) = parts;
                BoundaryContract {
                    interface_id: ident(&format!("bd{i}")),
                    consumer: pick(&element_ids, consumer).clone(),
                    provider: pick(&element_ids, provider).clone(),
                    output_type,
                    confidence,
                    update_frequency,
                    fallback,
                    fallback_note,
                    extra,
                    span: span(),
                }
            })
            .collect();

        doc.debts = debt_specs
            .into_iter()
            .enumerate()
            .map(
                |(i, (category, components, severity, effort, owner, status, extra))| DebtEntry {
                    debt_id: ident(&format!("db{i}")),
                    category,
                    components: pick_all(&element_ids, &components),
                    severity,
                    effort,
                    owner,
                    status,
                    extra,
                    span: span(),
                },
            )
            .collect();
    }

    if node_ids.len() >= 2 {
        let mut edges: Vec<LineageEdge> = edge_specs
            .into_iter()
            .filter_map(|((from, to), schema_note, freshness, privacy_class, extra)| {
                let from = pick(&node_ids, from).clone();
                let to = pick(&node_ids, to).clone();
                if from == to {
                    return None;
                }
                Some(LineageEdge {
                    from,
                    to,
                    schema_note,
                    freshness,
                    privacy_class,
                    extra,
                    span: span(),
                })
            })
            .collect();
        let key = |e: &LineageEdge| {
            (
                e.from.clone(),
                e.to.clone(),
                e.schema_note.clone(),
                e.freshness.map(|f| f.seconds()),
                e.privacy_class.map(|p| p.as_token()),
            )
        };
        edges.sort_by_key(key);
        edges.dedup_by_key(|e| key(e));
        doc.lineage_edges = edges;
    }

    doc.adrs = adr_specs
        .into_iter()
        .enumerate()
        .map(|(i, (core, texts, ai_a, ai_b, extra))| {
            let (title, status) = core;
            let (context, decision, consequences) = texts;
            let (model_alternatives, dataset, fairness_bias, model_lifetime) = ai_a;
            let (retraining_trigger, explainability, regulatory) = ai_b;
            AiAdr {
                adr_id: ident(&format!("ad{i}")),
                title,
                status,
                context,
                decision,
                consequences,
                model_alternatives,
                dataset,
                fairness_bias,
                model_lifetime,
                retraining_trigger,
                explainability,
                regulatory,
                extra,
                span: span(),
            }
        })
        .collect();

    doc.scenarios = scenario_specs
        .into_iter()
        .enumerate()
        .map(
            |(i, (source, stimulus, environment, response, response_deadline, extra))| {
                QualityScenario {
                    scenario_id: ident(&format!("sc{i}")),
                    source,
                    stimulus,
                    environment,
                    response,
                    response_deadline,
                    extra,
                    span: span(),
                }
            },
        )
        .collect();

    doc.ops_view = ops_spec.map(|(monitoring, retraining, deployment, rollback, extra)| {
        OperationalAiView {
            monitoring: monitoring.map(|entries| {
                entries
                    .into_iter()
                    .filter_map(|(model, metrics, alert_threshold)| {
                        if model_ids.is_empty() {
                            return None;
                        }
                        Some(MonitorEntry {
                            model_id: pick(&model_ids, model).clone(),
                            metrics,
                            alert_threshold,
                        })
                    })
                    .collect()
            }),
            retraining: retraining.map(|(triggers, automation, approval)| RetrainingPolicy {
                triggers,
                automation,
                approval,
            }),
            deployment: deployment.map(|(strategy, promotion_criteria, traffic_split)| {
                DeploymentPolicy {
                    strategy,
                    promotion_criteria,
                    traffic_split: traffic_split.map(|slices| {
                        slices
                            .into_iter()
                            .map(|(label, percent)| TrafficSlice { label, percent })
                            .collect()
                    }),
                }
            }),
            rollback: rollback.map(|(triggers, retention_depth, downstream_note)| {
                RollbackPolicy {
                    triggers,
                    retention_depth,
                    downstream_note,
                }
            }),
            extra,
            span: span(),
        }
    });

    doc
}

fn pick<'a>(pool: &'a [Identifier], index: usize) -> &'a Identifier {
    &pool[index % pool.len()]
}

fn try_pick(pool: &[Identifier], index: usize) -> Option<Identifier> {
    if pool.is_empty() {
        None
    } else {
        Some(pick(pool, index).clone())
    }
}

/// Resolves indices into distinct pool members, preserving pick order.
fn pick_all(pool: &[Identifier], indices: &[usize]) -> Vec<Identifier> {
    let mut out: Vec<Identifier> = Vec::new();
    for &i in indices {
        if pool.is_empty() {
            break;
        }
        let candidate = pick(pool, i);
        if !out.contains(candidate) {
            out.push(candidate.clone());
        }
    }
    out
}

/// Like [`pick_all`] but never yields `this` (stage wiring may not point at
/// the stage itself).
fn pick_nodes(pool: &[Identifier], indices: &[usize], this: &Identifier) -> Vec<Identifier> {
    pick_all(pool, indices)
        .into_iter()
        .filter(|id| id != this)
        .collect()
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// A random digraph over `1..=max_nodes` nodes without self-loops, as
/// (node count, edge list).
pub fn digraph(max_nodes: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_nodes).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let edges = if pairs.is_empty() {
            Just(Vec::new()).boxed()
        } else {
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()).boxed()
        };
        (Just(n), edges)
    })
}

/// Encodes a digraph as a document of elements and lineage edges so it can
/// drive the lineage-graph analyses. `deterministic` assigns partition
/// flags per node index.
pub fn graph_document(n: usize, edges: &[(usize, usize)], deterministic: &[bool]) -> Document {
    let mut doc = Document::default();
    for i in 0..n {
        doc.elements.push(DiagramElement {
            element_id: ident(&format!("n{i}")),
            name: format!("Node {i}"),
            stereotype: None,
            deterministic: deterministic.get(i).copied().unwrap_or(false),
            risk_class: None,
            region_contract: None,
            extra: Vec::new(),
            span: span(),
        });
    }
    for &(a, b) in edges {
        doc.lineage_edges.push(LineageEdge {
            from: ident(&format!("n{a}")),
            to: ident(&format!("n{b}")),
            schema_note: None,
            freshness: None,
            privacy_class: None,
            extra: Vec::new(),
            span: span(),
        });
    }
    doc
}

// ---------------------------------------------------------------------------
// Rater matrices
// ---------------------------------------------------------------------------

/// A well-formed rater matrix: 1..=12 items, 2..=6 raters, scores 0..=2.
pub fn rater_matrix() -> impl Strategy<Value = RaterMatrix> {
    (1usize..=12, 2usize..=6)
        .prop_flat_map(|(items, raters)| {
            prop::collection::vec(prop::collection::vec(0u8..=2, raters..=raters), items..=items)
        })
        .prop_map(|rows| RaterMatrix::new(rows).expect("dimensions are valid by construction"))
}

// ---------------------------------------------------------------------------
// Score comparison helper
// ---------------------------------------------------------------------------

/// Asserts `lhs` ≤ `rhs` pointwise across categories and in total.
pub fn assert_score_le(lhs: &ComplianceScore, rhs: &ComplianceScore) {
    for (a, b) in lhs.categories.iter().zip(&rhs.categories) {
        assert!(
            a.score <= b.score,
            "category {} regressed: {} > {}",
            a.index,
            a.score,
            b.score
        );
    }
    assert!(lhs.total <= rhs.total);
}
