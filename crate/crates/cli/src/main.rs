//! `radai` — lint, score, trace and draw AI-augmented architecture
//! documents written in RADL.
//!
//! Exit codes: 0 success/clean, 1 warnings under `--strict`, 2 findings of
//! error severity or a failed `--min-percent` gate, 3 unreadable input or a
//! document that does not parse/resolve, 64 usage errors.

mod inputs;
mod raters;
mod report;
mod scaffold;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::builder::ArgGroup;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use radai_core::{
    concern_coverage, emit, lint, score_document, score_profile, ConcernStatus, DiagramFormat,
    DiagramRequest, DiagramView, Document, FrameworkProfile, LineageGraph, LintProfile,
    NotationProfile, Severity,
};

use crate::inputs::{load_resolved, load_unresolved, LoadError};
use crate::report::{print_json, print_parse_errors, print_structure_errors, render_diagnostic};

const EXIT_CLEAN: u8 = 0;
const EXIT_WARNINGS: u8 = 1;
const EXIT_FINDINGS: u8 = 2;
const EXIT_BROKEN_INPUT: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "radai",
    version,
    about = "Documentation-as-code toolchain for AI-augmented architecture documents (RADL)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scaffold a starter document: one template file per block kind.
    Init {
        /// Directory to create the templates in.
        dir: PathBuf,
    },
    /// Check a document against the rule registry.
    Lint {
        /// RADL files or directories (merged into one document).
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Adoption stage controlling which rules run.
        #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
        profile: ProfileArg,
        /// Exit 1 when warnings remain.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report requirement-category addressability (0/1/2 per category).
    #[command(group = ArgGroup::new("source").required(true).args(["profile", "raters", "paths"]))]
    Score {
        /// RADL files or directories to score in document mode.
        paths: Vec<PathBuf>,
        /// Score a built-in notation profile instead of a document.
        #[arg(long, value_enum)]
        profile: Option<FrameworkArg>,
        /// CSV rating matrix: header row of rater ids, one row per category.
        #[arg(long, value_name = "CSV")]
        raters: Option<PathBuf>,
        /// Exit 2 when the (modal) percent falls below this gate.
        #[arg(long, value_name = "N")]
        min_percent: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report coverage of the ten AI-specific architecture concerns.
    Concerns {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Evaluate the annotated document or its plain-notation projection.
        #[arg(long, value_enum, default_value_t = NotationArg::Radai)]
        profile: NotationArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Trace the data-lineage graph.
    #[command(group = ArgGroup::new("mode").required(true).args(["impact", "cycles", "crossings"]))]
    Lineage {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Everything downstream of this node.
        #[arg(long, value_name = "ID")]
        impact: Option<String>,
        /// Elementary feedback loops.
        #[arg(long)]
        cycles: bool,
        /// Edges crossing the deterministic/non-deterministic partition.
        #[arg(long)]
        crossings: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render a view of the document as PlantUML or Graphviz text.
    Diagram {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(long, value_enum, default_value_t = DiagramFormatArg::Puml)]
        format: DiagramFormatArg,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ProfileArg {
    Stage1,
    Stage2,
    Stage3,
    Full,
}

impl From<ProfileArg> for LintProfile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Stage1 => LintProfile::Stage1,
            ProfileArg::Stage2 => LintProfile::Stage2,
            ProfileArg::Stage3 => LintProfile::Stage3,
            ProfileArg::Full => LintProfile::Full,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FrameworkArg {
    #[value(name = "std_arc42")]
    StdArc42,
    #[value(name = "std_c4")]
    StdC4,
    #[value(name = "radai_arc42")]
    RadaiArc42,
    #[value(name = "radai_c4")]
    RadaiC4,
}

impl From<FrameworkArg> for FrameworkProfile {
    fn from(p: FrameworkArg) -> Self {
        match p {
            FrameworkArg::StdArc42 => FrameworkProfile::StdArc42,
            FrameworkArg::StdC4 => FrameworkProfile::StdC4,
            FrameworkArg::RadaiArc42 => FrameworkProfile::RadaiArc42,
            FrameworkArg::RadaiC4 => FrameworkProfile::RadaiC4,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum NotationArg {
    Standard,
    Radai,
}

impl From<NotationArg> for NotationProfile {
    fn from(p: NotationArg) -> Self {
        match p {
            NotationArg::Standard => NotationProfile::Standard,
            NotationArg::Radai => NotationProfile::Radai,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ViewArg {
    Context,
    Component,
    Lineage,
    Boundary,
}

impl From<ViewArg> for DiagramView {
    fn from(v: ViewArg) -> Self {
        match v {
            ViewArg::Context => DiagramView::Context,
            ViewArg::Component => DiagramView::Component,
            ViewArg::Lineage => DiagramView::Lineage,
            ViewArg::Boundary => DiagramView::Boundary,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum DiagramFormatArg {
    Puml,
    Dot,
}

impl From<DiagramFormatArg> for DiagramFormat {
    fn from(f: DiagramFormatArg) -> Self {
        match f {
            DiagramFormatArg::Puml => DiagramFormat::Puml,
            DiagramFormatArg::Dot => DiagramFormat::Dot,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version land here too and are not usage errors.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_CLEAN };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_BROKEN_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Init { dir } => {
            scaffold::write_templates(&dir)?;
            println!(
                "initialized {} template files in {}",
                scaffold::TEMPLATES.len(),
                dir.display()
            );
            Ok(EXIT_CLEAN)
        }
        Command::Lint {
            paths,
            profile,
            strict,
            format,
        } => run_lint(&paths, profile.into(), strict, format),
        Command::Score {
            paths,
            profile,
            raters,
            min_percent,
            format,
        } => run_score(&paths, profile, raters, min_percent, format),
        Command::Concerns {
            paths,
            profile,
            format,
        } => run_concerns(&paths, profile.into(), format),
        Command::Lineage {
            paths,
            impact,
            cycles,
            crossings,
            format,
        } => run_lineage(&paths, impact, cycles, crossings, format),
        Command::Diagram {
            paths,
            view,
            format,
            out,
        } => run_diagram(&paths, view.into(), format.into(), out),
    }
}

/// Unwraps a loaded document, reporting whatever stopped it and returning
/// the broken-input exit code instead.
fn unwrap_loaded(loaded: Result<Document, LoadError>) -> Result<Document, u8> {
    match loaded {
        Ok(doc) => Ok(doc),
        Err(LoadError::Parse(errors)) => {
            print_parse_errors(&errors);
            Err(EXIT_BROKEN_INPUT)
        }
        Err(LoadError::Structure(diags)) => {
            print_structure_errors(&diags);
            Err(EXIT_BROKEN_INPUT)
        }
    }
}

fn run_lint(paths: &[PathBuf], profile: LintProfile, strict: bool, format: Format) -> Result<u8> {
    let doc = match unwrap_loaded(load_unresolved(paths)?) {
        Ok(doc) => doc,
        Err(code) => return Ok(code),
    };
    let diagnostics = lint(&doc, profile);
    let count = |s: Severity| diagnostics.iter().filter(|d| d.severity == s).count();
    let (errors, warnings, infos) = (
        count(Severity::Error),
        count(Severity::Warning),
        count(Severity::Info),
    );

    match format {
        Format::Json => print_json(&json!({
            "diagnostics": diagnostics,
            "counts": { "error": errors, "warning": warnings, "info": infos },
        })),
        Format::Text => {
            let color = report::use_color();
            for d in &diagnostics {
                println!("{}", render_diagnostic(d, color));
            }
            println!(
                "{} error(s), {} warning(s), {} info message(s)",
                errors, warnings, infos
            );
        }
    }

    Ok(if errors > 0 {
        EXIT_FINDINGS
    } else if warnings > 0 && strict {
        EXIT_WARNINGS
    } else {
        EXIT_CLEAN
    })
}

fn run_score(
    paths: &[PathBuf],
    profile: Option<FrameworkArg>,
    raters: Option<PathBuf>,
    min_percent: Option<u32>,
    format: Format,
) -> Result<u8> {
    if let Some(csv) = raters {
        return raters::run(&csv, min_percent, format == Format::Json);
    }

    let (score, label) = if let Some(arg) = profile {
        let fp: FrameworkProfile = arg.into();
        (score_profile(fp), Some(fp.as_token()))
    } else {
        let doc = match unwrap_loaded(load_resolved(paths)?) {
            Ok(doc) => doc,
            Err(code) => return Ok(code),
        };
        (score_document(&doc), None)
    };

    match format {
        Format::Json => {
            let mut value = serde_json::to_value(&score)?;
            let object = value.as_object_mut().expect("score serializes as an object");
            object.insert("basis".into(), json!("modal"));
            if let Some(name) = label {
                object.insert("profile".into(), json!(name));
            }
            print_json(&value);
        }
        Format::Text => {
            match label {
                Some(name) => println!("mode: profile ({name})"),
                None => println!("mode: document"),
            }
            println!("basis: modal rating per category (supply --raters for mean-based totals)");
            for c in &score.categories {
                let missing = if c.missing.is_empty() {
                    String::new()
                } else {
                    format!("  (missing: {})", c.missing.join(", "))
                };
                println!("{:>2}. {:<38} {}{}", c.index, c.name, c.score, missing);
            }
            println!("total: {}/20 ({}%)", score.total, score.percent);
        }
    }

    Ok(gate(score.percent, min_percent))
}

/// Applies the optional `--min-percent` CI gate.
fn gate(percent: u32, min_percent: Option<u32>) -> u8 {
    match min_percent {
        Some(gate) if percent < gate => EXIT_FINDINGS,
        _ => EXIT_CLEAN,
    }
}

fn run_concerns(paths: &[PathBuf], profile: NotationProfile, format: Format) -> Result<u8> {
    let doc = match unwrap_loaded(load_resolved(paths)?) {
        Ok(doc) => doc,
        Err(code) => return Ok(code),
    };
    let coverage = concern_coverage(&doc, profile);
    let counts = coverage.counts();

    match format {
        Format::Json => print_json(&json!({
            "profile": profile.as_token(),
            "concerns": coverage.entries,
            "counts": counts,
        })),
        Format::Text => {
            println!("profile: {}", profile.as_token());
            for entry in &coverage.entries {
                println!(
                    "{:<28} {:<8} {}",
                    entry.concern.as_token(),
                    status_str(entry.status),
                    entry.concern.title()
                );
            }
            println!(
                "full: {}  partial: {}  none: {}",
                counts.full, counts.partial, counts.none
            );
        }
    }
    Ok(EXIT_CLEAN)
}

fn status_str(status: ConcernStatus) -> &'static str {
    match status {
        ConcernStatus::Full => "full",
        ConcernStatus::Partial => "partial",
        ConcernStatus::None => "none",
    }
}

fn run_lineage(
    paths: &[PathBuf],
    impact: Option<String>,
    cycles: bool,
    crossings: bool,
    format: Format,
) -> Result<u8> {
    let doc = match unwrap_loaded(load_resolved(paths)?) {
        Ok(doc) => doc,
        Err(code) => return Ok(code),
    };
    let graph = LineageGraph::from_document(&doc);

    if let Some(start) = impact {
        let start_id = match start.parse() {
            Ok(id) => id,
            Err(e) => {
                eprintln!("error: --impact {start}: {e}");
                return Ok(EXIT_BROKEN_INPUT);
            }
        };
        let Some(reached) = graph.impact(&start_id) else {
            eprintln!("error: `{start}` is not a node of the lineage graph");
            return Ok(EXIT_BROKEN_INPUT);
        };
        let ids: Vec<String> = reached.iter().map(|id| id.to_string()).collect();
        match format {
            Format::Json => print_json(&json!({ "impact": ids })),
            Format::Text => {
                for id in &ids {
                    println!("{id}");
                }
                println!("{} node(s) downstream of {start}", ids.len());
            }
        }
    } else if cycles {
        let report = graph.cycles();
        let loops: Vec<Vec<String>> = report
            .cycles
            .iter()
            .map(|c| c.iter().map(|id| id.to_string()).collect())
            .collect();
        match format {
            Format::Json => print_json(&json!({
                "cycles": loops,
                "truncated": report.truncated,
            })),
            Format::Text => {
                for cycle in &loops {
                    println!("{} -> {}", cycle.join(" -> "), cycle[0]);
                }
                if report.truncated {
                    println!("(enumeration truncated)");
                }
                println!("{} cycle(s)", loops.len());
            }
        }
    } else {
        debug_assert!(crossings, "clap guarantees exactly one mode");
        let pairs = graph.boundary_crossings();
        match format {
            Format::Json => print_json(&json!({
                "crossings": pairs
                    .iter()
                    .map(|(from, to)| json!({ "from": from.to_string(), "to": to.to_string() }))
                    .collect::<Vec<_>>(),
            })),
            Format::Text => {
                for (from, to) in &pairs {
                    println!("{from} -> {to}");
                }
                println!("{} partition crossing(s)", pairs.len());
            }
        }
    }
    Ok(EXIT_CLEAN)
}

fn run_diagram(
    paths: &[PathBuf],
    view: DiagramView,
    format: DiagramFormat,
    out: Option<PathBuf>,
) -> Result<u8> {
    let doc = match unwrap_loaded(load_resolved(paths)?) {
        Ok(doc) => doc,
        Err(code) => return Ok(code),
    };
    let rendered = emit(
        &doc,
        &DiagramRequest {
            view,
            format,
            include_risk_labels: true,
        },
    );
    match out {
        Some(path) => fs::write(&path, rendered)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(EXIT_CLEAN)
}
