//! `score --raters <csv>`: scores from a rating panel instead of a
//! document. The CSV carries one column per rater (header row: rater ids)
//! and one data row per requirement category, ten in total, each cell a
//! 0/1/2 rating. The report labels the modal-based and mean-based totals
//! separately — they answer different questions and rarely agree.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;

use radai_core::{aggregate_raters, fleiss_kappa, RaterMatrix, ANNEX_CATEGORIES, CATEGORY_COUNT};

use crate::report::print_json;

pub struct Panel {
    pub rater_ids: Vec<String>,
    pub matrix: RaterMatrix,
}

/// Parses the panel CSV. Plain `split(',')` is enough here: cells are
/// numeric and rater ids are identifiers, so quoting and embedded commas
/// have no legitimate use.
pub fn parse_csv(text: &str) -> Result<Panel> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().context("rating CSV is empty")?;
    let rater_ids: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
    if rater_ids.len() < 2 {
        bail!("a rating panel needs at least 2 raters, found {}", rater_ids.len());
    }
    if let Some(blank) = rater_ids.iter().position(|id| id.is_empty()) {
        bail!("rater id in header column {} is empty", blank + 1);
    }

    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (row_no, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != rater_ids.len() {
            bail!(
                "row {} has {} cells but the header names {} raters",
                row_no + 2,
                cells.len(),
                rater_ids.len()
            );
        }
        let row: Vec<u8> = cells
            .iter()
            .map(|c| {
                c.parse::<u8>()
                    .ok()
                    .filter(|v| *v <= 2)
                    .with_context(|| format!("row {}: `{c}` is not a 0/1/2 rating", row_no + 2))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.len() != CATEGORY_COUNT {
        bail!(
            "expected one row per requirement category ({CATEGORY_COUNT} rows), found {}",
            rows.len()
        );
    }

    let matrix = RaterMatrix::new(rows).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(Panel { rater_ids, matrix })
}

pub fn run(csv: &Path, min_percent: Option<u32>, json_output: bool) -> Result<u8> {
    let text =
        fs::read_to_string(csv).with_context(|| format!("cannot read {}", csv.display()))?;
    let panel = parse_csv(&text)?;
    let summary = aggregate_raters(&panel.matrix);
    let kappa = fleiss_kappa(&panel.matrix);

    let modal_total: u32 = summary.modal_per_item.iter().map(|&s| u32::from(s)).sum();
    let modal_percent = modal_total * 100 / 20;
    // Round half-up, matching the whole-percent convention of the other
    // score modes.
    let mean_percent = (summary.mean_total * 5.0).round() as u32;

    if json_output {
        print_json(&json!({
            "mode": "raters",
            "raters": panel.rater_ids,
            "modal": {
                "basis": "modal",
                "categories": ANNEX_CATEGORIES
                    .iter()
                    .zip(&summary.modal_per_item)
                    .map(|(cat, score)| json!({
                        "index": cat.index,
                        "name": cat.name,
                        "score": score,
                    }))
                    .collect::<Vec<_>>(),
                "total": modal_total,
                "percent": modal_percent,
            },
            "mean": {
                "basis": "mean",
                "per_rater_totals": summary.per_rater_totals,
                "mean_total": summary.mean_total,
                "stddev_total": summary.stddev_total,
                "percent": mean_percent,
            },
            "kappa": kappa,
        }));
    } else {
        println!(
            "mode: raters ({} raters x {} categories)",
            panel.rater_ids.len(),
            CATEGORY_COUNT
        );
        println!("basis: modal (per-category mode, ties toward the lower score)");
        for (cat, score) in ANNEX_CATEGORIES.iter().zip(&summary.modal_per_item) {
            println!("{:>2}. {:<38} {}", cat.index, cat.name, score);
        }
        println!("modal total: {modal_total}/20 ({modal_percent}%)");
        println!("basis: mean (per-rater totals averaged)");
        println!(
            "per-rater totals: {}",
            summary
                .per_rater_totals
                .iter()
                .zip(&panel.rater_ids)
                .map(|(total, id)| format!("{id}={total}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!(
            "mean total: {:.2}/20 ({mean_percent}%), stddev {:.2}",
            summary.mean_total, summary.stddev_total
        );
        let degenerate = if kappa.degenerate { " (degenerate: single rating everywhere)" } else { "" };
        println!("agreement (Fleiss' kappa): {:.3}{degenerate}", kappa.value);
    }

    Ok(crate::gate(modal_percent, min_percent))
}
