//! Aggregation of independent rater panels: per-rater totals, modal scores
//! per item, and chance-corrected agreement (Fleiss' kappa) on the
//! three-point addressability scale.

/// Ratings from `R` raters over `N` items on the 0/1/2 scale, stored as
/// `N` rows of `R` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaterMatrix {
    ratings: Vec<Vec<u8>>,
}

/// Error for a matrix that cannot be aggregated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rater matrix: {0}")]
pub struct InvalidRaterMatrix(pub String);

impl RaterMatrix {
    /// Validates shape (≥1 item, ≥2 raters, rectangular) and the 0..=2
    /// value range.
    pub fn new(ratings: Vec<Vec<u8>>) -> Result<RaterMatrix, InvalidRaterMatrix> {
        if ratings.is_empty() {
            return Err(InvalidRaterMatrix("need at least one rated item".to_string()));
        }
        let width = ratings[0].len();
        if width < 2 {
            return Err(InvalidRaterMatrix("need at least two raters".to_string()));
        }
        for (i, row) in ratings.iter().enumerate() {
            if row.len() != width {
                return Err(InvalidRaterMatrix(format!(
                    "item {} has {} ratings but the first item has {width}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| **v > 2) {
                return Err(InvalidRaterMatrix(format!(
                    "item {} contains rating {bad}, outside the 0..=2 scale",
                    i + 1
                )));
            }
        }
        Ok(RaterMatrix { ratings })
    }

    pub fn raters(&self) -> usize {
        self.ratings[0].len()
    }

    pub fn items(&self) -> usize {
        self.ratings.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.ratings
    }
}

/// Aggregate statistics over a rater panel.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RaterSummary {
    /// Each rater's ratings summed over all items.
    pub per_rater_totals: Vec<u32>,
    pub mean_total: f64,
    /// Population standard deviation of the per-rater totals.
    pub stddev_total: f64,
    /// Most frequent rating per item; ties break toward the lower score.
    pub modal_per_item: Vec<u8>,
}

/// Sums each rater's column, reports mean and population spread of those
/// totals, and takes the per-item mode with ties broken conservatively
/// (toward the lower score).
pub fn aggregate_raters(m: &RaterMatrix) -> RaterSummary {
    let raters = m.raters();
    let mut per_rater_totals = vec![0u32; raters];
    for row in m.rows() {
        for (total, &v) in per_rater_totals.iter_mut().zip(row) {
            *total += u32::from(v);
        }
    }

    let mean_total =
        per_rater_totals.iter().map(|t| f64::from(*t)).sum::<f64>() / raters as f64;
    let variance = per_rater_totals
        .iter()
        .map(|t| {
            let d = f64::from(*t) - mean_total;
            d * d
        })
        .sum::<f64>()
        / raters as f64;

    let modal_per_item = m
        .rows()
        .iter()
        .map(|row| {
            let mut counts = [0usize; 3];
            for &v in row {
                counts[usize::from(v)] += 1;
            }
            // Scanning upward keeps the lowest score on ties.
            let mut best = 0u8;
            for (score, &count) in counts.iter().enumerate() {
                if count > counts[usize::from(best)] {
                    best = score as u8;
                }
            }
            best
        })
        .collect();

    RaterSummary {
        per_rater_totals,
        mean_total,
        stddev_total: variance.sqrt(),
        modal_per_item,
    }
}

/// Fleiss' kappa and its degenerate-input marker.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KappaOutcome {
    /// Chance-corrected agreement in `[-1, 1]`.
    pub value: f64,
    /// True when expected agreement is 1 (all raters used a single score
    /// for every item), where the formula is 0/0; reported as 1 by
    /// convention since observed agreement is also perfect.
    pub degenerate: bool,
}

/// Chance-corrected inter-rater agreement over the three rating categories.
///
/// For item `i` with `n` raters and `n_ij` votes for category `j`, observed
/// agreement is `P_i = (Σ_j n_ij² − n) / (n(n−1))`; expected agreement is
/// `Σ_j p_j²` with `p_j` the overall share of votes for category `j`; kappa
/// is `(P̄ − P̄e) / (1 − P̄e)`.
pub fn fleiss_kappa(m: &RaterMatrix) -> KappaOutcome {
    let n = m.raters() as f64;
    let items = m.items() as f64;

    let mut category_votes = [0.0f64; 3];
    let mut p_bar = 0.0f64;
    for row in m.rows() {
        let mut counts = [0.0f64; 3];
        for &v in row {
            counts[usize::from(v)] += 1.0;
        }
        for (votes, c) in category_votes.iter_mut().zip(counts) {
            *votes += c;
        }
        let sum_sq: f64 = counts.iter().map(|c| c * c).sum();
        p_bar += (sum_sq - n) / (n * (n - 1.0));
    }
    p_bar /= items;

    let p_e: f64 = category_votes
        .iter()
        .map(|votes| {
            let share = votes / (items * n);
            share * share
        })
        .sum();

    if (1.0 - p_e).abs() < 1e-12 {
        return KappaOutcome {
            value: 1.0,
            degenerate: true,
        };
    }
    KappaOutcome {
        value: (p_bar - p_e) / (1.0 - p_e),
        degenerate: false,
    }
}
