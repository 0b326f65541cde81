//! Machine-readable pass/fail records for inequality scans.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// One violating cell of a scan.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Violation {
    /// Integer coordinates of the cell, in the scan's own coordinate order
    /// (for table scans `[j, x]`; for grid scans, grid indices).
    pub cell: Vec<i64>,
    /// Human-readable statement of what failed, with exact values.
    pub detail: String,
}

/// Outcome of one exhaustive or sampled inequality scan.
///
/// `worst_margin_num` / `worst_margin_den` encode the most adverse signed
/// margin seen across all cells, as a fraction in lowest terms. A margin is
/// normalized so that negative means "violated". Exact-arithmetic scans
/// store the exact rational; floating-point scans store the shortest decimal
/// that round-trips the double over a denominator of `"1"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    /// Stable identifier of the inequality family being scanned.
    pub lemma: String,
    /// Dimension scanned, when the scan is per-dimension.
    pub n: Option<u32>,
    /// Scan parameters as exact literal strings, sorted by key.
    pub params: BTreeMap<String, String>,
    /// Number of cells compared.
    pub cells_checked: u64,
    /// All violating cells (empty on pass).
    pub violations: Vec<Violation>,
    /// Numerator of the worst (most negative) margin.
    pub worst_margin_num: String,
    /// Denominator of the worst margin (`"1"` for floating-point scans).
    pub worst_margin_den: String,
    /// Cell achieving the worst margin, if any cell was checked.
    pub worst_cell: Option<Vec<i64>>,
}

impl VerificationReport {
    /// New empty report: zero cells, no violations, margin `0/1`.
    pub fn new(lemma: impl Into<String>, n: Option<u32>) -> Self {
        VerificationReport {
            lemma: lemma.into(),
            n,
            params: BTreeMap::new(),
            cells_checked: 0,
            violations: Vec::new(),
            worst_margin_num: "0".to_string(),
            worst_margin_den: "1".to_string(),
            worst_cell: None,
        }
    }

    /// Record a named parameter as its exact literal.
    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Store an exact rational worst margin.
    pub fn set_worst_margin_rational(&mut self, m: &BigRational, cell: Vec<i64>) {
        self.worst_margin_num = m.numer().to_string();
        self.worst_margin_den = m.denom().to_string();
        self.worst_cell = Some(cell);
    }

    /// Store a floating-point worst margin (denominator pinned to 1).
    pub fn set_worst_margin_f64(&mut self, m: f64, cell: Vec<i64>) {
        self.worst_margin_num = format_f64(m);
        self.worst_margin_den = "1".to_string();
        self.worst_cell = Some(cell);
    }

    /// True when no cell violated its inequality.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Worst margin as a double, for display and threshold tests.
    pub fn worst_margin_f64(&self) -> f64 {
        let num: f64 = self.worst_margin_num.parse().unwrap_or(f64::NAN);
        let den: f64 = self.worst_margin_den.parse().unwrap_or(f64::NAN);
        num / den
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{}{}: {} cells, {} violations, worst margin {}",
            self.lemma,
            match self.n {
                Some(n) => format!(" (n={n})"),
                None => String::new(),
            },
            self.cells_checked,
            self.violations.len(),
            if self.worst_margin_den == "1" {
                self.worst_margin_num.clone()
            } else {
                format!("{}/{}", self.worst_margin_num, self.worst_margin_den)
            }
        )
    }
}

/// Shortest decimal representation that parses back to exactly `v`.
pub fn format_f64(v: f64) -> String {
    let mut s = format!("{v}");
    if s.parse::<f64>() != Ok(v) {
        s = format!("{v:e}");
    }
    debug_assert_eq!(s.parse::<f64>().ok(), Some(v));
    s
}

/// Helper that folds per-cell margins into report fields.
///
/// Tracks the minimum margin with a deterministic tie-break (first cell in
/// visit order wins), independent of any parallel scheduling, provided cells
/// are folded in a fixed order.
pub struct MarginTracker<M: PartialOrd + Clone> {
    best: Option<(M, Vec<i64>)>,
}

impl<M: PartialOrd + Clone> MarginTracker<M> {
    pub fn new() -> Self {
        MarginTracker { best: None }
    }

    /// Observe one cell's margin; keeps the strictly smallest.
    pub fn observe(&mut self, margin: M, cell: &[i64]) {
        let better = match &self.best {
            None => true,
            Some((m, _)) => margin < *m,
        };
        if better {
            self.best = Some((margin, cell.to_vec()));
        }
    }

    pub fn into_best(self) -> Option<(M, Vec<i64>)> {
        self.best
    }
}

impl<M: PartialOrd + Clone> Default for MarginTracker<M> {
    fn default() -> Self {
        Self::new()
    }
}
