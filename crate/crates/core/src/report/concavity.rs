use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{instance_miou, EvalRecord};
use crate::error::{Error, Result};

/// Per-dataset min-max normalization of the concavity index into `[0, 1]`.
/// A dataset with a single distinct value maps every record to 0.
pub fn normalize_concavity(records: &mut [EvalRecord]) {
    let mut ranges: BTreeMap<String, (f64, f64)> = BTreeMap::new();
    for r in records.iter() {
        let e = ranges.entry(r.dataset_id.clone()).or_insert((f64::INFINITY, f64::NEG_INFINITY));
        e.0 = e.0.min(r.concavity);
        e.1 = e.1.max(r.concavity);
    }
    for r in records.iter_mut() {
        let (lo, hi) = ranges[&r.dataset_id];
        let norm = if hi > lo { ((r.concavity - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.0 };
        r.normalized_concavity = Some(norm);
    }
}

/// Half-open `[lower, upper)` bin of normalized concavity; the last bin of a
/// partition also includes 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcavityBin {
    pub lower: f64,
    pub upper: f64,
    pub label: String,
}

impl ConcavityBin {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper, label: format!("[{lower:.2},{upper:.2}]") }
    }
}

pub fn quartile_bins() -> Vec<ConcavityBin> {
    edges_to_bins(&[0.0, 0.25, 0.5, 0.75, 1.0])
}

fn edges_to_bins(edges: &[f64]) -> Vec<ConcavityBin> {
    edges.windows(2).map(|w| ConcavityBin::new(w[0], w[1])).collect()
}

/// `"quartile"` or a comma-separated list of ascending edges from 0 to 1.
pub fn parse_bins(text: &str) -> Result<Vec<ConcavityBin>> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("quartile") || text.eq_ignore_ascii_case("quartiles") {
        return Ok(quartile_bins());
    }
    let edges = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Error::InvalidBins(format!("bad edge `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let bins = edges_to_bins(&edges);
    validate_bins(&bins)?;
    Ok(bins)
}

/// Bins must tile `[0, 1]` in ascending order with no gaps or overlaps.
pub fn validate_bins(bins: &[ConcavityBin]) -> Result<()> {
    let first = bins.first().ok_or_else(|| Error::InvalidBins("no bins".into()))?;
    if first.lower != 0.0 {
        return Err(Error::InvalidBins(format!("first bin starts at {}, not 0", first.lower)));
    }
    if bins.last().map(|b| b.upper) != Some(1.0) {
        return Err(Error::InvalidBins("last bin must end at 1".into()));
    }
    for b in bins {
        if b.lower.partial_cmp(&b.upper) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidBins(format!("empty bin {}", b.label)));
        }
    }
    for w in bins.windows(2) {
        if w[0].upper != w[1].lower {
            let kind = if w[1].lower < w[0].upper { "overlap" } else { "gap" };
            return Err(Error::InvalidBins(format!("{kind} between {} and {}", w[0].label, w[1].label)));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinSummary {
    pub bin: ConcavityBin,
    pub n: usize,
    /// `None` when no record falls in the bin.
    pub miou: Option<f64>,
}

fn bin_index(bins: &[ConcavityBin], value: f64) -> usize {
    let last = bins.len() - 1;
    bins.iter().position(|b| value >= b.lower && value < b.upper).unwrap_or(last)
}

/// Assigns records to bins by normalized concavity and computes per-bin mIoU.
pub fn stratify_concavity(records: &[EvalRecord], bins: &[ConcavityBin]) -> Result<Vec<BinSummary>> {
    validate_bins(bins)?;
    let mut grouped: Vec<Vec<EvalRecord>> = vec![Vec::new(); bins.len()];
    for r in records {
        let v = r.normalized_concavity.ok_or_else(|| {
            Error::InvalidParams(format!("record {} has no normalized concavity", r.instance_id))
        })?;
        grouped[bin_index(bins, v)].push(r.clone());
    }
    bins.iter()
        .zip(grouped)
        .map(|(bin, rs)| {
            let miou = if rs.is_empty() { None } else { Some(instance_miou(&rs)?) };
            Ok(BinSummary { bin: bin.clone(), n: rs.len(), miou })
        })
        .collect()
}
