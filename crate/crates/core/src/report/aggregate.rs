use std::collections::BTreeMap;

use super::EvalRecord;
use crate::error::{Error, Result};
use crate::session::SessionStrategy;

fn sorted_sum(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values.iter().sum()
}

/// Mean IoU per class, then the unweighted mean over classes.
///
/// Values are summed in ascending order within each class and classes are
/// visited in id order, so the result does not depend on record order.
pub fn instance_miou(records: &[EvalRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::NoData);
    }
    let mut by_class: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in records {
        by_class.entry(&r.class_id).or_default().push(r.final_iou);
    }
    let class_means: Vec<f64> = by_class.into_values().map(|mut v| sorted_sum(&mut v) / v.len() as f64).collect();
    Ok(class_means.iter().sum::<f64>() / class_means.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepeatStats {
    pub mean: f64,
    /// Sample (n - 1) standard deviation; 0 for a single value.
    pub std: f64,
    pub n: usize,
}

pub fn aggregate_repeats(values: &[f64]) -> Result<RepeatStats> {
    if values.is_empty() {
        return Err(Error::NoData);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Ok(RepeatStats { mean, std, n })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub dataset_id: String,
    pub strategy: SessionStrategy,
    pub budget: u32,
    pub stats: RepeatStats,
}

/// Per (dataset, strategy, budget): mIoU of each repeat, then mean ± std over repeats.
pub fn summarize(records: &[EvalRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::NoData);
    }
    let mut cells: BTreeMap<(&str, SessionStrategy, u32), BTreeMap<u32, Vec<EvalRecord>>> = BTreeMap::new();
    for r in records {
        cells.entry((&r.dataset_id, r.strategy, r.budget)).or_default().entry(r.repeat_index).or_default().push(r.clone());
    }
    cells
        .into_iter()
        .map(|((dataset, strategy, budget), repeats)| {
            let per_repeat = repeats.values().map(|rs| instance_miou(rs)).collect::<Result<Vec<_>>>()?;
            Ok(SummaryRow { dataset_id: dataset.to_string(), strategy, budget, stats: aggregate_repeats(&per_repeat)? })
        })
        .collect()
}
