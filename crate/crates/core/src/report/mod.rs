//! Evaluation records, class-balanced mIoU, concavity stratification and
//! report emission.

mod aggregate;
mod chart;
mod concavity;
mod emit;

use serde::{Deserialize, Serialize};

use crate::session::SessionStrategy;

pub use aggregate::{aggregate_repeats, instance_miou, summarize, RepeatStats, SummaryRow};
pub use concavity::{normalize_concavity, parse_bins, quartile_bins, stratify_concavity, validate_bins, BinSummary, ConcavityBin};
pub use emit::{emit_report, ReportFiles};

/// One session outcome, as written to record files (one JSON object per line).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalRecord {
    pub dataset_id: String,
    pub instance_id: String,
    pub class_id: String,
    pub strategy: SessionStrategy,
    pub budget: u32,
    pub repeat_index: u32,
    pub final_iou: f64,
    pub concavity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized_concavity: Option<f64>,
}
