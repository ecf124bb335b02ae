//! Budgeted interactive sessions.
//!
//! A session issues the strategy's initial prompts, then alternates
//! segment → select → corrective click until the budget is spent or the
//! selected mask matches ground truth.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{concavity_index, iou, BinaryMask};
use crate::prompt::{gen_extreme, gen_major_minor, gen_region_click, gen_tight_box, sample_refinement, PromptPoint, ScoringParams};
use crate::report::{normalize_concavity, EvalRecord};
use crate::rng::{derive_seed, stable_hash};
use crate::segmenter::{select_by_oracle, select_by_predicted, GroundTruth, PromptHistory, SegmentRequest, Segmenter};

pub const MAX_BUDGET: u32 = 7;
pub const FOUR_POINT_BUDGETS: std::ops::RangeInclusive<u32> = 4..=MAX_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionStrategy {
    /// One positive click, then corrective clicks.
    RegionIterative,
    /// Tight box, one interaction, no refinement.
    Box,
    /// Four extreme points plus up to three corrective clicks.
    ExtremeRefine,
    /// Four major/minor points plus up to three corrective clicks.
    MajorMinorRefine,
}

impl SessionStrategy {
    pub const ALL: [SessionStrategy; 4] =
        [SessionStrategy::RegionIterative, SessionStrategy::Box, SessionStrategy::ExtremeRefine, SessionStrategy::MajorMinorRefine];

    pub fn as_str(self) -> &'static str {
        match self {
            SessionStrategy::RegionIterative => "region_iterative",
            SessionStrategy::Box => "box",
            SessionStrategy::ExtremeRefine => "extreme_refine",
            SessionStrategy::MajorMinorRefine => "major_minor_refine",
        }
    }

    pub fn is_valid_budget(self, budget: u32) -> bool {
        match self {
            SessionStrategy::RegionIterative => (1..=MAX_BUDGET).contains(&budget),
            SessionStrategy::Box => budget == 1,
            SessionStrategy::ExtremeRefine | SessionStrategy::MajorMinorRefine => FOUR_POINT_BUDGETS.contains(&budget),
        }
    }

    /// Budgets this strategy takes part in when sweeping `requested`.
    /// The box is always a single-interaction reference cell.
    pub fn sweep_budgets(self, requested: &[u32]) -> Vec<u32> {
        if self == SessionStrategy::Box {
            return vec![1];
        }
        let mut out: Vec<u32> = requested.iter().copied().filter(|&b| self.is_valid_budget(b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for SessionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SessionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown session strategy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionPolicy {
    #[default]
    Predicted,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    pub strategy: SessionStrategy,
    pub budget: u32,
    pub selection: SelectionPolicy,
    pub seed: u64,
    pub scoring: ScoringParams,
    /// Argmax 4-point generation instead of ROI sampling.
    pub deterministic_prompts: bool,
}

impl SessionConfig {
    pub fn new(strategy: SessionStrategy, budget: u32, seed: u64) -> Self {
        Self { strategy, budget, selection: SelectionPolicy::default(), seed, scoring: ScoringParams::default(), deterministic_prompts: false }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.strategy.is_valid_budget(self.budget) {
            return Err(Error::InvalidBudget { strategy: self.strategy.to_string(), budget: self.budget });
        }
        self.scoring.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionStep {
    pub prompts_so_far: u32,
    pub selected_index: usize,
    pub selected_mask: BinaryMask,
    pub step_iou: f64,
    /// IoU of the candidate the oracle policy would pick at this step.
    pub oracle_iou: f64,
    /// IoU of the candidate the predicted-quality policy would pick at this step.
    pub predicted_iou: f64,
    /// Corrective click added just before this step (none on the first step).
    pub refinement: Option<PromptPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionTrace {
    pub steps: Vec<SessionStep>,
    pub final_iou: f64,
    pub early_stop: bool,
}

const STREAM_INITIAL: u64 = 0;
const STREAM_SEGMENT: u64 = 1 << 32;
const STREAM_REFINE: u64 = 2 << 32;

/// Runs one interactive session on `gt`.
pub fn run_session(gt: &BinaryMask, segmenter: &dyn Segmenter, config: &SessionConfig) -> Result<SessionTrace> {
    config.validate()?;
    if gt.is_empty() {
        return Err(Error::EmptyMask);
    }
    let init_seed = derive_seed(config.seed, STREAM_INITIAL);
    let det = config.deterministic_prompts;
    let initial = match config.strategy {
        SessionStrategy::RegionIterative => gen_region_click(gt, init_seed)?,
        SessionStrategy::Box => gen_tight_box(gt)?,
        SessionStrategy::ExtremeRefine => gen_extreme(gt, &config.scoring, init_seed, det)?,
        SessionStrategy::MajorMinorRefine => gen_major_minor(gt, &config.scoring, init_seed, det)?,
    };
    let mut history = PromptHistory::new(initial);
    let mut steps: Vec<SessionStep> = Vec::new();
    let mut refinement = None;
    let mut early_stop = false;
    loop {
        let step = steps.len() as u64;
        let previous = steps.last().map(|s| &s.selected_mask);
        let request = SegmentRequest { history: &history, previous, oracle: GroundTruth::new(gt), seed: derive_seed(config.seed, STREAM_SEGMENT + step) };
        let out = segmenter.segment(&request)?;
        if out.candidates.is_empty() {
            return Err(Error::InvalidParams(format!("segmenter `{}` returned no candidates", segmenter.name())));
        }
        let ious = out.candidates.iter().map(|c| iou(&c.mask, gt)).collect::<Result<Vec<_>>>()?;
        let by_oracle = select_by_oracle(&out, gt)?;
        let by_predicted = select_by_predicted(&out);
        let selected_index = match config.selection {
            SelectionPolicy::Oracle => by_oracle,
            SelectionPolicy::Predicted => by_predicted,
        };
        let prompts_so_far = history.interactions();
        let selected_mask = out.candidates.into_iter().nth(selected_index).expect("index in range").mask;
        steps.push(SessionStep {
            prompts_so_far,
            selected_index,
            selected_mask,
            step_iou: ious[selected_index],
            oracle_iou: ious[by_oracle],
            predicted_iou: ious[by_predicted],
            refinement: refinement.take(),
        });
        if prompts_so_far >= config.budget {
            break;
        }
        let current = &steps.last().expect("just pushed").selected_mask;
        match sample_refinement(gt, current, derive_seed(config.seed, STREAM_REFINE + step))? {
            Some(click) => {
                history.refinements.push(click);
                refinement = Some(click);
            }
            None => {
                early_stop = true;
                break;
            }
        }
    }
    let final_iou = steps.last().expect("at least one step").step_iou;
    Ok(SessionTrace { steps, final_iou, early_stop })
}

/// One ground-truth instance of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub dataset_id: String,
    pub instance_id: String,
    pub class_id: String,
    pub mask: BinaryMask,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub strategies: Vec<SessionStrategy>,
    pub budgets: Vec<u32>,
    pub repeats: u32,
    pub base_seed: u64,
    pub selection: SelectionPolicy,
    pub scoring: ScoringParams,
    pub deterministic_prompts: bool,
}

impl SweepPlan {
    pub fn new(strategies: Vec<SessionStrategy>, budgets: Vec<u32>, repeats: u32, base_seed: u64) -> Self {
        Self {
            strategies,
            budgets,
            repeats,
            base_seed,
            selection: SelectionPolicy::default(),
            scoring: ScoringParams::default(),
            deterministic_prompts: false,
        }
    }
}

/// Seed of one sweep cell: repeat `r` uses `base_seed + r`, mixed with the
/// instance so different instances draw independent prompts.
pub fn cell_seed(base_seed: u64, repeat: u32, instance_id: &str) -> u64 {
    derive_seed(base_seed.wrapping_add(u64::from(repeat)), stable_hash(instance_id))
}

/// Runs every (instance, strategy, budget, repeat) cell and returns one record
/// per cell in that order, with per-dataset normalized concavity filled in.
pub fn run_budget_sweep(instances: &[Instance], segmenter: &dyn Segmenter, plan: &SweepPlan) -> Result<Vec<EvalRecord>> {
    if plan.repeats == 0 {
        return Err(Error::InvalidParams("repeats must be >= 1".into()));
    }
    plan.scoring.validate()?;
    let concavity = instances.par_iter().map(|inst| concavity_index(&inst.mask)).collect::<Result<Vec<_>>>()?;
    let mut cells = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        for &strategy in &plan.strategies {
            for budget in strategy.sweep_budgets(&plan.budgets) {
                for repeat in 0..plan.repeats {
                    cells.push((i, inst, strategy, budget, repeat));
                }
            }
        }
    }
    let mut records = cells
        .into_par_iter()
        .map(|(i, inst, strategy, budget, repeat)| {
            let config = SessionConfig {
                strategy,
                budget,
                selection: plan.selection,
                seed: cell_seed(plan.base_seed, repeat, &inst.instance_id),
                scoring: plan.scoring,
                deterministic_prompts: plan.deterministic_prompts,
            };
            let trace = run_session(&inst.mask, segmenter, &config)?;
            Ok(EvalRecord {
                dataset_id: inst.dataset_id.clone(),
                instance_id: inst.instance_id.clone(),
                class_id: inst.class_id.clone(),
                strategy,
                budget,
                repeat_index: repeat,
                final_iou: trace.final_iou,
                concavity: concavity[i],
                normalized_concavity: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    normalize_concavity(&mut records);
    Ok(records)
}
