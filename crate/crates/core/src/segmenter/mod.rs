//! Segmenter contract and built-in geometric segmenters.
//!
//! A segmenter receives the prompt history of a session and returns several
//! candidate masks, each with a self-estimated quality. Selection between
//! candidates is done by the caller, either trusting the predicted quality or
//! peeking at ground truth ([`select_by_oracle`]).

mod oracle;
mod sketch;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{iou, BinaryMask};
use crate::prompt::{PromptPoint, PromptSet};

pub use oracle::PerturbedOracle;
pub use sketch::{sketch_from_box, sketch_from_extreme, sketch_from_majmin, SketchSegmenter};

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateMask {
    pub mask: BinaryMask,
    pub predicted_quality: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmenterOutput {
    pub candidates: Vec<CandidateMask>,
    pub previous_included: bool,
}

/// Initial prompt set plus the corrective clicks added so far.
#[derive(Debug, Clone, PartialEq)]
pub struct PromptHistory {
    pub initial: Option<PromptSet>,
    pub refinements: Vec<PromptPoint>,
}

impl PromptHistory {
    pub fn new(initial: PromptSet) -> Self {
        Self { initial: Some(initial), refinements: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_none() && self.refinements.is_empty()
    }

    /// Interactions spent so far. A box counts once; every other click counts once.
    pub fn interactions(&self) -> u32 {
        let initial = match &self.initial {
            Some(ps) if ps.strategy == crate::prompt::Strategy::Box => 1,
            Some(ps) => ps.points.len() as u32,
            None => 0,
        };
        initial + self.refinements.len() as u32
    }
}

/// Read-only access to the ground truth of the instance being segmented.
#[derive(Debug, Clone, Copy)]
pub struct GroundTruth<'a>(&'a BinaryMask);

impl<'a> GroundTruth<'a> {
    pub fn new(mask: &'a BinaryMask) -> Self {
        Self(mask)
    }

    pub fn mask(&self) -> &'a BinaryMask {
        self.0
    }
}

pub struct SegmentRequest<'a> {
    pub history: &'a PromptHistory,
    pub previous: Option<&'a BinaryMask>,
    pub oracle: GroundTruth<'a>,
    pub seed: u64,
}

/// A promptable segmenter. Implementations keep no per-call state, so they
/// can be shared across threads.
pub trait Segmenter: Send + Sync {
    fn name(&self) -> &str;

    /// Must return at least one candidate, include `request.previous`
    /// verbatim when given, and be a pure function of the request.
    fn segment(&self, request: &SegmentRequest<'_>) -> Result<SegmenterOutput>;
}

/// Named segmenter configuration, as used in sweep config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SegmenterConfig {
    PerturbedOracle {
        #[serde(default = "oracle::default_d0_region")]
        d0_region: u32,
        #[serde(default = "oracle::default_d0_structured")]
        d0_structured: u32,
        #[serde(default = "oracle::default_noise")]
        noise: f64,
        #[serde(default = "default_candidates")]
        candidates: usize,
    },
    Sketch {
        #[serde(default = "sketch::default_click_radius")]
        click_radius: u32,
        #[serde(default = "default_candidates")]
        candidates: usize,
    },
}

fn default_candidates() -> usize {
    3
}

impl Default for SegmenterConfig {
    fn default() -> Self {
        let o = PerturbedOracle::default();
        SegmenterConfig::PerturbedOracle { d0_region: o.d0_region, d0_structured: o.d0_structured, noise: o.noise, candidates: o.candidates }
    }
}

impl SegmenterConfig {
    pub fn build(&self) -> Result<Box<dyn Segmenter>> {
        match *self {
            SegmenterConfig::PerturbedOracle { d0_region, d0_structured, noise, candidates } => {
                let s = PerturbedOracle { d0_region, d0_structured, noise, candidates };
                s.validate()?;
                Ok(Box::new(s))
            }
            SegmenterConfig::Sketch { click_radius, candidates } => {
                if candidates == 0 {
                    return Err(Error::InvalidParams("candidates must be >= 1".into()));
                }
                Ok(Box::new(SketchSegmenter { click_radius, candidates }))
            }
        }
    }
}

fn argmax_first(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Index of the highest predicted quality; ties go to the lowest index.
pub fn select_by_predicted(out: &SegmenterOutput) -> usize {
    argmax_first(out.candidates.iter().map(|c| c.predicted_quality))
}

/// Index of the candidate with highest IoU to `gt`; ties go to the lowest index.
pub fn select_by_oracle(out: &SegmenterOutput, gt: &BinaryMask) -> Result<usize> {
    let ious = out.candidates.iter().map(|c| iou(&c.mask, gt)).collect::<Result<Vec<_>>>()?;
    Ok(argmax_first(ious))
}
