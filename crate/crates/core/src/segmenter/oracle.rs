use rand::Rng as _;

use super::{CandidateMask, SegmentRequest, Segmenter, SegmenterOutput};
use crate::error::{Error, Result};
use crate::geometry::{dilate4, erode4, iou, BinaryMask};
use crate::prompt::Strategy;
use crate::rng::{derive_seed, seeded, Rng};

pub(super) fn default_d0_region() -> u32 {
    4
}

pub(super) fn default_d0_structured() -> u32 {
    2
}

pub(super) fn default_noise() -> f64 {
    0.15
}

/// Ground truth degraded by seeded boundary erosion or dilation.
///
/// Depth shrinks as prompts accumulate: `d = max(0, d0 - interactions)`, with
/// a larger `d0` for sessions that start from a single region click.
/// Candidates are produced at depths `d, d + 1, d - 1, d + 2, ...`, and each
/// one's predicted quality is its true IoU plus uniform noise in `±noise`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedOracle {
    pub d0_region: u32,
    pub d0_structured: u32,
    pub noise: f64,
    pub candidates: usize,
}

impl Default for PerturbedOracle {
    fn default() -> Self {
        Self { d0_region: default_d0_region(), d0_structured: default_d0_structured(), noise: default_noise(), candidates: 3 }
    }
}

impl PerturbedOracle {
    pub fn validate(&self) -> Result<()> {
        if self.candidates == 0 {
            return Err(Error::InvalidParams("candidates must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(Error::InvalidParams(format!("noise must be in [0, 1], got {}", self.noise)));
        }
        Ok(())
    }

    fn depth_schedule(&self, d: u32) -> Vec<u32> {
        let mut depths = vec![d];
        let mut k = 1;
        while depths.len() < self.candidates {
            depths.push(d + k);
            if depths.len() < self.candidates {
                depths.push(d.saturating_sub(k));
            }
            k += 1;
        }
        depths
    }

    fn noisy_quality(&self, true_iou: f64, rng: &mut Rng) -> f64 {
        let jitter = if self.noise > 0.0 { rng.gen_range(-self.noise..=self.noise) } else { 0.0 };
        (true_iou + jitter).clamp(0.0, 1.0)
    }
}

/// `depth` steps of 4-neighbourhood erosion or dilation in one random direction.
/// Falls back to erosion when dilation cannot change the mask.
pub(crate) fn perturb(gt: &BinaryMask, depth: u32, rng: &mut Rng) -> BinaryMask {
    if depth == 0 {
        return gt.clone();
    }
    let run = |step: fn(&BinaryMask) -> BinaryMask| (0..depth).fold(gt.clone(), |m, _| step(&m));
    if rng.gen_bool(0.5) {
        let grown = run(dilate4);
        if &grown != gt {
            return grown;
        }
    }
    run(erode4)
}

impl Segmenter for PerturbedOracle {
    fn name(&self) -> &str {
        "perturbed-oracle"
    }

    fn segment(&self, request: &SegmentRequest<'_>) -> Result<SegmenterOutput> {
        if request.history.is_empty() {
            return Err(Error::NoPrompt);
        }
        let gt = request.oracle.mask();
        let d0 = match request.history.initial.as_ref().map(|ps| ps.strategy) {
            Some(Strategy::RegionClick) | None => self.d0_region,
            Some(_) => self.d0_structured,
        };
        let depth = d0.saturating_sub(request.history.interactions());
        let mut candidates = Vec::with_capacity(self.candidates + 1);
        for (i, d) in self.depth_schedule(depth).into_iter().enumerate() {
            let mut rng = seeded(derive_seed(request.seed, i as u64));
            let mask = perturb(gt, d, &mut rng);
            let predicted_quality = self.noisy_quality(iou(&mask, gt)?, &mut rng);
            candidates.push(CandidateMask { mask, predicted_quality });
        }
        let previous_included = if let Some(prev) = request.previous {
            let mut rng = seeded(derive_seed(request.seed, u64::MAX));
            let predicted_quality = self.noisy_quality(iou(prev, gt)?, &mut rng);
            candidates.push(CandidateMask { mask: prev.clone(), predicted_quality });
            true
        } else {
            false
        };
        Ok(SegmenterOutput { candidates, previous_included })
    }
}
