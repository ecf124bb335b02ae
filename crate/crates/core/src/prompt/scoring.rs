use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PixelCoord;

/// Weights and ROI sizing for endpoint ranking.
///
/// `top_k` and `dilation_radius` default to values that scale with the
/// instance: `max(5, ceil(0.02 * |border|))` and `max(2, ceil(0.02 * sqrt(area)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringParams {
    pub w_main: f64,
    pub w_ortho: f64,
    pub top_k: Option<usize>,
    pub dilation_radius: Option<u32>,
}

impl Default for ScoringParams {
    fn default() -> Self {
        Self { w_main: 0.6, w_ortho: 0.4, top_k: None, dilation_radius: None }
    }
}

/// `top_k` and `dilation_radius` after applying size-dependent defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedScoring {
    pub top_k: usize,
    pub dilation_radius: u32,
}

impl ScoringParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.w_main > 0.0 && self.w_main.is_finite()) {
            return Err(Error::InvalidParams(format!("w_main must be > 0, got {}", self.w_main)));
        }
        if !(self.w_ortho >= 0.0 && self.w_ortho.is_finite()) {
            return Err(Error::InvalidParams(format!("w_ortho must be >= 0, got {}", self.w_ortho)));
        }
        if self.top_k == Some(0) {
            return Err(Error::InvalidParams("top_k must be >= 1".into()));
        }
        Ok(())
    }

    pub fn resolve(&self, border_len: usize, area: usize) -> ResolvedScoring {
        let top_k = self.top_k.unwrap_or_else(|| 5.max((0.02 * border_len as f64).ceil() as usize));
        let dilation_radius = self.dilation_radius.unwrap_or_else(|| 2.max((0.02 * (area as f64).sqrt()).ceil() as u32));
        ResolvedScoring { top_k, dilation_radius }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredPixel {
    pub coord: PixelCoord,
    /// Min-max normalized projection on the main direction.
    pub main: f64,
    /// Min-max normalized absolute offset along the orthogonal direction.
    pub ortho: f64,
    pub score: f64,
}

fn normalize(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if span <= 0.0 {
        return vec![0.0; values.len()];
    }
    values.iter().map(|v| (v - lo) / span).collect()
}

/// Scores border pixels for one direction:
/// `w_main * main - w_ortho * ortho`, or just `main` when `use_ortho` is off.
pub fn project_and_score(
    border: &[PixelCoord],
    center: [f64; 2],
    d_main: [f64; 2],
    d_ortho: [f64; 2],
    params: &ScoringParams,
    use_ortho: bool,
) -> Result<Vec<ScoredPixel>> {
    if border.is_empty() {
        return Err(Error::DegenerateInput("empty border".into()));
    }
    let offsets: Vec<(f64, f64)> = border.iter().map(|p| (p.x as f64 - center[0], p.y as f64 - center[1])).collect();
    let main_raw: Vec<f64> = offsets.iter().map(|(dx, dy)| dx * d_main[0] + dy * d_main[1]).collect();
    let ortho_raw: Vec<f64> = offsets.iter().map(|(dx, dy)| (dx * d_ortho[0] + dy * d_ortho[1]).abs()).collect();
    let main = normalize(&main_raw);
    let ortho = normalize(&ortho_raw);
    Ok(border
        .iter()
        .zip(main.into_iter().zip(ortho))
        .map(|(&coord, (main, ortho))| {
            let score = if use_ortho { params.w_main * main - params.w_ortho * ortho } else { main };
            ScoredPixel { coord, main, ortho, score }
        })
        .collect())
}

/// Highest `k` scores, ties broken by `(y, x)`.
pub(crate) fn top_ranked(mut scored: Vec<ScoredPixel>, k: usize) -> Vec<ScoredPixel> {
    scored.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.coord.row_major_key().cmp(&b.coord.row_major_key())));
    scored.truncate(k.max(1));
    scored
}
