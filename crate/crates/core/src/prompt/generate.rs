use rand::Rng as _;

use super::scoring::{project_and_score, top_ranked, ResolvedScoring, ScoringParams};
use super::types::{PromptPoint, PromptRole, PromptSet, Strategy};
use crate::error::{Error, Result};
use crate::geometry::{area, border_pixels, dilate_points, erode4, pca_axes, BinaryMask, PixelCoord};
use crate::rng::{seeded, Rng};

struct Direction {
    main: [f64; 2],
    ortho: [f64; 2],
    role: PromptRole,
}

struct Pipeline<'a> {
    mask: &'a BinaryMask,
    border: Vec<PixelCoord>,
    center: [f64; 2],
    params: ScoringParams,
    resolved: ResolvedScoring,
    deterministic: bool,
}

impl Pipeline<'_> {
    /// Project, rank, dilate the top-k into an ROI and pick one pixel from it.
    fn endpoint(&self, dir: &Direction, use_ortho: bool, rng: &mut Rng) -> Result<PromptPoint> {
        let scored = project_and_score(&self.border, self.center, dir.main, dir.ortho, &self.params, use_ortho)?;
        let top = top_ranked(scored, self.resolved.top_k);
        let coord = if self.deterministic {
            top[0].coord
        } else {
            let seeds: Vec<PixelCoord> = top.iter().map(|s| s.coord).collect();
            let roi = dilate_points(&seeds, self.resolved.dilation_radius, self.mask.width(), self.mask.height())?;
            let n = roi.foreground_count();
            let pick = rng.gen_range(0..n);
            let chosen = roi.foreground().nth(pick).expect("roi contains seeds");
            chosen
        };
        Ok(PromptPoint { coord, role: dir.role })
    }
}

fn centroid(points: &[PixelCoord]) -> [f64; 2] {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x as f64, sy + p.y as f64));
    [sx / n, sy / n]
}

fn pipeline<'a>(mask: &'a BinaryMask, params: &ScoringParams, deterministic: bool) -> Result<Pipeline<'a>> {
    params.validate()?;
    let border = border_pixels(mask, true)?;
    let resolved = params.resolve(border.len(), area(mask));
    Ok(Pipeline { mask, center: centroid(&border), border, params: *params, resolved, deterministic })
}

/// Major/minor axis endpoints from PCA on the outer border.
///
/// Points come out as `[major(-d1), major(+d1), minor(-d2), minor(+d2)]`.
/// Near-isotropic or collinear borders fall back to the image axes.
pub fn gen_major_minor(mask: &BinaryMask, params: &ScoringParams, seed: u64, deterministic: bool) -> Result<PromptSet> {
    let mut pipe = pipeline(mask, params, deterministic)?;
    let axes = pca_axes(&pipe.border)?;
    pipe.center = axes.center;
    let (d1, d2) = if axes.degenerate { ([1.0, 0.0], [0.0, 1.0]) } else { (axes.primary, axes.secondary) };
    let neg = |d: [f64; 2]| [-d[0], -d[1]];
    let dirs = [
        Direction { main: neg(d1), ortho: d2, role: PromptRole::Major },
        Direction { main: d1, ortho: d2, role: PromptRole::Major },
        Direction { main: neg(d2), ortho: d1, role: PromptRole::Minor },
        Direction { main: d2, ortho: d1, role: PromptRole::Minor },
    ];
    let mut rng = seeded(seed);
    let points = dirs.iter().map(|d| pipe.endpoint(d, true, &mut rng)).collect::<Result<Vec<_>>>()?;
    Ok(PromptSet { strategy: Strategy::MajorMinor, seed, deterministic, points })
}

/// Extreme points along the image axes, as `[top, bottom, left, right]`.
pub fn gen_extreme(mask: &BinaryMask, params: &ScoringParams, seed: u64, deterministic: bool) -> Result<PromptSet> {
    let pipe = pipeline(mask, params, deterministic)?;
    let dirs = [
        Direction { main: [0.0, -1.0], ortho: [1.0, 0.0], role: PromptRole::Top },
        Direction { main: [0.0, 1.0], ortho: [1.0, 0.0], role: PromptRole::Bottom },
        Direction { main: [-1.0, 0.0], ortho: [0.0, 1.0], role: PromptRole::Left },
        Direction { main: [1.0, 0.0], ortho: [0.0, 1.0], role: PromptRole::Right },
    ];
    let mut rng = seeded(seed);
    let points = dirs.iter().map(|d| pipe.endpoint(d, false, &mut rng)).collect::<Result<Vec<_>>>()?;
    Ok(PromptSet { strategy: Strategy::Extreme, seed, deterministic, points })
}

/// Box corners spanned by an extreme-point set.
pub fn box_from_extreme(ps: &PromptSet) -> Result<PromptSet> {
    if ps.strategy != Strategy::Extreme {
        return Err(Error::StrategyMismatch { expected: Strategy::Extreme, found: ps.strategy });
    }
    ps.validate()?;
    let get = |r| ps.role(r).expect("validated");
    let (top, bottom, left, right) = (get(PromptRole::Top), get(PromptRole::Bottom), get(PromptRole::Left), get(PromptRole::Right));
    // sampled points can cross on tiny masks; keep corner a <= corner b
    let (x0, x1) = (left.x.min(right.x), left.x.max(right.x));
    let (y0, y1) = (top.y.min(bottom.y), top.y.max(bottom.y));
    Ok(PromptSet {
        strategy: Strategy::Box,
        seed: ps.seed,
        deterministic: ps.deterministic,
        points: vec![PromptPoint::new(x0, y0, PromptRole::BoxCornerA), PromptPoint::new(x1, y1, PromptRole::BoxCornerB)],
    })
}

/// Tight bounding box of the foreground.
pub fn gen_tight_box(mask: &BinaryMask) -> Result<PromptSet> {
    let (lo, hi) = mask.bounding_box().ok_or(Error::EmptyMask)?;
    Ok(PromptSet {
        strategy: Strategy::Box,
        seed: 0,
        deterministic: true,
        points: vec![PromptPoint { coord: lo, role: PromptRole::BoxCornerA }, PromptPoint { coord: hi, role: PromptRole::BoxCornerB }],
    })
}

/// One positive click drawn uniformly from the eroded interior
/// (the whole foreground when erosion removes everything).
pub fn gen_region_click(mask: &BinaryMask, seed: u64) -> Result<PromptSet> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    let eroded = erode4(mask);
    let pool = if eroded.is_empty() { mask } else { &eroded };
    let mut rng = seeded(seed);
    let pick = rng.gen_range(0..pool.foreground_count());
    let coord = pool.foreground().nth(pick).expect("nonempty pool");
    Ok(PromptSet {
        strategy: Strategy::RegionClick,
        seed,
        deterministic: false,
        points: vec![PromptPoint { coord, role: PromptRole::Positive }],
    })
}

/// A corrective click drawn uniformly from `gt XOR pred`: positive on a false
/// negative, negative on a false positive. `None` when the prediction is exact.
pub fn sample_refinement(gt: &BinaryMask, pred: &BinaryMask, seed: u64) -> Result<Option<PromptPoint>> {
    gt.check_same_dims(pred)?;
    let errors = gt.bits().iter().zip(pred.bits()).filter(|(g, p)| g != p).count();
    if errors == 0 {
        return Ok(None);
    }
    let mut rng = seeded(seed);
    let pick = rng.gen_range(0..errors);
    let w = gt.width() as usize;
    let (i, (&in_gt, _)) = gt
        .bits()
        .iter()
        .zip(pred.bits())
        .enumerate()
        .filter(|(_, (g, p))| g != p)
        .nth(pick)
        .expect("pick < errors");
    let role = if in_gt { PromptRole::Positive } else { PromptRole::Negative };
    Ok(Some(PromptPoint::new((i % w) as u32, (i / w) as u32, role)))
}
