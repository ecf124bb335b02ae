use super::{CandidateMask, SegmentRequest, Segmenter, SegmenterOutput};
use crate::error::{Error, Result};
use crate::geometry::{dilate_points, fill_convex_doubled, monotone_chain, BinaryMask, PixelCoord};
use crate::prompt::{PromptRole, PromptSet, Strategy};

pub(super) fn default_click_radius() -> u32 {
    3
}

fn expect_strategy(ps: &PromptSet, expected: Strategy) -> Result<()> {
    if ps.strategy != expected {
        return Err(Error::StrategyMismatch { expected, found: ps.strategy });
    }
    ps.validate()
}

/// Filled ellipse spanned by a major/minor prompt set.
///
/// The major segment gives orientation and semi-major length, the minor segment
/// gives the semi-minor length, and the center is the mean of both segment
/// midpoints. Pixels are kept when their center lies inside or on the ellipse.
pub fn sketch_from_majmin(ps: &PromptSet, width: u32, height: u32) -> Result<BinaryMask> {
    expect_strategy(ps, Strategy::MajorMinor)?;
    let to_f = |p: PixelCoord| [p.x as f64, p.y as f64];
    let major = ps.coords_with_role(PromptRole::Major);
    let minor = ps.coords_with_role(PromptRole::Minor);
    let (ma, mb, na, nb) = (to_f(major[0]), to_f(major[1]), to_f(minor[0]), to_f(minor[1]));
    let major_len = (mb[0] - ma[0]).hypot(mb[1] - ma[1]);
    let minor_len = (nb[0] - na[0]).hypot(nb[1] - na[1]);
    if major_len == 0.0 || minor_len == 0.0 {
        return Err(Error::DegenerateInput("zero-length axis".into()));
    }
    let center = [(ma[0] + mb[0] + na[0] + nb[0]) / 4.0, (ma[1] + mb[1] + na[1] + nb[1]) / 4.0];
    let u = [(mb[0] - ma[0]) / major_len, (mb[1] - ma[1]) / major_len];
    let v = [-u[1], u[0]];
    let (a, b) = (major_len / 2.0, minor_len / 2.0);
    BinaryMask::from_fn(width, height, |x, y| {
        let (dx, dy) = (x as f64 - center[0], y as f64 - center[1]);
        let s = (dx * u[0] + dy * u[1]) / a;
        let t = (dx * v[0] + dy * v[1]) / b;
        s * s + t * t <= 1.0 + 1e-12
    })
}

/// Filled quadrilateral through top, right, bottom and left (their convex
/// hull), by pixel-center inclusion.
pub fn sketch_from_extreme(ps: &PromptSet, width: u32, height: u32) -> Result<BinaryMask> {
    expect_strategy(ps, Strategy::Extreme)?;
    let centers: Vec<(i64, i64)> = ps.points.iter().map(|p| (2 * p.coord.x as i64 + 1, 2 * p.coord.y as i64 + 1)).collect();
    let hull = monotone_chain(centers);
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("extreme points are collinear".into()));
    }
    fill_convex_doubled(&hull, width, height)
}

/// Filled box between the two corners, inclusive.
pub fn sketch_from_box(ps: &PromptSet, width: u32, height: u32) -> Result<BinaryMask> {
    expect_strategy(ps, Strategy::Box)?;
    let (a, b) = (ps.points[0].coord, ps.points[1].coord);
    BinaryMask::from_fn(width, height, |x, y| (a.x..=b.x).contains(&x) && (a.y..=b.y).contains(&y))
}

/// Prompt-only segmenter: sketches a shape from the initial prompt set and
/// paints Chebyshev discs for corrective clicks (added for positive, erased
/// for negative). Candidates differ in click radius. Ground truth is only
/// consulted for the frame size.
#[derive(Debug, Clone, PartialEq)]
pub struct SketchSegmenter {
    pub click_radius: u32,
    pub candidates: usize,
}

impl Default for SketchSegmenter {
    fn default() -> Self {
        Self { click_radius: default_click_radius(), candidates: 3 }
    }
}

impl SketchSegmenter {
    fn radii(&self) -> Vec<u32> {
        let r = self.click_radius;
        let mut radii = vec![r];
        let mut k = 1;
        while radii.len() < self.candidates {
            radii.push(r + k);
            if radii.len() < self.candidates {
                radii.push(r.saturating_sub(k).max(1));
            }
            k += 1;
        }
        radii
    }
}

fn paint(mask: &mut BinaryMask, p: PixelCoord, radius: u32, value: bool) {
    let disc = dilate_points(&[p], radius, mask.width(), mask.height()).expect("frame dims valid");
    for q in disc.foreground() {
        mask.set(q.x, q.y, value);
    }
}

impl Segmenter for SketchSegmenter {
    fn name(&self) -> &str {
        "sketch"
    }

    fn segment(&self, request: &SegmentRequest<'_>) -> Result<SegmenterOutput> {
        if request.history.is_empty() {
            return Err(Error::NoPrompt);
        }
        let (w, h) = request.oracle.mask().dims();
        let mut candidates = Vec::with_capacity(self.candidates + 1);
        for (i, radius) in self.radii().into_iter().enumerate() {
            let mut mask = match &request.history.initial {
                Some(ps) => {
                    let shape = match ps.strategy {
                        Strategy::Extreme => sketch_from_extreme(ps, w, h),
                        Strategy::MajorMinor => sketch_from_majmin(ps, w, h),
                        Strategy::Box => sketch_from_box(ps, w, h),
                        Strategy::RegionClick => BinaryMask::new(w, h),
                    };
                    match shape {
                        Ok(m) => m,
                        Err(Error::DegenerateInput(_)) => BinaryMask::new(w, h)?,
                        Err(e) => return Err(e),
                    }
                }
                None => BinaryMask::new(w, h)?,
            };
            let clicks = request.history.initial.iter().flat_map(|ps| ps.points.iter()).chain(&request.history.refinements);
            for p in clicks {
                match p.role {
                    PromptRole::Negative => paint(&mut mask, p.coord, radius, false),
                    PromptRole::Positive => paint(&mut mask, p.coord, radius, true),
                    // structured points are kept inside the sketch
                    _ => paint(&mut mask, p.coord, 0, true),
                }
            }
            let predicted_quality = 0.9 - 0.1 * i as f64;
            candidates.push(CandidateMask { mask, predicted_quality: predicted_quality.max(0.0) });
        }
        let previous_included = match request.previous {
            Some(prev) => {
                candidates.push(CandidateMask { mask: prev.clone(), predicted_quality: 0.5 });
                true
            }
            None => false,
        };
        Ok(SegmenterOutput { candidates, previous_included })
    }
}
