use super::mask::PixelCoord;
use crate::error::{Error, Result};

/// Principal axes of a 2D point set.
///
/// `primary` is the leading eigenvector, signed so that its first nonzero
/// component is positive; `secondary` is `primary` rotated by +90°.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisPair {
    pub center: [f64; 2],
    pub primary: [f64; 2],
    pub secondary: [f64; 2],
    pub lambda1: f64,
    pub lambda2: f64,
    /// Near-isotropic (axes forced to the image axes) or near-collinear spread.
    pub degenerate: bool,
}

const ISOTROPY_REL_TOL: f64 = 1e-6;
const COLLINEAR_ABS_TOL: f64 = 1e-9;

/// Two-component PCA on `points` (population covariance).
pub fn pca_axes(points: &[PixelCoord]) -> Result<AxisPair> {
    let first = points.first().ok_or_else(|| Error::DegenerateInput("no points".into()))?;
    if points.iter().all(|p| p == first) {
        return Err(Error::DegenerateInput("fewer than two distinct points".into()));
    }
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x as f64, sy + p.y as f64));
    let (cx, cy) = (sx / n, sy / n);
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p.x as f64 - cx, p.y as f64 - cy);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let (a, c, b) = (sxx / n, syy / n, sxy / n);

    let mean = 0.5 * (a + c);
    let radius = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let lambda1 = mean + radius;
    let lambda2 = (mean - radius).max(0.0);

    let isotropic = lambda1 - lambda2 <= ISOTROPY_REL_TOL * lambda1;
    let collinear = lambda2 <= COLLINEAR_ABS_TOL;

    let mut d1 = if isotropic {
        [1.0, 0.0]
    } else if b == 0.0 {
        if a >= c { [1.0, 0.0] } else { [0.0, 1.0] }
    } else {
        // two algebraically equivalent eigenvector forms; keep the better-conditioned one
        let u = [lambda1 - c, b];
        let v = [b, lambda1 - a];
        let nu = u[0].hypot(u[1]);
        let nv = v[0].hypot(v[1]);
        if nu >= nv { [u[0] / nu, u[1] / nu] } else { [v[0] / nv, v[1] / nv] }
    };
    if d1[0] < 0.0 || (d1[0] == 0.0 && d1[1] < 0.0) {
        d1 = [-d1[0], -d1[1]];
    }
    let d2 = [-d1[1], d1[0]];
    Ok(AxisPair { center: [cx, cy], primary: d1, secondary: d2, lambda1, lambda2, degenerate: isotropic || collinear })
}
