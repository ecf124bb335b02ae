use super::mask::{area, BinaryMask, PixelCoord};
use crate::error::{Error, Result};

/// Convex polygon over pixel-corner coordinates, counter-clockwise in the
/// `(x, y)` plane (positive shoelace area), without collinear vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullPolygon {
    vertices: Vec<PixelCoord>,
}

impl HullPolygon {
    pub fn vertices(&self) -> &[PixelCoord] {
        &self.vertices
    }

    /// Twice the enclosed area (exact).
    pub fn twice_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.x as i64 * b.y as i64 - b.x as i64 * a.y as i64
            })
            .sum()
    }

    pub fn area(&self) -> f64 {
        self.twice_area() as f64 / 2.0
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain. Returns CCW vertices with collinear points dropped.
pub(crate) fn monotone_chain(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len() * 2);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Convex hull of the union of foreground pixel squares.
///
/// Each pixel `(x, y)` contributes its four corners. Only the leftmost and
/// rightmost pixel of each row can contribute hull vertices, so interior
/// pixels are skipped.
pub fn convex_hull(mask: &BinaryMask) -> Result<HullPolygon> {
    let mut pts = Vec::new();
    for y in 0..mask.height() {
        let row = (0..mask.width()).filter(|&x| mask.get(x, y));
        let (mut lo, mut hi) = (None, None);
        for x in row {
            lo.get_or_insert(x);
            hi = Some(x);
        }
        if let (Some(lo), Some(hi)) = (lo, hi) {
            let (y0, y1) = (y as i64, y as i64 + 1);
            pts.extend([(lo as i64, y0), (lo as i64, y1), (hi as i64 + 1, y0), (hi as i64 + 1, y1)]);
        }
    }
    if pts.is_empty() {
        return Err(Error::EmptyMask);
    }
    let vertices = monotone_chain(pts).into_iter().map(|(x, y)| PixelCoord::new(x as u32, y as u32)).collect();
    Ok(HullPolygon { vertices })
}

/// Fills a convex CCW polygon given in doubled coordinates (pixel `(x, y)` has
/// its center at `(2x + 1, 2y + 1)`). Pixels whose center lies inside or on the
/// boundary are set. Arithmetic is exact.
pub(crate) fn fill_convex_doubled(vertices: &[(i64, i64)], width: u32, height: u32) -> Result<BinaryMask> {
    let mut mask = BinaryMask::new(width, height)?;
    if vertices.is_empty() {
        return Ok(mask);
    }
    if vertices.len() == 1 {
        let (px, py) = vertices[0];
        if px.rem_euclid(2) == 1 && py.rem_euclid(2) == 1 {
            let (x, y) = ((px - 1) / 2, (py - 1) / 2);
            if x >= 0 && y >= 0 && x < width as i64 && y < height as i64 {
                mask.set(x as u32, y as u32, true);
            }
        }
        return Ok(mask);
    }
    let ymin = vertices.iter().map(|v| v.1).min().unwrap_or(0);
    let ymax = vertices.iter().map(|v| v.1).max().unwrap_or(0);
    // rows whose center 2y+1 lies in [ymin, ymax]
    let xmin = vertices.iter().map(|v| v.0).min().unwrap_or(0);
    let xmax = vertices.iter().map(|v| v.0).max().unwrap_or(0);
    // first/last pixel whose center 2i+1 lies in [lo, hi]
    let first_center = |lo: i64| -(-(lo - 1)).div_euclid(2);
    let last_center = |hi: i64| (hi - 1).div_euclid(2);
    let (row_lo, row_hi) = (first_center(ymin), last_center(ymax));
    let (col_lo, col_hi) = (first_center(xmin), last_center(xmax));
    let n = vertices.len();
    for y in row_lo.max(0)..=row_hi.min(height as i64 - 1) {
        let py = 2 * y + 1;
        let (mut lo, mut hi) = (col_lo.max(0), col_hi.min(width as i64 - 1));
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let (ex, ey) = (b.0 - a.0, b.1 - a.1);
            // inside: ex*(py-ay) - ey*(px-ax) >= 0  <=>  ey*px <= r
            let r = ex * (py - a.1) + ey * a.0;
            match ey.signum() {
                0 => {
                    if r < 0 {
                        hi = -1;
                    }
                }
                1 => hi = hi.min((r - ey).div_euclid(2 * ey)),
                _ => {
                    let k = -ey;
                    let num = -r - k;
                    lo = lo.max(-(-num).div_euclid(2 * k));
                }
            }
        }
        for x in lo..=hi {
            mask.set(x as u32, y as u32, true);
        }
    }
    Ok(mask)
}

/// Rasterizes a hull by pixel-center inclusion (boundary counts as inside).
pub fn rasterize_hull(hull: &HullPolygon, width: u32, height: u32) -> Result<BinaryMask> {
    let doubled: Vec<(i64, i64)> = hull.vertices.iter().map(|v| (2 * v.x as i64, 2 * v.y as i64)).collect();
    fill_convex_doubled(&doubled, width, height)
}

/// `1 - area(mask) / area(rasterized hull)`, in `[0, 1)`.
pub fn concavity_index(mask: &BinaryMask) -> Result<f64> {
    let hull = convex_hull(mask)?;
    let filled = rasterize_hull(&hull, mask.width(), mask.height())?;
    let hull_area = area(&filled);
    let delta = 1.0 - area(mask) as f64 / hull_area as f64;
    if delta <= 1e-12 {
        return Ok(0.0);
    }
    Ok(delta.min(1.0 - f64::EPSILON))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn l_shape() -> BinaryMask {
        BinaryMask::from_fn(4, 4, |x, y| !(x >= 2 && y < 2)).unwrap()
    }

    fn coords(h: &HullPolygon) -> BTreeSet<(u32, u32)> {
        h.vertices().iter().map(|p| (p.x, p.y)).collect()
    }

    /// Brute-force hull vertices: endpoints of every segment that has all
    /// points strictly left of or on it.
    fn brute_hull(points: &[(i64, i64)]) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for &a in points {
            for &b in points {
                if a == b {
                    continue;
                }
                let ok = points.iter().all(|&q| {
                    let c = cross(a, b, q);
                    let on_segment = q.0 >= a.0.min(b.0) && q.0 <= a.0.max(b.0) && q.1 >= a.1.min(b.1) && q.1 <= a.1.max(b.1);
                    c > 0 || (c == 0 && on_segment)
                });
                if ok {
                    out.insert((a.0 as u32, a.1 as u32));
                    out.insert((b.0 as u32, b.1 as u32));
                }
            }
        }
        out
    }

    fn brute_point_in_polygon(verts: &[PixelCoord], cx: f64, cy: f64) -> bool {
        let n = verts.len();
        (0..n).all(|i| {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            let (ax, ay, bx, by) = (a.x as f64, a.y as f64, b.x as f64, b.y as f64);
            let c = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
            let len = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
            c / len >= -1e-9
        })
    }

    #[test]
    fn single_pixel_hull_is_unit_square() {
        let m = BinaryMask::from_pixels(5, 5, [PixelCoord::new(2, 3)]).unwrap();
        let h = convex_hull(&m).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(coords(&h), [(2, 3), (3, 3), (2, 4), (3, 4)].into_iter().collect());
        assert_eq!(h.twice_area(), 2);
        assert_eq!(rasterize_hull(&h, 5, 5).unwrap(), m);
    }

    #[test]
    fn rectangle_hull_is_outer_corners() {
        let m = BinaryMask::from_fn(8, 6, |x, y| (1..5).contains(&x) && (2..5).contains(&y)).unwrap();
        let h = convex_hull(&m).unwrap();
        assert_eq!(coords(&h), [(1, 2), (5, 2), (5, 5), (1, 5)].into_iter().collect());
        assert_eq!(rasterize_hull(&h, 8, 6).unwrap(), m);
        assert_eq!(concavity_index(&m).unwrap(), 0.0);
    }

    #[test]
    fn notched_square_matches_brute_force() {
        let m = l_shape();
        let corners: Vec<(i64, i64)> = m
            .foreground()
            .flat_map(|p| {
                let (x, y) = (p.x as i64, p.y as i64);
                [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
            })
            .collect();
        assert_eq!(corners.len(), 48);
        let expected = brute_hull(&corners);
        let h = convex_hull(&m).unwrap();
        assert_eq!(h.vertices().len(), 5);
        assert_eq!(coords(&h), expected);
        assert!(h.twice_area() > 0);
    }

    #[test]
    fn notched_square_rasterization_matches_point_in_polygon() {
        let m = l_shape();
        let h = convex_hull(&m).unwrap();
        let r = rasterize_hull(&h, 4, 4).unwrap();
        let oracle = BinaryMask::from_fn(4, 4, |x, y| brute_point_in_polygon(h.vertices(), x as f64 + 0.5, y as f64 + 0.5)).unwrap();
        assert_eq!(r, oracle);
        assert_eq!(area(&r), 15);
        assert!(m.is_subset_of(&r).unwrap());
        assert!((concavity_index(&m).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn rasterize_rejects_zero_dims() {
        let h = convex_hull(&l_shape()).unwrap();
        assert!(matches!(rasterize_hull(&h, 0, 4), Err(Error::InvalidDims { .. })));
    }

    #[test]
    fn empty_mask_rejected() {
        let e = BinaryMask::new(3, 3).unwrap();
        assert!(matches!(convex_hull(&e), Err(Error::EmptyMask)));
        assert!(matches!(concavity_index(&e), Err(Error::EmptyMask)));
    }

    #[test]
    fn fill_segment_and_point() {
        // horizontal segment through pixel centers of row 1
        let m = fill_convex_doubled(&[(1, 3), (7, 3)], 5, 4).unwrap();
        assert_eq!(m.foreground().collect::<Vec<_>>(), (0..4).map(|x| PixelCoord::new(x, 1)).collect::<Vec<_>>());
        let p = fill_convex_doubled(&[(5, 3)], 5, 4).unwrap();
        assert_eq!(p.foreground().collect::<Vec<_>>(), vec![PixelCoord::new(2, 1)]);
    }
}
