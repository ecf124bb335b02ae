use super::mask::{BinaryMask, PixelCoord};
use crate::error::Result;

/// Union of Chebyshev balls of `radius` around `points`, clipped to the frame.
pub fn dilate_points(points: &[PixelCoord], radius: u32, width: u32, height: u32) -> Result<BinaryMask> {
    let mut mask = BinaryMask::new(width, height)?;
    for p in points {
        let x0 = p.x.saturating_sub(radius);
        let y0 = p.y.saturating_sub(radius);
        let x1 = p.x.saturating_add(radius).min(width - 1);
        let y1 = p.y.saturating_add(radius).min(height - 1);
        if x0 >= width || y0 >= height {
            continue;
        }
        for y in y0..=y1 {
            for x in x0..=x1 {
                mask.set(x, y, true);
            }
        }
    }
    Ok(mask)
}

/// Erosion by the 4-neighbourhood cross; out-of-frame reads as background.
pub fn erode4(mask: &BinaryMask) -> BinaryMask {
    let mut out = mask.clone();
    for p in mask.foreground() {
        let (x, y) = (p.x as i64, p.y as i64);
        let keep = mask.get_signed(x - 1, y) && mask.get_signed(x + 1, y) && mask.get_signed(x, y - 1) && mask.get_signed(x, y + 1);
        if !keep {
            out.set(p.x, p.y, false);
        }
    }
    out
}

/// Dilation by the 4-neighbourhood cross, clipped to the frame.
pub fn dilate4(mask: &BinaryMask) -> BinaryMask {
    let mut out = mask.clone();
    let (w, h) = mask.dims();
    for p in mask.foreground() {
        if p.x > 0 {
            out.set(p.x - 1, p.y, true);
        }
        if p.x + 1 < w {
            out.set(p.x + 1, p.y, true);
        }
        if p.y > 0 {
            out.set(p.x, p.y - 1, true);
        }
        if p.y + 1 < h {
            out.set(p.x, p.y + 1, true);
        }
    }
    out
}
