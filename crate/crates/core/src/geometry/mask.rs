use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer pixel position. `y` grows downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PixelCoord {
    pub x: u32,
    pub y: u32,
}

impl PixelCoord {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    /// Ordering key used everywhere determinism matters: row-major `(y, x)`.
    pub fn row_major_key(self) -> (u32, u32) {
        (self.y, self.x)
    }

    pub fn chebyshev(self, other: PixelCoord) -> u32 {
        self.x.abs_diff(other.x).max(self.y.abs_diff(other.y))
    }
}

/// Row-major binary raster. Foreground = `true`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl std::fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMask {}x{} ({} fg)", self.width, self.height, self.foreground_count())?;
        if self.width <= 64 && self.height <= 64 {
            for y in 0..self.height {
                let row: String =
                    (0..self.width).map(|x| if self.get(x, y) { '#' } else { '.' }).collect();
                writeln!(f, "  {row}")?;
            }
        }
        Ok(())
    }
}

impl BinaryMask {
    /// All-background mask.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDims { width, height });
        }
        Ok(Self { width, height, bits: vec![false; width as usize * height as usize] })
    }

    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width as usize * height as usize {
            return Err(Error::InvalidDims { width, height });
        }
        Ok(Self { width, height, bits })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Result<Self> {
        let mut mask = Self::new(width, height)?;
        for y in 0..height {
            for x in 0..width {
                if f(x, y) {
                    mask.set(x, y, true);
                }
            }
        }
        Ok(mask)
    }

    /// Builds a mask from foreground pixels; out-of-frame pixels are ignored.
    pub fn from_pixels(width: u32, height: u32, pixels: impl IntoIterator<Item = PixelCoord>) -> Result<Self> {
        let mut mask = Self::new(width, height)?;
        for p in pixels {
            if p.x < width && p.y < height {
                mask.set(p.x, p.y, true);
            }
        }
        Ok(mask)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    fn index(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    /// Panics when `(x, y)` is outside the frame.
    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        self.bits[self.index(x, y)]
    }

    /// Signed lookup; anything outside the frame reads as background.
    #[inline]
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as u64) < u64::from(self.width) && (y as u64) < u64::from(self.height) && self.bits[self.index(x as u32, y as u32)]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) outside {}x{}", self.width, self.height);
        let i = self.index(x, y);
        self.bits[i] = value;
    }

    pub fn contains_coord(&self, p: PixelCoord) -> bool {
        p.x < self.width && p.y < self.height
    }

    pub fn foreground_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Foreground pixels in `(y, x)` order.
    pub fn foreground(&self) -> impl Iterator<Item = PixelCoord> + '_ {
        let w = self.width as usize;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| PixelCoord::new((i % w) as u32, (i / w) as u32))
    }

    /// Tight `(min, max)` corners of the foreground, inclusive.
    pub fn bounding_box(&self) -> Option<(PixelCoord, PixelCoord)> {
        let mut it = self.foreground();
        let first = it.next()?;
        let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
        for p in it {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        Some((PixelCoord::new(x0, y0), PixelCoord::new(x1, y1)))
    }

    pub(crate) fn check_same_dims(&self, other: &BinaryMask) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimMismatch { expected: self.dims(), found: other.dims() });
        }
        Ok(())
    }

    pub fn intersection_count(&self, other: &BinaryMask) -> Result<usize> {
        self.check_same_dims(other)?;
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| **a && **b).count())
    }

    pub fn union_count(&self, other: &BinaryMask) -> Result<usize> {
        self.check_same_dims(other)?;
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| **a || **b).count())
    }

    /// Pixelwise `self && !other`.
    pub fn difference(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_same_dims(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && !*b).collect();
        Ok(BinaryMask { width: self.width, height: self.height, bits })
    }

    pub fn union(&self, other: &BinaryMask) -> Result<BinaryMask> {
        self.check_same_dims(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        Ok(BinaryMask { width: self.width, height: self.height, bits })
    }

    /// True when every foreground pixel of `self` is foreground in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> Result<bool> {
        self.check_same_dims(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b))
    }

    /// Rotates the raster 90° clockwise as displayed (y down):
    /// pixel `(x, y)` moves to `(height - 1 - y, x)`.
    pub fn rotate90(&self) -> BinaryMask {
        let (w, h) = (self.width, self.height);
        let mut out = BinaryMask { width: h, height: w, bits: vec![false; self.bits.len()] };
        for p in self.foreground() {
            let q = rotate90_coord(p, h);
            out.set(q.x, q.y, true);
        }
        out
    }
}

/// Coordinate map matching [`BinaryMask::rotate90`] for a source of height `height`.
pub fn rotate90_coord(p: PixelCoord, height: u32) -> PixelCoord {
    PixelCoord::new(height - 1 - p.y, p.x)
}

/// Number of foreground pixels.
pub fn area(mask: &BinaryMask) -> usize {
    mask.foreground_count()
}

/// Intersection over union; two empty masks score 1.
pub fn iou(a: &BinaryMask, b: &BinaryMask) -> Result<f64> {
    let union = a.union_count(b)?;
    if union == 0 {
        return Ok(1.0);
    }
    Ok(a.intersection_count(b)? as f64 / union as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dims_rejected() {
        assert!(matches!(BinaryMask::new(0, 3), Err(Error::InvalidDims { .. })));
        assert!(BinaryMask::from_bits(2, 2, vec![true; 3]).is_err());
    }

    #[test]
    fn area_examples() {
        assert_eq!(area(&BinaryMask::new(4, 4).unwrap()), 0);
        assert_eq!(area(&BinaryMask::from_fn(3, 3, |_, _| true).unwrap()), 9);
        let l = BinaryMask::from_fn(4, 4, |x, y| !(x >= 2 && y < 2)).unwrap();
        assert_eq!(area(&l), 12);
    }

    #[test]
    fn iou_examples() {
        let a = BinaryMask::from_fn(4, 1, |x, _| x < 2).unwrap();
        let b = BinaryMask::from_fn(4, 1, |x, _| (1..3).contains(&x)).unwrap();
        let c = BinaryMask::from_fn(4, 1, |x, _| x >= 2).unwrap();
        assert_eq!(iou(&a, &a).unwrap(), 1.0);
        assert_eq!(iou(&a, &c).unwrap(), 0.0);
        assert!((iou(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let e = BinaryMask::new(4, 1).unwrap();
        assert_eq!(iou(&e, &e).unwrap(), 1.0);
        let other = BinaryMask::new(3, 1).unwrap();
        assert!(matches!(iou(&a, &other), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn rotate_four_times_is_identity() {
        let m = BinaryMask::from_fn(5, 3, |x, y| (x + 2 * y) % 3 == 0).unwrap();
        let r = m.rotate90();
        assert_eq!(r.dims(), (3, 5));
        assert_eq!(r.rotate90().rotate90().rotate90(), m);
        // top-left pixel lands on the top-right column
        assert!(m.get(0, 0));
        assert!(r.get(2, 0));
    }

    #[test]
    fn bounding_box_of_l() {
        let l = BinaryMask::from_fn(6, 6, |x, y| (1..5).contains(&x) && (2..6).contains(&y) && !(x >= 3 && y < 4)).unwrap();
        assert_eq!(l.bounding_box(), Some((PixelCoord::new(1, 2), PixelCoord::new(4, 5))));
        assert_eq!(BinaryMask::new(2, 2).unwrap().bounding_box(), None);
    }
}
