//! Raster mask primitives.
//!
//! Coordinates are integer pixel indices with `x` growing right and `y`
//! growing down, so "top" means minimal `y`. All functions are pure.

mod border;
mod hull;
mod mask;
mod morph;
mod pca;

pub use border::border_pixels;
pub use hull::{concavity_index, convex_hull, rasterize_hull, HullPolygon};
pub(crate) use hull::{fill_convex_doubled, monotone_chain};
pub use mask::{area, iou, rotate90_coord, BinaryMask, PixelCoord};
pub use morph::{dilate4, dilate_points, erode4};
pub use pca::{pca_axes, AxisPair};
