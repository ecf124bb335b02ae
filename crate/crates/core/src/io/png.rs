use std::path::Path;

use image::{DynamicImage, GrayImage, ImageFormat, ImageReader, Luma};

use crate::error::{Error, Result};
use crate::geometry::BinaryMask;

fn decode_error(path: &Path, message: impl Into<String>) -> Error {
    Error::parse(path.display().to_string(), 0, message)
}

/// Decodes an 8-bit single-channel PNG; any nonzero pixel is foreground.
pub fn load_mask_png(path: &Path) -> Result<BinaryMask> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let reader = ImageReader::open(path).map_err(|e| Error::io(path, e))?;
    let image = reader.with_guessed_format().map_err(|e| Error::io(path, e))?.decode().map_err(|e| decode_error(path, e.to_string()))?;
    let gray = match image {
        DynamicImage::ImageLuma8(g) => g,
        other => return Err(decode_error(path, format!("expected an 8-bit single-channel PNG, found {:?}", other.color()))),
    };
    let (w, h) = gray.dimensions();
    BinaryMask::from_bits(w, h, gray.into_raw().into_iter().map(|v| v != 0).collect())
}

/// Writes the mask as an 8-bit grayscale PNG with foreground = 255.
pub fn save_mask_png(mask: &BinaryMask, path: &Path) -> Result<()> {
    let img = GrayImage::from_fn(mask.width(), mask.height(), |x, y| Luma([if mask.get(x, y) { 255 } else { 0 }]));
    img.save_with_format(path, ImageFormat::Png).map_err(|e| match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => Error::io(path, std::io::Error::other(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.png");
        let m = BinaryMask::from_fn(7, 5, |x, y| (x * y) % 3 == 1).unwrap();
        save_mask_png(&m, &path).unwrap();
        assert_eq!(load_mask_png(&path).unwrap(), m);
    }

    #[test]
    fn nonzero_is_foreground() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.png");
        GrayImage::from_fn(3, 1, |x, _| Luma([x as u8])).save(&path).unwrap();
        let m = load_mask_png(&path).unwrap();
        assert_eq!(m.bits(), &[false, true, true]);
    }

    #[test]
    fn rgb_rejected_and_missing_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rgb.png");
        image::RgbImage::new(2, 2).save(&path).unwrap();
        assert!(matches!(load_mask_png(&path), Err(Error::Parse { .. })));
        assert!(matches!(load_mask_png(&dir.path().join("nope.png")), Err(Error::MissingFile(_))));
    }
}
