use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::png::load_mask_png;
use crate::error::{Error, Result};
use crate::geometry::BinaryMask;
use crate::session::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDims {
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub instance_id: String,
    pub class_id: String,
    /// Relative paths resolve against the manifest's directory.
    pub mask_path: PathBuf,
    pub image_dims: ImageDims,
}

/// A dataset manifest (JSON):
///
/// ```json
/// {"dataset_id": "demo", "entries": [
///   {"instance_id": "a", "class_id": "cyst", "mask_path": "masks/a.png",
///    "image_dims": {"width": 64, "height": 64}}]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub dataset_id: String,
    pub entries: Vec<ManifestEntry>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl DatasetManifest {
    pub fn resolve(&self, entry: &ManifestEntry) -> PathBuf {
        if entry.mask_path.is_absolute() {
            entry.mask_path.clone()
        } else {
            self.base_dir.join(&entry.mask_path)
        }
    }

    /// Decodes one mask and checks it against the declared dimensions.
    pub fn load_mask(&self, entry: &ManifestEntry) -> Result<BinaryMask> {
        let mask = load_mask_png(&self.resolve(entry))?;
        let declared = (entry.image_dims.width, entry.image_dims.height);
        if mask.dims() != declared {
            return Err(Error::DimMismatch { expected: declared, found: mask.dims() });
        }
        Ok(mask)
    }

    /// Decodes every mask (in parallel), preserving manifest order.
    pub fn load_instances(&self) -> Result<Vec<Instance>> {
        self.entries
            .par_iter()
            .map(|e| {
                Ok(Instance {
                    dataset_id: self.dataset_id.clone(),
                    instance_id: e.instance_id.clone(),
                    class_id: e.class_id.clone(),
                    mask: self.load_mask(e)?,
                })
            })
            .collect()
    }
}

/// Parses and validates a manifest. Masks are not decoded here.
pub fn load_dataset(path: &Path) -> Result<DatasetManifest> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut manifest: DatasetManifest =
        serde_json::from_str(&text).map_err(|e| Error::parse(path.display().to_string(), e.line(), e.to_string()))?;
    manifest.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut seen = HashSet::new();
    for entry in &manifest.entries {
        if !seen.insert(entry.instance_id.as_str()) {
            return Err(Error::DuplicateId(entry.instance_id.clone()));
        }
        if entry.image_dims.width == 0 || entry.image_dims.height == 0 {
            return Err(Error::InvalidDims { width: entry.image_dims.width, height: entry.image_dims.height });
        }
        let resolved = manifest.resolve(entry);
        if !resolved.is_file() {
            return Err(Error::MissingFile(resolved));
        }
    }
    Ok(manifest)
}
