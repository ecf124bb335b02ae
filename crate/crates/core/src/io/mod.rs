//! File formats: dataset manifests, PNG masks, line-delimited prompt and
//! record files, and sweep configuration.

mod config;
mod jsonl;
mod manifest;
mod png;

pub use config::{load_sweep_config, parse_sweep_config, SweepConfig};
pub use jsonl::{read_prompts, read_records, write_prompts, write_records, PromptRecord};
pub use manifest::{load_dataset, DatasetManifest, ImageDims, ManifestEntry};
pub use png::{load_mask_png, save_mask_png};
