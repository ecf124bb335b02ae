//! Structured 4-point prompting toolkit for promptable segmentation.
//!
//! The crate turns instance masks into extreme-point, major/minor-axis, box
//! and region-click prompts, replays interactive correction sessions against
//! a pluggable [`segmenter::Segmenter`], and aggregates the outcome into
//! class-balanced mIoU tables stratified by shape concavity.
//!
//! Modules, bottom-up:
//!
//! - [`geometry`]: raster masks, borders, convex hulls, morphology, PCA and
//!   the concavity index.
//! - [`prompt`]: prompt roles, scoring and the generators.
//! - [`segmenter`]: the multi-candidate segmenter contract and two geometric
//!   implementations.
//! - [`session`]: budgeted interactive sessions and sweeps.
//! - [`report`]: aggregation, stratification and report emission.
//! - [`io`]: manifests, PNG masks, prompt/record files and sweep configs.
//! - [`cli`]: the `quadprompt` command-line surface.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod prompt;
pub mod report;
pub mod rng;
pub mod segmenter;
pub mod session;

pub use error::{Error, Result};
pub use geometry::{BinaryMask, PixelCoord};
pub use prompt::{PromptPoint, PromptRole, PromptSet, ScoringParams, Strategy};
