//! Prompt roles, scoring and the prompt generators.

mod generate;
mod scoring;
mod types;

pub use generate::{box_from_extreme, gen_extreme, gen_major_minor, gen_region_click, gen_tight_box, sample_refinement};
pub use scoring::{project_and_score, ResolvedScoring, ScoredPixel, ScoringParams};
pub use types::{PromptPoint, PromptRole, PromptSet, Strategy};
