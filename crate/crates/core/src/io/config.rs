use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prompt::ScoringParams;
use crate::segmenter::SegmenterConfig;
use crate::session::{SelectionPolicy, SessionStrategy, SweepPlan};

/// Sweep configuration (TOML).
///
/// ```toml
/// strategies = ["region_iterative", "box", "extreme_refine", "major_minor_refine"]
/// budgets = [1, 2, 3, 4, 5, 6, 7]
/// repeats = 5
/// seed = 0
/// selection = "predicted"        # or "oracle"
/// deterministic_prompts = false
///
/// [segmenter]
/// name = "perturbed-oracle"      # or "sketch"
/// d0_region = 4
/// d0_structured = 2
/// noise = 0.15
/// candidates = 3
///
/// [scoring]
/// w_main = 0.6
/// w_ortho = 0.4
/// # top_k = 8
/// # dilation_radius = 2
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub strategies: Vec<SessionStrategy>,
    pub budgets: Vec<u32>,
    pub repeats: u32,
    pub seed: u64,
    pub selection: SelectionPolicy,
    pub deterministic_prompts: bool,
    pub segmenter: SegmenterConfig,
    pub scoring: ScoringParams,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            strategies: SessionStrategy::ALL.to_vec(),
            budgets: (1..=7).collect(),
            repeats: 5,
            seed: 0,
            selection: SelectionPolicy::Predicted,
            deterministic_prompts: false,
            segmenter: SegmenterConfig::default(),
            scoring: ScoringParams::default(),
        }
    }
}

impl SweepConfig {
    pub fn plan(&self) -> SweepPlan {
        SweepPlan {
            strategies: self.strategies.clone(),
            budgets: self.budgets.clone(),
            repeats: self.repeats,
            base_seed: self.seed,
            selection: self.selection,
            scoring: self.scoring,
            deterministic_prompts: self.deterministic_prompts,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::InvalidParams("repeats must be >= 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidParams("no strategies configured".into()));
        }
        self.scoring.validate()
    }
}

/// Parses TOML text; `source_name` is used in diagnostics.
pub fn parse_sweep_config(text: &str, source_name: &str) -> Result<SweepConfig> {
    let cfg: SweepConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(0, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        Error::parse(source_name, line, e.message().to_string())
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_sweep_config(path: &Path) -> Result<SweepConfig> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sweep_config(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = parse_sweep_config("", "t").unwrap();
        assert_eq!(cfg, SweepConfig::default());
        let cfg = parse_sweep_config(
            "strategies = [\"extreme_refine\"]\nbudgets = [4, 5]\nrepeats = 2\nselection = \"oracle\"\n[scoring]\nw_ortho = 0.2\ntop_k = 7\n[segmenter]\nname = \"sketch\"\nclick_radius = 2\n",
            "t",
        )
        .unwrap();
        assert_eq!(cfg.strategies, vec![SessionStrategy::ExtremeRefine]);
        assert_eq!(cfg.selection, SelectionPolicy::Oracle);
        assert_eq!(cfg.scoring.w_ortho, 0.2);
        assert_eq!(cfg.scoring.top_k, Some(7));
        assert_eq!(cfg.scoring.w_main, 0.6);
        assert!(matches!(cfg.segmenter, SegmenterConfig::Sketch { click_radius: 2, candidates: 3 }));
    }

    #[test]
    fn unknown_key_reports_line() {
        match parse_sweep_config("repeats = 5\nrepeets = 3\n", "cfg.toml") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_sweep_config("repeats = 0", "t").is_err());
    }
}
