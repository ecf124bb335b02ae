use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prompt::{PromptPoint, PromptSet, Strategy};
use crate::report::EvalRecord;

/// One line of a prompt file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PromptRecord {
    pub instance_id: String,
    pub strategy: Strategy,
    pub seed: u64,
    pub deterministic: bool,
    pub points: Vec<PromptPoint>,
}

impl PromptRecord {
    pub fn new(instance_id: impl Into<String>, set: PromptSet) -> Self {
        Self { instance_id: instance_id.into(), strategy: set.strategy, seed: set.seed, deterministic: set.deterministic, points: set.points }
    }

    pub fn prompt_set(&self) -> PromptSet {
        PromptSet { strategy: self.strategy, seed: self.seed, deterministic: self.deterministic, points: self.points.clone() }
    }
}

fn write_lines<T: Serialize>(items: &[T], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    for item in items {
        let line = serde_json::to_string(item).map_err(|e| Error::io(path, std::io::Error::other(e)))?;
        writeln!(out, "{line}").map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

fn read_lines<T: DeserializeOwned>(path: &Path, mut check: impl FnMut(&T) -> Result<()>) -> Result<Vec<T>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path.display().to_string();
    let mut items = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let item: T = serde_json::from_str(&line).map_err(|e| Error::parse(&name, i + 1, e.to_string()))?;
        check(&item).map_err(|e| Error::parse(&name, i + 1, e.to_string()))?;
        items.push(item);
    }
    Ok(items)
}

pub fn write_prompts(records: &[PromptRecord], path: &Path) -> Result<()> {
    write_lines(records, path)
}

/// Reads a prompt file, validating the role multiset of every line.
pub fn read_prompts(path: &Path) -> Result<Vec<PromptRecord>> {
    read_lines(path, |r: &PromptRecord| r.prompt_set().validate())
}

pub fn write_records(records: &[EvalRecord], path: &Path) -> Result<()> {
    write_lines(records, path)
}

pub fn read_records(path: &Path) -> Result<Vec<EvalRecord>> {
    read_lines(path, |r: &EvalRecord| {
        if !(0.0..=1.0).contains(&r.final_iou) || !(0.0..1.0).contains(&r.concavity) {
            return Err(Error::InvalidParams(format!("record {} out of range", r.instance_id)));
        }
        Ok(())
    })
}
