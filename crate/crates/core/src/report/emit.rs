use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{chart, normalize_concavity, stratify_concavity, summarize, ConcavityBin, EvalRecord};
use crate::error::{Error, Result};
use crate::session::SessionStrategy;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportFiles {
    pub summary: PathBuf,
    pub strata: PathBuf,
    pub charts: Vec<PathBuf>,
}

fn file_stem(dataset: &str) -> String {
    dataset.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `summary.csv`, `concavity_strata.csv` and one `miou_<dataset>.svg`
/// per dataset into `out_dir`. Output bytes depend only on the record set.
pub fn emit_report(records: &[EvalRecord], bins: &[ConcavityBin], out_dir: &Path) -> Result<ReportFiles> {
    if records.is_empty() {
        return Err(Error::NoData);
    }
    let mut records = records.to_vec();
    if records.iter().any(|r| r.normalized_concavity.is_none()) {
        normalize_concavity(&mut records);
    }
    let rows = summarize(&records)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let mut summary = String::from("dataset,strategy,budget,mean_miou,std_miou,n\n");
    for r in &rows {
        let _ = writeln!(summary, "{},{},{},{:.6},{:.6},{}", r.dataset_id, r.strategy, r.budget, r.stats.mean, r.stats.std, r.stats.n);
    }
    let summary_path = out_dir.join("summary.csv");
    write(&summary_path, &summary)?;

    let mut cells: BTreeMap<(&str, SessionStrategy, u32), Vec<EvalRecord>> = BTreeMap::new();
    for r in &records {
        cells.entry((&r.dataset_id, r.strategy, r.budget)).or_default().push(r.clone());
    }
    let mut strata = String::from("dataset,strategy,budget,bin,lower,upper,n,miou\n");
    for ((dataset, strategy, budget), rs) in &cells {
        for b in stratify_concavity(rs, bins)? {
            let miou = b.miou.map_or_else(|| "NA".to_string(), |m| format!("{m:.6}"));
            let _ = writeln!(strata, "{dataset},{strategy},{budget},{},{:.4},{:.4},{},{miou}", b.bin.label, b.bin.lower, b.bin.upper, b.n);
        }
    }
    let strata_path = out_dir.join("concavity_strata.csv");
    write(&strata_path, &strata)?;

    let mut by_dataset: BTreeMap<&str, Vec<_>> = BTreeMap::new();
    for r in &rows {
        by_dataset.entry(r.dataset_id.as_str()).or_default().push(r);
    }
    let mut charts = Vec::new();
    for (dataset, ds_rows) in by_dataset {
        let path = out_dir.join(format!("miou_{}.svg", file_stem(dataset)));
        write(&path, &chart::render(dataset, &ds_rows))?;
        charts.push(path);
    }
    Ok(ReportFiles { summary: summary_path, strata: strata_path, charts })
}
