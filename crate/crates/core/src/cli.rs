//! The `quadprompt` command line.
//!
//! Exit status: 0 on success, 1 on validation errors (bad arguments, bad
//! input content), 2 on I/O errors. Diagnostics go to stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{area, concavity_index, convex_hull, rasterize_hull};
use crate::io::{load_dataset, load_sweep_config, read_records, save_mask_png, write_prompts, write_records, PromptRecord};
use crate::prompt::{box_from_extreme, gen_extreme, gen_major_minor, gen_region_click, gen_tight_box, ScoringParams};
use crate::report::{emit_report, parse_bins};
use crate::rng::{derive_seed, stable_hash};
use crate::session::run_budget_sweep;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "QUADPROMPT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "quadprompt", version, about = "Structured 4-point prompts, interactive session simulation and mIoU reports")]
struct Cli {
    /// Worker threads (default: $QUADPROMPT_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one prompt set per manifest instance.
    GenPrompts(GenPromptsArgs),
    /// Write the rasterized convex hull of every instance as a PNG.
    CanvasTarget {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Per-instance concavity index table (CSV).
    Concavity {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a budget sweep and write evaluation records.
    Simulate {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate records into summary tables and charts.
    Report {
        #[arg(long)]
        records: PathBuf,
        /// `quartile` or comma-separated edges, e.g. `0,0.3,0.6,1`.
        #[arg(long, default_value = "quartile")]
        bins: String,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PromptKind {
    Extreme,
    MajorMinor,
    /// Tight bounding box.
    Box,
    /// Box derived from extreme points.
    ExtremeBox,
    RegionClick,
}

#[derive(Debug, Args)]
struct GenPromptsArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, value_enum)]
    strategy: PromptKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Take the top-scored border pixel instead of sampling the ROI.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    w_main: Option<f64>,
    #[arg(long)]
    w_ortho: Option<f64>,
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    dilation_radius: Option<u32>,
}

impl GenPromptsArgs {
    fn scoring(&self) -> ScoringParams {
        let d = ScoringParams::default();
        ScoringParams {
            w_main: self.w_main.unwrap_or(d.w_main),
            w_ortho: self.w_ortho.unwrap_or(d.w_ortho),
            top_k: self.top_k,
            dilation_radius: self.dilation_radius,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok())).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::GenPrompts(args) => gen_prompts(&args),
        Command::CanvasTarget { manifest, out_dir } => canvas_target(&manifest, &out_dir),
        Command::Concavity { manifest, out } => concavity_table(&manifest, &out),
        Command::Simulate { manifest, config, out } => simulate(&manifest, &config, &out),
        Command::Report { records, bins, out_dir } => {
            let bins = parse_bins(&bins)?;
            let records = read_records(&records)?;
            emit_report(&records, &bins, &out_dir)?;
            Ok(())
        }
    }
}

fn gen_prompts(args: &GenPromptsArgs) -> Result<()> {
    let scoring = args.scoring();
    scoring.validate()?;
    let instances = load_dataset(&args.manifest)?.load_instances()?;
    let records = instances
        .par_iter()
        .map(|inst| {
            let seed = derive_seed(args.seed, stable_hash(&inst.instance_id));
            let set = match args.strategy {
                PromptKind::Extreme => gen_extreme(&inst.mask, &scoring, seed, args.deterministic)?,
                PromptKind::MajorMinor => gen_major_minor(&inst.mask, &scoring, seed, args.deterministic)?,
                PromptKind::Box => gen_tight_box(&inst.mask)?,
                PromptKind::ExtremeBox => box_from_extreme(&gen_extreme(&inst.mask, &scoring, seed, args.deterministic)?)?,
                PromptKind::RegionClick => gen_region_click(&inst.mask, seed)?,
            };
            Ok(PromptRecord::new(inst.instance_id.clone(), set))
        })
        .collect::<Result<Vec<_>>>()?;
    write_prompts(&records, &args.out)
}

fn file_safe(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' }).collect()
}

fn canvas_target(manifest: &Path, out_dir: &Path) -> Result<()> {
    let instances = load_dataset(manifest)?.load_instances()?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    instances.par_iter().try_for_each(|inst| {
        let hull = convex_hull(&inst.mask)?;
        let target = rasterize_hull(&hull, inst.mask.width(), inst.mask.height())?;
        save_mask_png(&target, &out_dir.join(format!("{}.png", file_safe(&inst.instance_id))))
    })
}

fn concavity_table(manifest: &Path, out: &Path) -> Result<()> {
    let instances = load_dataset(manifest)?.load_instances()?;
    let rows = instances
        .par_iter()
        .map(|inst| {
            let hull = rasterize_hull(&convex_hull(&inst.mask)?, inst.mask.width(), inst.mask.height())?;
            Ok((area(&inst.mask), area(&hull), concavity_index(&inst.mask)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r.2), hi.max(r.2)));
    let mut csv = String::from("instance_id,class_id,area,hull_area,concavity,normalized_concavity\n");
    for (inst, (a, h, d)) in instances.iter().zip(&rows) {
        let norm = if hi > lo { (d - lo) / (hi - lo) } else { 0.0 };
        let _ = writeln!(csv, "{},{},{a},{h},{d:.9},{norm:.9}", inst.instance_id, inst.class_id);
    }
    std::fs::write(out, csv).map_err(|e| Error::io(out, e))
}

fn simulate(manifest: &Path, config: &Path, out: &Path) -> Result<()> {
    let cfg = load_sweep_config(config)?;
    let segmenter = cfg.segmenter.build()?;
    let instances = load_dataset(manifest)?.load_instances()?;
    let records = run_budget_sweep(&instances, segmenter.as_ref(), &cfg.plan())?;
    write_records(&records, out)
}
