//! Noise-level × method comparison grid.
//!
//! Every cell `(image, sigma, seed)` adds seeded Gaussian noise once, then
//! scores each binary baseline and the fuzzy extraction against the clean
//! image. Cells run in parallel; results are sorted before anything is
//! emitted, so output bytes do not depend on scheduling.

mod synthetic;

pub use synthetic::{synthetic_mandrill, SYNTHETIC_SIDE};

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imaging::{add_gaussian_noise, Image, NoiseSpec};
use crate::metrics::{Decibels, Quality, QualityReport};
use crate::pipeline::{run_baseline, run_extraction, PipelineConfig};
use crate::thresholding::ThresholdMethod;

pub const DEFAULT_SIGMAS: [f64; 6] = [15.0, 30.0, 45.0, 60.0, 75.0, 90.0];
pub const DEFAULT_SEEDS: u64 = 10;

/// One table row: a binary baseline or the fuzzy extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    Baseline(ThresholdMethod),
    Proposed,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Row::Baseline(m) => f.write_str(m.name()),
            Row::Proposed => f.write_str("Proposed"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchPlan {
    /// `(name, clean image)`; names must be unique.
    pub images: Vec<(String, Image)>,
    pub sigmas: Vec<f64>,
    /// Seeds `0..seeds` are run for every cell.
    pub seeds: u64,
    pub methods: Vec<ThresholdMethod>,
    pub include_proposed: bool,
    /// Pipeline settings; the seed field is replaced by the cell seed.
    pub config: PipelineConfig,
}

impl BenchPlan {
    pub fn new(images: Vec<(String, Image)>) -> Self {
        BenchPlan {
            images,
            sigmas: DEFAULT_SIGMAS.to_vec(),
            seeds: DEFAULT_SEEDS,
            methods: ThresholdMethod::ALL.to_vec(),
            include_proposed: true,
            config: PipelineConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.is_empty() {
            return Err(Error::InvalidParameter("no images in plan".into()));
        }
        for (i, (name, _)) in self.images.iter().enumerate() {
            if name.is_empty() || name.contains([',', '\n']) {
                return Err(Error::InvalidParameter(format!("bad image name {name:?}")));
            }
            if self.images[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate image name {name:?}"
                )));
            }
        }
        if self.sigmas.is_empty() {
            return Err(Error::InvalidParameter("sigma grid is empty".into()));
        }
        if self.sigmas.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(Error::InvalidParameter(
                "sigmas must be finite and non-negative".into(),
            ));
        }
        if self.sigmas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "sigma grid must be strictly increasing".into(),
            ));
        }
        if self.seeds == 0 {
            return Err(Error::InvalidParameter("need at least one seed".into()));
        }
        if self.methods.is_empty() && !self.include_proposed {
            return Err(Error::InvalidParameter("nothing to run".into()));
        }
        self.config.validate()
    }

    pub fn rows(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = self.methods.iter().map(|&m| Row::Baseline(m)).collect();
        rows.sort();
        rows.dedup();
        if self.include_proposed {
            rows.push(Row::Proposed);
        }
        rows
    }
}

/// One seed of one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub image: String,
    pub row: Row,
    pub sigma: f64,
    pub seed: u64,
    /// Error kind on failure.
    pub outcome: std::result::Result<Quality, &'static str>,
}

impl Sample {
    fn key(&self) -> (&str, Row, u64, u64) {
        (&self.image, self.row, self.sigma.to_bits(), self.seed)
    }

    pub fn report(&self) -> Option<QualityReport> {
        self.outcome.ok().map(|q| QualityReport {
            image: self.image.clone(),
            method: self.row.to_string(),
            sigma: self.sigma,
            seed: self.seed,
            quality: q,
        })
    }
}

/// Mean and sample standard deviation of the successful seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Some(Summary { mean, std })
}

/// Aggregate over seeds for one `(image, row, sigma)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub image: String,
    pub row: Row,
    pub sigma: f64,
    /// `None` when every seed failed (a degenerate cell). Infinite PSNR
    /// values make the mean infinite.
    pub psnr: Option<Summary>,
    pub mse: Option<Summary>,
    pub mae: Option<Summary>,
    pub succeeded: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub sigmas: Vec<f64>,
    pub rows: Vec<Row>,
    pub images: Vec<String>,
    /// Sorted by image, row, sigma, seed.
    pub samples: Vec<Sample>,
    /// Sorted by image, row, sigma.
    pub cells: Vec<Cell>,
}

impl BenchResult {
    pub fn cell(&self, image: &str, row: Row, sigma: f64) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.image == image && c.row == row && c.sigma == sigma)
    }
}

fn score_cell(
    plan: &BenchPlan,
    rows: &[Row],
    name: &str,
    clean: &Image,
    sigma: f64,
    seed: u64,
) -> Vec<Sample> {
    let noisy = add_gaussian_noise(clean, NoiseSpec::new(sigma, seed));
    let clean_luma = clean.luma();
    rows.iter()
        .map(|&row| {
            let outcome = match row {
                Row::Baseline(m) => {
                    run_baseline(&noisy, m).and_then(|b| Quality::gray(&clean_luma, &b))
                }
                Row::Proposed => {
                    let cfg = PipelineConfig {
                        seed,
                        ..plan.config.clone()
                    };
                    run_extraction(&noisy, &cfg)
                        .and_then(|run| Quality::between(clean, &run.output))
                }
            };
            Sample {
                image: name.to_string(),
                row,
                sigma,
                seed,
                outcome: outcome.map_err(|e| e.kind()),
            }
        })
        .collect()
}

pub fn run_bench(plan: &BenchPlan) -> Result<BenchResult> {
    plan.validate()?;
    let rows = plan.rows();
    let tasks: Vec<(usize, f64, u64)> = (0..plan.images.len())
        .flat_map(|i| {
            plan.sigmas
                .iter()
                .flat_map(move |&s| (0..plan.seeds).map(move |seed| (i, s, seed)))
        })
        .collect();
    let mut samples: Vec<Sample> = tasks
        .par_iter()
        .flat_map_iter(|&(i, sigma, seed)| {
            let (name, clean) = &plan.images[i];
            score_cell(plan, &rows, name, clean, sigma, seed)
        })
        .collect();
    samples.sort_by(|a, b| a.key().cmp(&b.key()));

    let mut cells = Vec::new();
    for group in samples.chunk_by(|a, b| a.image == b.image && a.row == b.row && a.sigma == b.sigma)
    {
        let ok: Vec<&Quality> = group
            .iter()
            .filter_map(|s| s.outcome.as_ref().ok())
            .collect();
        let psnr: Vec<f64> = ok
            .iter()
            .map(|q| match q.psnr_db {
                Decibels::Finite(v) => v,
                Decibels::Infinite => f64::INFINITY,
            })
            .collect();
        let psnr = summarize(&psnr).map(|s| {
            if s.mean.is_infinite() {
                Summary {
                    mean: f64::INFINITY,
                    std: 0.0,
                }
            } else {
                s
            }
        });
        let first = &group[0];
        cells.push(Cell {
            image: first.image.clone(),
            row: first.row,
            sigma: first.sigma,
            psnr,
            mse: summarize(&ok.iter().map(|q| q.mse).collect::<Vec<_>>()),
            mae: summarize(&ok.iter().map(|q| q.mae).collect::<Vec<_>>()),
            succeeded: ok.len(),
            failed: group.len() - ok.len(),
        });
    }
    let mut images: Vec<String> = plan.images.iter().map(|(n, _)| n.clone()).collect();
    images.sort();
    Ok(BenchResult {
        sigmas: plan.sigmas.clone(),
        rows,
        images,
        samples,
        cells,
    })
}

fn fmt_mean(s: Option<Summary>, decimals: usize) -> String {
    match s {
        None => "nan".into(),
        Some(s) if s.mean.is_infinite() => "inf".into(),
        Some(s) => format!("{:.*}", decimals, s.mean),
    }
}

fn sigma_label(s: f64) -> String {
    format!("{s}")
}

/// Mean PSNR per row (baselines in method order, `Proposed` last) and sigma,
/// four decimals; degenerate cells print `nan`.
pub fn emit_table(result: &BenchResult, image: &str) -> String {
    let mut out = String::from("method");
    for &s in &result.sigmas {
        let _ = write!(out, ",{}", sigma_label(s));
    }
    out.push('\n');
    for &row in &result.rows {
        let _ = write!(out, "{row}");
        for &s in &result.sigmas {
            let _ = write!(
                out,
                ",{}",
                fmt_mean(result.cell(image, row, s).and_then(|c| c.psnr), 4)
            );
        }
        out.push('\n');
    }
    out
}

/// One `sigma,psnr` series per row, keyed by row name. Values are the same
/// strings [`emit_table`] prints.
pub fn emit_plotdata(result: &BenchResult, image: &str) -> Vec<(String, String)> {
    result
        .rows
        .iter()
        .map(|&row| {
            let mut s = String::from("sigma,psnr\n");
            for &sigma in &result.sigmas {
                let v = fmt_mean(result.cell(image, row, sigma).and_then(|c| c.psnr), 4);
                let _ = writeln!(s, "{},{v}", sigma_label(sigma));
            }
            (row.to_string(), s)
        })
        .collect()
}

/// Every seed of every cell as a [`QualityReport`] row; failed seeds carry
/// their error kind in the metric columns.
pub fn emit_samples(result: &BenchResult) -> String {
    let mut out = format!("{}\n", QualityReport::CSV_HEADER);
    for s in &result.samples {
        match s.report() {
            Some(r) => {
                let _ = writeln!(out, "{}", r.csv_row());
            }
            None => {
                let kind = s.outcome.err().unwrap_or("error");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{kind},{kind},{kind},{kind}",
                    s.image, s.row, s.sigma, s.seed
                );
            }
        }
    }
    out
}

/// Mean ± std of every metric per cell.
pub fn emit_summary(result: &BenchResult) -> String {
    let mut out = String::from(
        "image,method,sigma,n,failed,psnr_mean,psnr_std,mse_mean,mse_std,mae_mean,mae_std\n",
    );
    let std = |s: Option<Summary>| s.map_or_else(|| "nan".to_string(), |s| format!("{:.6}", s.std));
    for c in &result.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            c.image,
            c.row,
            c.sigma,
            c.succeeded,
            c.failed,
            fmt_mean(c.psnr, 6),
            std(c.psnr),
            fmt_mean(c.mse, 6),
            std(c.mse),
            fmt_mean(c.mae, 6),
            std(c.mae)
        );
    }
    out
}

/// Conventions the numbers depend on.
pub fn emit_metadata(plan: &BenchPlan) -> String {
    let sigmas: Vec<String> = plan.sigmas.iter().map(|s| sigma_label(*s)).collect();
    format!(
        "reference = clean original\n\
         baseline_output = binary threshold of noisy luma, compared with clean luma\n\
         proposed_output = fuzzy extraction, compared through luma\n\
         sigma = standard deviation in 8-bit intensity units\n\
         noise = independent per channel, seed shared across sigmas\n\
         sigmas = {}\n\
         seeds = 0..{}\n\
         pipeline:\n{}",
        sigmas.join(","),
        plan.seeds,
        plan.config.to_text()
    )
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `table_<image>.csv`, `plot/<image>/<row>.csv`, `samples.csv`,
/// `summary.csv` and `meta.txt` under `dir`.
pub fn write_outputs(plan: &BenchPlan, result: &BenchResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for image in &result.images {
        write(
            &dir.join(format!("table_{image}.csv")),
            &emit_table(result, image),
        )?;
        let plot_dir = dir.join("plot").join(image);
        fs::create_dir_all(&plot_dir).map_err(|e| Error::io(&plot_dir, e))?;
        for (name, series) in emit_plotdata(result, image) {
            write(&plot_dir.join(format!("{name}.csv")), &series)?;
        }
    }
    write(&dir.join("samples.csv"), &emit_samples(result))?;
    write(&dir.join("summary.csv"), &emit_summary(result))?;
    write(&dir.join("meta.txt"), &emit_metadata(plan))
}
