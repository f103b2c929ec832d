use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fuzzy_extract::bench::{emit_table, run_bench, write_outputs, BenchPlan};
use fuzzy_extract::fuzzy::to_text;
use fuzzy_extract::imaging::{read_image, write_image};
use fuzzy_extract::metrics::{Quality, QualityReport};
use fuzzy_extract::pipeline::{run_extraction, ExtractionRun, PipelineConfig};
use fuzzy_extract::thresholding::{threshold_all, ThresholdMethod};
use fuzzy_extract::{Error, Result};

/// Default directory for `bench run` when `--out` is not given.
const OUT_ENV: &str = "FUZZY_EXTRACT_OUT";

#[derive(Parser)]
#[command(
    name = "fuzzy-extract",
    version,
    about = "Threshold-seeded fuzzy extraction of images from Gaussian noise"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Noise-level × method grid.
    Bench {
        #[command(subcommand)]
        cmd: BenchCmd,
    },
    /// Extract one image with the fuzzy pipeline.
    Extract {
        #[arg(long)]
        image: PathBuf,
        /// key = value pipeline settings; defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the learned rule base here.
        #[arg(long)]
        rules: Option<PathBuf>,
    },
    /// Print one or all thresholds of an image's luma plane.
    Threshold {
        #[arg(long)]
        image: PathBuf,
        /// Method name, or `all`.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Compare a test image with a reference.
    Metrics {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        test: PathBuf,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    Run {
        #[arg(long, required = true)]
        image: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![15.0, 30.0, 45.0, 60.0, 75.0, 90.0])]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Defaults to $FUZZY_EXTRACT_OUT, then `bench-out`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig> {
    match path {
        None => Ok(PipelineConfig::default()),
        Some(p) => PipelineConfig::parse(&std::fs::read_to_string(p).map_err(|e| Error::Io {
            path: p.to_path_buf(),
            source: e,
        })?),
    }
}

fn image_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().replace([',', '\n'], "_"))
        .unwrap_or_else(|| "image".into())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Bench {
            cmd:
                BenchCmd::Run {
                    image,
                    sigmas,
                    seeds,
                    out,
                    config,
                },
        } => {
            let images = image
                .iter()
                .map(|p| Ok((image_name(p), read_image(p)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut plan = BenchPlan::new(images);
            plan.sigmas = sigmas;
            plan.seeds = seeds;
            plan.config = load_config(config.as_deref())?;
            let out = out
                .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("bench-out"));
            let result = run_bench(&plan)?;
            write_outputs(&plan, &result, &out)?;
            for name in &result.images {
                print!("{}", emit_table(&result, name));
            }
        }
        Cmd::Extract {
            image,
            config,
            out,
            rules,
        } => {
            let cfg = load_config(config.as_deref())?;
            let run: ExtractionRun = run_extraction(&read_image(&image)?, &cfg)?;
            write_image(&run.output, &out)?;
            if let Some(path) = rules {
                std::fs::write(&path, to_text(&run.rule_base))
                    .map_err(|e| Error::Io { path, source: e })?;
            }
            println!("{}", ExtractionRun::SUMMARY_HEADER);
            println!("{}", run.summary_row());
        }
        Cmd::Threshold { image, method } => {
            let map = threshold_all(&read_image(&image)?.luma());
            if method.eq_ignore_ascii_case("all") {
                print!("{}", map.to_csv());
            } else {
                let m: ThresholdMethod = method.parse()?;
                let r = map.get(m).map_err(|f| f.into_error(m))?;
                println!("{}", r.t);
            }
        }
        Cmd::Metrics { reference, test } => {
            let q = Quality::between(&read_image(&reference)?, &read_image(&test)?)?;
            let report = QualityReport {
                image: image_name(&test),
                method: "-".into(),
                sigma: 0.0,
                seed: 0,
                quality: q,
            };
            println!("{}", QualityReport::CSV_HEADER);
            println!("{}", report.csv_row());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error kind={} message={:?}", e.kind(), e.to_string());
            ExitCode::FAILURE
        }
    }
}
