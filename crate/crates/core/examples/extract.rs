//! Adds seeded noise to an image, runs the full extraction and compares the
//! result with the best single-threshold baseline.
//!
//! ```text
//! cargo run --release --example extract -- [<image> [<sigma> [<seed> [<out>]]]]
//! ```

use fuzzy_extract::imaging::{add_gaussian_noise, read_image, write_image, Image, NoiseSpec};
use fuzzy_extract::metrics::Quality;
use fuzzy_extract::pipeline::{run_baseline, run_extraction, PipelineConfig};
use fuzzy_extract::thresholding::ThresholdMethod;

fn main() -> fuzzy_extract::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm").to_string()
    });
    let sigma: f64 = args.next().map_or(30.0, |s| s.parse().expect("sigma"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));
    let out = args.next().unwrap_or_else(|| "extracted.ppm".to_string());

    let clean = read_image(&path)?;
    let noisy = add_gaussian_noise(&clean, NoiseSpec::new(sigma, seed));
    let run = run_extraction(&noisy, &PipelineConfig::default())?;
    println!("{}", fuzzy_extract::pipeline::ExtractionRun::SUMMARY_HEADER);
    println!("{}", run.summary_row());

    let q = Quality::between(&clean, &run.output)?;
    println!("extracted: psnr {} dB, mae {:.3}", q.psnr_db, q.mae);
    let noisy_q = Quality::between(&clean, &noisy)?;
    println!("noisy input: psnr {} dB", noisy_q.psnr_db);

    let clean_luma = clean.luma();
    let best = ThresholdMethod::ALL
        .iter()
        .filter_map(|&m| {
            let b = run_baseline(&noisy, m).ok()?;
            Some((m, Quality::gray(&clean_luma, &b).ok()?.psnr_db))
        })
        .max_by(|a, b| {
            a.1.finite()
                .unwrap_or(f64::INFINITY)
                .total_cmp(&b.1.finite().unwrap_or(f64::INFINITY))
        });
    if let Some((m, db)) = best {
        println!("best baseline: {m}, psnr {db} dB");
    }

    write_image(&run.output, &out)?;
    if let Image::Color(_) = run.output {
        eprintln!("wrote color output to {out}");
    } else {
        eprintln!("wrote gray output to {out}");
    }
    Ok(())
}
