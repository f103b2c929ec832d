//! Prints all sixteen thresholds of an image, optionally after adding
//! seeded Gaussian noise.
//!
//! ```text
//! cargo run --example thresholds -- <image> [<sigma> [<seed>]]
//! ```

use fuzzy_extract::imaging::{add_gaussian_noise, read_image, NoiseSpec};
use fuzzy_extract::thresholding::threshold_all;

fn main() -> fuzzy_extract::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm").to_string()
    });
    let sigma: f64 = args.next().map_or(0.0, |s| s.parse().expect("sigma"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let img = add_gaussian_noise(&read_image(&path)?, NoiseSpec::new(sigma, seed));
    let luma = img.luma();
    let map = threshold_all(&luma);
    print!("{}", map.to_csv());

    let fg: Vec<String> = map
        .usable()
        .map(|r| {
            let n = luma.pixels().iter().filter(|&&p| p > r.t).count();
            format!("{}={:.1}%", r.method, 100.0 * n as f64 / luma.len() as f64)
        })
        .collect();
    eprintln!("foreground share: {}", fg.join(" "));
    Ok(())
}
