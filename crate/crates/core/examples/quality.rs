//! Prints MSE, MAE, SNR and PSNR between a reference and a test image, then
//! the same figures for the reference against noisy copies of itself.
//!
//! ```text
//! cargo run --example quality -- [<reference> [<test>]]
//! ```

use fuzzy_extract::imaging::{add_gaussian_noise, read_image, NoiseSpec};
use fuzzy_extract::metrics::{Quality, QualityReport};

fn main() -> fuzzy_extract::Result<()> {
    let mut args = std::env::args().skip(1);
    let reference = read_image(args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm").to_string()
    }))?;

    println!("{}", QualityReport::CSV_HEADER);
    if let Some(test) = args.next() {
        let quality = Quality::between(&reference, &read_image(&test)?)?;
        let report = QualityReport {
            image: test,
            method: "file".into(),
            sigma: 0.0,
            seed: 0,
            quality,
        };
        println!("{}", report.csv_row());
        return Ok(());
    }
    for sigma in [5.0, 15.0, 30.0, 60.0] {
        let noisy = add_gaussian_noise(&reference, NoiseSpec::new(sigma, 1));
        let quality = Quality::between(&reference, &noisy)?;
        let report = QualityReport {
            image: "reference".into(),
            method: "noisy".into(),
            sigma,
            seed: 1,
            quality,
        };
        println!("{}", report.csv_row());
    }
    Ok(())
}
