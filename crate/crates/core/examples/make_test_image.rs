//! Regenerates `assets/mandrill_synth.ppm`, the synthetic 256×256 test
//! picture used by the benchmark.
//!
//! ```text
//! cargo run --example make_test_image [-- <out.ppm>]
//! ```

use fuzzy_extract::bench::{synthetic_mandrill, SYNTHETIC_SIDE};
use fuzzy_extract::imaging::{write_image, Image};

fn main() -> fuzzy_extract::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm").to_string()
    });
    let img = Image::Color(synthetic_mandrill(SYNTHETIC_SIDE));
    write_image(&img, &out)?;
    println!("wrote {out} ({SYNTHETIC_SIDE}x{SYNTHETIC_SIDE})");
    Ok(())
}
