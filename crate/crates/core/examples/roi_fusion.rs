//! Builds one foreground mask per usable threshold, fuses them by majority
//! vote and writes the fused mask as a PGM.
//!
//! ```text
//! cargo run --example roi_fusion -- [<image> [<out.pgm>]]
//! ```

use fuzzy_extract::features::{fuse_decisions, roi_masks};
use fuzzy_extract::imaging::{read_image, write_image, GrayImage, Image};
use fuzzy_extract::thresholding::threshold_all;

fn main() -> fuzzy_extract::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm").to_string()
    });
    let out = args.next().unwrap_or_else(|| "fused_mask.pgm".to_string());

    let luma = read_image(&path)?.luma();
    let masks = roi_masks(&luma, &threshold_all(&luma));
    for m in &masks {
        let name = m.source.map_or("?", |s| s.name());
        println!("{name:>12}  {:6} foreground", m.foreground_count());
    }
    let fused = fuse_decisions(&masks)?;
    println!(
        "{:>12}  {:6} foreground of {}",
        "fused",
        fused.foreground_count(),
        luma.len()
    );

    let px = fused
        .mask()
        .iter()
        .map(|&f| if f { 255 } else { 0 })
        .collect();
    write_image(
        &Image::Gray(GrayImage::new(fused.width(), fused.height(), px)?),
        &out,
    )?;
    eprintln!("wrote {out}");
    Ok(())
}
