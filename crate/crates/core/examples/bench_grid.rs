//! Runs the noise grid on the shipped test picture and prints the PSNR
//! table.
//!
//! ```text
//! cargo run --release --example bench_grid [-- <seeds> [<out dir>]]
//! ```

use std::time::Instant;

use fuzzy_extract::bench::{emit_table, run_bench, write_outputs, BenchPlan};
use fuzzy_extract::imaging::read_image;

fn main() -> fuzzy_extract::Result<()> {
    let mut args = std::env::args().skip(1);
    let seeds = args.next().map_or(10, |s| s.parse().expect("seed count"));
    let img = read_image(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/assets/mandrill_synth.ppm"
    ))?;

    let mut plan = BenchPlan::new(vec![("mandrill_synth".into(), img)]);
    plan.seeds = seeds;
    let start = Instant::now();
    let result = run_bench(&plan)?;
    eprintln!(
        "{} samples in {:.1?}",
        result.samples.len(),
        start.elapsed()
    );

    print!("{}", emit_table(&result, "mandrill_synth"));
    if let Some(dir) = args.next() {
        write_outputs(&plan, &result, dir.as_ref())?;
        eprintln!("wrote {dir}");
    }
    Ok(())
}
