use fuzzy_extract::bench::{
    emit_samples, emit_summary, emit_table, run_bench, synthetic_mandrill, BenchPlan,
};
use fuzzy_extract::imaging::{read_image, Image};

const ASSET: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/assets/mandrill_synth.ppm");

#[test]
fn shipped_asset_matches_generator() {
    let shipped = read_image(ASSET).unwrap();
    assert_eq!(shipped, Image::Color(synthetic_mandrill(256)));
}

fn small_plan() -> BenchPlan {
    let img = Image::Color(synthetic_mandrill(48));
    let mut plan = BenchPlan::new(vec![("small".into(), img)]);
    plan.sigmas = vec![15.0, 60.0];
    plan.seeds = 3;
    plan
}

fn csv(plan: &BenchPlan) -> String {
    let r = run_bench(plan).unwrap();
    format!(
        "{}{}{}",
        emit_table(&r, "small"),
        emit_summary(&r),
        emit_samples(&r)
    )
}

#[test]
fn csv_is_identical_across_runs_and_thread_counts() {
    let plan = small_plan();
    let a = csv(&plan);
    assert_eq!(a, csv(&plan));
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    assert_eq!(a, one.install(|| csv(&plan)));
    let three = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    assert_eq!(a, three.install(|| csv(&plan)));
}

#[test]
fn samples_cover_every_cell() {
    let plan = small_plan();
    let r = run_bench(&plan).unwrap();
    assert_eq!(r.samples.len(), 2 * 3 * 17);
    assert_eq!(r.cells.len(), 2 * 17);
    assert!(r.cells.iter().all(|c| c.succeeded + c.failed == 3));
}
