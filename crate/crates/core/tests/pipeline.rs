use fuzzy_extract::features::roi_masks;
use fuzzy_extract::imaging::{add_gaussian_noise, ColorImage, GrayImage, Image, NoiseSpec};
use fuzzy_extract::pipeline::{run_extraction, threshold_anchors, PipelineConfig};
use fuzzy_extract::thresholding::threshold_all;
use fuzzy_extract::Error;
use proptest::prelude::*;

#[test]
fn agreeing_thresholds_collapse_the_anchor_partition() {
    // two adjacent levels leave a single admissible split
    let img = GrayImage::from_fn(16, 16, |x, y| if (x + y) % 2 == 0 { 100 } else { 101 }).unwrap();
    let map = threshold_all(&img);
    assert!(map.usable().all(|r| r.t == 100));
    assert_eq!(threshold_anchors(&map), vec![100.0]);

    let run = run_extraction(&Image::Gray(img.clone()), &PipelineConfig::default()).unwrap();
    let roi = run.rule_base.inputs().last().unwrap();
    assert_eq!(roi.name, "roi");
    assert!(roi.partition.len() <= 3);
    for mask in roi_masks(&img, &map) {
        assert_eq!(mask.mask(), run.fused.mask());
    }
}

#[test]
fn flat_image_is_rejected() {
    let img = Image::Color(
        ColorImage::from_planes(
            GrayImage::filled(9, 9, 10).unwrap(),
            GrayImage::filled(9, 9, 10).unwrap(),
            GrayImage::filled(9, 9, 10).unwrap(),
        )
        .unwrap(),
    );
    assert!(matches!(
        run_extraction(&img, &PipelineConfig::default()),
        Err(Error::DegenerateImage)
    ));
}

#[test]
fn thread_count_does_not_change_output() {
    let clean = GrayImage::from_fn(48, 40, |x, y| ((x * 5 + y * 3) % 200 + 20) as u8).unwrap();
    let noisy = add_gaussian_noise(&Image::Gray(clean), NoiseSpec::new(25.0, 3));
    let cfg = PipelineConfig::default();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| run_extraction(&noisy, &cfg)).unwrap();
    let pool4 = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let many = pool4.install(|| run_extraction(&noisy, &cfg)).unwrap();
    assert_eq!(single.output, many.output);
    assert_eq!(single.fallback_pixels, many.fallback_pixels);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn output_keeps_shape(w in 3usize..24, h in 3usize..24, seed in any::<u64>(), sigma in 5.0f64..80.0) {
        let clean = Image::Gray(GrayImage::from_fn(w, h, |x, _| if x < w / 2 { 60 } else { 190 }).unwrap());
        let noisy = add_gaussian_noise(&clean, NoiseSpec::new(sigma, seed));
        let cfg = PipelineConfig { seed, ..PipelineConfig::default() };
        match run_extraction(&noisy, &cfg) {
            Ok(run) => {
                prop_assert_eq!((run.output.width(), run.output.height()), (w, h));
                prop_assert!(run.fallback_pixels <= w * h);
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateImage), "{e}"),
        }
    }
}
