//! Learns the identity map y = x from 256 samples with Wang–Mendel, prints
//! the rule base in its text form and a few centroid reconstructions.
//!
//! ```text
//! cargo run --example identity_rules -- [<regions>]
//! ```

use fuzzy_extract::fuzzy::{
    defuzzify_centroid, generate_rules, infer, to_text, Partition, TrainingPair, Variable,
};

fn main() -> fuzzy_extract::Result<()> {
    let regions: usize = std::env::args()
        .nth(1)
        .map_or(15, |s| s.parse().expect("region count"));
    let part = Partition::uniform(0.0, 255.0, regions)?;
    let pairs: Vec<TrainingPair> = (0..=255)
        .map(|v| TrainingPair::new(vec![v as f64], v as f64))
        .collect();
    let rb = generate_rules(
        &pairs,
        vec![Variable::new("x", part.clone())],
        Variable::new("y", part),
    )?;
    print!("{}", to_text(&rb));

    let mut total = 0.0;
    for v in 0..=255 {
        let y = defuzzify_centroid(&infer(&rb, &[v as f64]))?;
        total += (y - v as f64).abs();
        if v % 51 == 0 {
            eprintln!("x = {v:3}  ->  {y:8.3}");
        }
    }
    eprintln!(
        "{} rules, mean absolute error {:.4}",
        rb.len(),
        total / 256.0
    );
    Ok(())
}
