//! Fuzzy sets, partitions, rule generation and inference.

mod inference;
mod membership;
mod partition;
mod rules;
mod text;

pub use inference::{defuzzify_centroid, infer, Inferencer, OutputSet, Scratch, OUTPUT_SAMPLES};
pub use membership::{default_fuzzifier, fuzzify_gaussian, FuzzyImage, MembershipFunction};
pub use partition::{partition_universe, FuzzyRegion, Partition, ANCHOR_MERGE_DISTANCE};
pub use rules::{candidate_rule, generate_rules, FuzzyRule, RuleBase, TrainingPair, Variable};
pub use text::{from_text, to_text};
