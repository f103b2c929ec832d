//! Brute-force fuzzy reasoning over explicit triangle parameters.

use std::collections::BTreeMap;

use fuzzy_extract::fuzzy::{
    generate_rules, FuzzyRegion, MembershipFunction, Partition, RuleBase, TrainingPair, Variable,
};
use rand_chacha::rand_core::RngCore;

use super::{seeded, uniform};

/// Triangle with feet `a`, `c` and peak `b`; `a == b` or `b == c` is a
/// shoulder.
pub fn tri(x: f64, a: f64, b: f64, c: f64) -> f64 {
    if x == b {
        1.0
    } else if x < b {
        if x <= a {
            0.0
        } else {
            (x - a) / (b - a)
        }
    } else if x >= c {
        0.0
    } else {
        (c - x) / (c - b)
    }
}

/// Peaks of a uniform partition.
pub fn uniform_peaks(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..k)
        .map(|i| lo + i as f64 * (hi - lo) / (k - 1) as f64)
        .collect();
    p[k - 1] = hi;
    p
}

/// Membership of region `i` in the triangle partition with these peaks.
pub fn member(peaks: &[f64], i: usize, x: f64) -> f64 {
    let n = peaks.len();
    tri(
        x,
        peaks[i.saturating_sub(1)],
        peaks[i],
        peaks[(i + 1).min(n - 1)],
    )
}

/// `(region, membership)` of the first region attaining the maximum.
pub fn snap(peaks: &[f64], x: f64) -> (usize, f64) {
    let mut best = (0, member(peaks, 0, x));
    for i in 1..peaks.len() {
        let m = member(peaks, i, x);
        if m > best.1 {
            best = (i, m);
        }
    }
    best
}

/// Every datum's candidate `(antecedent, consequent, degree)`.
pub fn candidates(
    data: &[(Vec<f64>, f64)],
    inputs: &[Vec<f64>],
    output: &[f64],
) -> Vec<(Vec<usize>, usize, f64)> {
    data.iter()
        .map(|(xs, y)| {
            let mut degree = 1.0;
            let ante = xs
                .iter()
                .zip(inputs)
                .map(|(&x, peaks)| {
                    let (r, m) = snap(peaks, x);
                    degree *= m;
                    r
                })
                .collect();
            let (c, m) = snap(output, *y);
            (ante, c, degree * m)
        })
        .collect()
}

/// Max-degree conflict resolution, ties to the lower consequent.
pub fn wang_mendel(cands: &[(Vec<usize>, usize, f64)]) -> BTreeMap<Vec<usize>, (usize, f64)> {
    let mut rules: BTreeMap<Vec<usize>, (usize, f64)> = BTreeMap::new();
    for (a, c, d) in cands {
        let e = rules.entry(a.clone()).or_insert((*c, *d));
        if *d > e.1 || (*d == e.1 && *c < e.0) {
            *e = (*c, *d);
        }
    }
    rules
}

/// Mamdani min–max over every rule, 256 samples of `[lo, hi]`.
pub fn mamdani(
    rules: &BTreeMap<Vec<usize>, (usize, f64)>,
    inputs: &[Vec<f64>],
    output: &[f64],
    xs: &[f64],
    lo: f64,
    hi: f64,
) -> Vec<f64> {
    let mut agg = vec![0.0f64; 256];
    for (ante, &(c, _)) in rules {
        let strength = ante
            .iter()
            .zip(inputs.iter().zip(xs))
            .map(|(&r, (peaks, &x))| member(peaks, r, x))
            .fold(f64::INFINITY, f64::min);
        if strength <= 0.0 {
            continue;
        }
        for (j, a) in agg.iter_mut().enumerate() {
            let y = lo + (hi - lo) * j as f64 / 255.0;
            *a = a.max(member(output, c, y).min(strength));
        }
    }
    agg
}

pub fn centroid(agg: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let den: f64 = agg.iter().sum();
    if den == 0.0 {
        return None;
    }
    let num: f64 = agg
        .iter()
        .enumerate()
        .map(|(j, m)| (lo + (hi - lo) * j as f64 / 255.0) * m)
        .sum();
    Some(num / den)
}

pub fn partition(peaks: &[f64]) -> Partition {
    let n = peaks.len();
    let regions = (0..n)
        .map(|i| FuzzyRegion {
            label: format!("P{i}"),
            mf: MembershipFunction::Triangular {
                a: peaks[i.saturating_sub(1)],
                b: peaks[i],
                c: peaks[(i + 1).min(n - 1)],
            },
            universe: (peaks[0], peaks[n - 1]),
        })
        .collect();
    Partition::from_regions(peaks[0], peaks[n - 1], regions).unwrap()
}

pub struct Problem {
    pub inputs: Vec<Vec<f64>>,
    pub output: Vec<f64>,
    pub data: Vec<(Vec<f64>, f64)>,
}

impl Problem {
    pub fn random(seed: u64) -> Problem {
        let mut rng = seeded(seed);
        let nvars = 2 + (rng.next_u64() % 2) as usize;
        let inputs: Vec<Vec<f64>> = (0..nvars)
            .map(|_| uniform_peaks(0.0, 255.0, 2 + (rng.next_u64() % 6) as usize))
            .collect();
        let output = uniform_peaks(0.0, 255.0, 2 + (rng.next_u64() % 6) as usize);
        let n = 1 + (rng.next_u64() % 50) as usize;
        let data = (0..n)
            .map(|_| {
                // snap some values onto the integer grid so exact ties occur
                let mut v = || {
                    let x = 255.0 * uniform(&mut rng);
                    if rng.next_u64() % 3 == 0 {
                        x.round()
                    } else {
                        x
                    }
                };
                let xs: Vec<f64> = (0..nvars).map(|_| v()).collect();
                (xs, v())
            })
            .collect();
        Problem {
            inputs,
            output,
            data,
        }
    }

    pub fn rule_base(&self) -> RuleBase {
        let vars = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, p)| Variable::new(format!("v{i}"), partition(p)))
            .collect();
        let pairs: Vec<TrainingPair> = self
            .data
            .iter()
            .map(|(x, y)| TrainingPair::new(x.clone(), *y))
            .collect();
        generate_rules(&pairs, vars, Variable::new("y", partition(&self.output))).unwrap()
    }
}
