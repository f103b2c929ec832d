//! Iterative intermeans (Ridler–Calvard / IsoData) and its tail-trimmed
//! variant used as the `Default` method.

use super::Histogram;

pub const ISODATA_MAX_ITER: usize = 100;

/// Fraction of the pixel mass discarded from each end of the histogram
/// before the `Default` method iterates.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.01;

/// One intermeans update: `round((μ≤t + μ>t) / 2)`, kept inside
/// `[first, last − 1]` so both classes stay populated. `round` is half away
/// from zero.
pub fn intermeans_step(hist: &Histogram, t: u8) -> u8 {
    let (first, last) = hist.support();
    let t = (t as usize).clamp(first, last - 1);
    let (mut n0, mut s0, mut n1, mut s1) = (0.0, 0.0, 0.0, 0.0);
    for (i, &c) in hist.bins().iter().enumerate() {
        let (c, x) = (c as f64, i as f64);
        if i <= t {
            n0 += c;
            s0 += c * x;
        } else {
            n1 += c;
            s1 += c * x;
        }
    }
    let mid = (s0 / n0 + s1 / n1) / 2.0;
    (mid.round() as usize).clamp(first, last - 1) as u8
}

fn iterate_from(hist: &Histogram, start: f64) -> (u8, bool) {
    let (first, last) = hist.support();
    let mut t = (start.round() as usize).clamp(first, last - 1) as u8;
    for _ in 0..ISODATA_MAX_ITER {
        let next = intermeans_step(hist, t);
        if next == t {
            return (t, true);
        }
        t = next;
    }
    (t, false)
}

/// Requires at least two populated bins.
pub(super) fn isodata(hist: &Histogram) -> (u8, bool) {
    iterate_from(hist, hist.mean())
}

/// Removes `DEFAULT_TAIL_FRACTION` of the mass from each end, then runs
/// intermeans. Falls back to the untrimmed histogram when trimming leaves
/// fewer than two populated bins.
pub(super) fn default_intermeans(hist: &Histogram) -> (u8, bool) {
    let trim = (hist.total() as f64 * DEFAULT_TAIL_FRACTION).floor() as u64;
    let mut bins = *hist.bins();
    let mut left = trim;
    for b in bins.iter_mut() {
        let take = (*b).min(left);
        *b -= take;
        left -= take;
        if left == 0 {
            break;
        }
    }
    let mut left = trim;
    for b in bins.iter_mut().rev() {
        let take = (*b).min(left);
        *b -= take;
        left -= take;
        if left == 0 {
            break;
        }
    }
    match Histogram::from_bins(bins) {
        Ok(trimmed) if trimmed.populated_bins() >= 2 => isodata(&trimmed),
        _ => isodata(hist),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::LEVELS;

    fn bimodal() -> Histogram {
        let mut bins = [0; LEVELS];
        for i in 0..LEVELS {
            let x = i as f64;
            let v = 400.0 * (-(x - 60.0).powi(2) / 200.0).exp()
                + 250.0 * (-(x - 170.0).powi(2) / 450.0).exp();
            bins[i] = v.round() as u64;
        }
        Histogram::from_bins(bins).unwrap()
    }

    #[test]
    fn isodata_reaches_a_fixed_point() {
        let h = bimodal();
        let (t, converged) = isodata(&h);
        assert!(converged);
        assert_eq!(intermeans_step(&h, t), t);
        assert!((60..170).contains(&t));
    }

    #[test]
    fn default_ignores_outlier_tails() {
        let mut bins = *bimodal().bins();
        bins[0] += 20;
        bins[255] += 20;
        let h = Histogram::from_bins(bins).unwrap();
        let (t, converged) = default_intermeans(&h);
        assert!(converged);
        let (t_clean, _) = isodata(&bimodal());
        assert!((t as i32 - t_clean as i32).abs() <= 1);
    }

    #[test]
    fn two_levels_split_between_them() {
        let mut bins = [0; LEVELS];
        bins[10] = 1;
        bins[11] = 100;
        let h = Histogram::from_bins(bins).unwrap();
        assert_eq!(isodata(&h), (10, true));
    }
}
