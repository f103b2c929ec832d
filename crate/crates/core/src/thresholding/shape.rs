//! Thresholds read off the histogram's shape or moments.

use super::{Histogram, ThresholdFailure};
use crate::imaging::LEVELS;

pub const MAX_SMOOTHING_PASSES: usize = 10_000;

/// Doyle p-tile: the target fraction of pixels at or below `t`.
pub const PERCENTILE_FRACTION: f64 = 0.5;

fn clamp_to_classes(hist: &Histogram, t: usize) -> u8 {
    let (first, last) = hist.support();
    t.clamp(first, last - 1) as u8
}

fn cumulative(hist: &Histogram) -> [f64; LEVELS] {
    let p = hist.probabilities();
    let mut c = [0.0; LEVELS];
    let mut acc = 0.0;
    for i in 0..LEVELS {
        acc += p[i];
        c[i] = acc;
    }
    c
}

pub(super) fn mean(hist: &Histogram) -> u8 {
    clamp_to_classes(hist, hist.mean().floor() as usize)
}

/// `t` whose cumulative fraction is closest to [`PERCENTILE_FRACTION`].
pub(super) fn percentile(hist: &Histogram) -> u8 {
    let mut best = (0usize, f64::INFINITY);
    let mut below = 0u64;
    for (t, &c) in hist.bins().iter().enumerate() {
        below += c;
        // exact integer arithmetic keeps ties (and shifts) stable
        let d = (below as f64 - PERCENTILE_FRACTION * hist.total() as f64).abs();
        if d < best.1 {
            best = (t, d);
        }
    }
    clamp_to_classes(hist, best.0)
}

/// Tsai's moment-preserving threshold: fit a two-level image with the same
/// first three moments, then cut at the quantile equal to the low level's
/// share `p0`.
pub(super) fn moments(hist: &Histogram) -> Result<u8, ThresholdFailure> {
    let p = hist.probabilities();
    let (mut m1, mut m2, mut m3) = (0.0, 0.0, 0.0);
    for (i, &pi) in p.iter().enumerate() {
        let x = i as f64;
        m1 += x * pi;
        m2 += x * x * pi;
        m3 += x * x * x * pi;
    }
    let cd = m2 - m1 * m1;
    if cd <= 0.0 {
        return Err(ThresholdFailure::Degenerate);
    }
    let c0 = (-m2 * m2 + m1 * m3) / cd;
    let c1 = (m1 * m2 - m3) / cd;
    let disc = (c1 * c1 - 4.0 * c0).max(0.0).sqrt();
    let z0 = 0.5 * (-c1 - disc);
    let z1 = 0.5 * (-c1 + disc);
    if z1 <= z0 {
        return Err(ThresholdFailure::Degenerate);
    }
    let p0 = (z1 - m1) / (z1 - z0);
    let cum = cumulative(hist);
    // small slack so an exact two-level fit lands on its lower level
    let t = cum
        .iter()
        .position(|&c| c + 1e-9 >= p0)
        .unwrap_or(LEVELS - 1);
    Ok(clamp_to_classes(hist, t))
}

fn local_maxima(h: &[f64; LEVELS]) -> Vec<usize> {
    (1..LEVELS - 1)
        .filter(|&k| h[k - 1] < h[k] && h[k + 1] < h[k])
        .collect()
}

/// Repeated 3-point mean smoothing until exactly two strict local maxima
/// remain. Returns the smoothed histogram and the two mode positions.
pub fn smooth_until_bimodal(
    hist: &Histogram,
) -> Result<([f64; LEVELS], [usize; 2]), ThresholdFailure> {
    let mut h = [0.0; LEVELS];
    for (dst, &c) in h.iter_mut().zip(hist.bins()) {
        *dst = c as f64;
    }
    for _ in 0..=MAX_SMOOTHING_PASSES {
        let peaks = local_maxima(&h);
        if peaks.len() == 2 {
            return Ok((h, [peaks[0], peaks[1]]));
        }
        let prev = h;
        h[0] = (prev[0] + prev[1]) / 3.0;
        for k in 1..LEVELS - 1 {
            h[k] = (prev[k - 1] + prev[k] + prev[k + 1]) / 3.0;
        }
        h[LEVELS - 1] = (prev[LEVELS - 2] + prev[LEVELS - 1]) / 3.0;
    }
    Err(ThresholdFailure::NotBimodal)
}

pub(super) fn intermodes(hist: &Histogram) -> Result<u8, ThresholdFailure> {
    let (_, [a, b]) = smooth_until_bimodal(hist)?;
    Ok(clamp_to_classes(hist, (a + b) / 2))
}

pub(super) fn minimum(hist: &Histogram) -> Result<u8, ThresholdFailure> {
    let (h, [a, b]) = smooth_until_bimodal(hist)?;
    let mut best = a;
    for k in a..=b {
        if h[k] < h[best] {
            best = k;
        }
    }
    Ok(clamp_to_classes(hist, best))
}

/// Zack's triangle method. The line runs from the peak to one bin past the
/// end of the heavier side (by pixel mass, right side on a tie); `t` is the
/// bin lying furthest below it.
pub(super) fn triangle(hist: &Histogram) -> u8 {
    let bins = hist.bins();
    let (first, last) = hist.support();
    let mut peak = first;
    for i in first..=last {
        if bins[i] > bins[peak] {
            peak = i;
        }
    }
    let left: u64 = bins[..peak].iter().sum();
    let right: u64 = bins[peak + 1..].iter().sum();
    let height = bins[peak] as f64;
    let (lo, hi, end) = if right >= left {
        let end = (last + 1).min(LEVELS - 1);
        (peak, end, end)
    } else {
        let end = first.saturating_sub(1);
        (end, peak, end)
    };
    let mut best = (lo, f64::NEG_INFINITY);
    for i in lo..=hi {
        let line = if end == peak {
            height
        } else {
            height * (end as f64 - i as f64) / (end as f64 - peak as f64)
        };
        let d = line - bins[i] as f64;
        if d > best.1 {
            best = (i, d);
        }
    }
    clamp_to_classes(hist, best.0)
}
