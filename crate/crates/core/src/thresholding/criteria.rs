//! Criterion-optimizing thresholds. Each criterion is evaluated at every
//! split where both classes are non-empty, from prefix sums over the
//! normalized histogram.

use super::{Histogram, ThresholdFailure};
use crate::imaging::LEVELS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    /// Otsu: between-class variance `w0·w1·(μ0 − μ1)²`, maximized.
    BetweenClassVariance,
    /// Kapur–Sahoo–Wong: sum of the two class entropies, maximized.
    Kapur,
    /// Rényi entropy of order alpha (alpha ≠ 1) summed over classes, maximized.
    Renyi(RenyiOrder),
    /// Yen–Chang–Chang: `−ln Σ(p/P0)² − ln Σ(p/P1)²`, maximized.
    Yen,
    /// Li: minimum cross-entropy `−m0·ln μ0 − m1·ln μ1`, minimized.
    CrossEntropy,
    /// Kittler–Illingworth: `1 + P0 ln σ0² + P1 ln σ1² − 2(P0 ln P0 + P1 ln P1)`,
    /// minimized; both classes need positive variance.
    KittlerIllingworth,
    /// Huang–Wang: Shannon fuzziness of the distance-to-class-mean
    /// membership, minimized.
    Huang,
    /// Shanbhag: absolute difference of the two class fuzzy information
    /// measures, minimized.
    Shanbhag,
}

/// Rényi orders used by the combination rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenyiOrder {
    Half,
    Two,
}

impl RenyiOrder {
    fn alpha(self) -> f64 {
        match self {
            RenyiOrder::Half => 0.5,
            RenyiOrder::Two => 2.0,
        }
    }
}

/// Alphas of the three component thresholds combined by `RenyiEntropy`.
pub const RENYI_ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

impl CriterionKind {
    pub fn maximizes(self) -> bool {
        matches!(
            self,
            CriterionKind::BetweenClassVariance
                | CriterionKind::Kapur
                | CriterionKind::Renyi(_)
                | CriterionKind::Yen
        )
    }
}

struct Prefix {
    count: [u64; LEVELS],
    levels: [u32; LEVELS],
    p: [f64; LEVELS],
    mass: [f64; LEVELS],
    first: [f64; LEVELS],
    second: [f64; LEVELS],
    plogp: [f64; LEVELS],
    square: [f64; LEVELS],
    sqrt: [f64; LEVELS],
}

impl Prefix {
    fn new(hist: &Histogram) -> Self {
        let p = hist.probabilities();
        let mut pre = Prefix {
            count: [0; LEVELS],
            levels: [0; LEVELS],
            p,
            mass: [0.0; LEVELS],
            first: [0.0; LEVELS],
            second: [0.0; LEVELS],
            plogp: [0.0; LEVELS],
            square: [0.0; LEVELS],
            sqrt: [0.0; LEVELS],
        };
        let (mut c, mut l) = (0u64, 0u32);
        let (mut m, mut f, mut s, mut h, mut q, mut r) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for i in 0..LEVELS {
            let pi = p[i];
            let x = i as f64;
            c += hist.bins()[i];
            if pi > 0.0 {
                l += 1;
                h += pi * pi.ln();
            }
            m += pi;
            f += x * pi;
            s += x * x * pi;
            q += pi * pi;
            r += pi.sqrt();
            pre.count[i] = c;
            pre.levels[i] = l;
            pre.mass[i] = m;
            pre.first[i] = f;
            pre.second[i] = s;
            pre.plogp[i] = h;
            pre.square[i] = q;
            pre.sqrt[i] = r;
        }
        pre
    }

    #[inline]
    fn split(&self, arr: &[f64; LEVELS], t: usize) -> (f64, f64) {
        (arr[t], arr[LEVELS - 1] - arr[t])
    }
}

#[inline]
fn x_ln_x_over(num: f64, den: f64) -> f64 {
    if num > 0.0 {
        num * (num / den).ln()
    } else {
        0.0
    }
}

#[inline]
fn shannon(mu: f64) -> f64 {
    let mut s = 0.0;
    if mu > 0.0 && mu < 1.0 {
        s -= mu * mu.ln() + (1.0 - mu) * (1.0 - mu).ln();
    }
    s
}

fn evaluate(pre: &Prefix, hist: &Histogram, kind: CriterionKind, t: usize) -> Option<f64> {
    let total = hist.total();
    let n0 = pre.count[t];
    if n0 == 0 || n0 == total {
        return None;
    }
    let (w0, w1) = pre.split(&pre.mass, t);
    let (m0, m1) = pre.split(&pre.first, t);
    let value = match kind {
        CriterionKind::BetweenClassVariance => {
            let d = m0 / w0 - m1 / w1;
            w0 * w1 * d * d
        }
        CriterionKind::Kapur => {
            let (h0, h1) = pre.split(&pre.plogp, t);
            (w0.ln() - h0 / w0) + (w1.ln() - h1 / w1)
        }
        CriterionKind::Renyi(order) => {
            let alpha = order.alpha();
            let (a0, a1) = match order {
                RenyiOrder::Two => pre.split(&pre.square, t),
                RenyiOrder::Half => pre.split(&pre.sqrt, t),
            };
            ((a0.ln() - alpha * w0.ln()) + (a1.ln() - alpha * w1.ln())) / (1.0 - alpha)
        }
        CriterionKind::Yen => {
            let (q0, q1) = pre.split(&pre.square, t);
            -(q0 / (w0 * w0)).ln() - (q1 / (w1 * w1)).ln()
        }
        CriterionKind::CrossEntropy => -x_ln_x_over(m0, w0) - x_ln_x_over(m1, w1),
        CriterionKind::KittlerIllingworth => {
            let levels0 = pre.levels[t];
            let levels1 = pre.levels[LEVELS - 1] - levels0;
            if levels0 < 2 || levels1 < 2 {
                return None;
            }
            let (s0, s1) = pre.split(&pre.second, t);
            let mu0 = m0 / w0;
            let mu1 = m1 / w1;
            let var0 = s0 / w0 - mu0 * mu0;
            let var1 = s1 / w1 - mu1 * mu1;
            if var0 <= 0.0 || var1 <= 0.0 {
                return None;
            }
            1.0 + w0 * var0.ln() + w1 * var1.ln() - 2.0 * (w0 * w0.ln() + w1 * w1.ln())
        }
        CriterionKind::Huang => {
            let (lo, hi) = hist.support();
            let c = (hi - lo) as f64;
            let mu0 = m0 / w0;
            let mu1 = m1 / w1;
            let mut e = 0.0;
            for i in lo..=hi {
                let pi = pre.p[i];
                if pi == 0.0 {
                    continue;
                }
                let mu = if i <= t { mu0 } else { mu1 };
                e += pi * shannon(1.0 / (1.0 + (i as f64 - mu).abs() / c));
            }
            e
        }
        CriterionKind::Shanbhag => {
            let (lo, hi) = hist.support();
            let mut bg = 0.0;
            for i in lo..=t {
                let below = if i == 0 { 0.0 } else { pre.mass[i - 1] };
                bg -= pre.p[i] * (1.0 - 0.5 * below / w0).ln();
            }
            bg *= 0.5 / w0;
            let mut fg = 0.0;
            for i in t + 1..=hi {
                let above = pre.mass[LEVELS - 1] - pre.mass[i];
                fg -= pre.p[i] * (1.0 - 0.5 * above / w1).ln();
            }
            fg *= 0.5 / w1;
            (bg - fg).abs()
        }
    };
    Some(value)
}

/// Criterion value at split `t`, `None` where the criterion is undefined.
pub fn criterion(hist: &Histogram, kind: CriterionKind, t: u8) -> Option<f64> {
    evaluate(&Prefix::new(hist), hist, kind, t as usize)
}

pub(super) fn optimize(hist: &Histogram, kind: CriterionKind) -> Result<u8, ThresholdFailure> {
    optimize_with(&Prefix::new(hist), hist, kind)
}

fn optimize_with(
    pre: &Prefix,
    hist: &Histogram,
    kind: CriterionKind,
) -> Result<u8, ThresholdFailure> {
    let better = |a: f64, b: f64| if kind.maximizes() { a > b } else { a < b };
    let mut best: Option<(usize, f64)> = None;
    for t in 0..LEVELS - 1 {
        if let Some(v) = evaluate(pre, hist, kind, t) {
            match best {
                Some((_, bv)) if !better(v, bv) => {}
                _ => best = Some((t, v)),
            }
        }
    }
    best.map(|(t, _)| t as u8)
        .ok_or(ThresholdFailure::Degenerate)
}

/// Maximum-entropy thresholds for Rényi orders 0.5, 1 (Kapur) and 2.
pub fn renyi_components(hist: &Histogram) -> Result<[u8; 3], ThresholdFailure> {
    let pre = Prefix::new(hist);
    Ok([
        optimize_with(&pre, hist, CriterionKind::Renyi(RenyiOrder::Half))?,
        optimize_with(&pre, hist, CriterionKind::Kapur)?,
        optimize_with(&pre, hist, CriterionKind::Renyi(RenyiOrder::Two))?,
    ])
}

/// Combines the three component thresholds with Sahoo's weighting: the
/// sorted components are blended with weights set by how close they lie
/// (gap ≤ 5 levels counts as close) and by the mass between the extremes.
pub fn combine_renyi(hist: &Histogram, components: [u8; 3]) -> u8 {
    let mut t = components.map(|c| c as usize);
    t.sort_unstable();
    let [t1, t2, t3] = t;
    let close12 = t2 - t1 <= 5;
    let close23 = t3 - t2 <= 5;
    let beta = match (close12, close23) {
        (true, true) => [1.0, 2.0, 1.0],
        (true, false) => [0.0, 1.0, 3.0],
        (false, true) => [3.0, 1.0, 0.0],
        (false, false) => [1.0, 2.0, 1.0],
    };
    let p = hist.probabilities();
    let cum = |k: usize| p[..=k].iter().sum::<f64>();
    let (c1, c3) = (cum(t1), cum(t3));
    let omega = c3 - c1;
    let v = t1 as f64 * (c1 + 0.25 * omega * beta[0])
        + 0.25 * t2 as f64 * omega * beta[1]
        + t3 as f64 * (1.0 - c3 + 0.25 * omega * beta[2]);
    (v.floor() as usize).clamp(t1, t3) as u8
}

pub(super) fn renyi(hist: &Histogram) -> Result<u8, ThresholdFailure> {
    Ok(combine_renyi(hist, renyi_components(hist)?))
}
