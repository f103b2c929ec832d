//! Brute-force threshold criteria: every split evaluated from scratch with
//! direct sums over the class members.

use fuzzy_extract::thresholding::Histogram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crit {
    Otsu,
    Kapur,
    Renyi05,
    Renyi2,
    Yen,
    Li,
    MinError,
    Huang,
    Shanbhag,
}

impl Crit {
    pub fn maximize(self) -> bool {
        matches!(
            self,
            Crit::Otsu | Crit::Kapur | Crit::Renyi05 | Crit::Renyi2 | Crit::Yen
        )
    }
}

fn probs(h: &Histogram) -> Vec<f64> {
    let n = h.total() as f64;
    h.bins().iter().map(|&c| c as f64 / n).collect()
}

/// Criterion at split `t`, or `None` when a class is empty (or, for
/// MinError, when a class holds a single gray level).
pub fn value(h: &Histogram, crit: Crit, t: usize) -> Option<f64> {
    let p = probs(h);
    let bg: Vec<usize> = (0..=t).filter(|&i| h.bins()[i] > 0).collect();
    let fg: Vec<usize> = (t + 1..256).filter(|&i| h.bins()[i] > 0).collect();
    if bg.is_empty() || fg.is_empty() {
        return None;
    }
    let mass = |s: &[usize]| s.iter().map(|&i| p[i]).sum::<f64>();
    let moment = |s: &[usize]| s.iter().map(|&i| i as f64 * p[i]).sum::<f64>();
    let (w0, w1) = (mass(&bg), mass(&fg));
    let (mu0, mu1) = (moment(&bg) / w0, moment(&fg) / w1);

    let entropy =
        |s: &[usize], w: f64| -s.iter().map(|&i| (p[i] / w) * (p[i] / w).ln()).sum::<f64>();
    let renyi = |s: &[usize], w: f64, a: f64| {
        s.iter().map(|&i| (p[i] / w).powf(a)).sum::<f64>().ln() / (1.0 - a)
    };

    let v = match crit {
        Crit::Otsu => w0 * w1 * (mu0 - mu1).powi(2),
        Crit::Kapur => entropy(&bg, w0) + entropy(&fg, w1),
        Crit::Renyi05 => renyi(&bg, w0, 0.5) + renyi(&fg, w1, 0.5),
        Crit::Renyi2 => renyi(&bg, w0, 2.0) + renyi(&fg, w1, 2.0),
        Crit::Yen => {
            let sq = |s: &[usize], w: f64| s.iter().map(|&i| (p[i] / w).powi(2)).sum::<f64>();
            -sq(&bg, w0).ln() - sq(&fg, w1).ln()
        }
        Crit::Li => {
            let term = |m: f64, mu: f64| if m > 0.0 { m * mu.ln() } else { 0.0 };
            -term(moment(&bg), mu0) - term(moment(&fg), mu1)
        }
        Crit::MinError => {
            if bg.len() < 2 || fg.len() < 2 {
                return None;
            }
            let var = |s: &[usize], w: f64, mu: f64| {
                s.iter()
                    .map(|&i| p[i] * (i as f64 - mu).powi(2))
                    .sum::<f64>()
                    / w
            };
            let (v0, v1) = (var(&bg, w0, mu0), var(&fg, w1, mu1));
            1.0 + w0 * v0.ln() + w1 * v1.ln() - 2.0 * (w0 * w0.ln() + w1 * w1.ln())
        }
        Crit::Huang => {
            let lo = bg[0];
            let hi = *fg.last().unwrap();
            let c = (hi - lo) as f64;
            let s = |mu: f64| {
                if mu <= 0.0 || mu >= 1.0 {
                    0.0
                } else {
                    -mu * mu.ln() - (1.0 - mu) * (1.0 - mu).ln()
                }
            };
            let mut e = 0.0;
            for &i in &bg {
                e += p[i] * s(1.0 / (1.0 + (i as f64 - mu0).abs() / c));
            }
            for &i in &fg {
                e += p[i] * s(1.0 / (1.0 + (i as f64 - mu1).abs() / c));
            }
            e
        }
        Crit::Shanbhag => {
            // bg member i: membership 0.5 + 0.5·(mass of levels i..=t)/w0
            let mut e_bg = 0.0;
            for &i in &bg {
                let upper: f64 = (i..=t).map(|j| p[j]).sum();
                e_bg -= p[i] * (0.5 + 0.5 * upper / w0).ln();
            }
            e_bg *= 0.5 / w0;
            // fg member i: membership 0.5 + 0.5·(mass of levels t+1..=i)/w1
            let mut e_fg = 0.0;
            for &i in &fg {
                let lower: f64 = (t + 1..=i).map(|j| p[j]).sum();
                e_fg -= p[i] * (0.5 + 0.5 * lower / w1).ln();
            }
            e_fg *= 0.5 / w1;
            (e_bg - e_fg).abs()
        }
    };
    Some(v)
}

/// Lowest optimal split and its criterion value.
pub fn best(h: &Histogram, crit: Crit) -> Option<(usize, f64)> {
    let mut out: Option<(usize, f64)> = None;
    for t in 0..255 {
        if let Some(v) = value(h, crit, t) {
            let improves = match out {
                None => true,
                Some((_, b)) => {
                    if crit.maximize() {
                        v > b
                    } else {
                        v < b
                    }
                }
            };
            if improves {
                out = Some((t, v));
            }
        }
    }
    out
}

/// Relative agreement used when two routes land on different splits whose
/// criterion values coincide to rounding.
pub fn same_value(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}
