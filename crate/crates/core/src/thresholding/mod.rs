//! Global histogram thresholds.
//!
//! Every method returns a level `t` with the convention background = `≤ t`,
//! foreground = `> t`. Criterion-driven methods scan every `t` for which both
//! classes are non-empty and break ties toward the lowest `t`.

mod criteria;
mod histogram;
mod iterative;
mod shape;

use std::fmt;
use std::str::FromStr;

pub use criteria::{
    combine_renyi, criterion, renyi_components, CriterionKind, RenyiOrder, RENYI_ALPHAS,
};
pub use histogram::{histogram, Histogram};
pub use iterative::{intermeans_step, DEFAULT_TAIL_FRACTION, ISODATA_MAX_ITER};
pub use shape::{smooth_until_bimodal, MAX_SMOOTHING_PASSES, PERCENTILE_FRACTION};

use crate::error::Error;
use crate::imaging::GrayImage;

/// The sixteen automatic methods, in the order of the comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThresholdMethod {
    Default,
    Huang,
    Intermodes,
    IsoData,
    Li,
    MaxEntropy,
    Mean,
    MinError,
    Minimum,
    Moments,
    Otsu,
    Percentile,
    RenyiEntropy,
    Shanbhag,
    Triangle,
    Yen,
}

impl ThresholdMethod {
    pub const ALL: [ThresholdMethod; 16] = [
        ThresholdMethod::Default,
        ThresholdMethod::Huang,
        ThresholdMethod::Intermodes,
        ThresholdMethod::IsoData,
        ThresholdMethod::Li,
        ThresholdMethod::MaxEntropy,
        ThresholdMethod::Mean,
        ThresholdMethod::MinError,
        ThresholdMethod::Minimum,
        ThresholdMethod::Moments,
        ThresholdMethod::Otsu,
        ThresholdMethod::Percentile,
        ThresholdMethod::RenyiEntropy,
        ThresholdMethod::Shanbhag,
        ThresholdMethod::Triangle,
        ThresholdMethod::Yen,
    ];

    pub const COUNT: usize = Self::ALL.len();

    pub fn name(self) -> &'static str {
        match self {
            ThresholdMethod::Default => "Default",
            ThresholdMethod::Huang => "Huang",
            ThresholdMethod::Intermodes => "Intermodes",
            ThresholdMethod::IsoData => "IsoData",
            ThresholdMethod::Li => "Li",
            ThresholdMethod::MaxEntropy => "MaxEntropy",
            ThresholdMethod::Mean => "Mean",
            ThresholdMethod::MinError => "MinError",
            ThresholdMethod::Minimum => "Minimum",
            ThresholdMethod::Moments => "Moments",
            ThresholdMethod::Otsu => "Otsu",
            ThresholdMethod::Percentile => "Percentile",
            ThresholdMethod::RenyiEntropy => "RenyiEntropy",
            ThresholdMethod::Shanbhag => "Shanbhag",
            ThresholdMethod::Triangle => "Triangle",
            ThresholdMethod::Yen => "Yen",
        }
    }

    /// Position in [`ThresholdMethod::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ThresholdMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThresholdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ThresholdMethod::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown threshold method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdResult {
    pub method: ThresholdMethod,
    pub t: u8,
    /// False only when an iterative method hit its iteration cap.
    pub converged: bool,
}

/// Why a method produced no threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ThresholdFailure {
    #[error("degenerate histogram")]
    Degenerate,
    #[error("histogram never became bimodal")]
    NotBimodal,
}

impl ThresholdFailure {
    pub fn into_error(self, method: ThresholdMethod) -> Error {
        match self {
            ThresholdFailure::Degenerate => Error::Degenerate(method.name()),
            ThresholdFailure::NotBimodal => Error::NotBimodal(MAX_SMOOTHING_PASSES),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ThresholdFailure::Degenerate => "degenerate",
            ThresholdFailure::NotBimodal => "not_bimodal",
        }
    }
}

pub type ThresholdOutcome = Result<ThresholdResult, ThresholdFailure>;

pub fn compute_threshold(hist: &Histogram, method: ThresholdMethod) -> ThresholdOutcome {
    if hist.populated_bins() < 2 {
        return Err(ThresholdFailure::Degenerate);
    }
    let done = |t: u8| {
        Ok(ThresholdResult {
            method,
            t,
            converged: true,
        })
    };
    match method {
        ThresholdMethod::Default => {
            let (t, converged) = iterative::default_intermeans(hist);
            Ok(ThresholdResult {
                method,
                t,
                converged,
            })
        }
        ThresholdMethod::IsoData => {
            let (t, converged) = iterative::isodata(hist);
            Ok(ThresholdResult {
                method,
                t,
                converged,
            })
        }
        ThresholdMethod::Huang => criteria::optimize(hist, CriterionKind::Huang).map(done)?,
        ThresholdMethod::Li => criteria::optimize(hist, CriterionKind::CrossEntropy).map(done)?,
        ThresholdMethod::MaxEntropy => criteria::optimize(hist, CriterionKind::Kapur).map(done)?,
        ThresholdMethod::MinError => {
            criteria::optimize(hist, CriterionKind::KittlerIllingworth).map(done)?
        }
        ThresholdMethod::Otsu => {
            criteria::optimize(hist, CriterionKind::BetweenClassVariance).map(done)?
        }
        ThresholdMethod::Shanbhag => criteria::optimize(hist, CriterionKind::Shanbhag).map(done)?,
        ThresholdMethod::Yen => criteria::optimize(hist, CriterionKind::Yen).map(done)?,
        ThresholdMethod::RenyiEntropy => criteria::renyi(hist).map(done)?,
        ThresholdMethod::Mean => done(shape::mean(hist)),
        ThresholdMethod::Percentile => done(shape::percentile(hist)),
        ThresholdMethod::Moments => shape::moments(hist).map(done)?,
        ThresholdMethod::Intermodes => shape::intermodes(hist).map(done)?,
        ThresholdMethod::Minimum => shape::minimum(hist).map(done)?,
        ThresholdMethod::Triangle => done(shape::triangle(hist)),
    }
}

/// All sixteen outcomes for one histogram, in [`ThresholdMethod::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdMap {
    entries: Vec<(ThresholdMethod, ThresholdOutcome)>,
}

impl ThresholdMap {
    pub fn from_histogram(hist: &Histogram) -> Self {
        let entries = ThresholdMethod::ALL
            .iter()
            .map(|&m| (m, compute_threshold(hist, m)))
            .collect();
        ThresholdMap { entries }
    }

    pub fn get(&self, method: ThresholdMethod) -> ThresholdOutcome {
        self.entries[method.index()].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (ThresholdMethod, ThresholdOutcome)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Successful results only.
    pub fn usable(&self) -> impl Iterator<Item = ThresholdResult> + '_ {
        self.entries.iter().filter_map(|(_, r)| r.ok())
    }

    pub fn all_failed(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.is_err())
    }

    /// `method,t,converged` rows with a header. Failed methods print `nan`
    /// and the failure tag in place of the convergence flag.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,t,converged\n");
        for (m, r) in &self.entries {
            match r {
                Ok(res) => out.push_str(&format!("{},{},{}\n", m, res.t, res.converged)),
                Err(e) => out.push_str(&format!("{},nan,{}\n", m, e.tag())),
            }
        }
        out
    }
}

pub fn threshold_all(img: &GrayImage) -> ThresholdMap {
    ThresholdMap::from_histogram(&histogram(img))
}

/// Binary image: 255 where `pixel > t`, 0 elsewhere.
pub fn apply_threshold(img: &GrayImage, t: u8) -> GrayImage {
    let pixels = img
        .pixels()
        .iter()
        .map(|&p| if p > t { 255 } else { 0 })
        .collect();
    GrayImage::new(img.width(), img.height(), pixels).expect("same shape as input")
}
