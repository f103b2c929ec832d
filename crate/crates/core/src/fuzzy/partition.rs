use super::MembershipFunction;
use crate::error::{Error, Result};

/// A linguistic region of a variable's universe.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyRegion {
    pub label: String,
    pub mf: MembershipFunction,
    pub universe: (f64, f64),
}

/// Ordered, overlapping regions covering `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    lo: f64,
    hi: f64,
    regions: Vec<FuzzyRegion>,
}

/// Peaks closer than this (in universe units) are merged when anchoring.
pub const ANCHOR_MERGE_DISTANCE: f64 = 1.0;

impl Partition {
    /// Builds from explicit regions; used by the rule-base parser.
    pub fn from_regions(lo: f64, hi: f64, regions: Vec<FuzzyRegion>) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "empty universe [{lo}, {hi}]"
            )));
        }
        if regions.is_empty() {
            return Err(Error::InvalidParameter(
                "partition needs at least one region".into(),
            ));
        }
        Ok(Partition { lo, hi, regions })
    }

    /// `k` evenly spaced triangles, each with its feet on the neighboring
    /// peaks; the end regions are shoulders.
    pub fn uniform(lo: f64, hi: f64, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 regions, got {k}"
            )));
        }
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "empty universe [{lo}, {hi}]"
            )));
        }
        let step = (hi - lo) / (k - 1) as f64;
        let mut peaks: Vec<f64> = (0..k).map(|i| lo + i as f64 * step).collect();
        peaks[k - 1] = hi;
        Ok(Self::triangles(lo, hi, &peaks, "R"))
    }

    /// Triangles peaking at `lo`, every anchor and `hi`. Anchors within
    /// [`ANCHOR_MERGE_DISTANCE`] of an already placed peak (ends included)
    /// are dropped.
    pub fn anchored(lo: f64, hi: f64, anchors: &[f64]) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "empty universe [{lo}, {hi}]"
            )));
        }
        if let Some(a) = anchors.iter().find(|a| !(**a >= lo && **a <= hi)) {
            return Err(Error::InvalidParameter(format!(
                "anchor {a} outside [{lo}, {hi}]"
            )));
        }
        let mut sorted = anchors.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut peaks = vec![lo];
        for a in sorted {
            let last = *peaks.last().unwrap();
            if a - last > ANCHOR_MERGE_DISTANCE && hi - a > ANCHOR_MERGE_DISTANCE {
                peaks.push(a);
            }
        }
        peaks.push(hi);
        Ok(Self::triangles(lo, hi, &peaks, "A"))
    }

    fn triangles(lo: f64, hi: f64, peaks: &[f64], prefix: &str) -> Self {
        let n = peaks.len();
        let regions = (0..n)
            .map(|i| FuzzyRegion {
                label: format!("{prefix}{i}"),
                mf: MembershipFunction::Triangular {
                    a: peaks[i.saturating_sub(1)],
                    b: peaks[i],
                    c: peaks[(i + 1).min(n - 1)],
                },
                universe: (lo, hi),
            })
            .collect();
        Partition { lo, hi, regions }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn regions(&self) -> &[FuzzyRegion] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    #[inline]
    pub fn membership(&self, region: usize, x: f64) -> f64 {
        self.regions[region].mf.eval(x)
    }

    /// Region of maximal membership; ties go to the lower index.
    pub fn best_region(&self, x: f64) -> (usize, f64) {
        let mut best = (0, self.membership(0, x));
        for i in 1..self.regions.len() {
            let m = self.membership(i, x);
            if m > best.1 {
                best = (i, m);
            }
        }
        best
    }

    /// Regions with non-zero membership at `x`, in index order.
    pub fn active(&self, x: f64, out: &mut Vec<(usize, f64)>) {
        out.clear();
        for (i, r) in self.regions.iter().enumerate() {
            let m = r.mf.eval(x);
            if m > 0.0 {
                out.push((i, m));
            }
        }
    }

    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / (2.0 * (self.regions.len() - 1).max(1) as f64)
    }
}

/// Uniform partition when `anchors` is `None`, anchored otherwise (in which
/// case `k` only has to be valid).
pub fn partition_universe(
    lo: f64,
    hi: f64,
    k: usize,
    anchors: Option<&[f64]>,
) -> Result<Partition> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 regions, got {k}"
        )));
    }
    match anchors {
        None => Partition::uniform(lo, hi, k),
        Some(a) => Partition::anchored(lo, hi, a),
    }
}
