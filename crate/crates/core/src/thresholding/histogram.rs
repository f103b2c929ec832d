use crate::error::{Error, Result};
use crate::imaging::{GrayImage, LEVELS};

/// 256-bin intensity histogram with a positive total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    bins: [u64; LEVELS],
    total: u64,
}

impl Histogram {
    pub fn from_bins(bins: [u64; LEVELS]) -> Result<Self> {
        let total = bins.iter().sum();
        if total == 0 {
            return Err(Error::EmptyImage);
        }
        Ok(Histogram { bins, total })
    }

    pub fn from_pixels(pixels: &[u8]) -> Result<Self> {
        let mut bins = [0u64; LEVELS];
        for &p in pixels {
            bins[p as usize] += 1;
        }
        Self::from_bins(bins)
    }

    #[inline]
    pub fn bins(&self) -> &[u64; LEVELS] {
        &self.bins
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn populated_bins(&self) -> usize {
        self.bins.iter().filter(|&&c| c > 0).count()
    }

    /// Lowest and highest populated levels.
    pub fn support(&self) -> (usize, usize) {
        let first = self.bins.iter().position(|&c| c > 0).unwrap_or(0);
        let last = self.bins.iter().rposition(|&c| c > 0).unwrap_or(0);
        (first, last)
    }

    pub fn probabilities(&self) -> [f64; LEVELS] {
        let n = self.total as f64;
        let mut p = [0.0; LEVELS];
        for (pi, &c) in p.iter_mut().zip(&self.bins) {
            *pi = c as f64 / n;
        }
        p
    }

    pub fn mean(&self) -> f64 {
        let s: f64 = self
            .bins
            .iter()
            .enumerate()
            .map(|(i, &c)| i as f64 * c as f64)
            .sum();
        s / self.total as f64
    }
}

pub fn histogram(img: &GrayImage) -> Histogram {
    Histogram::from_pixels(img.pixels()).expect("images are never empty")
}
