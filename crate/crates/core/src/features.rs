//! Per-pixel feature vectors and threshold-derived regions of interest.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::imaging::{GrayImage, Image};
use crate::thresholding::{apply_threshold, ThresholdMap, ThresholdMethod};

pub const DEFAULT_WINDOW: usize = 3;

/// Dense row-major plane of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPlane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl FloatPlane {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }
}

/// Window mean and population standard deviation of a plane.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalStats {
    pub mean: FloatPlane,
    pub std: FloatPlane,
}

fn check_window(img: &GrayImage, window: usize) -> Result<()> {
    if window == 0 || window % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "window must be odd and positive, got {window}"
        )));
    }
    if window > img.width().min(img.height()) {
        return Err(Error::InvalidParameter(format!(
            "window {window} exceeds image side {}",
            img.width().min(img.height())
        )));
    }
    Ok(())
}

/// `window × window` neighborhood statistics with edge replication.
pub fn local_stats(img: &GrayImage, window: usize) -> Result<LocalStats> {
    check_window(img, window)?;
    let (w, h) = (img.width(), img.height());
    let r = (window / 2) as isize;
    let n = (window * window) as u64;
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;
    let mut mean = Vec::with_capacity(w * h);
    let mut std = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let (mut s, mut s2) = (0u64, 0u64);
            for dy in -r..=r {
                let yy = clamp(y as isize + dy, h);
                for dx in -r..=r {
                    let v = img.get(clamp(x as isize + dx, w), yy) as u64;
                    s += v;
                    s2 += v * v;
                }
            }
            // n²·var = n·Σx² − (Σx)², exact in integers
            let spread = n * s2 - s * s;
            mean.push(s as f64 / n as f64);
            std.push((spread as f64).sqrt() / n as f64);
        }
    }
    Ok(LocalStats {
        mean: FloatPlane {
            width: w,
            height: h,
            data: mean,
        },
        std: FloatPlane {
            width: w,
            height: h,
            data: std,
        },
    })
}

/// One above-threshold flag per [`ThresholdMethod`], packed into a `u16`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThresholdBits(u16);

impl ThresholdBits {
    pub const LEN: usize = ThresholdMethod::COUNT;

    pub fn get(self, method: ThresholdMethod) -> bool {
        self.0 & (1 << method.index()) != 0
    }

    pub fn set(&mut self, method: ThresholdMethod, on: bool) {
        if on {
            self.0 |= 1 << method.index();
        } else {
            self.0 &= !(1 << method.index());
        }
    }

    pub fn count_ones(self) -> u32 {
        self.0.count_ones()
    }

    pub fn raw(self) -> u16 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureVector {
    pub r: u8,
    pub g: u8,
    pub b: u8,
    pub local_mean: f64,
    pub local_std: f64,
    pub threshold_bits: ThresholdBits,
}

/// Feature vectors for every pixel plus which methods could not contribute.
#[derive(Clone, Debug, PartialEq)]
pub struct FeaturePlane {
    width: usize,
    height: usize,
    features: Vec<FeatureVector>,
    failed_methods: Vec<ThresholdMethod>,
}

impl FeaturePlane {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn features(&self) -> &[FeatureVector] {
        &self.features
    }

    pub fn get(&self, x: usize, y: usize) -> &FeatureVector {
        &self.features[y * self.width + x]
    }

    /// Methods whose bit is forced to `false` because they produced no threshold.
    pub fn failed_methods(&self) -> &[ThresholdMethod] {
        &self.failed_methods
    }

    /// `x,y,r,g,b,mean,std` followed by one 0/1 column per method.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,r,g,b,mean,std");
        for m in ThresholdMethod::ALL {
            out.push(',');
            out.push_str(m.name());
        }
        out.push('\n');
        for (i, f) in self.features.iter().enumerate() {
            let (x, y) = (i % self.width, i / self.width);
            let _ = write!(
                out,
                "{x},{y},{},{},{},{:.6},{:.6}",
                f.r, f.g, f.b, f.local_mean, f.local_std
            );
            for m in ThresholdMethod::ALL {
                out.push_str(if f.threshold_bits.get(m) { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }
}

/// Builds feature vectors. `thresholds` must come from the gray (luma) plane
/// of `img`; statistics and threshold bits are computed on that plane.
pub fn extract_features(
    img: &Image,
    thresholds: &ThresholdMap,
    window: usize,
) -> Result<FeaturePlane> {
    let gray = img.luma();
    let stats = local_stats(&gray, window)?;
    let cuts: Vec<(ThresholdMethod, u8)> = thresholds.usable().map(|r| (r.method, r.t)).collect();
    let failed_methods = thresholds
        .iter()
        .filter(|(_, r)| r.is_err())
        .map(|(m, _)| m)
        .collect();
    let rgb: Option<&[GrayImage; 3]> = match img {
        Image::Color(c) => Some(c.planes()),
        Image::Gray(_) => None,
    };
    let features = gray
        .pixels()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (r, g, b) = match rgb {
                Some([r, g, b]) => (r.pixels()[i], g.pixels()[i], b.pixels()[i]),
                None => (v, v, v),
            };
            let mut bits = ThresholdBits::default();
            for &(m, t) in &cuts {
                bits.set(m, v > t);
            }
            FeatureVector {
                r,
                g,
                b,
                local_mean: stats.mean.data[i],
                local_std: stats.std.data[i],
                threshold_bits: bits,
            }
        })
        .collect();
    Ok(FeaturePlane {
        width: gray.width(),
        height: gray.height(),
        features,
        failed_methods,
    })
}

/// Foreground plane of one thresholding decision (or of a fusion of them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoiMask {
    width: usize,
    height: usize,
    mask: Vec<bool>,
    /// `None` for fused masks.
    pub source: Option<ThresholdMethod>,
}

impl RoiMask {
    pub fn new(
        width: usize,
        height: usize,
        mask: Vec<bool>,
        source: Option<ThresholdMethod>,
    ) -> Result<Self> {
        if mask.len() != width * height {
            return Err(Error::InvalidParameter(
                "mask length does not match dimensions".into(),
            ));
        }
        Ok(RoiMask {
            width,
            height,
            mask,
            source,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn is_foreground(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn foreground_count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }
}

/// One mask per method that produced a threshold.
pub fn roi_masks(img: &GrayImage, thresholds: &ThresholdMap) -> Vec<RoiMask> {
    thresholds
        .usable()
        .map(|r| RoiMask {
            width: img.width(),
            height: img.height(),
            mask: apply_threshold(img, r.t)
                .pixels()
                .iter()
                .map(|&p| p > 0)
                .collect(),
            source: Some(r.method),
        })
        .collect()
}

/// Per-pixel strict majority; an exact half vote is background.
pub fn fuse_decisions(masks: &[RoiMask]) -> Result<RoiMask> {
    let first = masks
        .first()
        .ok_or_else(|| Error::InvalidParameter("no masks to fuse".into()))?;
    for m in masks {
        if m.width != first.width || m.height != first.height {
            return Err(Error::DimensionMismatch(
                first.width,
                first.height,
                m.width,
                m.height,
            ));
        }
    }
    let mut votes = vec![0usize; first.mask.len()];
    for m in masks {
        for (v, &b) in votes.iter_mut().zip(&m.mask) {
            *v += b as usize;
        }
    }
    let n = masks.len();
    Ok(RoiMask {
        width: first.width,
        height: first.height,
        mask: votes.into_iter().map(|v| 2 * v > n).collect(),
        source: None,
    })
}
