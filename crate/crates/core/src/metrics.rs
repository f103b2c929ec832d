//! Image quality metrics. All arithmetic is done in `f64`.

use std::fmt;

use crate::error::{Error, Result};
use crate::imaging::{to_luma, ColorImage, GrayImage, Image};

/// Peak value for 8-bit images.
pub const R_PEAK: f64 = 255.0;

/// A decibel figure that may be infinite (zero error).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decibels {
    Finite(f64),
    Infinite,
}

impl Decibels {
    pub fn finite(self) -> Option<f64> {
        match self {
            Decibels::Finite(v) => Some(v),
            Decibels::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Decibels::Infinite
    }

    fn ratio(num: f64, mse: f64) -> Self {
        if mse == 0.0 {
            Decibels::Infinite
        } else {
            Decibels::Finite(10.0 * (num / mse).log10())
        }
    }
}

/// `inf` for the infinite marker, otherwise the value with six decimals.
impl fmt::Display for Decibels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decibels::Finite(v) => write!(f, "{v:.6}"),
            Decibels::Infinite => f.write_str("inf"),
        }
    }
}

fn diffs<'a>(a: &'a GrayImage, b: &'a GrayImage) -> impl Iterator<Item = f64> + 'a {
    a.pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| x as f64 - y as f64)
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_dims(b)?;
    Ok(diffs(a, b).map(|d| d * d).sum::<f64>() / a.len() as f64)
}

pub fn mae(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_dims(b)?;
    Ok(diffs(a, b).map(f64::abs).sum::<f64>() / a.len() as f64)
}

/// `10·log10(255² / MSE)`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<Decibels> {
    Ok(psnr_from_mse(mse(a, b)?))
}

pub fn psnr_from_mse(mse: f64) -> Decibels {
    Decibels::ratio(R_PEAK * R_PEAK, mse)
}

/// Inverse of [`psnr_from_mse`] for finite values.
pub fn mse_from_psnr(db: f64) -> f64 {
    R_PEAK * R_PEAK / 10f64.powf(db / 10.0)
}

/// PSNR of the luma channels.
pub fn psnr_color(a: &ColorImage, b: &ColorImage) -> Result<Decibels> {
    a.same_dims(b)?;
    psnr(&to_luma(a), &to_luma(b))
}

/// Signal power of the reference over the MSE, in dB.
pub fn snr(reference: &GrayImage, b: &GrayImage) -> Result<Decibels> {
    let e = mse(reference, b)?;
    let power = reference
        .pixels()
        .iter()
        .map(|&p| (p as f64).powi(2))
        .sum::<f64>()
        / reference.len() as f64;
    if power == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(Decibels::ratio(power, e))
}

/// All four metrics for one comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quality {
    pub mse: f64,
    pub mae: f64,
    /// `None` when the reference is all zero.
    pub snr_db: Option<Decibels>,
    pub psnr_db: Decibels,
}

impl Quality {
    pub fn gray(reference: &GrayImage, test: &GrayImage) -> Result<Self> {
        let e = mse(reference, test)?;
        Ok(Quality {
            mse: e,
            mae: mae(reference, test)?,
            snr_db: match snr(reference, test) {
                Ok(v) => Some(v),
                Err(Error::ZeroReference) => None,
                Err(e) => return Err(e),
            },
            psnr_db: psnr_from_mse(e),
        })
    }

    /// Gray images are compared directly; anything involving color goes
    /// through luma.
    pub fn between(reference: &Image, test: &Image) -> Result<Self> {
        match (reference, test) {
            (Image::Gray(a), Image::Gray(b)) => Self::gray(a, b),
            _ => Self::gray(&reference.luma(), &test.luma()),
        }
    }
}

/// One row of the per-cell CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub image: String,
    pub method: String,
    pub sigma: f64,
    pub seed: u64,
    pub quality: Quality,
}

impl QualityReport {
    pub const CSV_HEADER: &'static str = "image,method,sigma,seed,mse,mae,snr_db,psnr_db";

    pub fn csv_row(&self) -> String {
        let q = &self.quality;
        let snr = q
            .snr_db
            .map_or_else(|| "nan".to_string(), |d| d.to_string());
        format!(
            "{},{},{},{},{:.6},{:.6},{},{}",
            self.image, self.method, self.sigma, self.seed, q.mse, q.mae, snr, q.psnr_db
        )
    }
}
