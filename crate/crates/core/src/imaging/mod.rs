//! 8-bit raster types, Netpbm/PNG I/O, Gaussian noise injection and luma
//! conversion.

mod codec;
mod noise;

pub use codec::{decode_pnm, encode_pgm, encode_ppm, read_image, write_image};
pub use noise::{add_gaussian_noise, GaussianSource, NoiseSpec};

use crate::error::{Error, Result};

/// Number of gray levels for every raster in this crate.
pub const LEVELS: usize = 256;

/// Single-channel 8-bit image, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "{}x{} image needs {} pixels, got {}",
                width,
                height,
                width * height,
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn max_value(&self) -> u8 {
        self.pixels.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn same_dims(&self, other: &GrayImage) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

/// Three-plane RGB image; every plane has the same dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorImage {
    planes: [GrayImage; 3],
}

impl ColorImage {
    pub fn from_planes(r: GrayImage, g: GrayImage, b: GrayImage) -> Result<Self> {
        r.same_dims(&g)?;
        r.same_dims(&b)?;
        Ok(ColorImage { planes: [r, g, b] })
    }

    /// Builds from interleaved `RGBRGB...` samples.
    pub fn from_interleaved(width: usize, height: usize, rgb: &[u8]) -> Result<Self> {
        if rgb.len() != width * height * 3 {
            return Err(Error::InvalidParameter(format!(
                "{}x{} RGB image needs {} samples, got {}",
                width,
                height,
                width * height * 3,
                rgb.len()
            )));
        }
        let plane = |c: usize| -> Result<GrayImage> {
            GrayImage::new(
                width,
                height,
                rgb.iter().skip(c).step_by(3).copied().collect(),
            )
        };
        Self::from_planes(plane(0)?, plane(1)?, plane(2)?)
    }

    pub fn width(&self) -> usize {
        self.planes[0].width
    }

    pub fn height(&self) -> usize {
        self.planes[0].height
    }

    pub fn red(&self) -> &GrayImage {
        &self.planes[0]
    }

    pub fn green(&self) -> &GrayImage {
        &self.planes[1]
    }

    pub fn blue(&self) -> &GrayImage {
        &self.planes[2]
    }

    pub fn planes(&self) -> &[GrayImage; 3] {
        &self.planes
    }

    pub fn into_planes(self) -> [GrayImage; 3] {
        self.planes
    }

    pub fn interleaved(&self) -> Vec<u8> {
        let [r, g, b] = &self.planes;
        let mut out = Vec::with_capacity(r.len() * 3);
        for i in 0..r.len() {
            out.extend_from_slice(&[r.pixels[i], g.pixels[i], b.pixels[i]]);
        }
        out
    }

    pub(crate) fn same_dims(&self, other: &ColorImage) -> Result<()> {
        self.planes[0].same_dims(&other.planes[0])
    }
}

/// Either kind of raster, as returned by [`read_image`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Gray(GrayImage),
    Color(ColorImage),
}

impl Image {
    pub fn width(&self) -> usize {
        match self {
            Image::Gray(g) => g.width(),
            Image::Color(c) => c.width(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Image::Gray(g) => g.height(),
            Image::Color(c) => c.height(),
        }
    }

    /// Luma plane for color images, the image itself for gray ones.
    pub fn luma(&self) -> GrayImage {
        match self {
            Image::Gray(g) => g.clone(),
            Image::Color(c) => to_luma(c),
        }
    }

    pub fn is_color(&self) -> bool {
        matches!(self, Image::Color(_))
    }
}

impl From<GrayImage> for Image {
    fn from(img: GrayImage) -> Self {
        Image::Gray(img)
    }
}

impl From<ColorImage> for Image {
    fn from(img: ColorImage) -> Self {
        Image::Color(img)
    }
}

/// BT.601 luma weights. Green carries the largest weight.
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

#[inline]
pub fn luma_of(r: u8, g: u8, b: u8) -> u8 {
    let y = LUMA_WEIGHTS[0] * r as f64 + LUMA_WEIGHTS[1] * g as f64 + LUMA_WEIGHTS[2] * b as f64;
    y.round().clamp(0.0, 255.0) as u8
}

pub fn to_luma(img: &ColorImage) -> GrayImage {
    let [r, g, b] = img.planes();
    let pixels = r
        .pixels()
        .iter()
        .zip(g.pixels())
        .zip(b.pixels())
        .map(|((&r, &g), &b)| luma_of(r, g, b))
        .collect();
    GrayImage {
        width: r.width(),
        height: r.height(),
        pixels,
    }
}
