use std::fs;
use std::path::Path;

use super::{ColorImage, GrayImage, Image};
use crate::error::{Error, Result};

/// Reads a binary PGM (P5), binary PPM (P6) or PNG file. Netpbm files with
/// maxval above 255 and 16-bit PNGs are rejected.
pub fn read_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"\x89PNG") {
        decode_png(&bytes)
    } else {
        decode_pnm(&bytes)
    }
}

/// Writes PGM for gray images and PPM for color images, regardless of the
/// file extension.
pub fn write_image(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = match img {
        Image::Gray(g) => encode_pgm(g),
        Image::Color(c) => encode_ppm(c),
    };
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn encode_ppm(img: &ColorImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(&img.interleaved());
    out
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(Error::MalformedHeader("missing magic number".into()));
    }
    let channels = match bytes[1] {
        b'5' => 1,
        b'6' => 3,
        m => {
            return Err(Error::UnsupportedFormat(format!(
                "netpbm variant P{}",
                m as char
            )))
        }
    };
    let mut rd = HeaderReader { bytes, pos: 2 };
    let width = rd.number("width")? as usize;
    let height = rd.number("height")? as usize;
    let maxval = rd.number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedBitDepth(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(rd.pos) {
        Some(c) if c.is_ascii_whitespace() => rd.pos += 1,
        _ => return Err(Error::MalformedHeader("missing raster separator".into())),
    }
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;
    let raster = &bytes[rd.pos..];
    if raster.len() < need {
        return Err(Error::MalformedHeader(format!(
            "raster truncated: {} of {} bytes",
            raster.len(),
            need
        )));
    }
    let raster = &raster[..need];
    if channels == 1 {
        Ok(Image::Gray(GrayImage::new(width, height, raster.to_vec())?))
    } else {
        Ok(Image::Color(ColorImage::from_interleaved(
            width, height, raster,
        )?))
    }
}

fn decode_png(bytes: &[u8]) -> Result<Image> {
    use image::{ColorType, ImageFormat};

    let dynimg = image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| Error::MalformedHeader(format!("png: {e}")))?;
    let (w, h) = (dynimg.width() as usize, dynimg.height() as usize);
    match dynimg.color() {
        ColorType::L8 | ColorType::La8 => Ok(Image::Gray(GrayImage::new(
            w,
            h,
            dynimg.to_luma8().into_raw(),
        )?)),
        ColorType::Rgb8 | ColorType::Rgba8 => Ok(Image::Color(ColorImage::from_interleaved(
            w,
            h,
            &dynimg.to_rgb8().into_raw(),
        )?)),
        _ => Err(Error::UnsupportedBitDepth(65535)),
    }
}
