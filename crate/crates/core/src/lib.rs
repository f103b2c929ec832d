//! Threshold-seeded fuzzy rule base for extracting images from Gaussian
//! noise.
//!
//! The crate is organized the way the data flows:
//!
//! - [`imaging`]: rasters, Netpbm/PNG I/O, seeded noise, luma
//! - [`thresholding`]: sixteen global histogram thresholds
//! - [`features`]: per-pixel feature vectors, ROI masks, majority fusion
//! - [`fuzzy`]: membership functions, partitions, Wang–Mendel rule
//!   generation, Mamdani inference, centroid defuzzification
//! - [`pipeline`]: the end-to-end extraction and the binary baselines
//! - [`metrics`]: MSE, MAE, SNR, PSNR
//! - [`bench`]: the noise-level × method comparison grid

pub mod bench;
pub mod error;
pub mod features;
pub mod fuzzy;
pub mod imaging;
pub mod metrics;
pub mod pipeline;
pub mod thresholding;

pub use error::{Error, Result};
