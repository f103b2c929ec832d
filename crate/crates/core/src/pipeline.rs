//! End-to-end extraction: thresholds → features → rule base → per-pixel
//! inference → reconstructed image. Also the binary single-threshold
//! baselines.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{
    fuse_decisions, local_stats, roi_masks, LocalStats, RoiMask, DEFAULT_WINDOW,
};
use crate::fuzzy::{
    default_fuzzifier, fuzzify_gaussian, generate_rules, FuzzyImage, Inferencer, OutputSet,
    Partition, RuleBase, Scratch, TrainingPair, Variable,
};
use crate::imaging::{ColorImage, GrayImage, Image};
use crate::thresholding::{apply_threshold, threshold_all, ThresholdMap, ThresholdMethod};

/// Largest possible population standard deviation of 8-bit values.
pub const MAX_STD: f64 = 127.5;

/// A per-pixel quantity that can feed the rule base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Intensity,
    LocalMean,
    LocalStd,
}

impl Feature {
    pub fn name(self) -> &'static str {
        match self {
            Feature::Intensity => "intensity",
            Feature::LocalMean => "local_mean",
            Feature::LocalStd => "local_std",
        }
    }

    fn universe(self) -> (f64, f64) {
        match self {
            Feature::LocalStd => (0.0, MAX_STD),
            _ => (0.0, 255.0),
        }
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "intensity" => Ok(Feature::Intensity),
            "local_mean" => Ok(Feature::LocalMean),
            "local_std" => Ok(Feature::LocalStd),
            other => Err(Error::InvalidParameter(format!(
                "unknown feature {other:?}"
            ))),
        }
    }
}

/// What a pixel gets when no rule fires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fallback {
    /// Fused foreground → rounded local mean, fused background → 0.
    FusedDecision,
    /// Rounded local mean everywhere.
    LocalMean,
}

impl FromStr for Fallback {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fused" | "fused_decision" => Ok(Fallback::FusedDecision),
            "local_mean" => Ok(Fallback::LocalMean),
            other => Err(Error::InvalidParameter(format!(
                "unknown fallback {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Fallback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fallback::FusedDecision => "fused",
            Fallback::LocalMean => "local_mean",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Odd side of the local-statistics window.
    pub window: usize,
    /// Gaussian fuzzifier; `None` uses [`default_fuzzifier`].
    pub fuzzifier: Option<f64>,
    /// Rule-base inputs with their region counts.
    pub variables: Vec<(Feature, usize)>,
    pub output_regions: usize,
    /// Adds an intensity variable whose regions peak at the threshold values.
    pub anchor_mode: bool,
    pub fallback: Fallback,
    /// Training pixels are taken every `sample_step` rows and columns.
    pub sample_step: usize,
    /// Selects the phase of the training grid.
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            window: DEFAULT_WINDOW,
            fuzzifier: None,
            variables: vec![
                (Feature::Intensity, 15),
                (Feature::LocalMean, 15),
                (Feature::LocalStd, 7),
            ],
            output_regions: 15,
            anchor_mode: true,
            fallback: Fallback::FusedDecision,
            sample_step: 4,
            seed: 0,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window == 0 || self.window % 2 == 0 {
            return Err(invalid(format!("window must be odd, got {}", self.window)));
        }
        if let Some(f) = self.fuzzifier {
            if !(f > 0.0 && f.is_finite()) {
                return Err(invalid(format!("fuzzifier must be positive, got {f}")));
            }
        }
        if self.variables.is_empty() && !self.anchor_mode {
            return Err(invalid("no input variables"));
        }
        for (i, &(f, k)) in self.variables.iter().enumerate() {
            if k < 2 {
                return Err(invalid(format!(
                    "{} needs at least 2 regions, got {k}",
                    f.name()
                )));
            }
            if self.variables[..i].iter().any(|&(g, _)| g == f) {
                return Err(invalid(format!("{} listed twice", f.name())));
            }
        }
        if self.output_regions < 2 {
            return Err(invalid(format!(
                "output needs at least 2 regions, got {}",
                self.output_regions
            )));
        }
        if self.sample_step == 0 {
            return Err(invalid("sample_step must be positive"));
        }
        Ok(())
    }

    /// Parses `key = value` lines over the defaults. `#` starts a comment.
    ///
    /// Keys: `window`, `fuzzifier` (`auto` or a number), `variables`
    /// (comma list of `name:regions`), `output_regions`, `anchor_mode`,
    /// `fallback` (`fused` or `local_mean`), `sample_step`, `seed`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = PipelineConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: n + 1, msg };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| perr(format!("expected key = value, got {line:?}")))?;
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| perr(format!("{key}: bad integer {v:?}")))
            };
            match key {
                "window" => cfg.window = int(value)? as usize,
                "fuzzifier" => {
                    cfg.fuzzifier = match value {
                        "auto" => None,
                        v => Some(
                            v.parse()
                                .map_err(|_| perr(format!("fuzzifier: bad number {v:?}")))?,
                        ),
                    }
                }
                "variables" => {
                    cfg.variables = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|item| {
                            let (name, k) = item.split_once(':').ok_or_else(|| {
                                perr(format!("variables: expected name:regions, got {item:?}"))
                            })?;
                            let f = name.parse::<Feature>().map_err(|e| perr(e.to_string()))?;
                            Ok((f, int(k.trim())? as usize))
                        })
                        .collect::<Result<_>>()?
                }
                "output_regions" => cfg.output_regions = int(value)? as usize,
                "anchor_mode" => {
                    cfg.anchor_mode = match value {
                        "on" | "true" | "1" => true,
                        "off" | "false" | "0" => false,
                        v => return Err(perr(format!("anchor_mode: expected on/off, got {v:?}"))),
                    }
                }
                "fallback" => {
                    cfg.fallback = value.parse().map_err(|e: Error| perr(e.to_string()))?
                }
                "sample_step" => cfg.sample_step = int(value)? as usize,
                "seed" => cfg.seed = int(value)?,
                other => return Err(perr(format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let vars: Vec<String> = self
            .variables
            .iter()
            .map(|(f, k)| format!("{}:{k}", f.name()))
            .collect();
        format!(
            "window = {}\nfuzzifier = {}\nvariables = {}\noutput_regions = {}\nanchor_mode = {}\nfallback = {}\nsample_step = {}\nseed = {}\n",
            self.window,
            self.fuzzifier.map_or_else(|| "auto".to_string(), |f| format!("{f:?}")),
            vars.join(","),
            self.output_regions,
            if self.anchor_mode { "on" } else { "off" },
            self.fallback,
            self.sample_step,
            self.seed
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Timings {
    pub thresholds: Duration,
    pub features: Duration,
    pub rules: Duration,
    pub inference: Duration,
}

#[derive(Clone, Debug)]
pub struct ExtractionRun {
    pub config: PipelineConfig,
    pub thresholds: ThresholdMap,
    pub fuzzifier: f64,
    /// Gaussian membership of the luma plane, anchored at its brightest level.
    pub membership: FuzzyImage,
    pub fused: RoiMask,
    pub rule_base: RuleBase,
    pub output: Image,
    pub timings: Timings,
    /// Pixel-channel evaluations where no rule fired.
    pub fallback_pixels: usize,
    pub training_pairs: usize,
}

impl ExtractionRun {
    pub const SUMMARY_HEADER: &'static str =
        "width,height,channels,usable_thresholds,rules,training_pairs,fallback_pixels,threshold_ms,feature_ms,rule_ms,inference_ms";

    pub fn summary_row(&self) -> String {
        let ms = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.output.width(),
            self.output.height(),
            if self.output.is_color() { 3 } else { 1 },
            self.thresholds.usable().count(),
            self.rule_base.len(),
            self.training_pairs,
            self.fallback_pixels,
            ms(self.timings.thresholds),
            ms(self.timings.features),
            ms(self.timings.rules),
            ms(self.timings.inference)
        )
    }
}

/// Distinct usable threshold values, ascending.
pub fn threshold_anchors(map: &ThresholdMap) -> Vec<f64> {
    let mut t: Vec<u8> = map.usable().map(|r| r.t).collect();
    t.sort_unstable();
    t.dedup();
    t.into_iter().map(f64::from).collect()
}

/// Rule-base variables for a configuration; the anchored variable, when
/// present, comes last and is named `roi`.
pub fn build_variables(cfg: &PipelineConfig, anchors: &[f64]) -> Result<(Vec<Variable>, Variable)> {
    let mut inputs = Vec::with_capacity(cfg.variables.len() + 1);
    for &(f, k) in &cfg.variables {
        let (lo, hi) = f.universe();
        inputs.push(Variable::new(f.name(), Partition::uniform(lo, hi, k)?));
    }
    if cfg.anchor_mode {
        inputs.push(Variable::new(
            "roi",
            Partition::anchored(0.0, 255.0, anchors)?,
        ));
    }
    let output = Variable::new(
        "target",
        Partition::uniform(0.0, 255.0, cfg.output_regions)?,
    );
    Ok((inputs, output))
}

fn input_vector(cfg: &PipelineConfig, value: u8, mean: f64, std: f64, out: &mut Vec<f64>) {
    out.clear();
    for &(f, _) in &cfg.variables {
        out.push(match f {
            Feature::Intensity => value as f64,
            Feature::LocalMean => mean,
            Feature::LocalStd => std.min(MAX_STD),
        });
    }
    if cfg.anchor_mode {
        out.push(value as f64);
    }
}

/// Mean of the window pixels (inside the image) that share the centre's
/// fused class.
fn class_mean(img: &GrayImage, fused: &RoiMask, x: usize, y: usize, window: usize) -> f64 {
    let r = window / 2;
    let (w, h) = (img.width(), img.height());
    let class = fused.is_foreground(y * w + x);
    let (mut sum, mut n) = (0u64, 0u64);
    for yy in y.saturating_sub(r)..=(y + r).min(h - 1) {
        for xx in x.saturating_sub(r)..=(x + r).min(w - 1) {
            if fused.is_foreground(yy * w + xx) == class {
                sum += img.get(xx, yy) as u64;
                n += 1;
            }
        }
    }
    sum as f64 / n as f64
}

/// Self-supervised training pairs on a strided grid.
pub fn training_pairs(
    luma: &GrayImage,
    stats: &LocalStats,
    fused: &RoiMask,
    cfg: &PipelineConfig,
) -> Vec<TrainingPair> {
    let step = cfg.sample_step;
    let s = step as u64;
    let (px, py) = ((cfg.seed % s) as usize, ((cfg.seed / s) % s) as usize);
    let (w, h) = (luma.width(), luma.height());
    let mut pairs = Vec::with_capacity((w / step + 1) * (h / step + 1));
    let mut buf = Vec::new();
    for y in (py.min(h - 1)..h).step_by(step) {
        for x in (px.min(w - 1)..w).step_by(step) {
            let i = y * w + x;
            input_vector(
                cfg,
                luma.pixels()[i],
                stats.mean.data()[i],
                stats.std.data()[i],
                &mut buf,
            );
            pairs.push(TrainingPair::new(
                buf.clone(),
                class_mean(luma, fused, x, y, cfg.window),
            ));
        }
    }
    pairs
}

fn fallback_value(policy: Fallback, foreground: bool, mean: f64) -> u8 {
    match (policy, foreground) {
        (Fallback::FusedDecision, false) => 0,
        _ => mean.round().clamp(0.0, 255.0) as u8,
    }
}

/// Runs the rule base over one plane; returns the plane and its fallback count.
fn infer_plane(
    rb: &RuleBase,
    cfg: &PipelineConfig,
    plane: &GrayImage,
    stats: &LocalStats,
    fused: &RoiMask,
) -> (GrayImage, usize) {
    let inf = Inferencer::new(rb);
    let (lo, hi) = (rb.output().partition.lo(), rb.output().partition.hi());
    let w = plane.width();
    let rows: Vec<(Vec<u8>, usize)> = (0..plane.height())
        .into_par_iter()
        .map_init(
            || (Scratch::default(), OutputSet::zeros(lo, hi), Vec::new()),
            |(scratch, set, buf), y| {
                let mut row = Vec::with_capacity(w);
                let mut fallbacks = 0;
                for x in 0..w {
                    let i = y * w + x;
                    let (m, s) = (stats.mean.data()[i], stats.std.data()[i]);
                    input_vector(cfg, plane.pixels()[i], m, s, buf);
                    row.push(match inf.evaluate(buf, scratch, set) {
                        Some(v) => v.round() as u8,
                        None => {
                            fallbacks += 1;
                            fallback_value(cfg.fallback, fused.is_foreground(i), m)
                        }
                    });
                }
                (row, fallbacks)
            },
        )
        .collect();
    let fallbacks = rows.iter().map(|r| r.1).sum();
    let pixels = rows.into_iter().flat_map(|r| r.0).collect();
    (
        GrayImage::new(w, plane.height(), pixels).expect("same shape as input"),
        fallbacks,
    )
}

/// Noisy image in, extracted image out.
pub fn run_extraction(noisy: &Image, cfg: &PipelineConfig) -> Result<ExtractionRun> {
    cfg.validate()?;
    let luma = noisy.luma();

    let t0 = Instant::now();
    let thresholds = threshold_all(&luma);
    if thresholds.all_failed() {
        return Err(Error::DegenerateImage);
    }
    let t_thresholds = t0.elapsed();

    let t0 = Instant::now();
    let fuzzifier = cfg.fuzzifier.unwrap_or_else(|| default_fuzzifier(&luma));
    let membership = fuzzify_gaussian(&luma, fuzzifier)?;
    let stats = local_stats(&luma, cfg.window)?;
    let fused = fuse_decisions(&roi_masks(&luma, &thresholds))?;
    let t_features = t0.elapsed();

    let t0 = Instant::now();
    let anchors = threshold_anchors(&thresholds);
    let (inputs, output) = build_variables(cfg, &anchors)?;
    let pairs = training_pairs(&luma, &stats, &fused, cfg);
    let rule_base = generate_rules(&pairs, inputs, output)?;
    if rule_base.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let t_rules = t0.elapsed();

    let t0 = Instant::now();
    let (output, fallback_pixels) = match noisy {
        Image::Gray(_) => {
            let (img, n) = infer_plane(&rule_base, cfg, &luma, &stats, &fused);
            (Image::Gray(img), n)
        }
        Image::Color(c) => {
            let mut total = 0;
            let mut planes = Vec::with_capacity(3);
            for plane in c.planes() {
                let s = local_stats(plane, cfg.window)?;
                let (img, n) = infer_plane(&rule_base, cfg, plane, &s, &fused);
                total += n;
                planes.push(img);
            }
            let [r, g, b]: [GrayImage; 3] = planes.try_into().expect("three planes");
            (Image::Color(ColorImage::from_planes(r, g, b)?), total)
        }
    };
    let t_inference = t0.elapsed();

    Ok(ExtractionRun {
        config: cfg.clone(),
        thresholds,
        fuzzifier,
        membership,
        fused,
        rule_base,
        output,
        timings: Timings {
            thresholds: t_thresholds,
            features: t_features,
            rules: t_rules,
            inference: t_inference,
        },
        fallback_pixels,
        training_pairs: pairs.len(),
    })
}

/// Binary extraction with a single method's threshold on the luma plane.
pub fn run_baseline(noisy: &Image, method: ThresholdMethod) -> Result<GrayImage> {
    let luma = noisy.luma();
    let hist = crate::thresholding::histogram(&luma);
    let r =
        crate::thresholding::compute_threshold(&hist, method).map_err(|f| f.into_error(method))?;
    Ok(apply_threshold(&luma, r.t))
}
