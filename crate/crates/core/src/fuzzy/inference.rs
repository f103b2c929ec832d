//! Mamdani min–max inference over a sampled output universe and centroid
//! defuzzification.

use std::collections::HashMap;

use super::RuleBase;
use crate::error::{Error, Result};

/// Samples of the output universe.
pub const OUTPUT_SAMPLES: usize = 256;

/// Aggregated output fuzzy set, sampled at [`OUTPUT_SAMPLES`] evenly spaced
/// points of `[lo, hi]` (both ends included).
#[derive(Clone, Debug, PartialEq)]
pub struct OutputSet {
    lo: f64,
    hi: f64,
    mu: Vec<f64>,
    /// Samples outside this index range are zero.
    touched: (usize, usize),
}

impl OutputSet {
    pub fn zeros(lo: f64, hi: f64) -> Self {
        OutputSet {
            lo,
            hi,
            mu: vec![0.0; OUTPUT_SAMPLES],
            touched: (0, 0),
        }
    }

    pub fn from_samples(lo: f64, hi: f64, mu: Vec<f64>) -> Result<Self> {
        if mu.len() != OUTPUT_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "output set needs {OUTPUT_SAMPLES} samples, got {}",
                mu.len()
            )));
        }
        Ok(OutputSet {
            lo,
            hi,
            mu,
            touched: (0, OUTPUT_SAMPLES),
        })
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.lo + (self.hi - self.lo) * i as f64 / (OUTPUT_SAMPLES - 1) as f64
    }

    pub fn samples(&self) -> &[f64] {
        &self.mu
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.mu.iter().all(|&m| m == 0.0)
    }

    pub fn max(&self) -> f64 {
        self.mu.iter().copied().fold(0.0, f64::max)
    }
}

/// Reusable buffers for [`Inferencer::infer_into`].
#[derive(Default)]
pub struct Scratch {
    active: Vec<Vec<(usize, f64)>>,
    idx: Vec<usize>,
    fired: Vec<(usize, f64)>,
}

/// Antecedent spaces up to this size get a dense consequent table.
const DENSE_LIMIT: usize = 1 << 22;
const NO_RULE: u16 = u16::MAX;

enum Table {
    /// Consequent per mixed-radix antecedent index.
    Dense(Vec<u16>),
    Sparse(HashMap<usize, u16>),
}

/// Borrowing wrapper that evaluates a rule base without per-call allocation.
pub struct Inferencer<'a> {
    rb: &'a RuleBase,
    /// Sample index range covered by each output region's support.
    spans: Vec<(usize, usize)>,
    strides: Vec<usize>,
    table: Table,
}

impl<'a> Inferencer<'a> {
    pub fn new(rb: &'a RuleBase) -> Self {
        let out = &rb.output().partition;
        let (lo, hi) = (out.lo(), out.hi());
        let scale = (OUTPUT_SAMPLES - 1) as f64 / (hi - lo);
        let spans = out
            .regions()
            .iter()
            .map(|r| {
                let (a, b) = r.mf.support();
                let s = ((a.max(lo) - lo) * scale).floor().max(0.0) as usize;
                let e = ((b.min(hi) - lo) * scale)
                    .ceil()
                    .min((OUTPUT_SAMPLES - 1) as f64) as usize;
                (s, e)
            })
            .collect();
        let mut strides = Vec::with_capacity(rb.inputs().len());
        let mut size = 1usize;
        for v in rb.inputs().iter().rev() {
            strides.push(size);
            size = size.saturating_mul(v.partition.len());
        }
        strides.reverse();
        let index = |a: &[usize]| a.iter().zip(&strides).map(|(r, s)| r * s).sum::<usize>();
        assert!(out.len() < NO_RULE as usize, "too many output regions");
        let table = if size <= DENSE_LIMIT {
            let mut t = vec![NO_RULE; size];
            for r in rb.rules() {
                t[index(&r.antecedent)] = r.consequent as u16;
            }
            Table::Dense(t)
        } else {
            Table::Sparse(
                rb.rules()
                    .map(|r| (index(&r.antecedent), r.consequent as u16))
                    .collect(),
            )
        };
        Inferencer {
            rb,
            spans,
            strides,
            table,
        }
    }

    #[inline]
    fn lookup(&self, index: usize) -> Option<usize> {
        let c = match &self.table {
            Table::Dense(t) => t[index],
            Table::Sparse(m) => *m.get(&index)?,
        };
        (c != NO_RULE).then_some(c as usize)
    }

    /// Firing strengths of all rules with non-zero activation, as
    /// `(consequent, strength)` in antecedent order.
    pub fn fire(&self, inputs: &[f64], scratch: &mut Scratch) -> Vec<(usize, f64)> {
        self.collect_fired(inputs, scratch);
        scratch.fired.clone()
    }

    fn collect_fired(&self, inputs: &[f64], scratch: &mut Scratch) {
        let vars = self.rb.inputs();
        assert_eq!(inputs.len(), vars.len(), "one input value per variable");
        scratch.active.resize_with(vars.len(), Vec::new);
        scratch.fired.clear();
        for (v, (&x, act)) in vars
            .iter()
            .zip(inputs.iter().zip(scratch.active.iter_mut()))
        {
            v.partition.active(x, act);
            if act.is_empty() {
                return;
            }
        }
        // odometer over the cartesian product of active regions
        let n = vars.len();
        let idx = &mut scratch.idx;
        idx.clear();
        idx.resize(n, 0);
        loop {
            let mut strength = f64::INFINITY;
            let mut index = 0;
            for k in 0..n {
                let (r, m) = scratch.active[k][idx[k]];
                index += r * self.strides[k];
                strength = strength.min(m);
            }
            if let Some(c) = self.lookup(index) {
                scratch.fired.push((c, strength));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < scratch.active[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Aggregated clipped consequents for one input vector.
    pub fn infer_into(&self, inputs: &[f64], scratch: &mut Scratch, out: &mut OutputSet) {
        let (a, b) = out.touched;
        out.mu[a..b].iter_mut().for_each(|m| *m = 0.0);
        out.touched = (OUTPUT_SAMPLES, 0);
        self.collect_fired(inputs, scratch);
        let part = &self.rb.output().partition;
        for &(c, strength) in &scratch.fired {
            let mf = &part.regions()[c].mf;
            let (s, e) = self.spans[c];
            out.touched = (out.touched.0.min(s), out.touched.1.max(e + 1));
            for i in s..=e {
                let v = mf.eval(out.x(i)).min(strength);
                if v > out.mu[i] {
                    out.mu[i] = v;
                }
            }
        }
        if out.touched.0 >= out.touched.1 {
            out.touched = (0, 0);
        }
    }

    /// Crisp output, or `None` when no rule fires.
    pub fn evaluate(
        &self,
        inputs: &[f64],
        scratch: &mut Scratch,
        buf: &mut OutputSet,
    ) -> Option<f64> {
        self.infer_into(inputs, scratch, buf);
        defuzzify_centroid(buf).ok()
    }
}

/// Mamdani inference: rule strength is the minimum antecedent membership,
/// each consequent is clipped at its strength, clipped sets are combined
/// by pointwise maximum.
pub fn infer(rb: &RuleBase, inputs: &[f64]) -> OutputSet {
    let out = &rb.output().partition;
    let mut set = OutputSet::zeros(out.lo(), out.hi());
    Inferencer::new(rb).infer_into(inputs, &mut Scratch::default(), &mut set);
    set
}

/// Centre of gravity of the sampled set.
pub fn defuzzify_centroid(set: &OutputSet) -> Result<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    let (a, b) = set.touched;
    for (i, &m) in set.mu.iter().enumerate().take(b).skip(a) {
        if m > 0.0 {
            num += set.x(i) * m;
            den += m;
        }
    }
    if den == 0.0 {
        return Err(Error::EmptyOutput);
    }
    Ok((num / den).clamp(set.lo, set.hi))
}
