use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// Membership function over a real universe. Every variant evaluates into
/// `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MembershipFunction {
    /// `exp(−(peak − x)² / (2·fuzzifier²))`
    Gaussian {
        peak: f64,
        fuzzifier: f64,
    },
    /// Rises on `[a, b]`, falls on `[b, c]`. `a == b` or `b == c` gives a
    /// shoulder that is 1 at the peak edge.
    Triangular {
        a: f64,
        b: f64,
        c: f64,
    },
    Trapezoidal {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
}

impl MembershipFunction {
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            MembershipFunction::Gaussian { peak, fuzzifier } => {
                let d = peak - x;
                (-(d * d) / (2.0 * fuzzifier * fuzzifier)).exp()
            }
            MembershipFunction::Triangular { a, b, c } => trapezoid(x, a, b, b, c),
            MembershipFunction::Trapezoidal { a, b, c, d } => trapezoid(x, a, b, c, d),
        }
    }

    /// Closed interval outside which membership is zero.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            MembershipFunction::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            MembershipFunction::Triangular { a, c, .. } => (a, c),
            MembershipFunction::Trapezoidal { a, d, .. } => (a, d),
        }
    }

    /// Point of full membership (left edge of the plateau for trapezoids).
    pub fn peak(&self) -> f64 {
        match *self {
            MembershipFunction::Gaussian { peak, .. } => peak,
            MembershipFunction::Triangular { b, .. } => b,
            MembershipFunction::Trapezoidal { b, .. } => b,
        }
    }
}

#[inline]
fn trapezoid(x: f64, a: f64, b: f64, c: f64, d: f64) -> f64 {
    if x < a || x > d {
        0.0
    } else if x < b {
        (x - a) / (b - a)
    } else if x <= c {
        1.0
    } else {
        (d - x) / (d - c)
    }
}

/// Per-pixel membership grades in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyImage {
    width: usize,
    height: usize,
    grades: Vec<f64>,
}

impl FuzzyImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn grades(&self) -> &[f64] {
        &self.grades
    }
}

/// Gaussian fuzzification anchored at the brightest level:
/// `μ = exp(−(x_max − x)² / (2·f_h²))`.
pub fn fuzzify_gaussian(img: &GrayImage, fuzzifier: f64) -> Result<FuzzyImage> {
    if !(fuzzifier > 0.0 && fuzzifier.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "fuzzifier must be positive, got {fuzzifier}"
        )));
    }
    let mf = MembershipFunction::Gaussian {
        peak: img.max_value() as f64,
        fuzzifier,
    };
    Ok(FuzzyImage {
        width: img.width(),
        height: img.height(),
        grades: img.pixels().iter().map(|&p| mf.eval(p as f64)).collect(),
    })
}

/// Half the population standard deviation of the intensities, floored at
/// one gray level so flat images still get a usable spread.
pub fn default_fuzzifier(img: &GrayImage) -> f64 {
    let n = img.len() as f64;
    let mean = img.pixels().iter().map(|&p| p as f64).sum::<f64>() / n;
    let var = img
        .pixels()
        .iter()
        .map(|&p| (p as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    (0.5 * var.sqrt()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_examples() {
        let img = GrayImage::new(2, 1, vec![100, 200]).unwrap();
        let f = fuzzify_gaussian(&img, 50.0).unwrap();
        assert!((f.grades()[0] - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(f.grades()[1], 1.0);

        let mf = MembershipFunction::Gaussian {
            peak: 180.0,
            fuzzifier: 12.0,
        };
        assert!((mf.eval(168.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((mf.eval(168.0) - 0.60653).abs() < 1e-5);
    }

    #[test]
    fn rejects_nonpositive_fuzzifier() {
        let img = GrayImage::filled(1, 1, 3).unwrap();
        assert!(fuzzify_gaussian(&img, 0.0).is_err());
        assert!(fuzzify_gaussian(&img, -1.0).is_err());
        assert!(fuzzify_gaussian(&img, f64::NAN).is_err());
    }

    #[test]
    fn triangle_and_shoulders() {
        let t = MembershipFunction::Triangular {
            a: 0.0,
            b: 10.0,
            c: 30.0,
        };
        assert_eq!(t.eval(10.0), 1.0);
        assert_eq!(t.eval(5.0), 0.5);
        assert_eq!(t.eval(20.0), 0.5);
        assert_eq!(t.eval(31.0), 0.0);
        let left = MembershipFunction::Triangular {
            a: 0.0,
            b: 0.0,
            c: 10.0,
        };
        assert_eq!(left.eval(0.0), 1.0);
        assert_eq!(left.eval(-0.1), 0.0);
        let right = MembershipFunction::Triangular {
            a: 245.0,
            b: 255.0,
            c: 255.0,
        };
        assert_eq!(right.eval(255.0), 1.0);
        let trap = MembershipFunction::Trapezoidal {
            a: 0.0,
            b: 2.0,
            c: 4.0,
            d: 8.0,
        };
        assert_eq!(trap.eval(3.0), 1.0);
        assert_eq!(trap.eval(6.0), 0.5);
    }
}
