//! Procedural stand-in for the classic baboon test picture: fur texture
//! from value noise, a red nose ridge, ridged blue cheeks, amber eyes and a
//! pale beard.
//!
//! Only IEEE-exact arithmetic (`+ − × ÷ sqrt`) is used, so the raster is
//! bit-identical on every platform.

use crate::imaging::{ColorImage, GrayImage};

pub const SYNTHETIC_SIDE: usize = 256;

fn hash(x: i64, y: i64, salt: u64) -> f64 {
    let mut h = (x as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (y as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ salt.wrapping_mul(0x1656_67B1_9E37_79F9);
    h ^= h >> 31;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 29;
    h = h.wrapping_mul(0x94D0_49BB_1331_11EB);
    h ^= h >> 32;
    (h >> 11) as f64 / (1u64 << 53) as f64
}

fn sq(v: f64) -> f64 {
    v * v
}

fn smooth(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

/// Bilinear value noise with cell size `sx × sy`, in `[0, 1)`.
fn value_noise(x: f64, y: f64, sx: f64, sy: f64, salt: u64) -> f64 {
    let (u, v) = (x / sx, y / sy);
    let (iu, iv) = (u.floor(), v.floor());
    let (fu, fv) = (smooth(u - iu), smooth(v - iv));
    let (i, j) = (iu as i64, iv as i64);
    let a = hash(i, j, salt);
    let b = hash(i + 1, j, salt);
    let c = hash(i, j + 1, salt);
    let d = hash(i + 1, j + 1, salt);
    let top = a + (b - a) * fu;
    let bottom = c + (d - c) * fu;
    top + (bottom - top) * fv
}

/// Fur: strands stretched along `y`, several octaves.
fn fur(x: f64, y: f64) -> f64 {
    let coarse = value_noise(x, y, 24.0, 40.0, 1);
    let mid = value_noise(x, y, 6.0, 18.0, 2);
    let fine = value_noise(x, y, 1.5, 7.0, 3);
    let grain = hash(x as i64, y as i64, 4);
    0.35 * coarse + 0.3 * mid + 0.25 * fine + 0.1 * grain
}

/// Triangle wave with period `p`, in `[0, 1]`.
fn tri(t: f64, p: f64) -> f64 {
    let f = t / p - (t / p).floor();
    1.0 - (2.0 * f - 1.0).abs()
}

fn blend(a: [f64; 3], b: [f64; 3], w: f64) -> [f64; 3] {
    [
        a[0] + (b[0] - a[0]) * w,
        a[1] + (b[1] - a[1]) * w,
        a[2] + (b[2] - a[2]) * w,
    ]
}

fn ramp(d: f64, edge: f64, width: f64) -> f64 {
    ((edge - d) / width).clamp(0.0, 1.0)
}

fn pixel(x: usize, y: usize, side: usize) -> [f64; 3] {
    // work in 256-pixel units so the picture scales with `side`
    let k = 256.0 / side as f64;
    let (fx, fy) = (x as f64 * k, y as f64 * k);
    let n = fur(fx, fy);

    let dark_fur = [70.0, 60.0, 30.0];
    let gold_fur = [200.0, 160.0, 80.0];
    let mut c = blend(dark_fur, gold_fur, n);

    // pale beard below the muzzle
    let beard = ramp(190.0 - fy, 0.0, 30.0) * (1.0 - ramp(((fx - 128.0) / 90.0).abs(), 0.2, 0.8));
    c = blend(
        c,
        blend([190.0, 180.0, 140.0], [250.0, 240.0, 200.0], n),
        beard,
    );

    let dx = fx - 128.0;
    // cheeks: ridged blue patches either side of the nose
    let cheek_d = (sq((dx.abs() - 48.0) / 26.0) + sq((fy - 140.0) / 55.0)).sqrt();
    let cheek = ramp(cheek_d, 1.0, 0.25);
    let ridge = tri(fx + 0.15 * fy, 9.0);
    let blue = blend(
        [60.0, 90.0, 170.0],
        [150.0, 190.0, 235.0],
        0.6 * ridge + 0.4 * n,
    );
    c = blend(c, blue, cheek);

    // red nose ridge, widening towards the nostrils
    let half = 12.0 + 0.08 * (fy - 60.0).max(0.0);
    let nose = ramp(dx.abs(), half, 4.0) * ramp(60.0 - fy, 0.0, 6.0) * ramp(fy - 205.0, 0.0, 6.0);
    let red = blend(
        [150.0, 20.0, 30.0],
        [240.0, 60.0, 60.0],
        0.5 * n + 0.5 * tri(fy, 23.0),
    );
    c = blend(c, red, nose);

    // nostrils
    for sx in [-10.0, 10.0] {
        let d = (sq((fx - 128.0 - sx) / 6.0) + sq((fy - 198.0) / 4.0)).sqrt();
        c = blend(c, [40.0, 10.0, 10.0], ramp(d, 1.0, 0.3));
    }

    // amber eyes with dark pupils under a dark brow
    for ex in [-34.0, 34.0] {
        let d = (sq((fx - 128.0 - ex) / 13.0) + sq((fy - 62.0) / 9.0)).sqrt();
        let brow = ramp(
            (sq((fx - 128.0 - ex) / 24.0) + sq((fy - 48.0) / 7.0)).sqrt(),
            1.0,
            0.3,
        );
        c = blend(c, [35.0, 30.0, 20.0], brow);
        c = blend(c, [230.0, 150.0, 40.0], ramp(d, 1.0, 0.2));
        c = blend(c, [10.0, 10.0, 10.0], ramp(d, 0.4, 0.15));
    }

    // hair and skin grain over everything
    let t = 0.6 * value_noise(fx, fy, 1.5, 5.0, 5) + 0.4 * hash(fx as i64, fy as i64, 6);
    let gain = 0.7 + 0.6 * t;
    [c[0] * gain, c[1] * gain, c[2] * gain]
}

/// The shipped test picture at any side length (256 for the shipped asset).
pub fn synthetic_mandrill(side: usize) -> ColorImage {
    assert!(side > 0, "side must be positive");
    let px: Vec<[f64; 3]> = (0..side * side)
        .map(|i| pixel(i % side, i / side, side))
        .collect();
    let plane = |ch: usize| {
        GrayImage::new(
            side,
            side,
            px.iter()
                .map(|p| p[ch].round().clamp(0.0, 255.0) as u8)
                .collect(),
        )
        .expect("square raster")
    };
    ColorImage::from_planes(plane(0), plane(1), plane(2)).expect("matching planes")
}
