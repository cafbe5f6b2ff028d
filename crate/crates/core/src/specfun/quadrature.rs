//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Infinite limits are mapped onto a finite interval with x = a + s/(1−s)
//! (or its mirror); the doubly infinite case is split at zero.

// Node and weight tables are kept at their published precision.
#![allow(clippy::excessive_precision)]

use super::Tolerance;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

fn adaptive<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    let mut segments = vec![kronrod(f, a, b)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() {
            return Err(Error::Numeric(format!("non-finite integrand on [{a}, {b}]")));
        }
        if error <= tol.abs_tol.max(1e-15 * value.abs()) {
            return Ok(value);
        }
        if segments.len() >= tol.max_terms {
            return Err(Error::Quadrature {
                estimate: error,
                intervals: segments.len(),
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Cannot split further in floating point.
            return Err(Error::Quadrature {
                estimate: error,
                intervals: segments.len() + 1,
            });
        }
        segments.push(kronrod(f, seg.a, mid));
        segments.push(kronrod(f, mid, seg.b));
    }
}

/// ∫_a^b f(x) dx with either limit possibly infinite.
///
/// Converges when the summed Kronrod error estimate falls below
/// `tol.abs_tol`; `tol.max_terms` bounds the number of subintervals.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    integrate(&f, a, b, tol)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Numeric("quadrature limit is NaN".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(f, a, b, tol),
        (true, false) => {
            let g = |s: f64| {
                let r = 1.0 - s;
                f(a + s / r) / (r * r)
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        (false, true) => {
            let g = |s: f64| {
                let r = 1.0 - s;
                f(b - s / r) / (r * r)
            };
            adaptive(&g, 0.0, 1.0, tol)
        }
        (false, false) => {
            let half = Tolerance {
                abs_tol: 0.5 * tol.abs_tol,
                ..tol
            };
            Ok(integrate(f, f64::NEG_INFINITY, 0.0, half)? + integrate(f, 0.0, f64::INFINITY, half)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::normal_pdf;
    use approx::assert_abs_diff_eq;

    fn tight() -> Tolerance {
        Tolerance::default().with_abs_tol(1e-12)
    }

    #[test]
    fn constant() {
        assert_abs_diff_eq!(quadrature(|_| 1.0, 0.0, 1.0, tight()).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn normal_density_over_real_line() {
        let v = quadrature(normal_pdf, f64::NEG_INFINITY, f64::INFINITY, tight()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn gamma_two() {
        let v = quadrature(|x| x * (-x).exp(), 0.0, f64::INFINITY, tight()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn lower_infinite_limit() {
        let v = quadrature(|x: f64| x.exp(), f64::NEG_INFINITY, 0.0, tight()).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = quadrature(|x| x * x, 1.0, 0.0, tight()).unwrap();
        assert_abs_diff_eq!(v, -1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance {
            abs_tol: 1e-14,
            max_terms: 3,
            ..Tolerance::default()
        };
        let r = quadrature(|x: f64| (1.0 / x).sin(), 1e-4, 1.0, tol);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
