//! Adaptive Gauss-Kronrod quadrature, used as an independent check on
//! [`real_period`](crate::calibration::real_period).

use crate::calibration::{cubic_real_roots, CalibrationError};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<G: Fn(f64) -> f64>(f: &G, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `(integral, error estimate)` of `f` on `[a, b]`, bisecting until the
/// Kronrod-Gauss difference is below `tol` on every piece.
pub fn integrate<G: Fn(f64) -> f64>(f: G, a: f64, b: f64, tol: f64) -> Result<(f64, f64), CalibrationError> {
    let mut stack = vec![(a, b, tol, 0u32)];
    let (mut total, mut err) = (0.0, 0.0);
    while let Some((lo, hi, t, depth)) = stack.pop() {
        let (v, e) = gk15(&f, lo, hi);
        if e <= t || (hi - lo).abs() < 1e-15 * (1.0 + lo.abs()) {
            total += v;
            err += e;
        } else if depth >= 50 {
            return Err(CalibrationError::NoConvergence);
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, t / 2.0, depth + 1));
            stack.push((mid, hi, t / 2.0, depth + 1));
        }
    }
    Ok((total, err))
}

/// `int_{E(R)} |dx / 2y|` by direct quadrature over each component.
pub fn real_period_quadrature(a: f64, b: f64, tol: f64) -> Result<f64, CalibrationError> {
    let d = 4.0 * a * a * a + 27.0 * b * b;
    if d == 0.0 {
        return Err(CalibrationError::Singular);
    }
    let roots = cubic_real_roots(a, b);
    let e1 = roots[0];
    // unbounded branch: x = e1 + tan^2(phi); f(x) / (x - e1) = x^2 + e1 x + e1^2 + A
    let branch = |phi: f64| {
        let t = phi.tan();
        let x = e1 + t * t;
        let q = x * x + e1 * x + e1 * e1 + a;
        let sec2 = 1.0 + t * t;
        if t.is_infinite() {
            2.0
        } else {
            2.0 * sec2 / q.sqrt()
        }
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    let (mut omega, _) = integrate(branch, 0.0, half_pi, tol / 2.0)?;
    if roots.len() == 3 {
        let (e2, e3) = (roots[1], roots[2]);
        let oval = |theta: f64| {
            let s = theta.sin();
            let x = e3 + (e2 - e3) * s * s;
            2.0 / (e1 - x).sqrt()
        };
        omega += integrate(oval, 0.0, half_pi, tol / 2.0)?.0;
    }
    // each component's |dx / 2y| integral equals the half-branch dx / y integral
    Ok(omega)
}
