use alloc::format;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::{c64, Error, Result};

const MIN_X: f64 = 0.05;
const MAX_IM_NU: f64 = 40.0;
const MIN_NODES: usize = 64;
/// Integrand decay (in e-folds) at which the tails are dropped.
const TAIL_EFOLDS: f64 = 45.0;
/// Smallest allowed distance of the contour angle from ±π/2.
const MIN_STRIP: f64 = 0.15;

/// Trapezoid rule for the K-Bessel integral along the rotated contour u + iφ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub step: f64,
    /// Integration runs over [-cutoff, cutoff].
    pub cutoff: f64,
    /// Contour rotation φ, |φ| < π/2.
    pub angle: f64,
    /// Discretisation plus truncation bound, relative to the integrand peak.
    pub error_bound: f64,
}

impl QuadratureSpec {
    /// Rule adapted to (ν, x): the contour angle removes the oscillation of e^{-iνu} near
    /// the origin, and the step is a fixed fraction of the remaining strip of analyticity.
    pub fn for_args(nu: Complex64, x: f64) -> Self {
        let t = nu.im.abs();
        let phi = (t / x).min(1.0).asin().min(FRAC_PI_2 - MIN_STRIP);
        let angle = if nu.im > 0.0 { -phi } else { phi };
        Self::with_angle(nu, x, angle, 10.0)
    }

    /// Rule with a caller-chosen contour angle; the step is `strip / steps_per_strip`.
    pub fn with_angle(nu: Complex64, x: f64, angle: f64, steps_per_strip: f64) -> Self {
        let strip = FRAC_PI_2 - angle.abs();
        let mut step = (strip / steps_per_strip).min(0.25);
        let a = x * angle.cos();
        let b = nu.re.abs();
        // smallest U with a(cosh U - 1) - bU >= TAIL_EFOLDS
        let mut cutoff: f64 = 1.0;
        while a * (cutoff.cosh() - 1.0) - b * cutoff < TAIL_EFOLDS {
            cutoff += 0.25;
        }
        let mut half = (cutoff / step).ceil() as usize;
        if 2 * half + 1 < MIN_NODES {
            half = MIN_NODES / 2;
            step = cutoff / half as f64;
        }
        let cutoff = half as f64 * step;
        let error_bound = (-core::f64::consts::PI * strip / step).exp() + (-TAIL_EFOLDS).exp();
        QuadratureSpec {
            nodes: 2 * half + 1,
            step,
            cutoff,
            angle,
            error_bound,
        }
    }
}

fn check_window(nu: Complex64, x: f64) -> Result<()> {
    if !(x >= MIN_X) {
        return Err(Error::window("bessel_k", format!("x = {x} < {MIN_X}")));
    }
    if nu.im.abs() > MAX_IM_NU {
        return Err(Error::window(
            "bessel_k",
            format!("|Im nu| = {} > {MAX_IM_NU}", nu.im.abs()),
        ));
    }
    Ok(())
}

/// Modified Bessel function K_ν(x) for complex order and real x ≥ 0.05, |Im ν| ≤ 40.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Complex64> {
    check_window(nu, x)?;
    Ok(eval(nu, x, &QuadratureSpec::for_args(nu, x)))
}

/// K_ν(x) with an explicit quadrature rule.
pub fn bessel_k_with(nu: Complex64, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    check_window(nu, x)?;
    if !(spec.angle.abs() < FRAC_PI_2) || spec.nodes < MIN_NODES {
        return Err(Error::invalid(
            "bessel_k_with: contour angle or node count out of range",
        ));
    }
    Ok(eval(nu, x, spec))
}

// K_ν(x) = ½ e^{-iνφ} ∫_ℝ exp(-x(cosh u cos φ + i sinh u sin φ) - νu) du
fn eval(nu: Complex64, x: f64, spec: &QuadratureSpec) -> Complex64 {
    let (sin_phi, cos_phi) = spec.angle.sin_cos();
    let half = (spec.nodes - 1) / 2;
    let mut acc = Complex64::zero();
    for k in 0..spec.nodes {
        let u = (k as f64 - half as f64) * spec.step;
        let (sh, ch) = (u.sinh(), u.cosh());
        let expo = c64(-x * ch * cos_phi, -x * sh * sin_phi) - nu * u;
        acc += expo.exp();
    }
    let phase = (-Complex64::i() * nu * spec.angle).exp();
    phase * acc * (0.5 * spec.step)
}
