use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::bernoulli::BERNOULLI;
use crate::{c64, Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_MIN_MOD: f64 = 15.0;

fn nonpositive_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        Some(s.re as i64)
    } else {
        None
    }
}

fn gamma_pole(n: i64) -> Error {
    // res_{s=-k} Γ = (-1)^k / k!
    let k = (-n) as u32;
    let mut fact = 1.0;
    for i in 1..=k {
        fact *= i as f64;
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Error::pole(c64(n as f64, 0.0), Some(c64(sign / fact, 0.0)))
}

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + LN_SQRT_2PI;
    let zinv = z.inv();
    let z2inv = zinv * zinv;
    let mut zpow = zinv;
    for k in 1..=15usize {
        let b = BERNOULLI.as_f64(2 * k);
        acc += zpow * (b / ((2 * k) as f64 * (2 * k - 1) as f64));
        zpow *= z2inv;
    }
    acc
}

/// log Γ(s): shifted Stirling series, reflection for Re s < 1/2.
///
/// For Re s ≥ 1/2 this is the branch that is real on the positive axis and continuous
/// off the negative axis; in every case `exp(log_gamma(s)) = Γ(s)`.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(s) {
        return Err(gamma_pole(n));
    }
    if s.re < 0.5 {
        // Γ(s) Γ(1-s) = π / sin(πs)
        let sin = (s * PI).sin();
        return Ok(c64(PI.ln(), 0.0) - sin.ln() - log_gamma(c64(1.0, 0.0) - s)?);
    }
    let mut z = s;
    let mut shift = c64(0.0, 0.0);
    while z.norm() < STIRLING_MIN_MOD {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling(z) - shift)
}

pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

/// Γ_R(s) = π^{-s/2} Γ(s/2).
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    let lg = log_gamma(s * 0.5).map_err(|e| match e {
        Error::Pole { residue, .. } => Error::pole(s, residue.map(|r| r * 2.0)),
        other => other,
    })?;
    Ok((lg - s * (0.5 * PI.ln())).exp())
}

/// Γ_C(s) = (2π)^{1-s} Γ(s).
pub fn gamma_c(s: Complex64) -> Result<Complex64> {
    let lg = log_gamma(s).map_err(|e| match e {
        Error::Pole { at, residue, .. } => Error::pole(at, residue.map(|r| r * (2.0 * PI).powf(1.0 - at.re))),
        other => other,
    })?;
    Ok((lg + (c64(1.0, 0.0) - s) * (2.0 * PI).ln()).exp())
}
