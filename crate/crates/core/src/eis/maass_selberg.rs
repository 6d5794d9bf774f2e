use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::fd::{fd_integrate, FdQuadrature, TruncatedProduct};
use super::EisensteinSeries;
use crate::lfun::{c_scattering, c_scattering_derivative};
use crate::{Error, Result};

const DEGENERATE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaassSelberg {
    pub lhs: Complex64,
    pub lhs_error: f64,
    pub rhs: Complex64,
    pub rel_error: f64,
}

fn tpow(t: f64, e: Complex64) -> Complex64 {
    (e * t.ln()).exp()
}

/// Closed form of ∫_F Λ^T E(·, s₁) Λ^T E(·, s₂) dμ, with the limits at s₁ = s₂ and s₁ + s₂ = 1.
pub fn maass_selberg_rhs(s1: Complex64, s2: Complex64, t: f64) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::invalid("Maass–Selberg: T must exceed 1"));
    }
    let (c1, c2) = (c_scattering(2, s1)?, c_scattering(2, s2)?);
    let sum = s1 + s2 - 1.0;
    let diff = s1 - s2;
    if sum.norm() < DEGENERATE && diff.norm() < DEGENERATE {
        return Err(Error::unsupported("Maass–Selberg at s₁ = s₂ = 1/2"));
    }
    let first = if sum.norm() < DEGENERATE {
        let log_der = c_scattering_derivative(2, s2)? / c2;
        2.0 * t.ln() - log_der
    } else {
        (tpow(t, sum) - c1 * c2 * tpow(t, -sum)) / sum
    };
    let second = if diff.norm() < DEGENERATE {
        c1 * (2.0 * t.ln()) - c_scattering_derivative(2, s1)?
    } else {
        (c2 * tpow(t, diff) - c1 * tpow(t, -diff)) / diff
    };
    Ok(first + second)
}

/// Quadrature of the truncated inner product against the closed form.
pub fn maass_selberg_check(s1: Complex64, s2: Complex64, t: f64, quad: &FdQuadrature) -> Result<MaassSelberg> {
    let rhs = maass_selberg_rhs(s1, s2, t)?;
    let integrand = TruncatedProduct {
        first: EisensteinSeries::new(s1)?,
        second: EisensteinSeries::new(s2)?,
        t,
        conjugate: false,
    };
    let lhs = fd_integrate(&integrand, quad)?;
    Ok(MaassSelberg {
        lhs: lhs.value,
        lhs_error: lhs.error,
        rhs,
        rel_error: (lhs.value - rhs).norm() / rhs.norm(),
    })
}

/// Growth exponent p of f(T) = A T^p + B log T + C + o(1) from samples at T₀q^k.
///
/// Second differences remove B and C; successive ratios give q^p. Returns the last
/// estimate and the change from the one before (zero with only four samples).
pub fn growth_exponent(ratio: f64, values: &[f64]) -> Result<(f64, f64)> {
    if values.len() < 4 || !(ratio > 1.0) {
        return Err(Error::invalid("growth_exponent: need ≥ 4 samples and ratio > 1"));
    }
    let first: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let second: Vec<f64> = first.windows(2).map(|w| w[1] - w[0]).collect();
    let estimates: Vec<f64> = second.windows(2).map(|w| (w[1] / w[0]).ln() / ratio.ln()).collect();
    let last = *estimates.last().unwrap();
    let spread = if estimates.len() > 1 {
        (last - estimates[estimates.len() - 2]).abs()
    } else {
        0.0
    };
    Ok((last, spread))
}
