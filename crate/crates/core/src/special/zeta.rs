use alloc::format;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::bernoulli::BERNOULLI;
use super::gamma::gamma_r;
use crate::{c64, Error, Result};

const MAX_IM: f64 = 80.0;
const EM_TERMS: usize = 15;

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (k + a)^{-s} for a ∈ (0, 1], continued to s ≠ 1 by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::invalid(format!("hurwitz_zeta: a = {a} not in (0, 1]")));
    }
    if s == c64(1.0, 0.0) {
        return Err(Error::pole(s, Some(c64(1.0, 0.0))));
    }
    if s.im.abs() > MAX_IM {
        return Err(Error::window(
            "hurwitz_zeta",
            format!("|Im s| = {} > {MAX_IM}", s.im.abs()),
        ));
    }
    let n = 20usize.max(s.norm().ceil() as usize + 10);
    let mut head = Complex64::zero();
    // smallest terms first
    for k in (0..n).rev() {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n as f64 + a;
    let lnx = x.ln();
    let x_pow = (-s * lnx).exp(); // x^{-s}
    let mut acc = x_pow * x / (s - 1.0) + x_pow * 0.5;

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j-2) · x^{-s-2j+1}
    let mut poch = s;
    let mut pow = x_pow / x;
    let mut fact = 2.0;
    let x2inv = 1.0 / (x * x);
    for j in 1..=EM_TERMS {
        let b = BERNOULLI.as_f64(2 * j);
        acc += poch * pow * (b / fact);
        let jf = j as f64;
        poch *= (s + (2.0 * jf - 1.0)) * (s + 2.0 * jf);
        pow *= x2inv;
        fact *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
    }
    Ok(head + acc)
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Completed zeta Λ(s) = π^{-s/2} Γ(s/2) ζ(s), with simple poles at s = 0 (residue -1)
/// and s = 1 (residue 1).
///
/// Points with Re s < -1/2 are evaluated through Λ(s) = Λ(1 - s), which keeps clear of
/// the cancelling poles of Γ(s/2) and zeros of ζ at the negative even integers.
pub fn lambda_completed(s: Complex64) -> Result<Complex64> {
    if s == c64(0.0, 0.0) {
        return Err(Error::pole(s, Some(c64(-1.0, 0.0))));
    }
    if s == c64(1.0, 0.0) {
        return Err(Error::pole(s, Some(c64(1.0, 0.0))));
    }
    if s.re < -0.5 {
        return lambda_completed(c64(1.0, 0.0) - s);
    }
    Ok(gamma_r(s)? * riemann_zeta(s)?)
}

/// 1/Λ(w), extended by 0 at the poles w = 0 and w = 1.
pub fn inv_lambda(w: Complex64) -> Result<Complex64> {
    match lambda_completed(w) {
        Ok(v) => Ok(v.inv()),
        Err(Error::Pole { .. }) => Ok(Complex64::zero()),
        Err(e) => Err(e),
    }
}
