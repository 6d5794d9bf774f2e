use alloc::format;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Num, Zero};

use crate::quad::{contour_derivative, contour_mean};
use crate::special::lambda_completed;
use crate::{c64, Error, Result};

/// c_n(s) = Λ(n(1 - s)) / Λ(ns).
///
/// Zeros at s = 0 and (n ≥ 3) s = 1/n; simple poles at s = 1 and (n ≥ 3) s = 1 - 1/n.
/// For n = 2 the point s = 1/2 is removable and the limit is returned.
pub fn c_scattering(n: u32, s: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::invalid(format!("c_scattering: n = {n} < 2")));
    }
    let nf = n as f64;
    let one = c64(1.0, 0.0);
    if s == one {
        // Λ(n(1-s)) ~ 1/(n(s-1)) near s = 1
        let res = 1.0 / (nf * lambda_completed(c64(nf, 0.0))?);
        return Err(Error::pole(s, Some(res)));
    }
    if n >= 3 && s == c64(1.0 - 1.0 / nf, 0.0) {
        let res = -1.0 / (nf * lambda_completed(c64(nf - 1.0, 0.0))?);
        return Err(Error::pole(s, Some(res)));
    }
    if s == Complex64::zero() || (n >= 3 && s == c64(1.0 / nf, 0.0)) {
        return Ok(Complex64::zero());
    }
    if n == 2 && s == c64(0.5, 0.0) {
        return contour_mean(s, 0.1, 48, |w| c_scattering(2, w));
    }
    Ok(lambda_completed((one - s) * nf)? / lambda_completed(s * nf)?)
}

/// c_n'(s) by a Cauchy integral on a circle kept clear of the poles of c_n.
pub fn c_scattering_derivative(n: u32, s: Complex64) -> Result<Complex64> {
    let nf = n as f64;
    let mut r: f64 = 0.05;
    let mut poles = alloc::vec![c64(1.0, 0.0)];
    if n >= 3 {
        poles.push(c64(1.0 - 1.0 / nf, 0.0));
    }
    for p in poles {
        let dist = (s - p).norm();
        if dist < 1e-12 {
            return Err(Error::pole(s, None));
        }
        r = r.min(dist / 3.0);
    }
    contour_derivative(s, r, 64, |w| c_scattering(n, w))
}

// γ_h(s) = s(1-s)·(X^{h-1} - Y^{h-1})/(X - Y) with X = (n-1)s, Y = 1 - s, written as the
// geometric sum Σ_{k=0}^{h-2} X^k Y^{h-2-k} so the removable singularity never appears.
fn gamma_poly_generic<T: Num + Clone>(n: u32, h: u32, s: T) -> T {
    let mut n_minus_1 = T::zero();
    for _ in 1..n {
        n_minus_1 = n_minus_1 + T::one();
    }
    let x = n_minus_1 * s.clone();
    let y = T::one() - s.clone();
    let mut sum = T::zero();
    if h >= 2 {
        let m = h - 2;
        for k in 0..=m {
            let mut term = T::one();
            for _ in 0..k {
                term = term * x.clone();
            }
            for _ in 0..m - k {
                term = term * y.clone();
            }
            sum = sum + term;
        }
    }
    s.clone() * (T::one() - s) * sum
}

fn check_poly_args(n: u32, h: u32) -> Result<()> {
    if h < 1 || h > n {
        return Err(Error::invalid(format!(
            "gamma_poly: need 1 ≤ h ≤ n, got h = {h}, n = {n}"
        )));
    }
    Ok(())
}

/// Eigenvalue polynomial γ_h(s) of the invariant operators for GL(n).
pub fn gamma_poly(n: u32, h: u32, s: Complex64) -> Result<Complex64> {
    check_poly_args(n, h)?;
    Ok(gamma_poly_generic(n, h, s))
}

/// γ_h at a rational point, exactly.
pub fn gamma_poly_exact(n: u32, h: u32, s: Ratio<i128>) -> Result<Ratio<i128>> {
    check_poly_args(n, h)?;
    Ok(gamma_poly_generic(n, h, s))
}
