//! Toroidal periods of automorphic functions on the modular surface.
//!
//! For d < 0 the period is the character-weighted average over the Heegner points of
//! the ideal classes; for d > 0 (class number one, trivial character) it is the mean
//! along the closed geodesic of the principal form. Both are compared with the
//! closed form H(g_K, s, χ) L(s, χ), H = |d|^{s/2}/(2c_K) · Γ(s, χ)/Λ(2s).

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::eis::{laplacian_fd, EisensteinSeries, HPoint};
use crate::lfun::{gamma_factor, hecke_l, real_class_characters, HeckeCharacter};
use crate::nfield::{IdealClass, QuadraticField};
use crate::special::{inv_lambda, lambda_completed};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodMethod {
    HeegnerSum,
    GeodesicQuadrature,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodResult {
    pub value: Complex64,
    pub err: f64,
    pub method: PeriodMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HFunctionEval {
    pub s: Complex64,
    pub chi: alloc::string::String,
    pub value: Complex64,
    pub pole_flag: bool,
}

fn check_character(field: &QuadraticField, chi: &HeckeCharacter) -> Result<()> {
    if chi.d != field.d {
        return Err(Error::invalid("character belongs to a different field"));
    }
    if chi.frequency != 0 {
        return Err(Error::unsupported("periods of characters with m ≠ 0"));
    }
    Ok(())
}

/// Period of a function given pointwise with an error estimate.
pub fn period_of(
    field: &QuadraticField,
    chi: &HeckeCharacter,
    mut f: impl FnMut(HPoint) -> Result<(Complex64, f64)>,
) -> Result<PeriodResult> {
    check_character(field, chi)?;
    if field.d < 0 {
        let mut value = Complex64::zero();
        let mut err = 0.0;
        for class in &field.classes {
            let z = HPoint::from_complex(field.heegner_point(class)?)?;
            let (v, e) = f(z)?;
            value += chi.value(class.index).conj() * v;
            err += e;
        }
        let h = field.h as f64;
        return Ok(PeriodResult {
            value: value / h,
            err: err / h,
            method: PeriodMethod::HeegnerSum,
        });
    }
    if !chi.is_trivial() {
        return Err(Error::unsupported("geodesic periods with a nontrivial character"));
    }
    let principal = IdealClass {
        form: field.principal_geodesic_form(),
        index: 0,
    };
    let geo = field.closed_geodesic(&principal)?;
    // the integrand is periodic in arc length, so the trapezoid rule converges geometrically
    let mut n = 32;
    let mut mean = |n: usize| -> Result<(Complex64, f64)> {
        let mut acc = Complex64::zero();
        let mut err = 0.0;
        for k in 0..n {
            let t = geo.length * k as f64 / n as f64;
            let (v, e) = f(HPoint::from_complex(geo.point(t))?)?;
            acc += v;
            err += e;
        }
        Ok((acc / n as f64, err / n as f64))
    };
    let (mut prev, _) = mean(n)?;
    loop {
        n *= 2;
        let (next, pointwise) = mean(n)?;
        let diff = (next - prev).norm();
        if diff <= 1e-13 * next.norm().max(1e-300) + pointwise || n >= 8192 {
            if diff > 1e-6 * next.norm().max(1e-12) + pointwise {
                return Err(Error::NoConvergence {
                    what: "geodesic period",
                    estimate: diff,
                });
            }
            return Ok(PeriodResult {
                value: next,
                err: diff + pointwise,
                method: PeriodMethod::GeodesicQuadrature,
            });
        }
        prev = next;
    }
}

fn eisenstein_point(series: &EisensteinSeries) -> impl FnMut(HPoint) -> Result<(Complex64, f64)> + '_ {
    move |z| {
        let e = series.eval(z)?;
        Ok((e.value, e.error_estimate))
    }
}

/// (1/h) Σ_A conj χ(A) E(z_A, s).
pub fn heegner_period(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<PeriodResult> {
    if field.d > 0 {
        return Err(Error::invalid("heegner_period: field is real"));
    }
    let series = EisensteinSeries::new(s)?;
    period_of(field, chi, eisenstein_point(&series))
}

/// (1/ℓ) ∫₀^ℓ E(z(t), s) dt along the closed geodesic of the principal form.
pub fn geodesic_period(field: &QuadraticField, s: Complex64) -> Result<PeriodResult> {
    if field.d < 0 {
        return Err(Error::invalid("geodesic_period: field is imaginary"));
    }
    let series = EisensteinSeries::new(s)?;
    period_of(field, &HeckeCharacter::trivial(field), eisenstein_point(&series))
}

/// Period of E(·, s) by whichever construction applies to the field.
pub fn eisenstein_period(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<PeriodResult> {
    let series = EisensteinSeries::new(s)?;
    period_of(field, chi, eisenstein_point(&series))
}

/// H(g_K, s, χ) = |d|^{s/2}/(2c_K) · Γ(s, χ)/Λ(2s).
pub fn h_closed_form(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<HFunctionEval> {
    check_character(field, chi)?;
    let (gamma, pole_flag) = match gamma_factor(field, chi, s) {
        Ok(g) => (g, false),
        Err(Error::Pole { .. }) => (Complex64::zero(), true),
        Err(e) => return Err(e),
    };
    let scale = (s * (0.5 * (field.d.abs() as f64).ln())).exp() / (2.0 * field.ck_constant());
    Ok(HFunctionEval {
        s,
        chi: chi.label(),
        value: scale * gamma * inv_lambda(s * 2.0)?,
        pole_flag,
    })
}

/// H(g_K, s, χ) L(s, χ) as a period value.
pub fn closed_form_period(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<PeriodResult> {
    let h = h_closed_form(field, chi, s)?;
    if h.pole_flag {
        return Err(Error::pole(s, None));
    }
    let value = h.value * hecke_l(field, chi, s)?;
    Ok(PeriodResult {
        value,
        err: 1e-13 * value.norm(),
        method: PeriodMethod::ClosedForm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiegelCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_error: f64,
}

/// 2Λ(2s) E(z_A, s) against c_K^{-1} |d|^{s/2} Σ_χ Γ(s, χ) L(s, χ) conj χ(A).
pub fn siegel_identity_check(field: &QuadraticField, s: Complex64, class_index: usize) -> Result<SiegelCheck> {
    if field.d > 0 {
        return Err(Error::invalid("siegel_identity_check: field is real"));
    }
    if s.norm() < 1e-12 || (s - 1.0).norm() < 1e-12 {
        return Err(Error::invalid("siegel_identity_check: s must differ from 0 and 1"));
    }
    let class = field
        .classes
        .get(class_index)
        .ok_or_else(|| Error::invalid(format!("class index {class_index} ≥ h = {}", field.h)))?;
    let characters = real_class_characters(field);
    if characters.len() != field.h {
        return Err(Error::unsupported(format!(
            "class group of d = {} has characters that are not genus characters ({} of {} available)",
            field.d,
            characters.len(),
            field.h
        )));
    }
    let z = HPoint::from_complex(field.heegner_point(class)?)?;
    let lhs = lambda_completed(s * 2.0)? * 2.0 * EisensteinSeries::new(s)?.eval(z)?.value;
    let mut sum = Complex64::zero();
    for chi in &characters {
        sum += gamma_factor(field, chi, s)? * hecke_l(field, chi, s)? * chi.value(class.index).conj();
    }
    let rhs = sum * (s * (0.5 * (field.d.abs() as f64).ln())).exp() / field.ck_constant();
    Ok(SiegelCheck {
        lhs,
        rhs,
        rel_error: (lhs - rhs).norm() / rhs.norm(),
    })
}

/// Ratio of a computed period to its closed form over a grid of s.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioFit {
    pub s_grid: Vec<Complex64>,
    pub periods: Vec<Complex64>,
    pub closed_forms: Vec<Complex64>,
    /// period / (Γ(s, χ) L(s, χ) |d|^{s/2}/Λ(2s)); ideally 1/(2c_K) everywhere.
    pub ratios: Vec<Complex64>,
    pub constant: Complex64,
    /// Largest relative deviation of a ratio from their mean.
    pub spread: f64,
    /// |constant·2c_K - 1|.
    pub calibration_error: f64,
}

pub fn ratio_constancy(field: &QuadraticField, chi: &HeckeCharacter, s_grid: &[Complex64]) -> Result<RatioFit> {
    if s_grid.is_empty() {
        return Err(Error::invalid("ratio_constancy: empty grid"));
    }
    let ck2 = 2.0 * field.ck_constant();
    let mut periods = Vec::with_capacity(s_grid.len());
    let mut closed_forms = Vec::with_capacity(s_grid.len());
    let mut ratios = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let p = eisenstein_period(field, chi, s)?.value;
        let closed = closed_form_period(field, chi, s)?.value;
        periods.push(p);
        closed_forms.push(closed);
        // closed = L·Γ·|d|^{s/2}/Λ(2s) / (2c_K)
        ratios.push(p / (closed * ck2));
    }
    let constant = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - constant).norm() / constant.norm())
        .fold(0.0, f64::max);
    Ok(RatioFit {
        s_grid: s_grid.to_vec(),
        periods,
        closed_forms,
        ratios,
        constant,
        spread,
        calibration_error: (constant * ck2 - 1.0).norm(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConsistency {
    pub period: Complex64,
    pub laplacian_period: Complex64,
    pub residual: f64,
}

/// Period of the finite-difference Laplacian of E against s(1-s) times the period.
/// Below the absolute floor 1e-6 on both sides the residual is reported as 0.
pub fn eigen_consistency(
    field: &QuadraticField,
    chi: &HeckeCharacter,
    s: Complex64,
    step: f64,
) -> Result<EigenConsistency> {
    if !(step > 0.0 && step < 0.1) {
        return Err(Error::invalid("eigen_consistency: step must lie in (0, 0.1)"));
    }
    let series = EisensteinSeries::new(s)?;
    let lambda = s * (1.0 - s);
    let period = period_of(field, chi, eisenstein_point(&series))?.value;
    let laplacian_period = period_of(field, chi, |z| {
        // the stencil is applied where the expansion converges fastest
        let w = z.reduce();
        let v = laplacian_fd(|p| Ok(series.eval_fourier(p)?.value), w, step)?;
        Ok((v, 0.0))
    })?
    .value;
    let target = lambda * period;
    let floor = 1e-6;
    let residual = if target.norm() < floor && laplacian_period.norm() < floor {
        0.0
    } else {
        (laplacian_period - target).norm() / target.norm()
    };
    Ok(EigenConsistency {
        period,
        laplacian_period,
        residual,
    })
}
