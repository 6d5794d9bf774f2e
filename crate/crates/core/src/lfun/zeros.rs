//! Zeros of L(1/2 + it, χ) for self-dual χ: sign changes of the real-valued completed
//! function, refined by bisection and audited by the argument principle.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::{completed_hecke, completed_hecke_gamma_modulus, HeckeCharacter};
use crate::nfield::QuadraticField;
use crate::{c64, Error, Result};

const MAX_T: f64 = 40.0;
const GRID_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroEntry {
    pub gamma: f64,
    /// |L(1/2 + iγ, χ)|, i.e. the completed value with its gamma factor divided out.
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Raised when |Z'(γ)| < tol: possible tangency or double zero.
    pub suspect_multiple: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    pub d: i64,
    pub chi: String,
    pub t_max: f64,
    pub tol: f64,
    pub zeros: Vec<ZeroEntry>,
    /// Number of zeros with 0 < γ < t_max according to the argument principle.
    pub audit_count: usize,
    pub audit_ok: bool,
    /// |L(1/2, χ)|.
    pub central_value: f64,
}

impl ZeroList {
    pub fn ordinates(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.gamma).collect()
    }
}

/// Z(t) = Λ_K(1/2 + it, χ)/|G(1/2 + it)|: real, same sign as Λ_K, modulus |L(1/2 + it, χ)|.
pub(crate) fn hardy_z(field: &QuadraticField, chi: &HeckeCharacter, t: f64) -> Result<f64> {
    let s = c64(0.5, t);
    let v = completed_hecke(field, chi, s)?;
    Ok(v.re / completed_hecke_gamma_modulus(chi, s)?)
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn wrap(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    } else if y < -PI {
        y += 2.0 * PI;
    }
    y
}

/// Change of arg f along the straight segment p → q, subdividing until consecutive
/// samples differ by less than 0.4 rad.
fn arg_change(f: &impl Fn(Complex64) -> Result<Complex64>, p: Complex64, q: Complex64, pieces: usize) -> Result<f64> {
    fn rec(
        f: &impl Fn(Complex64) -> Result<Complex64>,
        a: Complex64,
        fa: Complex64,
        b: Complex64,
        fb: Complex64,
        depth: u32,
    ) -> Result<f64> {
        let delta = wrap(fb.arg() - fa.arg());
        if delta.abs() < 0.4 {
            return Ok(delta);
        }
        if depth > 40 {
            return Err(Error::NoConvergence {
                what: "argument-principle audit",
                estimate: delta.abs(),
            });
        }
        let m = (a + b) * 0.5;
        let fm = f(m)?;
        Ok(rec(f, a, fa, m, fm, depth + 1)? + rec(f, m, fm, b, fb, depth + 1)?)
    }
    let mut total = 0.0;
    let mut a = p;
    let mut fa = f(a)?;
    for k in 1..=pieces {
        let b = p + (q - p) * (k as f64 / pieces as f64);
        let fb = f(b)?;
        total += rec(f, a, fa, b, fb, 0)?;
        a = b;
        fa = fb;
    }
    Ok(total)
}

/// Zeros of Λ_K(s, χ) in [-1, 2] × [-T, T], minus poles, by the argument principle.
/// Uses Λ(s̄) = conj Λ(s) and Λ(1 - s) = Λ(s): the full boundary change of arg is
/// 4·(Δ along 2 → 2 + iT + Δ along 2 + iT → 1/2 + iT).
fn argument_count(field: &QuadraticField, chi: &HeckeCharacter, t: f64) -> Result<f64> {
    let f = |s: Complex64| completed_hecke(field, chi, s);
    let right = arg_change(&f, c64(2.0, 0.0), c64(2.0, t), 64)?;
    let top = arg_change(&f, c64(2.0, t), c64(0.5, t), 32)?;
    Ok(4.0 * (right + top) / (2.0 * PI))
}

fn scan(field: &QuadraticField, chi: &HeckeCharacter, t_max: f64, tol: f64, step: f64) -> Result<Vec<ZeroEntry>> {
    let z = |t: f64| hardy_z(field, chi, t);
    let n = (t_max / step).ceil() as usize;
    let h = t_max / n as f64;
    let mut zeros = Vec::new();
    let mut t0 = 0.0;
    let mut z0 = z(t0)?;
    for k in 1..=n {
        let t1 = k as f64 * h;
        let z1 = z(t1)?;
        if z0 != 0.0 && (z0 < 0.0) != (z1 < 0.0) {
            let gamma = bisect(&z, t0, t1, z0)?;
            let residual = z(gamma)?.abs();
            let dt = 1e-5;
            let deriv = (z(gamma + dt)? - z(gamma - dt)?) / (2.0 * dt);
            zeros.push(ZeroEntry {
                gamma,
                residual,
                bracket: (t0, t1),
                suspect_multiple: deriv.abs() < tol,
            });
        }
        t0 = t1;
        z0 = z1;
    }
    Ok(zeros)
}

/// Zeros 0 < γ ≤ t_max of L(1/2 + iγ, χ) for a self-dual character in scope.
///
/// The grid is refined (up to twice) when the sign-change count disagrees with the
/// argument-principle count; a remaining disagreement is reported via `audit_ok`.
pub fn find_zeros(field: &QuadraticField, chi: &HeckeCharacter, t_max: f64, tol: f64) -> Result<ZeroList> {
    if !(0.0..=MAX_T).contains(&t_max) {
        return Err(Error::window(
            "find_zeros",
            format!("t_max = {t_max} not in [0, {MAX_T}]"),
        ));
    }
    if !chi.self_dual {
        return Err(Error::unsupported("zero scan needs a self-dual character"));
    }
    let central = hardy_z(field, chi, 0.0)?.abs();
    let central_is_zero = central < tol;
    let poles = if chi.is_trivial() { 2.0 } else { 0.0 };
    let (audit_count, audit_exact) = if t_max > 0.0 {
        let n = argument_count(field, chi, t_max)? + poles - if central_is_zero { 1.0 } else { 0.0 };
        let half = n / 2.0;
        (half.round().max(0.0) as usize, (half - half.round()).abs() < 0.1)
    } else {
        (0, true)
    };
    let mut step = GRID_STEP;
    let mut zeros = Vec::new();
    if t_max > 0.0 {
        for _ in 0..3 {
            zeros = scan(field, chi, t_max, tol, step)?;
            if zeros.len() == audit_count {
                break;
            }
            step /= 4.0;
        }
    }
    let audit_ok =
        audit_exact && zeros.len() == audit_count && zeros.iter().all(|z| z.residual <= tol && !z.suspect_multiple);
    Ok(ZeroList {
        d: field.d,
        chi: chi.label(),
        t_max,
        tol,
        zeros,
        audit_count,
        audit_ok,
        central_value: central,
    })
}
