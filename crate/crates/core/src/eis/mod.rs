//! The level-one real-analytic Eisenstein series
//!
//! E(z, s) = y^s + c(s) y^{1-s} + (2√y/Λ(2s)) Σ_{n≥1} n^{s-1/2} σ_{1-2s}(n) K_{s-1/2}(2πny) 2cos(2πnx),
//!
//! its coprime-lattice definition (as an oracle), constant terms, Arthur truncation,
//! fundamental-domain quadrature, the Maass–Selberg relations and point-pair kernels.

mod fd;
mod kernel;
mod maass_selberg;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Float, Zero};

use crate::lfun::c_scattering;
use crate::special::{bessel_k, inv_lambda, lambda_completed};
use crate::{c64, Error, Result};

pub use fd::{fd_integrate, Automorphic, FdIntegrand, FdQuadrature, FdResult, PointFn, TruncatedProduct};
pub use kernel::{apply_kernel, selberg_transform, HeatProfile, KernelApplication, KernelProfile, PointPairKernel};
pub use maass_selberg::{growth_exponent, maass_selberg_check, maass_selberg_rhs, MaassSelberg};

const MAX_IM_S: f64 = 35.0;
/// Fourier terms with 2πny beyond |ν| + SKIP_MARGIN are below e^{-60} of the leading ones.
const SKIP_MARGIN: f64 = 60.0;

/// Point x + iy of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::invalid(format!("HPoint: need y > 0, got {x} + {y}i")));
        }
        Ok(HPoint { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HPoint::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        c64(self.x, self.y)
    }

    /// Representative in the standard domain |x| ≤ 1/2, |z| ≥ 1.
    pub fn reduce(self) -> Self {
        let mut z = self.to_complex();
        for _ in 0..10_000 {
            z.re -= z.re.round();
            if z.norm_sqr() < 1.0 - 1e-15 {
                z = -z.inv();
            } else {
                break;
            }
        }
        HPoint { x: z.re, y: z.im }
    }

    pub fn in_standard_domain(&self) -> bool {
        self.x.abs() <= 0.5 + 1e-12 && self.x * self.x + self.y * self.y >= 1.0 - 1e-12
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisEval {
    pub s: Complex64,
    pub truncation_n: usize,
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Fourier data of E(·, s) on the horocycle Im z = y:
/// E(x + iy) = constant + Σ_n coeffs[n-1] cos(2πnx).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierRow {
    pub y: f64,
    pub constant: Complex64,
    pub coeffs: Vec<Complex64>,
    pub tail: f64,
}

impl FourierRow {
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = self.constant;
        let cos1 = (2.0 * PI * x).cos();
        // cos(2πnx) by the Chebyshev recurrence
        let (mut c_prev, mut c_cur) = (1.0, cos1);
        for a in &self.coeffs {
            acc += a * c_cur;
            let next = 2.0 * cos1 * c_cur - c_prev;
            c_prev = c_cur;
            c_cur = next;
        }
        acc
    }

    /// The same row with the constant term removed (Λ^T above height T).
    pub fn without_constant(&self) -> FourierRow {
        FourierRow {
            constant: Complex64::zero(),
            ..self.clone()
        }
    }
}

fn divisor_power_sum(n: u64, w: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += (w * (d as f64).ln()).exp();
            let e = n / d;
            if e != d {
                acc += (w * (e as f64).ln()).exp();
            }
        }
        d += 1;
    }
    acc
}

/// E(·, s) for a fixed s, with the s-dependent constants computed once.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinSeries {
    pub s: Complex64,
    pub c: Complex64,
    /// 1/Λ(2s), zero at s = 0 and s = 1/2.
    inv_l: Complex64,
}

impl EisensteinSeries {
    pub fn new(s: Complex64) -> Result<Self> {
        if s.im.abs() > MAX_IM_S {
            return Err(Error::window(
                "eisenstein",
                format!("|Im s| = {} > {MAX_IM_S}", s.im.abs()),
            ));
        }
        if s == c64(1.0, 0.0) {
            let res = 1.0 / (2.0 * lambda_completed(c64(2.0, 0.0))?);
            return Err(Error::pole(s, Some(res)));
        }
        let c = c_scattering(2, s)?;
        let inv_l = inv_lambda(s * 2.0)?;
        Ok(EisensteinSeries { s, c, inv_l })
    }

    pub fn constant_term(&self, y: f64) -> Complex64 {
        let ly = y.ln();
        (self.s * ly).exp() + self.c * ((1.0 - self.s) * ly).exp()
    }

    /// Number of Fourier terms used at height y.
    pub fn terms(&self, y: f64) -> usize {
        let n = ((self.s.im.abs() + 25.0) / (2.0 * PI * y)).ceil() as usize;
        n.max(8)
    }

    fn coefficient(&self, n: usize, y: f64, prefactor: Complex64) -> Result<Complex64> {
        let nu = self.s - 0.5;
        let x = 2.0 * PI * n as f64 * y;
        if x > nu.norm() + SKIP_MARGIN {
            return Ok(Complex64::zero());
        }
        let nf = n as f64;
        let sigma = divisor_power_sum(n as u64, 1.0 - self.s * 2.0);
        Ok(prefactor * (nu * nf.ln()).exp() * sigma * bessel_k(nu, x)?)
    }

    pub fn row(&self, y: f64) -> Result<FourierRow> {
        let n = self.terms(y);
        let constant = self.constant_term(y);
        let mut coeffs = Vec::with_capacity(n);
        if self.inv_l == Complex64::zero() {
            return Ok(FourierRow {
                y,
                constant,
                coeffs,
                tail: 0.0,
            });
        }
        let prefactor = self.inv_l * (4.0 * y.sqrt());
        for k in 1..=n {
            coeffs.push(self.coefficient(k, y, prefactor)?);
        }
        // the coefficients decay at least geometrically from here on
        let a1 = self.coefficient(n + 1, y, prefactor)?.norm();
        let a2 = self.coefficient(n + 2, y, prefactor)?.norm();
        let tail = 2.0 * (a1 + a2);
        let magnitude: f64 = constant.norm() + coeffs.iter().map(|a| a.norm()).sum::<f64>();
        Ok(FourierRow {
            y,
            constant,
            coeffs,
            tail: tail + 1e-15 * magnitude,
        })
    }

    /// Fourier expansion evaluated at z as given (no reduction).
    pub fn eval_fourier(&self, z: HPoint) -> Result<EisEval> {
        let row = self.row(z.y)?;
        Ok(EisEval {
            s: self.s,
            truncation_n: row.coeffs.len(),
            value: row.eval(z.x),
            error_estimate: row.tail,
        })
    }

    /// E(z, s), reducing z to the standard domain first.
    pub fn eval(&self, z: HPoint) -> Result<EisEval> {
        self.eval_fourier(z.reduce())
    }
}

/// E(z, s) by its Fourier expansion at the standard-domain representative of z.
pub fn eisenstein(z: HPoint, s: Complex64) -> Result<EisEval> {
    EisensteinSeries::new(s)?.eval(z)
}

/// Constant term y^s + c(s) y^{1-s}.
pub fn constant_term(y: f64, s: Complex64) -> Result<Complex64> {
    Ok(EisensteinSeries::new(s)?.constant_term(y))
}

/// Λ^T E(z, s): for T > 1 the only translate that can lie above height T is the
/// standard-domain representative, so the correction is its constant term or nothing.
pub fn truncate(z: HPoint, s: Complex64, t: f64) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::invalid(format!("truncate: T = {t} must exceed 1")));
    }
    let series = EisensteinSeries::new(s)?;
    let w = z.reduce();
    let e = series.eval_fourier(w)?.value;
    Ok(if w.y > t { e - series.constant_term(w.y) } else { e })
}

/// Λ^T applied to a function F with known constant term a₀(y).
pub fn truncate_with(
    z: HPoint,
    t: f64,
    f: impl Fn(HPoint) -> Result<Complex64>,
    constant: impl Fn(f64) -> Result<Complex64>,
) -> Result<Complex64> {
    if !(t > 1.0) {
        return Err(Error::invalid(format!("truncate: T = {t} must exceed 1")));
    }
    let w = z.reduce();
    let v = f(w)?;
    Ok(if w.y > t { v - constant(w.y)? } else { v })
}

/// Oracle value of a coprime or full lattice sum with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSum {
    pub value: Complex64,
    pub tail_bound: f64,
}

fn check_oracle_args(s: Complex64, cutoff: f64) -> Result<()> {
    if s.re < 1.25 {
        return Err(Error::window("eisenstein_oracle", format!("Re s = {} < 1.25", s.re)));
    }
    if !(cutoff >= 1.0 && cutoff <= 1e4) {
        return Err(Error::invalid(format!(
            "eisenstein_oracle: cutoff {cutoff} not in [1, 10^4]"
        )));
    }
    Ok(())
}

fn lattice_sum(z: HPoint, s: Complex64, cutoff: f64, coprime: bool) -> LatticeSum {
    let (x, y) = (z.x, z.y);
    let r2 = cutoff * cutoff;
    let m_max = (cutoff / y).floor() as i64;
    let mut acc = Complex64::zero();
    for m in 0..=m_max {
        // |mz + n|² = (mx + n)² + m²y² ≤ R²
        let rest = r2 - (m as f64 * y).powi(2);
        if rest < 0.0 {
            continue;
        }
        let half_width = rest.sqrt();
        let center = -(m as f64) * x;
        let (lo, hi) = (
            (center - half_width).ceil() as i64,
            (center + half_width).floor() as i64,
        );
        for n in lo..=hi {
            if m == 0 && n <= 0 {
                continue;
            }
            if coprime && m.gcd(&n) != 1 {
                continue;
            }
            let q = (m as f64 * x + n as f64).powi(2) + (m as f64 * y).powi(2);
            acc += (-s * q.ln()).exp();
        }
    }
    // (m, n) and (-m, -n) give the same term: the loop covered half the lattice
    let density = if coprime { 6.0 / (PI * PI) } else { 1.0 };
    let ys = (s * y.ln()).exp();
    let tail = (2.0 * PI / y) * density * cutoff.powf(2.0 - 2.0 * s.re);
    let correction =
        c64(2.0 * PI / y * density, 0.0) * (c64(cutoff, 0.0).ln() * (2.0 - 2.0 * s)).exp() / (2.0 * s - 2.0);
    LatticeSum {
        value: ys * (acc * 2.0 + correction),
        tail_bound: ys.norm() * tail / cutoff,
    }
}

/// (1/2) Σ_{gcd(m,n)=1} y^s/|mz + n|^{2s} over |mz + n| ≤ cutoff, plus the area estimate
/// of the remaining tail.
pub fn eisenstein_oracle(z: HPoint, s: Complex64, cutoff: f64) -> Result<LatticeSum> {
    check_oracle_args(s, cutoff)?;
    let sum = lattice_sum(z, s, cutoff, true);
    Ok(LatticeSum {
        value: sum.value * 0.5,
        tail_bound: sum.tail_bound * 0.5,
    })
}

/// Σ_{(m,n) ≠ 0} y^s/|mz + n|^{2s} = 2ζ(2s) E(z, s), by the same truncation.
pub fn lattice_sum_full(z: HPoint, s: Complex64, cutoff: f64) -> Result<LatticeSum> {
    check_oracle_args(s, cutoff)?;
    Ok(lattice_sum(z, s, cutoff, false))
}

/// Hyperbolic Laplacian -y²(∂²_x + ∂²_y) by the five-point stencil with step h.
pub fn laplacian_fd(f: impl Fn(HPoint) -> Result<Complex64>, z: HPoint, h: f64) -> Result<Complex64> {
    let at = |dx: f64, dy: f64| {
        f(HPoint {
            x: z.x + dx,
            y: z.y + dy,
        })
    };
    let centre = at(0.0, 0.0)?;
    let sum = at(h, 0.0)? + at(-h, 0.0)? + at(0.0, h)? + at(0.0, -h)? - centre * 4.0;
    Ok(-sum * (z.y * z.y / (h * h)))
}
