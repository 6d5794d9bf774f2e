use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::{EisensteinSeries, FourierRow};
use crate::quad::{periodic_mean, tanh_sinh, GaussLegendre};
use crate::{Error, Result};

/// Integrand on the standard fundamental domain, organised by horocycles: everything
/// that depends only on y is computed once per row.
///
/// Above y = 1 the x-integral uses the trapezoid rule over one period, so the
/// integrand must be 1-periodic in x there.
pub trait FdIntegrand {
    type Row;
    fn prepare(&self, y: f64) -> Result<Self::Row>;
    fn eval(&self, row: &Self::Row, x: f64) -> Complex64;
    /// Heights where the integrand may jump (truncation heights).
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// A plain function of (x, y), with any heights where it jumps.
pub struct PointFn<F> {
    pub f: F,
    pub breaks: Vec<f64>,
}

impl<F: Fn(f64, f64) -> Complex64> PointFn<F> {
    pub fn new(f: F) -> Self {
        PointFn { f, breaks: Vec::new() }
    }

    pub fn with_breakpoints(mut self, breaks: &[f64]) -> Self {
        self.breaks.extend_from_slice(breaks);
        self
    }
}

impl<F: Fn(f64, f64) -> Complex64> FdIntegrand for PointFn<F> {
    type Row = f64;
    fn prepare(&self, y: f64) -> Result<f64> {
        Ok(y)
    }
    fn eval(&self, y: &f64, x: f64) -> Complex64 {
        (self.f)(x, *y)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
}

/// Automorphic function given by its Fourier rows.
pub trait Automorphic {
    fn row(&self, y: f64) -> Result<FourierRow>;
}

impl Automorphic for EisensteinSeries {
    fn row(&self, y: f64) -> Result<FourierRow> {
        EisensteinSeries::row(self, y)
    }
}

impl<A: Automorphic + ?Sized> Automorphic for &A {
    fn row(&self, y: f64) -> Result<FourierRow> {
        (**self).row(y)
    }
}

/// Λ^T F₁ · Λ^T F₂, or Λ^T F₁ · conj(Λ^T F₂) when `conjugate` is set.
pub struct TruncatedProduct<A, B> {
    pub first: A,
    pub second: B,
    pub t: f64,
    pub conjugate: bool,
}

impl<A: Automorphic, B: Automorphic> FdIntegrand for TruncatedProduct<A, B> {
    type Row = (FourierRow, FourierRow);

    fn prepare(&self, y: f64) -> Result<Self::Row> {
        let (a, b) = (self.first.row(y)?, self.second.row(y)?);
        Ok(if y > self.t {
            (a.without_constant(), b.without_constant())
        } else {
            (a, b)
        })
    }

    fn eval(&self, row: &Self::Row, x: f64) -> Complex64 {
        let (a, b) = (row.0.eval(x), row.1.eval(x));
        if self.conjugate {
            a * b.conj()
        } else {
            a * b
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        alloc::vec![self.t]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdQuadrature {
    /// Gauss–Legendre nodes per panel (and per x-interval below y = 1).
    pub gl_nodes: usize,
    /// Trapezoid nodes per period in x above y = 1.
    pub x_nodes: usize,
    /// Cusp region y ≥ `cusp_start` is integrated in u = 1/y by tanh-sinh.
    pub cusp_start: f64,
    pub tail_tol: f64,
}

impl Default for FdQuadrature {
    fn default() -> Self {
        FdQuadrature {
            gl_nodes: 20,
            x_nodes: 64,
            cusp_start: 8.0,
            tail_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResult {
    pub value: Complex64,
    pub error: f64,
}

fn integrate_once<F: FdIntegrand>(f: &F, q: &FdQuadrature) -> Result<(Complex64, f64)> {
    let gl = GaussLegendre::new(q.gl_nodes);
    let mut total = Complex64::zero();

    // y in [√3/2, 1] through w = √(1 - y²), where the arc is x = ±w
    for (w, ww) in gl.mapped(0.0, 0.5) {
        let y = (1.0 - w * w).sqrt();
        let row = f.prepare(y)?;
        let mut inner = Complex64::zero();
        for (x, wx) in gl.mapped(w, 0.5) {
            inner += (f.eval(&row, x) + f.eval(&row, -x)) * wx;
        }
        total += inner * (ww * w / (y * y * y));
    }

    // y ≥ 1 in u = 1/y, where dμ = dx du
    let mean_row = |u: f64| -> Result<Complex64> {
        let row = f.prepare(1.0 / u)?;
        Ok(periodic_mean(q.x_nodes, 0.5, |x| f.eval(&row, x)))
    };
    let mut cusp_u = 1.0 / q.cusp_start.max(1.0);
    let mut cuts: Vec<f64> = alloc::vec![1.0];
    for b in f.breakpoints() {
        if b > 1.0 {
            cuts.push(1.0 / b);
            cusp_u = cusp_u.min(0.5 / b);
        }
    }
    let mut u = 0.5;
    while u > cusp_u {
        cuts.push(u);
        u *= 0.5;
    }
    cuts.push(cusp_u);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs());
    for pair in cuts.windows(2) {
        total += gl.try_integrate(pair[0], pair[1], mean_row)?;
    }
    let tail = tanh_sinh(0.0, cusp_u, q.tail_tol, 8, mean_row)?;
    if !tail.value.is_finite() || tail.error > q.tail_tol.max(1e-10 * tail.value.norm()) {
        return Err(Error::NoConvergence {
            what: "fd_integrate cusp tail",
            estimate: tail.error,
        });
    }
    total += tail.value;
    Ok((total, tail.error))
}

/// ∫_F f dμ over the standard fundamental domain, dμ = dx dy/y².
///
/// The error is the difference to a coarser rule plus the cusp-tail estimate. A
/// non-integrable cusp is reported as `NoConvergence`.
pub fn fd_integrate<F: FdIntegrand>(f: &F, q: &FdQuadrature) -> Result<FdResult> {
    let coarse = FdQuadrature {
        gl_nodes: (q.gl_nodes * 2 / 3).max(4),
        x_nodes: (q.x_nodes * 2 / 3).max(8),
        ..*q
    };
    let (fine, tail) = integrate_once(f, q)?;
    let (rough, _) = integrate_once(f, &coarse)?;
    if !fine.is_finite() {
        return Err(Error::NoConvergence {
            what: "fd_integrate",
            estimate: f64::INFINITY,
        });
    }
    Ok(FdResult {
        value: fine,
        error: (fine - rough).norm() + tail,
    })
}
