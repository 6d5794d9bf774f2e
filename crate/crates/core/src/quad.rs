//! Quadrature rules shared by the numerical modules.
//!
//! Three families are used: Gauss-Legendre panels for smooth integrands on finite
//! intervals, tanh-sinh for integrands with endpoint singularities or unknown decay, and
//! the trapezoid rule for periodic integrands (closed geodesics, contour integrals,
//! x-averages over the cusp), where it converges geometrically.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::Result;

/// Values a quadrature rule can accumulate.
pub trait Integrand: Copy + Zero + Add<Output = Self> + Mul<f64, Output = Self> {
    fn norm(self) -> f64;
}

impl Integrand for f64 {
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
}

/// Gauss-Legendre rule with `n` nodes on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = ((i as f64 + 0.75) / (nf + 0.5) * PI).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<T: Integrand>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T {
        self.mapped(a, b).fold(T::zero(), |acc, (x, w)| acc + f(x) * w)
    }

    pub fn try_integrate<T: Integrand>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> Result<T>) -> Result<T> {
        let mut acc = T::zero();
        for (x, w) in self.mapped(a, b) {
            acc = acc + f(x)? * w;
        }
        Ok(acc)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive quadrature: value plus an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

/// Tanh-sinh (double exponential) quadrature on [a, b], refined by halving the step
/// until two successive levels agree to `tol` (absolute) or `max_level` is reached.
pub fn tanh_sinh<T: Integrand>(
    a: f64,
    b: f64,
    tol: f64,
    max_level: u32,
    mut f: impl FnMut(f64) -> Result<T>,
) -> Result<Estimate<T>> {
    let half = 0.5 * (b - a);
    let t_max = 4.5;
    let mut eval = |t: f64| -> Result<T> {
        let u = 0.5 * PI * t.sinh();
        let cu = u.cosh();
        let w = 0.5 * PI * t.cosh() / (cu * cu);
        // distance to the nearest endpoint, computed without cancellation
        let d = half / (u.abs().exp() * cu);
        let x = if t >= 0.0 { b - d } else { a + d };
        if w * half == 0.0 || x <= a || x >= b {
            return Ok(T::zero());
        }
        Ok(f(x)? * (w * half))
    };

    let mut h = 1.0;
    let mut sum = eval(0.0)?;
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum = sum + eval(t)? + eval(-t)?;
        k += 1;
    }
    let mut value = sum * h;
    let mut error = f64::INFINITY;
    for _level in 1..=max_level {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            sum = sum + eval(t)? + eval(-t)?;
            k += 2;
        }
        let next = sum * h;
        error = (next + value * -1.0).norm();
        value = next;
        if error <= tol {
            break;
        }
    }
    Ok(Estimate { value, error })
}

/// Mean of a periodic function over one period, sampled at `n` equispaced points
/// starting at `phase` (in units of the period).
pub fn periodic_mean<T: Integrand>(n: usize, phase: f64, mut f: impl FnMut(f64) -> T) -> T {
    let step = 1.0 / n as f64;
    let mut acc = T::zero();
    for k in 0..n {
        acc = acc + f((k as f64 + phase) * step);
    }
    acc * step
}

/// Residue `(1/2πi) ∮ f(s) ds` on the circle of radius `r` about `center`.
pub fn contour_residue(
    center: Complex64,
    r: f64,
    n: usize,
    mut f: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    for k in 0..n {
        let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        let e = Complex64::from_polar(1.0, theta);
        acc += f(center + e * r)? * e * r;
    }
    Ok(acc / n as f64)
}

/// Value at `center` reconstructed from the circle mean (Cauchy / mean value).
/// Fills removable singularities.
pub fn contour_mean(
    center: Complex64,
    r: f64,
    n: usize,
    mut f: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    for k in 0..n {
        let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        acc += f(center + Complex64::from_polar(r, theta))?;
    }
    Ok(acc / n as f64)
}

/// First derivative at `center` by the Cauchy integral formula.
pub fn contour_derivative(
    center: Complex64,
    r: f64,
    n: usize,
    mut f: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    for k in 0..n {
        let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        let e = Complex64::from_polar(1.0, theta);
        acc += f(center + e * r)? / e;
    }
    Ok(acc / (n as f64 * r))
}
