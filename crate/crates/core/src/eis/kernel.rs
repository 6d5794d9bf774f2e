use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::{EisensteinSeries, HPoint};
use crate::quad::GaussLegendre;
use crate::{c64, Error, Result};

/// Radial profile k(u) of a point-pair invariant, u = sinh²(ρ/2) with ρ the hyperbolic distance.
pub trait KernelProfile {
    fn k(&self, u: f64) -> f64;
    /// Distance beyond which the profile is negligible.
    fn support(&self) -> f64;
}

/// The profile whose Selberg transform is h(t) = exp(-τt²), i.e. g(r) = exp(-r²/4τ)/√(4πτ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatProfile {
    pub tau: f64,
}

impl HeatProfile {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::invalid("heat profile: τ must lie in (0, 1]"));
        }
        Ok(HeatProfile { tau })
    }

    pub fn g(&self, r: f64) -> f64 {
        (-r * r / (4.0 * self.tau)).exp() / (4.0 * PI * self.tau).sqrt()
    }

    pub fn h_closed(&self, t: f64) -> f64 {
        (-self.tau * t * t).exp()
    }

    /// Q'(v) where Q(sinh²(r/2)) = g(r)/2.
    fn q_prime(&self, v: f64) -> f64 {
        let a = v.sqrt();
        // r/√(v(1+v)) with r = 2 asinh √v
        let ratio = if a < 1e-8 {
            2.0
        } else {
            2.0 * a.asinh() / (a * (1.0 + v).sqrt())
        };
        -self.g(2.0 * a.asinh()) * ratio / (4.0 * self.tau)
    }
}

fn sinh_half_sq(r: f64) -> f64 {
    let s = (0.5 * r).sinh();
    s * s
}

impl KernelProfile for HeatProfile {
    fn k(&self, u: f64) -> f64 {
        let v_max = sinh_half_sq(self.support());
        if u >= v_max {
            return 0.0;
        }
        let w_max = (v_max - u).sqrt();
        let gl = GaussLegendre::new(NODES);
        let panels = PANELS;
        let mut acc = 0.0;
        for p in 0..panels {
            let (a, b) = (w_max * p as f64 / panels as f64, w_max * (p + 1) as f64 / panels as f64);
            acc += gl.integrate(a, b, |w| self.q_prime(u + w * w));
        }
        -2.0 / PI * acc
    }

    fn support(&self) -> f64 {
        // g(R)/g(0) = e^{-46}
        (4.0 * self.tau * 46.0).sqrt()
    }
}

/// A point-pair invariant k(u(z, w)) with its Selberg transform h(t), computed
/// numerically through k → Q → g → h and stored as weighted samples of g.
#[derive(Debug, Clone)]
pub struct PointPairKernel<P> {
    pub profile: P,
    pub scale: f64,
    g_samples: Vec<(f64, f64)>,
}

const PANELS: usize = 6;
const NODES: usize = 16;

/// Builds the kernel λ·k and tabulates its transform.
pub fn selberg_transform<P: KernelProfile>(profile: P, scale: f64) -> Result<PointPairKernel<P>> {
    let radius = profile.support();
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid("point-pair kernel: support must be positive and finite"));
    }
    let u_max = sinh_half_sq(radius);
    let gl = GaussLegendre::new(NODES);
    let q = |v: f64| -> f64 {
        if v >= u_max {
            return 0.0;
        }
        let w_max = (u_max - v).sqrt();
        let mut acc = 0.0;
        for p in 0..PANELS {
            let a = w_max * p as f64 / PANELS as f64;
            let b = w_max * (p + 1) as f64 / PANELS as f64;
            acc += gl.integrate(a, b, |w| 2.0 * profile.k(v + w * w));
        }
        acc
    };
    let mut g_samples = Vec::with_capacity(PANELS * NODES);
    for p in 0..PANELS {
        let a = radius * p as f64 / PANELS as f64;
        let b = radius * (p + 1) as f64 / PANELS as f64;
        for (r, w) in gl.mapped(a, b) {
            g_samples.push((r, w * 2.0 * q(sinh_half_sq(r))));
        }
    }
    Ok(PointPairKernel {
        profile,
        scale,
        g_samples,
    })
}

impl<P: KernelProfile> PointPairKernel<P> {
    pub fn k(&self, u: f64) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        self.scale * self.profile.k(u)
    }

    pub fn support(&self) -> f64 {
        self.profile.support()
    }

    /// g(r), the Fourier partner of h.
    pub fn g_weighted_samples(&self) -> &[(f64, f64)] {
        &self.g_samples
    }

    /// h(t) = ∫ g(r) e^{irt} dr.
    pub fn h(&self, t: f64) -> f64 {
        let sum: f64 = self.g_samples.iter().map(|(r, wg)| wg * (r * t).cos()).sum();
        2.0 * self.scale * sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelApplication {
    pub applied_value: Complex64,
    pub predicted_value: Complex64,
    pub relative_deviation: f64,
}

/// ∫_H k(u(z, w)) E(w, 1/2 + it) dμ(w) in geodesic polar coordinates about z,
/// compared with h(t) E(z, 1/2 + it).
pub fn apply_kernel<P: KernelProfile>(kernel: &PointPairKernel<P>, z: HPoint, t: f64) -> Result<KernelApplication> {
    let series = EisensteinSeries::new(c64(0.5, t))?;
    let radius = kernel.support();
    let gl = GaussLegendre::new(16);
    let panels = 10;
    let zc = z.to_complex();
    // rings whose weight is below 1e-15 of the centre contribute nothing measurable
    let floor = 1e-15 * kernel.k(0.0).abs();
    let mut applied = Complex64::zero();
    for p in 0..panels {
        let a = radius * p as f64 / panels as f64;
        let b = radius * (p + 1) as f64 / panels as f64;
        for (rho, w) in gl.mapped(a, b) {
            let k = kernel.k(sinh_half_sq(rho));
            if k == 0.0 || (k * rho.sinh()).abs() < floor {
                continue;
            }
            // enough nodes to resolve E along a circle of circumference 2π sinh ρ
            let n_theta = (16.0 + 4.0 * rho.sinh() * (t.abs() + 4.0)).ceil() as usize;
            let r = (0.5 * rho).tanh();
            let mut ring = Complex64::zero();
            for j in 0..n_theta {
                let theta = 2.0 * PI * (j as f64 + 0.5) / n_theta as f64;
                let zeta = Complex64::from_polar(r, theta);
                let pt = c64(zc.re, 0.0) + c64(0.0, zc.im) * (1.0 + zeta) / (1.0 - zeta);
                ring += series.eval(HPoint::from_complex(pt)?)?.value;
            }
            applied += ring * (2.0 * PI / n_theta as f64) * (w * k * rho.sinh());
        }
    }
    let predicted = series.eval(z)?.value * kernel.h(t);
    let scale = predicted.norm().max(1e-300);
    Ok(KernelApplication {
        applied_value: applied,
        predicted_value: predicted,
        relative_deviation: if predicted.norm() == 0.0 && applied.norm() == 0.0 {
            0.0
        } else {
            (applied - predicted).norm() / scale
        },
    })
}
