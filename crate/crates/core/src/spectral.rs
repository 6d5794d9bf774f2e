//! Finite wave packets of Eisenstein series and the spectral statements built on them:
//! toroidality, Besicovitch inner products, the operator D (a ↦ (1/4 + t²)a on
//! principal packets), its resolvent, the explicit trace sum and the Connes condition.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::eis::{
    apply_kernel, fd_integrate, Automorphic, EisensteinSeries, FdQuadrature, FourierRow, HPoint, KernelProfile,
    PointPairKernel, TruncatedProduct,
};
use crate::lfun::{c_scattering, completed_hecke, hecke_l, HeckeCharacter, ZeroList};
use crate::nfield::QuadraticField;
use crate::periods::{h_closed_form, period_of};
use crate::quad::GaussLegendre;
use crate::{c64, Error, Result};

/// Atoms closer than this in s are merged.
const MERGE: f64 = 1e-12;
/// Atoms count as principal (on Re s = 1/2) within this distance.
const PRINCIPAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub s: Complex64,
    pub a: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Raw,
    PlusNormalized,
}

/// Σ a_j E(·, s_j).
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    pub atoms: Vec<Atom>,
    pub symmetry: Symmetry,
}

fn merge_atoms(atoms: impl IntoIterator<Item = Atom>) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    for atom in atoms {
        match out.iter_mut().find(|b| (b.s - atom.s).norm() < MERGE) {
            Some(b) => b.a += atom.a,
            None => out.push(atom),
        }
    }
    out
}

impl WavePacket {
    /// Rejects atoms at poles of E or outside its evaluation window.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for atom in &atoms {
            EisensteinSeries::new(atom.s)?;
            if !atom.a.is_finite() {
                return Err(Error::invalid("wave packet: non-finite coefficient"));
            }
        }
        Ok(WavePacket {
            atoms: merge_atoms(atoms),
            symmetry: Symmetry::Raw,
        })
    }

    pub fn empty() -> Self {
        WavePacket {
            atoms: Vec::new(),
            symmetry: Symmetry::Raw,
        }
    }

    pub fn single(s: Complex64) -> Result<Self> {
        WavePacket::new(alloc::vec![Atom { s, a: c64(1.0, 0.0) }])
    }

    /// Packet on 1/2 + it for each (t, a).
    pub fn principal(atoms: &[(f64, Complex64)]) -> Result<Self> {
        WavePacket::new(atoms.iter().map(|&(t, a)| Atom { s: c64(0.5, t), a }).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.atoms.iter().all(|a| (a.s.re - 0.5).abs() < PRINCIPAL)
    }

    fn require_principal(&self, what: &str) -> Result<()> {
        if self.is_principal() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "{what}: packet has atoms off the critical line"
            )))
        }
    }

    /// Packet with the E(·, s_j) prepared for repeated evaluation.
    pub fn prepare(&self) -> Result<PreparedPacket> {
        let series = self
            .atoms
            .iter()
            .map(|atom| Ok((atom.a, EisensteinSeries::new(atom.s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedPacket { series })
    }
}

#[derive(Debug, Clone)]
pub struct PreparedPacket {
    series: Vec<(Complex64, EisensteinSeries)>,
}

impl PreparedPacket {
    /// Value and summed error estimate at z.
    pub fn eval(&self, z: HPoint) -> Result<(Complex64, f64)> {
        let w = z.reduce();
        let mut value = Complex64::zero();
        let mut err = 0.0;
        for (a, series) in &self.series {
            let e = series.eval_fourier(w)?;
            value += a * e.value;
            err += a.norm() * e.error_estimate;
        }
        Ok((value, err))
    }
}

impl Automorphic for PreparedPacket {
    fn row(&self, y: f64) -> Result<FourierRow> {
        let mut out = FourierRow {
            y,
            constant: Complex64::zero(),
            coeffs: Vec::new(),
            tail: 0.0,
        };
        for (a, series) in &self.series {
            let row = series.row(y)?;
            out.constant += a * row.constant;
            if out.coeffs.len() < row.coeffs.len() {
                out.coeffs.resize(row.coeffs.len(), Complex64::zero());
            }
            for (acc, c) in out.coeffs.iter_mut().zip(&row.coeffs) {
                *acc += a * c;
            }
            out.tail += a.norm() * row.tail;
        }
        Ok(out)
    }
}

/// Σ a_j E(z, s_j).
pub fn ev_packet(packet: &WavePacket, z: HPoint) -> Result<Complex64> {
    Ok(packet.prepare()?.eval(z)?.0)
}

fn reflect(packet: &WavePacket, sign: f64) -> Result<WavePacket> {
    let mut atoms = Vec::with_capacity(2 * packet.atoms.len());
    for atom in &packet.atoms {
        let reflected = 1.0 - atom.s;
        EisensteinSeries::new(reflected)?;
        // μ±(s) = (μ(s) ± c(1-s) μ(1-s))/2, atom by atom
        atoms.push(Atom {
            s: atom.s,
            a: atom.a * 0.5,
        });
        atoms.push(Atom {
            s: reflected,
            a: atom.a * c_scattering(2, atom.s)? * (0.5 * sign),
        });
    }
    Ok(WavePacket {
        atoms: merge_atoms(atoms)
            .into_iter()
            .filter(|a| a.a != Complex64::zero())
            .collect(),
        symmetry: if sign > 0.0 {
            Symmetry::PlusNormalized
        } else {
            Symmetry::Raw
        },
    })
}

/// μ⁺(s) = (μ(s) + c(1-s) μ(1-s))/2; evaluates to the same function as μ.
pub fn symmetrize(packet: &WavePacket) -> Result<WavePacket> {
    if packet.symmetry == Symmetry::PlusNormalized {
        return Ok(packet.clone());
    }
    reflect(packet, 1.0)
}

/// μ⁻(s) = (μ(s) - c(1-s) μ(1-s))/2, which evaluates to zero.
pub fn antisymmetric_part(packet: &WavePacket) -> Result<WavePacket> {
    reflect(packet, -1.0)
}

/// Largest |μ(1-s) - c(s)μ(s)| over the atoms, relative to max |a|.
pub fn symmetry_defect(packet: &WavePacket) -> Result<f64> {
    let scale = packet.atoms.iter().map(|a| a.a.norm()).fold(0.0, f64::max).max(1e-300);
    let mut worst: f64 = 0.0;
    for atom in &packet.atoms {
        let partner = packet
            .atoms
            .iter()
            .find(|b| (b.s - (1.0 - atom.s)).norm() < MERGE)
            .map(|b| b.a)
            .unwrap_or_else(Complex64::zero);
        worst = worst.max((partner - c_scattering(2, atom.s)? * atom.a).norm() / scale);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToroidalityReport {
    pub period_closed_form: Complex64,
    pub period_direct: Complex64,
    pub direct_error: f64,
    pub scale: f64,
    pub is_toroidal: bool,
    pub spectrum_in_zeros: bool,
    /// The two period computations agree within their combined error.
    pub consistent: bool,
    pub biconditional_holds: bool,
}

impl ToroidalityReport {
    pub fn relative_period(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.period_closed_form.norm().max(self.period_direct.norm()) / self.scale
        }
    }
}

fn check_zero_list(field: &QuadraticField, chi: &HeckeCharacter, zeros: &ZeroList) -> Result<()> {
    if zeros.d != field.d || zeros.chi != chi.label() {
        return Err(Error::invalid(format!(
            "zero list for ({}, {}) used with ({}, {})",
            zeros.d,
            zeros.chi,
            field.d,
            chi.label()
        )));
    }
    Ok(())
}

/// Whether 1/2 + it is a listed zero (or the conjugate of one) within `tol`.
fn at_zero(zeros: &ZeroList, s: Complex64, tol: f64) -> bool {
    if (s.re - 0.5).abs() > tol {
        return false;
    }
    let t = s.im.abs();
    if t < tol && zeros.central_value < 1e-8 {
        return true;
    }
    zeros.zeros.iter().any(|z| (z.gamma - t).abs() <= tol)
}

/// max(1, |L| at four points 0.05 away from s): a size for L near s that does not
/// collapse at its zeros.
fn l_neighbourhood(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<f64> {
    let mut m: f64 = 1.0;
    for offset in [c64(0.05, 0.0), c64(-0.05, 0.0), c64(0.0, 0.05), c64(0.0, -0.05)] {
        m = m.max(hecke_l(field, chi, s + offset)?.norm());
    }
    Ok(m)
}

/// Toroidality of a packet against a verified zero list, by the closed form
/// Σ a_j H(s_j) L(s_j) and by the direct period of the packet.
pub fn toroidality_test(
    packet: &WavePacket,
    field: &QuadraticField,
    chi: &HeckeCharacter,
    zeros: &ZeroList,
    tol: f64,
) -> Result<ToroidalityReport> {
    check_zero_list(field, chi, zeros)?;
    let mut closed = Complex64::zero();
    let mut scale = 0.0;
    for atom in &packet.atoms {
        let h = h_closed_form(field, chi, atom.s)?;
        if h.pole_flag {
            return Err(Error::pole(atom.s, None));
        }
        closed += atom.a * h.value * hecke_l(field, chi, atom.s)?;
        scale += atom.a.norm() * h.value.norm() * l_neighbourhood(field, chi, atom.s)?;
    }
    let prepared = packet.prepare()?;
    let direct = period_of(field, chi, |z| prepared.eval(z))?;
    let threshold = tol * scale;
    let is_toroidal = closed.norm() <= threshold && direct.value.norm() <= threshold;
    let spectrum_in_zeros = packet.atoms.iter().all(|a| at_zero(zeros, a.s, 1e-6));
    let consistent = (closed - direct.value).norm() <= direct.err + 1e-10 * scale.max(closed.norm()) + 1e-300;
    Ok(ToroidalityReport {
        period_closed_form: closed,
        period_direct: direct.value,
        direct_error: direct.err,
        scale,
        is_toroidal,
        spectrum_in_zeros,
        consistent,
        biconditional_holds: is_toroidal == spectrum_in_zeros,
    })
}

/// Coefficients on E(·, 1/2 + it), t ≥ 0, after rewriting E(·, 1/2 - it) = c(1/2 - it) E(·, 1/2 + it).
fn folded(packet: &WavePacket) -> Result<Vec<(f64, Complex64)>> {
    let mut out: Vec<(f64, Complex64)> = Vec::new();
    for atom in &packet.atoms {
        let t = atom.s.im;
        let (key, coeff) = if t < -MERGE {
            (-t, atom.a * c_scattering(2, atom.s)?)
        } else {
            (t.abs(), atom.a)
        };
        match out.iter_mut().find(|(u, _)| (u - key).abs() < MERGE) {
            Some((_, b)) => *b += coeff,
            None => out.push((key, coeff)),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BesicovitchInner {
    pub path_a: Complex64,
    /// Path-B sample at the largest truncation height.
    pub path_b: Complex64,
    /// Least-squares fit a + b/log m over all heights, evaluated at m = ∞. The bounded
    /// oscillating part of the truncated norm is not of this form, so this can be
    /// further from path A than the largest-height sample.
    pub path_b_extrapolated: Complex64,
    /// (m, (1/(4 log m)) ∫_F Λ^m F₁ conj(Λ^m F₂) dμ).
    pub path_b_samples: Vec<(f64, Complex64)>,
}

/// Path A only: b₀(F₁) conj b₀(F₂) + Σ_{t>0} b_t(F₁) conj b_t(F₂)/2.
pub fn besicovitch_inner_coefficients(p1: &WavePacket, p2: &WavePacket) -> Result<Complex64> {
    p1.require_principal("besicovitch_inner")?;
    p2.require_principal("besicovitch_inner")?;
    let (f1, f2) = (folded(p1)?, folded(p2)?);
    let mut acc = Complex64::zero();
    for (t, a) in &f1 {
        if let Some((_, b)) = f2.iter().find(|(u, _)| (u - t).abs() < MERGE) {
            let weight = if *t < MERGE { 1.0 } else { 0.5 };
            acc += a * b.conj() * weight;
        }
    }
    Ok(acc)
}

/// Path B sample at truncation height m.
pub fn besicovitch_truncated(p1: &WavePacket, p2: &WavePacket, m: f64, quad: &FdQuadrature) -> Result<Complex64> {
    p1.require_principal("besicovitch_inner")?;
    p2.require_principal("besicovitch_inner")?;
    let integrand = TruncatedProduct {
        first: p1.prepare()?,
        second: p2.prepare()?,
        t: m,
        conjugate: true,
    };
    Ok(fd_integrate(&integrand, quad)?.value / (4.0 * m.ln()))
}

/// Both paths; the truncation heights default to {20, 50, 100}.
pub fn besicovitch_inner(
    p1: &WavePacket,
    p2: &WavePacket,
    heights: &[f64],
    quad: &FdQuadrature,
) -> Result<BesicovitchInner> {
    let path_a = besicovitch_inner_coefficients(p1, p2)?;
    if heights.len() < 2 || heights.iter().any(|&m| !(m > 1.0)) {
        return Err(Error::invalid("besicovitch_inner: need at least two heights above 1"));
    }
    let samples = heights
        .iter()
        .map(|&m| Ok((m, besicovitch_truncated(p1, p2, m, quad)?)))
        .collect::<Result<Vec<_>>>()?;
    // least squares for v(m) = a + b/log m
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|(m, _)| 1.0 / m.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = samples.iter().map(|(_, v)| *v).sum::<Complex64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: Complex64 = xs.iter().zip(&samples).map(|(x, (_, v))| (v - my) * (x - mx)).sum();
    let slope = sxy / sxx;
    let (_, last) = *samples
        .iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .expect("at least two heights");
    Ok(BesicovitchInner {
        path_a,
        path_b: last,
        path_b_extrapolated: my - slope * mx,
        path_b_samples: samples,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumD {
    /// Sorted 1/4 + γ², with 1/4 first when epsilon is set.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<u32>,
    pub d: i64,
    pub chi: alloc::string::String,
    pub t_max: f64,
    pub epsilon: bool,
}

pub fn spectrum_d(zeros: &ZeroList, l_half_zero: bool) -> SpectrumD {
    let mut gammas = zeros.ordinates();
    gammas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut eigenvalues = Vec::with_capacity(gammas.len() + 1);
    if l_half_zero {
        eigenvalues.push(0.25);
    }
    eigenvalues.extend(gammas.iter().map(|g| 0.25 + g * g));
    SpectrumD {
        multiplicities: alloc::vec![1; eigenvalues.len()],
        eigenvalues,
        d: zeros.d,
        chi: zeros.chi.clone(),
        t_max: zeros.t_max,
        epsilon: l_half_zero,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralDecision {
    /// |Λ_K(1/2, χ)|.
    pub value: f64,
    pub epsilon: bool,
    /// The value lies in [1e-8, 1e-6], where a zero and a small value are not told apart.
    pub warning: bool,
}

pub fn central_epsilon(field: &QuadraticField, chi: &HeckeCharacter) -> Result<CentralDecision> {
    let value = completed_hecke(field, chi, c64(0.5, 0.0))?.norm();
    Ok(CentralDecision {
        value,
        epsilon: value <= 1e-6,
        warning: (1e-8..=1e-6).contains(&value),
    })
}

/// a_t ↦ (1 + 4t²)/4 · a_t.
pub fn apply_d(packet: &WavePacket) -> Result<WavePacket> {
    packet.require_principal("apply_D")?;
    Ok(WavePacket {
        atoms: packet
            .atoms
            .iter()
            .map(|a| Atom {
                s: a.s,
                a: a.a * (0.25 + a.s.im * a.s.im),
            })
            .collect(),
        symmetry: packet.symmetry,
    })
}

/// a_t ↦ a_t/(1/4 + t² - zc).
pub fn resolvent(packet: &WavePacket, zc: Complex64) -> Result<WavePacket> {
    packet.require_principal("resolvent")?;
    let mut atoms = Vec::with_capacity(packet.atoms.len());
    for a in &packet.atoms {
        let gap = c64(0.25 + a.s.im * a.s.im, 0.0) - zc;
        if gap.norm() < 1e-9 {
            return Err(Error::invalid(format!(
                "resolvent: zc = {zc} is an eigenvalue of the packet"
            )));
        }
        atoms.push(Atom { s: a.s, a: a.a / gap });
    }
    Ok(WavePacket {
        atoms,
        symmetry: packet.symmetry,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceResult {
    pub value: Complex64,
    /// ε ũ(1/2) followed by ũ(1/2 + iγ) for each listed zero.
    pub terms: Vec<Complex64>,
    pub tail_estimate: f64,
    pub symmetry_residual: f64,
}

/// Largest |ũ(1-s) - ũ(s)| (relative) over ten sample points of the strip.
pub fn test_function_symmetry(u: &impl Fn(Complex64) -> Complex64) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let s = c64(0.1 + 0.08 * k as f64, -4.5 + k as f64);
        let (a, b) = (u(s), u(1.0 - s));
        worst = worst.max((a - b).norm() / (1.0 + a.norm()));
    }
    worst
}

/// ε ũ(1/2) + Σ_γ ũ(1/2 + iγ) over the zero list, with the contribution of zeros
/// above t_max bounded through the density (1/π) log(t/2π).
pub fn trace_formula(
    zeros: &ZeroList,
    epsilon: bool,
    u: impl Fn(Complex64) -> Complex64,
    tol: f64,
) -> Result<TraceResult> {
    let symmetry_residual = test_function_symmetry(&u);
    if symmetry_residual > 1e-8 {
        return Err(Error::invalid(format!(
            "trace_formula: ũ(1-s) ≠ ũ(s) (residual {symmetry_residual:e})"
        )));
    }
    let mut terms = Vec::with_capacity(zeros.zeros.len() + 1);
    terms.push(if epsilon { u(c64(0.5, 0.0)) } else { Complex64::zero() });
    for z in &zeros.zeros {
        terms.push(u(c64(0.5, z.gamma)));
    }
    let gl = GaussLegendre::new(20);
    let mut tail = 0.0;
    let mut a = zeros.t_max;
    for _ in 0..200 {
        let b = a + 5.0;
        let piece = gl.integrate(a, b, |t| {
            let density = (t / (2.0 * PI)).ln().max(1.0) / PI;
            u(c64(0.5, t)).norm() * density
        });
        tail += piece;
        if piece <= 1e-3 * tail || piece == 0.0 {
            break;
        }
        a = b;
    }
    if tail > tol {
        return Err(Error::NoConvergence {
            what: "trace formula tail beyond the scanned window",
            estimate: tail,
        });
    }
    Ok(TraceResult {
        value: terms.iter().sum(),
        terms,
        tail_estimate: tail,
        symmetry_residual,
    })
}

/// The same sum with each ũ(1/2 + iγ) = h(γ) read off from the action of the
/// point-pair kernel on E(·, 1/2 + iγ) at z. Zeros with h(γ) below 1e-12 h(0) are skipped.
pub fn trace_formula_kernel_path<P: KernelProfile>(
    zeros: &ZeroList,
    epsilon: bool,
    kernel: &PointPairKernel<P>,
    z: HPoint,
) -> Result<Complex64> {
    let mut acc = if epsilon {
        c64(kernel.h(0.0), 0.0)
    } else {
        Complex64::zero()
    };
    let negligible = 1e-12 * kernel.h(0.0).abs();
    for zero in &zeros.zeros {
        if kernel.h(zero.gamma).abs() < negligible {
            continue;
        }
        let r = apply_kernel(kernel, z, zero.gamma)?;
        let e = r.predicted_value / kernel.h(zero.gamma);
        if e.norm() < 1e-8 {
            return Err(Error::invalid(
                "trace_formula_kernel_path: E(z, 1/2 + iγ) vanishes at z",
            ));
        }
        acc += r.applied_value / e;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnesPoint {
    pub gamma: f64,
    pub order: u32,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConnesDistribution {
    pub points: Vec<ConnesPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnesPointReport {
    pub gamma: f64,
    pub order: u32,
    pub zero_distance: f64,
    /// |d^k/dt^k L(1/2 + it, χ)| at γ relative to the local size of L, k = 0..=order.
    pub derivatives: Vec<f64>,
    pub ill_conditioned: bool,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnesReport {
    pub passes: bool,
    pub points: Vec<ConnesPointReport>,
}

fn line_derivative(f: &impl Fn(f64) -> Result<Complex64>, t: f64, k: u32, h: f64) -> Result<Complex64> {
    Ok(match k {
        0 => f(t)?,
        1 => (f(t + h)? - f(t - h)?) / (2.0 * h),
        _ => (f(t + h)? - f(t)? * 2.0 + f(t - h)?) / (h * h),
    })
}

/// L(1/2 + it, χ) ψ̂ = 0 for ψ̂ = Σ c δ^{(k)}_γ: each support point must sit on a
/// listed zero and L must vanish there to the order of the mass. The derivative
/// test is a finite-difference heuristic for multiple zeros.
pub fn connes_test(
    dist: &ConnesDistribution,
    field: &QuadraticField,
    chi: &HeckeCharacter,
    zeros: &ZeroList,
    tol: f64,
) -> Result<ConnesReport> {
    check_zero_list(field, chi, zeros)?;
    let l = |t: f64| hecke_l(field, chi, c64(0.5, t));
    let mut points = Vec::with_capacity(dist.points.len());
    for p in &dist.points {
        if p.order > 2 {
            return Err(Error::invalid(format!("connes_test: order {} > 2", p.order)));
        }
        if p.coeff == Complex64::zero() {
            continue;
        }
        let zero_distance = zeros
            .zeros
            .iter()
            .map(|z| (z.gamma - p.gamma.abs()).abs())
            .fold(f64::INFINITY, f64::min);
        let scale = l_neighbourhood(field, chi, c64(0.5, p.gamma))?;
        let mut derivatives = Vec::with_capacity(p.order as usize + 1);
        let mut ill_conditioned = false;
        for k in 0..=p.order {
            let h = if k == 2 { 1e-3 } else { 1e-4 };
            let coarse = line_derivative(&l, p.gamma, k, 2.0 * h)?;
            let fine = line_derivative(&l, p.gamma, k, h)?;
            // O(h²) schemes: the step-halving change should be a quarter of the error
            if k > 0 && (coarse - fine).norm() > 0.1 * fine.norm() + tol * scale {
                ill_conditioned = true;
            }
            derivatives.push(fine.norm() / scale);
        }
        let passes = zero_distance <= tol && derivatives.iter().all(|&v| v <= tol) && !ill_conditioned;
        points.push(ConnesPointReport {
            gamma: p.gamma,
            order: p.order,
            zero_distance,
            derivatives,
            ill_conditioned,
            passes,
        });
    }
    Ok(ConnesReport {
        passes: points.iter().all(|p| p.passes),
        points,
    })
}
