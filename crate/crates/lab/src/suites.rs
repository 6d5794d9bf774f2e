use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use toroidal_core::eis::{
    apply_kernel, eisenstein, eisenstein_oracle, fd_integrate, growth_exponent, maass_selberg_check, selberg_transform,
    FdQuadrature, HPoint, HeatProfile, PointFn,
};
use toroidal_core::lfun::{c_scattering, find_zeros, gamma_poly_exact, HeckeCharacter, ZeroList};
use toroidal_core::nfield::make_field;
use toroidal_core::periods::{closed_form_period, eisenstein_period, siegel_identity_check};
use toroidal_core::special::lambda_completed;
use toroidal_core::spectral::{
    besicovitch_inner, central_epsilon, connes_test, test_function_symmetry, toroidality_test, trace_formula,
    trace_formula_kernel_path, ConnesDistribution, ConnesPoint, WavePacket,
};
use toroidal_core::{Complex64, Result};

use crate::report::{cx, Check, ZeroListRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lambda,
    Scattering,
    GammaPoly,
    Eisenstein,
    Residue,
    Siegel,
    Geodesic,
    Zeros,
    Toroidality,
    MaassSelberg,
    Besicovitch,
    Kernel,
    Trace,
    Connes,
    Determinism,
    All,
}

impl Suite {
    /// The numbered suites in order; `all` is not among them.
    pub const NUMBERED: [Suite; 15] = [
        Suite::Lambda,
        Suite::Scattering,
        Suite::GammaPoly,
        Suite::Eisenstein,
        Suite::Residue,
        Suite::Siegel,
        Suite::Geodesic,
        Suite::Zeros,
        Suite::Toroidality,
        Suite::MaassSelberg,
        Suite::Besicovitch,
        Suite::Kernel,
        Suite::Trace,
        Suite::Connes,
        Suite::Determinism,
    ];

    pub fn number(self) -> Option<usize> {
        Suite::NUMBERED.iter().position(|&s| s == self).map(|i| i + 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lambda => "lambda",
            Suite::Scattering => "scattering",
            Suite::GammaPoly => "gamma-poly",
            Suite::Eisenstein => "eisenstein",
            Suite::Residue => "residue",
            Suite::Siegel => "siegel",
            Suite::Geodesic => "geodesic",
            Suite::Zeros => "zeros",
            Suite::Toroidality => "toroidality",
            Suite::MaassSelberg => "maass-selberg",
            Suite::Besicovitch => "besicovitch",
            Suite::Kernel => "kernel",
            Suite::Trace => "trace",
            Suite::Connes => "connes",
            Suite::Determinism => "determinism",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub data: Value,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pt(x: f64, y: f64) -> Result<HPoint> {
    HPoint::new(x, y)
}

fn max_of(v: impl IntoIterator<Item = f64>) -> f64 {
    // NaN must not disappear into the maximum
    v.into_iter()
        .fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

/// Scans are shared between suites and memoized per (d, χ, t_max).
pub fn cached_zeros(d: i64, chi: &HeckeCharacter, t_max: f64) -> Result<Arc<ZeroList>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, String, u64), Arc<ZeroList>>>> = OnceLock::new();
    let key = (d, chi.label(), t_max.to_bits());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(z) = cache.lock().unwrap().get(&key) {
        return Ok(z.clone());
    }
    let field = make_field(d)?;
    let zeros = Arc::new(find_zeros(&field, chi, t_max, 1e-12)?);
    cache.lock().unwrap().insert(key, zeros.clone());
    Ok(zeros)
}

pub fn run_suite(suite: Suite, d: Option<i64>) -> Result<SuiteOutcome> {
    match suite {
        Suite::Lambda => lambda(),
        Suite::Scattering => scattering(),
        Suite::GammaPoly => gamma_poly(),
        Suite::Eisenstein => eisenstein_suite(),
        Suite::Residue => residue(),
        Suite::Siegel => siegel(d),
        Suite::Geodesic => geodesic(d.unwrap_or(5)),
        Suite::Zeros => zeros(d.unwrap_or(-4)),
        Suite::Toroidality => toroidality(d.unwrap_or(-4)),
        Suite::MaassSelberg => maass_selberg(),
        Suite::Besicovitch => besicovitch(),
        Suite::Kernel => kernel(),
        Suite::Trace => trace(d.unwrap_or(-4)),
        Suite::Connes => connes(d.unwrap_or(-4)),
        Suite::Determinism => determinism(d),
        Suite::All => {
            let mut data = serde_json::Map::new();
            let mut checks = Vec::new();
            for s in Suite::NUMBERED {
                let out = run_suite(s, d)?;
                data.insert(s.name().into(), out.data);
                checks.extend(out.checks.into_iter().map(|mut c| {
                    c.identity = format!("[{}] {}", s.name(), c.identity);
                    c
                }));
            }
            Ok(SuiteOutcome {
                data: Value::Object(data),
                checks,
            })
        }
    }
}

fn lambda() -> Result<SuiteOutcome> {
    let at2 = lambda_completed(c(2.0, 0.0))?;
    let grid: Vec<Complex64> = (0..100)
        .map(|k| c(0.05 + 0.1 * (k % 10) as f64, -22.7 + 5.0 * (k / 10) as f64))
        .collect();
    let residuals = grid
        .par_iter()
        .map(|&s| {
            let a = lambda_completed(s)?;
            let b = lambda_completed(1.0 - s)?;
            Ok((a - b).norm() / a.norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = max_of(residuals.iter().copied());
    Ok(SuiteOutcome {
        data: json!({ "lambda_2": cx(at2), "fe_grid_points": grid.len(), "fe_worst_relative": worst }),
        checks: vec![
            Check::at_most("Λ(2) = π/6", (at2 - PI / 6.0).norm(), 1e-12),
            Check::at_most("Λ(s) = Λ(1-s), relative, 100 strip points", worst, 1e-10),
        ],
    })
}

fn contour_residue(f: impl Fn(Complex64) -> Result<Complex64> + Sync, at: Complex64, r: f64) -> Result<Complex64> {
    let n = 64;
    let terms = (0..n)
        .into_par_iter()
        .map(|k| {
            let e = Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / n as f64);
            Ok(f(at + e * r)? * e * r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.iter().sum::<Complex64>() / n as f64)
}

fn scattering() -> Result<SuiteOutcome> {
    let grid: Vec<Complex64> = (0..50)
        .map(|k| c(-0.9 + 0.3 * (k % 10) as f64 + 0.013, -20.0 + 9.7 * (k / 10) as f64))
        .collect();
    let residuals = grid
        .par_iter()
        .map(|&s| Ok((c_scattering(2, s)? * c_scattering(2, 1.0 - s)? - 1.0).norm()))
        .collect::<Result<Vec<f64>>>()?;
    let worst = max_of(residuals.iter().copied());
    let residue = contour_residue(|s| c_scattering(2, s), c(1.0, 0.0), 0.01)?;
    let stated = -3.0 / PI;
    Ok(SuiteOutcome {
        data: json!({
            "fe_points": grid.len(),
            "fe_worst": worst,
            "residue": cx(residue),
            "residue_stated": stated,
        }),
        checks: vec![
            Check::at_most("c(s) c(1-s) = 1 at 50 points", worst, 1e-10),
            Check::at_most("res_{s=1} c(s) = -3/π", (residue - stated).norm(), 1e-7),
        ],
    })
}

fn gamma_poly() -> Result<SuiteOutcome> {
    type Q = Ratio<i128>;
    let samples: Vec<Q> = [
        (-3, 2),
        (-1, 3),
        (0, 1),
        (1, 7),
        (1, 2),
        (2, 3),
        (5, 4),
        (3, 1),
        (11, 5),
    ]
    .iter()
    .map(|&(p, q)| Q::new(p, q))
    .collect();
    let one = Q::from_integer(1);
    let mut mismatches = [0usize; 3];
    let mut evaluated = 0usize;
    for n in 3..=8u32 {
        for &s in &samples {
            let base = s * (one - s);
            let expected = [
                Q::from_integer(0),
                base,
                base * (Q::from_integer(n as i128 - 2) * s + one),
            ];
            for h in 1..=3u32 {
                evaluated += 1;
                if gamma_poly_exact(n, h, s)? != expected[h as usize - 1] {
                    mismatches[h as usize - 1] += 1;
                }
            }
        }
    }
    for &s in &samples {
        evaluated += 2;
        if gamma_poly_exact(2, 1, s)? != Q::from_integer(0) {
            mismatches[0] += 1;
        }
        if gamma_poly_exact(2, 2, s)? != s * (one - s) {
            mismatches[1] += 1;
        }
    }
    Ok(SuiteOutcome {
        data: json!({ "evaluations": evaluated, "mismatches": mismatches }),
        checks: vec![
            Check::equals("γ₁ ≡ 0, exact", mismatches[0] as f64, 0.0),
            Check::equals("γ₂ = s(1-s), exact", mismatches[1] as f64, 0.0),
            Check::equals("γ₃ = s(1-s)((n-2)s+1), exact", mismatches[2] as f64, 0.0),
        ],
    })
}

fn eisenstein_suite() -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let random: Vec<(f64, f64, f64)> = (0..20)
        .map(|_| {
            (
                rng.gen_range(-0.5..0.5),
                rng.gen_range(0.9..2.5),
                rng.gen_range(-8.0..8.0),
            )
        })
        .collect();
    let oracle = random
        .par_iter()
        .map(|&(x, y, t)| {
            let z = pt(x, y)?;
            let s = c(2.0, t);
            let e = eisenstein(z, s)?.value;
            let o = eisenstein_oracle(z, s, 2000.0)?;
            Ok((e - o.value).norm() / o.value.norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let fe_cases: Vec<(f64, f64, Complex64)> = (0..50)
        .map(|i| {
            let s = c(0.05 + 0.9 * (i % 10) as f64 / 9.0, -12.0 + 6.0 * (i / 10) as f64 + 0.37);
            (0.11 * i as f64 - 2.0, 0.9 + 0.05 * i as f64, s)
        })
        .collect();
    let fe = fe_cases
        .par_iter()
        .map(|&(x, y, s)| {
            let z = pt(x, y)?;
            let lhs = eisenstein(z, s)?.value;
            let rhs = c_scattering(2, s)? * eisenstein(z, 1.0 - s)?.value;
            Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
        })
        .collect::<Result<Vec<f64>>>()?;
    let special_points = [(0.0, 1.0), (0.4, 0.95), (-0.2, 3.0), (0.1, 7.0), (0.37, 1.21)];
    let special = special_points
        .par_iter()
        .map(|&(x, y)| {
            let z = pt(x, y)?;
            Ok((
                (eisenstein(z, c(0.0, 0.0))?.value - 1.0).norm(),
                eisenstein(z, c(0.5, 0.0))?.value.norm(),
            ))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (w_oracle, w_fe) = (max_of(oracle.iter().copied()), max_of(fe.iter().copied()));
    let w0 = max_of(special.iter().map(|p| p.0));
    let w_half = max_of(special.iter().map(|p| p.1));
    Ok(SuiteOutcome {
        data: json!({
            "oracle_points": random.iter().map(|&(x, y, t)| [x, y, 2.0, t]).collect::<Vec<_>>(),
            "oracle_relative_errors": oracle,
            "fe_worst": w_fe,
            "special_worst": [w0, w_half],
        }),
        checks: vec![
            Check::at_most(
                "Fourier expansion = coprime lattice sum at Re s = 2, relative, 20 points",
                w_oracle,
                1e-8,
            ),
            Check::at_most("E(z,s) = c(s) E(z,1-s) at 50 strip points", w_fe, 1e-8),
            Check::at_most("E(z,0) = 1", w0, 1e-8),
            Check::at_most("E(z,1/2) = 0", w_half, 1e-8),
        ],
    })
}

fn residue() -> Result<SuiteOutcome> {
    let mut residues = Vec::new();
    for (x, y) in [(0.0, 1.0), (0.3, 1.7)] {
        let z = pt(x, y)?;
        residues.push(contour_residue(|s| Ok(eisenstein(z, s)?.value), c(1.0, 0.0), 0.1)?);
    }
    let worst = max_of(residues.iter().map(|r| (r - 3.0 / PI).norm()));
    Ok(SuiteOutcome {
        data: json!({ "residues": residues.iter().map(|&r| cx(r)).collect::<Vec<_>>() }),
        checks: vec![Check::at_most("res_{s=1} E(z,s) = 3/π at z = i, 0.3+1.7i", worst, 1e-6)],
    })
}

fn siegel(d: Option<i64>) -> Result<SuiteOutcome> {
    let cases: Vec<(i64, f64)> = match d {
        Some(d) => vec![(d, if make_field(d)?.h > 1 { 1e-5 } else { 1e-6 })],
        None => vec![(-4, 1e-6), (-3, 1e-6), (-20, 1e-5)],
    };
    let s_values = [c(0.75, 0.0), c(2.0, 0.0), c(0.5, 3.0)];
    let mut jobs = Vec::new();
    for &(d, bound) in &cases {
        let h = make_field(d)?.h;
        for class in 0..h {
            for &s in &s_values {
                jobs.push((d, class, s, bound));
            }
        }
    }
    let results = jobs
        .par_iter()
        .map(|&(d, class, s, _)| siegel_identity_check(&make_field(d)?, s, class))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (&(d, class, s, bound), r) in jobs.iter().zip(&results) {
        rows.push(
            json!({ "d": d, "class": class, "s": cx(s), "lhs": cx(r.lhs), "rhs": cx(r.rhs), "rel_error": r.rel_error }),
        );
        checks.push(Check::at_most(
            format!("Siegel identity d = {d}, class {class}, s = {s}"),
            r.rel_error,
            bound,
        ));
    }
    Ok(SuiteOutcome {
        data: Value::Array(rows),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantFit {
    pub constant: [f64; 2],
    pub predicted: f64,
    pub spread: f64,
    pub calibration_error: f64,
}

/// Periods of E(·, s) against the closed form over a grid of s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodTable {
    pub d: i64,
    pub chi: String,
    pub s_grid: Vec<[f64; 2]>,
    pub lhs: Vec<[f64; 2]>,
    pub lhs_errors: Vec<f64>,
    pub rhs: Vec<[f64; 2]>,
    pub rel_errors: Vec<f64>,
    pub constant_fit: ConstantFit,
}

pub fn period_table(d: i64, chi: &HeckeCharacter, grid: &[Complex64]) -> Result<PeriodTable> {
    let field = make_field(d)?;
    let ck2 = 2.0 * field.ck_constant();
    let rows = grid
        .par_iter()
        .map(|&s| {
            Ok((
                eisenstein_period(&field, chi, s)?,
                closed_form_period(&field, chi, s)?.value,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    // closed already carries the factor 1/(2c_K); the ratio to L·Γ·|d|^{s/2}/Λ(2s) is fitted
    let ratios: Vec<Complex64> = rows.iter().map(|(p, closed)| p.value / (closed * ck2)).collect();
    let constant = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let spread = max_of(ratios.iter().map(|r| (r - constant).norm() / constant.norm()));
    Ok(PeriodTable {
        d,
        chi: chi.label(),
        s_grid: grid.iter().map(|&s| cx(s)).collect(),
        lhs: rows.iter().map(|(p, _)| cx(p.value)).collect(),
        lhs_errors: rows.iter().map(|(p, _)| p.err).collect(),
        rhs: rows.iter().map(|(_, closed)| cx(*closed)).collect(),
        rel_errors: rows
            .iter()
            .map(|(p, closed)| (p.value - closed).norm() / closed.norm())
            .collect(),
        constant_fit: ConstantFit {
            constant: cx(constant),
            predicted: 0.5 / field.ck_constant(),
            spread,
            calibration_error: (constant * ck2 - 1.0).norm(),
        },
    })
}

pub fn strip_grid() -> Vec<Complex64> {
    (0..10)
        .map(|k| c(0.1 + 0.08 * k as f64, -9.0 + 2.0 * k as f64))
        .collect()
}

fn geodesic(d: i64) -> Result<SuiteOutcome> {
    let field = make_field(d)?;
    let table = period_table(d, &HeckeCharacter::trivial(&field), &strip_grid())?;
    let fit = table.constant_fit.clone();
    Ok(SuiteOutcome {
        data: serde_json::to_value(table).expect("table serializes"),
        checks: vec![
            Check::at_most(
                format!("period / closed form constant over 10 strip points, d = {d}"),
                fit.spread,
                1e-5,
            ),
            Check::at_most("fitted constant = 1/(2 c_K)", fit.calibration_error, 1e-4),
        ],
    })
}

fn zeros(d: i64) -> Result<SuiteOutcome> {
    let field = make_field(d)?;
    let chi = HeckeCharacter::trivial(&field);
    let list = cached_zeros(d, &chi, 15.0)?;
    let worst = max_of(list.zeros.iter().map(|z| z.residual));
    let mut checks = vec![
        Check::at_most("|L(1/2 + iγ)| at every ordinate", worst, 1e-8),
        Check::equals(
            "argument-principle count = ordinates found",
            list.zeros.len() as f64,
            list.audit_count as f64,
        ),
    ];
    if d == -4 {
        checks.push(Check::equals("ordinates on (0, 15]", list.zeros.len() as f64, 4.0));
        checks.push(Check::equals(
            "argument-principle count on (0, 15]",
            list.audit_count as f64,
            4.0,
        ));
    }
    Ok(SuiteOutcome {
        data: serde_json::to_value(ZeroListRecord::from(&*list)).expect("zero list serializes"),
        checks,
    })
}

fn toroidality(d: i64) -> Result<SuiteOutcome> {
    let field = make_field(d)?;
    let chi = HeckeCharacter::trivial(&field);
    let zeros = cached_zeros(d, &chi, 30.0)?;
    let g = zeros.ordinates();
    if g.is_empty() {
        return Err(toroidal_core::Error::Unsupported(format!(
            "no zeros below 30 for d = {d}"
        )));
    }
    let coeff = |i: usize, j: usize| c(((i * 7 + j * 3) as f64).sin() + 1.5, ((i * 5 + j) as f64).cos());
    let mut on = Vec::new();
    let mut off = vec![WavePacket::single(c(0.75, 0.0))?];
    for i in 0..20 {
        let mut atoms: Vec<(f64, Complex64)> = (0..3).map(|j| (g[(i + 2 * j) % g.len()], coeff(i, j))).collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        atoms.dedup_by(|a, b| a.0 == b.0);
        on.push(WavePacket::principal(&atoms)?);
        atoms.push((g[i % g.len()] + 0.37 + 0.05 * i as f64, coeff(i, 9)));
        off.push(WavePacket::principal(&atoms)?);
    }
    let run = |ps: &[WavePacket]| {
        ps.par_iter()
            .map(|p| toroidality_test(p, &field, &chi, &zeros, 1e-6))
            .collect::<Result<Vec<_>>>()
    };
    let on_reports = run(&on)?;
    let off_reports = run(&off)?;
    let rel = |p: Complex64, scale: f64| if scale == 0.0 { 0.0 } else { p.norm() / scale };
    let worst_closed = max_of(on_reports.iter().map(|r| rel(r.period_closed_form, r.scale)));
    let worst_direct = max_of(on_reports.iter().map(|r| rel(r.period_direct, r.scale)));
    let control = off_reports[0].relative_period();
    let best_off = off_reports
        .iter()
        .map(|r| r.relative_period())
        .fold(f64::INFINITY, f64::min);
    let margin = best_off / worst_closed.max(worst_direct).max(f64::MIN_POSITIVE);
    let all_hold = on_reports
        .iter()
        .chain(&off_reports)
        .all(|r| r.biconditional_holds && r.consistent);
    let summary = |r: &toroidal_core::spectral::ToroidalityReport| {
        json!({
            "period_closed_form": cx(r.period_closed_form),
            "period_direct": cx(r.period_direct),
            "direct_error": r.direct_error,
            "scale": r.scale,
            "is_toroidal": r.is_toroidal,
            "spectrum_in_zeros": r.spectrum_in_zeros,
        })
    };
    Ok(SuiteOutcome {
        data: json!({
            "d": d,
            "zero_packets": on_reports.iter().map(summary).collect::<Vec<_>>(),
            "off_packets": off_reports.iter().map(summary).collect::<Vec<_>>(),
            "margin": margin,
        }),
        checks: vec![
            Check::at_most("|Π|/scale for zero-supported packets, closed form", worst_closed, 1e-6),
            Check::at_most(
                "|Π|/scale for zero-supported packets, direct period",
                worst_direct,
                1e-6,
            ),
            Check::at_least("|Π|/scale for the control packet at s = 0.75", control, 1e-2),
            Check::at_least("margin min(off) / max(on)", margin, 1e3),
            Check::holds("toroidal ⇔ spectrum in zeros, paths consistent, 41 packets", all_hold),
        ],
    })
}

fn maass_selberg() -> Result<SuiteOutcome> {
    let q = FdQuadrature::default();
    let t = 10.0;
    let step = PointFn::new(move |_, y| c(if y > t { 0.0 } else { 1.0 }, 0.0)).with_breakpoints(&[t]);
    let calibration = fd_integrate(&step, &q)?;
    let cal_err = (calibration.value - (PI / 3.0 - 1.0 / t)).norm();
    let (s1, s2) = (c(0.5, 3.0), c(0.5, -5.0));
    let heights = [1e2, 1e3, 1e4, 1e5];
    let (off, diagonal) = rayon::join(
        || maass_selberg_check(s1, s2, 50.0, &q),
        || {
            heights
                .par_iter()
                .map(|&t| Ok(maass_selberg_check(c(0.7, 0.0), c(0.7, 0.0), t, &q)?.lhs.re))
                .collect::<Result<Vec<f64>>>()
        },
    );
    let (off, diagonal) = (off?, diagonal?);
    let (p, spread) = growth_exponent(10.0, &diagonal)?;
    Ok(SuiteOutcome {
        data: json!({
            "calibration": { "value": cx(calibration.value), "error": calibration.error },
            "off_diagonal": { "s1": cx(s1), "s2": cx(s2), "t": 50.0, "lhs": cx(off.lhs), "lhs_error": off.lhs_error, "rhs": cx(off.rhs), "rel_error": off.rel_error },
            "diagonal": { "heights": heights, "values": diagonal, "exponent": p, "spread": spread },
        }),
        checks: vec![
            Check::at_most("∫|Λ^T 1|² = π/3 - 1/T at T = 10", cal_err, 1e-8),
            Check::at_most(
                "Maass-Selberg, s = 1/2+3i vs 1/2+5i at T = 50, relative",
                off.rel_error,
                0.02,
            ),
            Check::at_most(
                "|growth exponent - 0.4| on the Re s = 0.7 diagonal",
                (p - 0.4).abs(),
                0.02,
            ),
        ],
    })
}

fn besicovitch() -> Result<SuiteOutcome> {
    let q = FdQuadrature::default();
    let heights = [20.0, 50.0, 100.0];
    let a5 = WavePacket::principal(&[(5.0, c(1.0, 0.0))])?;
    let a3 = WavePacket::principal(&[(3.0, c(1.0, 0.0))])?;
    let (own, cross) = rayon::join(
        || besicovitch_inner(&a5, &a5, &heights, &q),
        || besicovitch_inner(&a3, &a5, &heights, &q),
    );
    let (own, cross) = (own?, cross?);
    let samples = |b: &toroidal_core::spectral::BesicovitchInner| {
        b.path_b_samples
            .iter()
            .map(|&(m, v)| json!({ "m": m, "value": cx(v) }))
            .collect::<Vec<_>>()
    };
    Ok(SuiteOutcome {
        data: json!({
            "single": { "t": 5.0, "path_a": cx(own.path_a), "path_b": cx(own.path_b), "extrapolated": cx(own.path_b_extrapolated), "samples": samples(&own) },
            "cross": { "t": [3.0, 5.0], "path_a": cx(cross.path_a), "path_b": cx(cross.path_b), "samples": samples(&cross) },
        }),
        checks: vec![
            Check::at_most(
                "single atom path B at m = 100 vs 1/2, relative",
                (own.path_b - 0.5).norm() / 0.5,
                0.05,
            ),
            Check::at_most("cross atoms path B at m = 100", cross.path_b.norm(), 0.05),
        ],
    })
}

fn kernel() -> Result<SuiteOutcome> {
    let tau = 0.05;
    let k = selberg_transform(HeatProfile::new(tau)?, 1.0)?;
    let r = apply_kernel(&k, pt(0.0, 1.0)?, 4.0)?;
    let sym = test_function_symmetry(&|s: Complex64| ((s - 0.5) * (s - 0.5) * tau).exp());
    Ok(SuiteOutcome {
        data: json!({
            "tau": tau,
            "applied": cx(r.applied_value),
            "predicted": cx(r.predicted_value),
            "relative_deviation": r.relative_deviation,
            "symmetry_residual": sym,
        }),
        checks: vec![
            Check::at_most("kernel acts on E(·, 1/2+4i) at i by h(4)", r.relative_deviation, 1e-4),
            Check::at_most("ũ(1-s) = ũ(s)", sym, 1e-8),
        ],
    })
}

fn trace(d: i64) -> Result<SuiteOutcome> {
    let field = make_field(d)?;
    let chi = HeckeCharacter::trivial(&field);
    let zeros = cached_zeros(d, &chi, 30.0)?;
    let eps = central_epsilon(&field, &chi)?;
    let tau = 0.05;
    let kernel = selberg_transform(HeatProfile::new(tau)?, 1.0)?;
    let spectral = trace_formula(&zeros, eps.epsilon, |s| ((s - 0.5) * (s - 0.5) * tau).exp(), 1e-6)?;
    let z = pt(0.3, 1.4)?;
    let kernel_side = trace_formula_kernel_path(&zeros, eps.epsilon, &kernel, z)?;
    let diff = (spectral.value - kernel_side).norm();
    Ok(SuiteOutcome {
        data: json!({
            "d": d,
            "tau": tau,
            "zeros": zeros.zeros.len(),
            "eigenvalue_path": cx(spectral.value),
            "tail_estimate": spectral.tail_estimate,
            "kernel_path": cx(kernel_side),
            "central_value": eps.value,
            "epsilon": eps.epsilon,
            "warning": eps.warning,
        }),
        checks: vec![
            Check::at_most("eigenvalue path = kernel path, Gaussian ũ", diff, 1e-6),
            Check::at_least("|Λ_K(1/2)|", eps.value, 1e-6),
            Check::holds("ε = 0", !eps.epsilon),
        ],
    })
}

fn connes(d: i64) -> Result<SuiteOutcome> {
    let field = make_field(d)?;
    let chi = HeckeCharacter::trivial(&field);
    let zeros = cached_zeros(d, &chi, 30.0)?;
    let g = zeros.ordinates();
    let point = |gamma, order| ConnesPoint {
        gamma,
        order,
        coeff: c(1.0, 0.0),
    };
    let picks: Vec<f64> = g.iter().take(3).copied().collect();
    let order0 = ConnesDistribution {
        points: picks.iter().map(|&t| point(t, 0)).collect(),
    };
    let order1 = ConnesDistribution {
        points: picks.iter().map(|&t| point(t, 1)).collect(),
    };
    let r0 = connes_test(&order0, &field, &chi, &zeros, 1e-6)?;
    let r1 = connes_test(&order1, &field, &chi, &zeros, 1e-6)?;
    let empty = connes_test(&ConnesDistribution::default(), &field, &chi, &zeros, 1e-6)?;
    let simple_rejected = r1.points.iter().all(|p| !p.passes);
    Ok(SuiteOutcome {
        data: json!({
            "gammas": picks,
            "order1_derivatives": r1.points.iter().map(|p| p.derivatives.clone()).collect::<Vec<_>>(),
        }),
        checks: vec![
            Check::holds("order-0 masses at scanned zeros pass", r0.passes),
            Check::holds("order-1 masses at simple zeros fail", !r1.passes && simple_rejected),
            Check::holds("empty distribution passes", empty.passes),
        ],
    })
}

fn determinism(d: Option<i64>) -> Result<SuiteOutcome> {
    let threads = [1usize, 3];
    let mut checks = Vec::new();
    let mut sizes = serde_json::Map::new();
    for suite in &Suite::NUMBERED[..14] {
        let runs: Vec<Vec<u8>> = threads
            .iter()
            .map(|&n| crate::commands::verify_bytes(*suite, d, n))
            .collect();
        sizes.insert(suite.name().into(), json!(runs[0].len()));
        checks.push(Check::holds(
            format!(
                "{} report identical at {} and {} threads",
                suite.name(),
                threads[0],
                threads[1]
            ),
            runs[0] == runs[1],
        ));
    }
    Ok(SuiteOutcome {
        data: json!({ "threads": threads, "report_bytes": sizes }),
        checks,
    })
}
