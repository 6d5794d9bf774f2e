//! Exact arithmetic of quadratic fields ℚ(√d) given by a fundamental discriminant.
//!
//! The ring of integers has basis (1, ω) with ω = (σ + √d)/2, σ ∈ {0, 1}, σ ≡ d mod 2.
//! Ideal classes are represented by reduced binary quadratic forms; for d < 0 these give
//! Heegner points, for d > 0 the principal form gives the closed geodesic.

mod forms;
mod units;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Float, Zero};

pub use forms::{compose, indefinite_cycles, reduced_definite_forms, reduced_indefinite_forms, Form};
pub use units::{fundamental_unit, Unit};

use crate::{c64, Error, Result};

pub type Q = Ratio<i128>;

const MAX_ABS_D: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealClass {
    pub form: Form,
    pub index: usize,
}

/// Element x + yω of K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Element {
    pub x: Q,
    pub y: Q,
}

impl Element {
    pub fn new(x: Q, y: Q) -> Self {
        Element { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Element::new(Q::from_integer(x as i128), Q::from_integer(y as i128))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl core::ops::Add for Element {
    type Output = Element;
    fn add(self, o: Element) -> Element {
        Element::new(self.x + o.x, self.y + o.y)
    }
}

/// 2×2 rational matrix, row-major.
pub type Mat2 = [[Q; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Q::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_det(a: &Mat2) -> Q {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticField {
    pub d: i64,
    pub r1: u32,
    pub r2: u32,
    /// Trace of ω.
    pub sigma: i64,
    pub h: usize,
    /// One reduced form per ideal class, principal class first.
    pub classes: Vec<IdealClass>,
    /// Fundamental unit, real fields only.
    pub eps: Option<Unit>,
    /// log ε for d > 0, 1 by convention for d < 0.
    pub regulator: f64,
    /// Number of roots of unity.
    pub e: u32,
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    fn squarefree(n: i64) -> bool {
        let n = n.abs();
        let mut p = 2;
        let mut m = n;
        while p * p <= m {
            if m % (p * p) == 0 {
                return false;
            }
            if m % p == 0 {
                m /= p;
            }
            p += 1;
        }
        true
    }
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

pub fn make_field(d: i64) -> Result<QuadraticField> {
    if d.abs() > MAX_ABS_D {
        return Err(Error::window("make_field", format!("|d| = {} > {MAX_ABS_D}", d.abs())));
    }
    if !is_fundamental_discriminant(d) {
        return Err(Error::invalid(format!("{d} is not a fundamental discriminant")));
    }
    let sigma = d.rem_euclid(2);
    if d < 0 {
        let forms = reduced_definite_forms(d)?;
        let classes = index_classes(forms);
        let e = match d {
            -4 => 4,
            -3 => 6,
            _ => 2,
        };
        return Ok(QuadraticField {
            d,
            r1: 0,
            r2: 1,
            sigma,
            h: classes.len(),
            classes,
            eps: None,
            regulator: 1.0,
            e,
        });
    }
    let eps = fundamental_unit(d);
    let classes = index_classes(wide_class_representatives(d));
    Ok(QuadraticField {
        d,
        r1: 2,
        r2: 0,
        sigma,
        h: classes.len(),
        classes,
        regulator: eps.log(),
        eps: Some(eps),
        e: 2,
    })
}

fn index_classes(forms: Vec<Form>) -> Vec<IdealClass> {
    forms
        .into_iter()
        .enumerate()
        .map(|(index, form)| IdealClass { form, index })
        .collect()
}

/// One reduced indefinite form per wide ideal class. A cycle and the cycle of its
/// negative (-a, b, -c) represent the same ideal class.
fn wide_class_representatives(d: i64) -> Vec<Form> {
    let cycles = indefinite_cycles(d);
    let mut taken = alloc::vec![false; cycles.len()];
    let mut reps = Vec::new();
    for i in 0..cycles.len() {
        if taken[i] {
            continue;
        }
        taken[i] = true;
        let neg = Form::new(-cycles[i][0].a, cycles[i][0].b, -cycles[i][0].c);
        let mut members: Vec<Form> = cycles[i].clone();
        if let Some(j) = cycles.iter().position(|cyc| cyc.contains(&neg)) {
            if !taken[j] {
                taken[j] = true;
                members.extend_from_slice(&cycles[j]);
            }
        }
        let rep = members
            .into_iter()
            .min_by_key(|f| (f.a < 0, f.a.abs(), f.b))
            .expect("cycles are nonempty");
        reps.push(rep);
    }
    reps.sort_by_key(|f| (f.a < 0, f.a.abs(), f.b));
    reps
}

impl QuadraticField {
    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// N(ω) = (σ² - d)/4.
    pub fn norm_omega(&self) -> i64 {
        (self.sigma * self.sigma - self.d) / 4
    }

    pub fn principal_class(&self) -> IdealClass {
        self.classes[0]
    }

    pub fn norm(&self, xi: &Element) -> Q {
        let n = Q::from_integer(self.norm_omega() as i128);
        let s = Q::from_integer(self.sigma as i128);
        xi.x * xi.x + s * xi.x * xi.y + n * xi.y * xi.y
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        // ω² = σω - N(ω)
        let n = Q::from_integer(self.norm_omega() as i128);
        let s = Q::from_integer(self.sigma as i128);
        Element::new(u.x * v.x - n * u.y * v.y, u.x * v.y + u.y * v.x + s * u.y * v.y)
    }

    /// Gram matrix [[Tr(αᵢ ᾱⱼ)]] of the basis (1, ω); ᾱ is complex conjugation for d < 0
    /// and the identity for d > 0. Determinant |d|.
    pub fn pk_matrix(&self) -> [[i64; 2]; 2] {
        let s = self.sigma;
        [[2, s], [s, (s * s + self.d.abs()) / 2]]
    }

    /// Lower-triangular Cholesky factor q_K of p_K.
    pub fn qk_matrix(&self) -> [[f64; 2]; 2] {
        let p = self.pk_matrix();
        let (a, b, c) = (p[0][0] as f64, p[0][1] as f64, p[1][1] as f64);
        let l11 = a.sqrt();
        let l21 = b / l11;
        [[l11, 0.0], [l21, (c - l21 * l21).sqrt()]]
    }

    /// z_K = (b + i√(ac - b²))/a for p_K = [[a, b], [b, c]].
    pub fn qk_point(&self) -> Complex64 {
        let p = self.pk_matrix();
        let (a, b, c) = (p[0][0] as f64, p[0][1] as f64, p[1][1] as f64);
        c64(b / a, (a * c - b * b).sqrt() / a)
    }

    /// Matrix of multiplication by ξ on the basis (1, ω), acting on coordinate columns.
    pub fn pi_matrix(&self, xi: &Element) -> Result<Mat2> {
        if xi.is_zero() {
            return Err(Error::invalid("pi_matrix: ξ = 0"));
        }
        let n = Q::from_integer(self.norm_omega() as i128);
        let s = Q::from_integer(self.sigma as i128);
        Ok([[xi.x, -xi.y * n], [xi.y, xi.x + xi.y * s]])
    }

    /// CM point (-b + i√|d|)/(2a) of a class of an imaginary field.
    pub fn heegner_point(&self, class: &IdealClass) -> Result<Complex64> {
        if self.d > 0 {
            return Err(Error::invalid("heegner_point: field is real"));
        }
        Ok(heegner_point(&class.form))
    }

    pub fn heegner_points(&self) -> Result<Vec<Complex64>> {
        self.classes.iter().map(|c| self.heegner_point(c)).collect()
    }

    /// Closed geodesic of the given class of a real field with class number one.
    pub fn closed_geodesic(&self, class: &IdealClass) -> Result<GeodesicSegment> {
        let eps = match &self.eps {
            Some(e) if self.d > 0 => e,
            _ => return Err(Error::invalid("closed_geodesic: field is imaginary")),
        };
        if self.h != 1 {
            return Err(Error::unsupported(format!(
                "closed_geodesic: class number {} > 1",
                self.h
            )));
        }
        Ok(GeodesicSegment::new(
            class.form,
            2.0 * eps.totally_positive(self.d).log(),
        ))
    }

    /// Principal form with roots ω, ω̄: x² - σx + N(ω).
    pub fn principal_geodesic_form(&self) -> Form {
        Form::new(1, -self.sigma, self.norm_omega())
    }

    /// c_K = 2^{r1} (2π)^{r2} h R / e.
    pub fn ck_constant(&self) -> f64 {
        2f64.powi(self.r1 as i32) * (2.0 * PI).powi(self.r2 as i32) * self.h as f64 * self.regulator / self.e as f64
    }
}

pub fn heegner_point(form: &Form) -> Complex64 {
    let d = form.discriminant() as f64;
    c64(
        -(form.b as f64) / (2.0 * form.a as f64),
        (-d).sqrt() / (2.0 * form.a as f64),
    )
}

/// Primitive closed geodesic on the modular surface: the semicircle joining the roots of
/// a x² + b x + c, traversed once through its hyperbolic length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSegment {
    pub form: Form,
    pub endpoints: (f64, f64),
    pub center: f64,
    pub radius: f64,
    pub length: f64,
}

impl GeodesicSegment {
    pub fn new(form: Form, length: f64) -> Self {
        let sd = (form.discriminant() as f64).sqrt();
        let two_a = 2.0 * form.a as f64;
        let (r0, r1) = ((-(form.b as f64) - sd) / two_a, (-(form.b as f64) + sd) / two_a);
        let endpoints = if r0 < r1 { (r0, r1) } else { (r1, r0) };
        GeodesicSegment {
            form,
            endpoints,
            center: -(form.b as f64) / two_a,
            radius: sd / two_a.abs(),
            length,
        }
    }

    /// Point at arc length t from the top of the semicircle.
    pub fn point(&self, t: f64) -> Complex64 {
        c64(self.center + self.radius * t.tanh(), self.radius / t.cosh())
    }
}
