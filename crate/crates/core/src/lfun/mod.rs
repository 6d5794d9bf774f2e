//! Dirichlet L-functions of Kronecker characters, Dedekind zeta functions of quadratic
//! fields, real class-group (genus) characters and their Hecke L-functions, gamma
//! factors, completed L-functions, the scattering function c_n and critical-line zeros.

mod scattering;
mod zeros;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Float, One, Zero};

use crate::nfield::{is_fundamental_discriminant, QuadraticField};
use crate::quad::contour_mean;
use crate::special::{gamma_c, gamma_r, hurwitz_zeta, log_gamma, riemann_zeta};
use crate::{c64, Error, Result};

pub use scattering::{c_scattering, c_scattering_derivative, gamma_poly, gamma_poly_exact};
pub use zeros::{find_zeros, ZeroEntry, ZeroList};

const MAX_IM: f64 = 60.0;

fn jacobi(mut a: i64, mut m: i64) -> i8 {
    debug_assert!(m > 0 && m % 2 == 1);
    a = a.rem_euclid(m);
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                t = -t;
            }
        }
        core::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (d/n) for a discriminant d.
pub fn kronecker_chi(d: i64, n: i64) -> i8 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut t = 1i8;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            t = -t;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        match d.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => t = -t,
            _ => return 0,
        }
    }
    t * jacobi(d, n)
}

/// L(s, χ_d) = |d|^{-s} Σ_{a mod |d|} χ_d(a) ζ(s, a/|d|); for d = 1 this is ζ(s).
pub fn dirichlet_l(d: i64, s: Complex64) -> Result<Complex64> {
    if d == 1 {
        return riemann_zeta(s);
    }
    if s.im.abs() > MAX_IM {
        return Err(Error::window(
            "dirichlet_l",
            format!("|Im s| = {} > {MAX_IM}", s.im.abs()),
        ));
    }
    if s == c64(1.0, 0.0) {
        // entire for d ≠ 1; the Hurwitz poles cancel
        return contour_mean(s, 0.25, 48, |w| dirichlet_l(d, w));
    }
    let m = d.abs();
    let mf = m as f64;
    let mut acc = Complex64::zero();
    for a in 1..m {
        let chi = kronecker_chi(d, a);
        if chi != 0 {
            acc += hurwitz_zeta(s, a as f64 / mf)? * chi as f64;
        }
    }
    Ok(acc * (-s * mf.ln()).exp())
}

/// Λ(s, χ_D) = (|D|/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ_D), a = 0 for D > 0, 1 for D < 0.
pub fn completed_dirichlet(dd: i64, s: Complex64) -> Result<Complex64> {
    let a = if dd < 0 { 1.0 } else { 0.0 };
    let w = (s + a) * 0.5;
    if dd == 1 {
        return crate::special::lambda_completed(s);
    }
    // entire for D ≠ 1; continue through the functional equation on the left
    if s.re < -0.5 {
        return completed_dirichlet(dd, c64(1.0, 0.0) - s);
    }
    let lg = log_gamma(w)?;
    let scale = w * ((dd.abs() as f64) / PI).ln();
    Ok((lg + scale).exp() * dirichlet_l(dd, s)?)
}

/// |(|D|/π)^{(s+a)/2} Γ((s+a)/2)|, the archimedean size of a completed Dirichlet factor.
pub(crate) fn dirichlet_gamma_modulus(dd: i64, s: Complex64) -> Result<f64> {
    let a = if dd < 0 { 1.0 } else { 0.0 };
    let w = (s + a) * 0.5;
    Ok((log_gamma(w)?.re + w.re * ((dd.abs() as f64) / PI).ln()).exp())
}

/// ζ_K(s) = ζ(s) L(s, χ_d).
pub fn dedekind_zeta(field: &QuadraticField, s: Complex64) -> Result<Complex64> {
    if s == c64(1.0, 0.0) {
        let res = dirichlet_l(field.d, s)?;
        return Err(Error::pole(s, Some(res)));
    }
    Ok(riemann_zeta(s)? * dirichlet_l(field.d, s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterKind {
    Trivial,
    /// Genus character attached to d = d1·d2, with d1 ≤ d2 as integers.
    Genus {
        d1: i64,
        d2: i64,
    },
    /// Anything else: carried as data, rejected by the L-function code.
    Other,
}

/// Unramified Hecke character of a quadratic field: a class-group character plus an
/// archimedean frequency m with parameters ρ_w per infinite place.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeCharacter {
    pub d: i64,
    pub class_values: Vec<Complex64>,
    pub frequency: i64,
    pub rho: Vec<f64>,
    pub self_dual: bool,
    pub kind: CharacterKind,
}

fn infinite_places(field: &QuadraticField) -> usize {
    if field.d > 0 {
        2
    } else {
        1
    }
}

impl HeckeCharacter {
    pub fn trivial(field: &QuadraticField) -> Self {
        HeckeCharacter {
            d: field.d,
            class_values: alloc::vec![Complex64::one(); field.h],
            frequency: 0,
            rho: alloc::vec![0.0; infinite_places(field)],
            self_dual: true,
            kind: CharacterKind::Trivial,
        }
    }

    /// Genus character of d = d1·d2 (both fundamental, coprime). For real fields both
    /// factors must be positive, otherwise the character does not factor through the
    /// wide class group.
    pub fn genus(field: &QuadraticField, d1: i64, d2: i64) -> Result<Self> {
        let (d1, d2) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        if d1 == 1 || d2 == 1 {
            if d1 * d2 == field.d {
                return Ok(Self::trivial(field));
            }
        }
        if d1 * d2 != field.d || !is_fundamental_discriminant(d1) || !is_fundamental_discriminant(d2) {
            return Err(Error::invalid(format!(
                "genus character: {d1}·{d2} is not a splitting of {} into fundamental discriminants",
                field.d
            )));
        }
        if field.d > 0 && (d1 < 0 || d2 < 0) {
            return Err(Error::unsupported(format!(
                "genus character ({d1}, {d2}) of a real field is only a narrow class character"
            )));
        }
        let mut class_values = Vec::with_capacity(field.h);
        for class in &field.classes {
            let f = class.form;
            let v = match f.represented_coprime_to(d1) {
                Some((n, _, _)) => kronecker_chi(d1, n),
                None => match f.represented_coprime_to(d2) {
                    Some((n, _, _)) => kronecker_chi(d2, n),
                    None => return Err(Error::invalid(format!("no coprime value for {f}"))),
                },
            };
            class_values.push(c64(v as f64, 0.0));
        }
        Ok(HeckeCharacter {
            d: field.d,
            class_values,
            frequency: 0,
            rho: alloc::vec![0.0; infinite_places(field)],
            self_dual: true,
            kind: CharacterKind::Genus { d1, d2 },
        })
    }

    /// Character from explicit data; L-functions accept it only if it is in scope.
    pub fn custom(field: &QuadraticField, class_values: Vec<Complex64>, frequency: i64, rho: Vec<f64>) -> Result<Self> {
        if class_values.len() != field.h || rho.len() != infinite_places(field) {
            return Err(Error::invalid("custom character: wrong number of values"));
        }
        if class_values.iter().any(|v| (v.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::invalid("custom character: values must have modulus 1"));
        }
        if (class_values[0] - 1.0).norm() > 1e-12 {
            return Err(Error::invalid(
                "custom character: value on the principal class must be 1",
            ));
        }
        let self_dual = frequency == 0 && class_values.iter().all(|v| v.im.abs() < 1e-12);
        Ok(HeckeCharacter {
            d: field.d,
            class_values,
            frequency,
            rho,
            self_dual,
            kind: CharacterKind::Other,
        })
    }

    /// Value on the class with the given index.
    pub fn value(&self, index: usize) -> Complex64 {
        self.class_values[index]
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == CharacterKind::Trivial
    }

    /// The pair of Kronecker discriminants whose L-functions multiply to L(s, χ).
    pub(crate) fn dirichlet_pair(&self) -> Result<(i64, i64)> {
        match self.kind {
            CharacterKind::Trivial => Ok((1, self.d)),
            CharacterKind::Genus { d1, d2 } => Ok((d1, d2)),
            CharacterKind::Other => Err(Error::unsupported(
                "Hecke L-function of a character that is neither trivial nor genus",
            )),
        }
    }

    pub fn label(&self) -> alloc::string::String {
        match self.kind {
            CharacterKind::Trivial => "trivial".into(),
            CharacterKind::Genus { d1, d2 } => format!("genus:{d1},{d2}"),
            CharacterKind::Other => "custom".into(),
        }
    }
}

/// Nontrivial factorizations d = d1·d2 into fundamental discriminants, d1 < d2.
fn discriminant_splittings(d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let n = d.abs();
    for k in 1..=n {
        if n % k == 0 {
            for &d1 in &[k, -k] {
                if d % d1 != 0 {
                    continue;
                }
                let d2 = d / d1;
                if d1 < d2 && is_fundamental_discriminant(d1) && is_fundamental_discriminant(d2) {
                    out.push((d1, d2));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All real class characters available in core scope: the trivial one and the genus
/// characters, trivial first.
pub fn real_class_characters(field: &QuadraticField) -> Vec<HeckeCharacter> {
    let mut out = alloc::vec![HeckeCharacter::trivial(field)];
    for (d1, d2) in discriminant_splittings(field.d) {
        if let Ok(chi) = HeckeCharacter::genus(field, d1, d2) {
            out.push(chi);
        }
    }
    out
}

fn check_scope(field: &QuadraticField, chi: &HeckeCharacter) -> Result<()> {
    if chi.d != field.d {
        return Err(Error::invalid("character belongs to a different field"));
    }
    if chi.frequency != 0 {
        return Err(Error::unsupported(format!(
            "Hecke character with archimedean frequency m = {}",
            chi.frequency
        )));
    }
    if !chi.self_dual {
        return Err(Error::unsupported("Hecke character with non-real class values"));
    }
    Ok(())
}

/// L(s, χ): ζ_K for trivial χ, L(s, χ_{d1}) L(s, χ_{d2}) for a genus character.
pub fn hecke_l(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<Complex64> {
    check_scope(field, chi)?;
    match chi.kind {
        CharacterKind::Trivial => dedekind_zeta(field, s),
        _ => {
            let (d1, d2) = chi.dirichlet_pair()?;
            Ok(dirichlet_l(d1, s)? * dirichlet_l(d2, s)?)
        }
    }
}

/// Γ(s, χ) = ∏_w Γ_w(s + iρ_w): Γ_C for the complex place, Γ_R at each real place.
pub fn gamma_factor(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<Complex64> {
    check_scope(field, chi)?;
    if field.d < 0 {
        gamma_c(s + c64(0.0, chi.rho[0]))
    } else {
        Ok(gamma_r(s + c64(0.0, chi.rho[0]))? * gamma_r(s + c64(0.0, chi.rho[1]))?)
    }
}

/// Λ_K(s, χ) as the product of the two completed Dirichlet factors.
pub fn completed_hecke(field: &QuadraticField, chi: &HeckeCharacter, s: Complex64) -> Result<Complex64> {
    check_scope(field, chi)?;
    let (d1, d2) = chi.dirichlet_pair()?;
    Ok(completed_dirichlet(d1, s)? * completed_dirichlet(d2, s)?)
}

/// Archimedean size |G(s)| with Λ_K(s, χ) = G(s) L(s, χ).
pub(crate) fn completed_hecke_gamma_modulus(chi: &HeckeCharacter, s: Complex64) -> Result<f64> {
    let (d1, d2) = chi.dirichlet_pair()?;
    Ok(dirichlet_gamma_modulus(d1, s)? * dirichlet_gamma_modulus(d2, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfield::make_field;

    #[test]
    fn kronecker_small() {
        assert_eq!(kronecker_chi(-4, 3), -1);
        assert_eq!(kronecker_chi(5, 2), -1);
        assert_eq!(kronecker_chi(-20, 1), 1);
        assert_eq!(kronecker_chi(8, 2), 0);
        assert_eq!(kronecker_chi(-3, 2), -1);
        assert_eq!(kronecker_chi(-4, -1), -1);
    }

    #[test]
    fn splittings() {
        assert_eq!(discriminant_splittings(-20), [(-4, 5)]);
        assert!(discriminant_splittings(-4).is_empty());
        assert_eq!(discriminant_splittings(-84), [(-7, 12), (-4, 21), (-3, 28)]);
        let field = make_field(-20).unwrap();
        let chars = real_class_characters(&field);
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1].class_values, [c64(1.0, 0.0), c64(-1.0, 0.0)]);
    }
}
