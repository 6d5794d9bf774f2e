use proptest::prelude::*;
use toroidal_core::eis::{eisenstein_oracle, HPoint};
use toroidal_core::lfun::{hecke_l, real_class_characters, HeckeCharacter};
use toroidal_core::nfield::make_field;
use toroidal_core::periods::*;
use toroidal_core::special::lambda_completed;
use toroidal_core::{Complex64, Error};

fn c(a: f64, b: f64) -> Complex64 {
    Complex64::new(a, b)
}

fn strip_grid() -> Vec<Complex64> {
    (0..10)
        .map(|k| c(0.1 + 0.08 * k as f64, -9.0 + 2.0 * k as f64))
        .collect()
}

#[test]
fn nontrivial_character_kills_constants() {
    let k = make_field(-20).unwrap();
    let chi = HeckeCharacter::genus(&k, -4, 5).unwrap();
    let p = period_of(&k, &chi, |_| Ok((c(1.0, 0.0), 0.0))).unwrap();
    assert_eq!(p.value, c(0.0, 0.0));
    let trivial = HeckeCharacter::trivial(&k);
    let p = period_of(&k, &trivial, |_| Ok((c(1.0, 0.0), 0.0))).unwrap();
    assert_eq!(p.value, c(1.0, 0.0));
}

#[test]
fn gaussian_period_at_two_against_lattice_sums() {
    // E(i, 2) from the coprime lattice sum, ζ_{ℚ(i)}(2) = (1/4) Σ' (m² + n²)^{-2}
    let k = make_field(-4).unwrap();
    let chi = HeckeCharacter::trivial(&k);
    let oracle = eisenstein_oracle(HPoint::new(0.0, 1.0).unwrap(), c(2.0, 0.0), 3000.0).unwrap();
    let p = heegner_period(&k, &chi, c(2.0, 0.0)).unwrap();
    assert_eq!(p.method, PeriodMethod::HeegnerSum);
    assert!((p.value - oracle.value).norm() < 3.0 * oracle.tail_bound + 1e-10);

    let r = 2000i64;
    let mut zk = 0.0;
    for m in -r..=r {
        for n in -r..=r {
            let q = (m * m + n * n) as f64;
            if q > 0.0 && q <= (r * r) as f64 {
                zk += 1.0 / (q * q);
            }
        }
    }
    // tail of Σ' over |v| > R: ∫ 2πρ ρ^{-4} dρ = π/R²
    zk = (zk + std::f64::consts::PI / (r * r) as f64) / 4.0;
    let h = h_closed_form(&k, &chi, c(2.0, 0.0)).unwrap();
    assert!(!h.pole_flag);
    assert!(
        (h.value * zk - p.value).norm() < 1e-7,
        "{} vs {}",
        h.value * zk,
        p.value
    );
    assert!((p.value / hecke_l(&k, &chi, c(2.0, 0.0)).unwrap() - h.value).norm() < 1e-7);
}

#[test]
fn genus_character_ratio_is_constant() {
    let k = make_field(-20).unwrap();
    for chi in real_class_characters(&k) {
        let fit = ratio_constancy(&k, &chi, &strip_grid()).unwrap();
        assert!(fit.spread < 1e-6, "{}: {}", chi.label(), fit.spread);
        assert!(fit.calibration_error < 1e-6);
    }
}

#[test]
fn geodesic_ratio_and_calibration() {
    for d in [5, 8, 13] {
        let k = make_field(d).unwrap();
        let chi = HeckeCharacter::trivial(&k);
        let fit = ratio_constancy(&k, &chi, &strip_grid()).unwrap();
        assert!(fit.spread < 1e-5, "{d}: {}", fit.spread);
        assert!((fit.constant * 2.0 * k.ck_constant() - 1.0).norm() < 1e-4);
    }
}

#[test]
fn geodesic_period_completed_is_symmetric() {
    // Λ(2s) H L is invariant under s ↦ 1 - s, so Λ(2s) · period is too
    let k = make_field(5).unwrap();
    for s in [c(0.3, 4.0), c(0.7, -2.5), c(0.2, 0.5)] {
        let a = lambda_completed(s * 2.0).unwrap() * geodesic_period(&k, s).unwrap().value;
        let b = lambda_completed((1.0 - s) * 2.0).unwrap() * geodesic_period(&k, 1.0 - s).unwrap().value;
        assert!((a - b).norm() < 1e-6 * a.norm(), "{s}: {a} {b}");
    }
}

#[test]
fn siegel_identity_cases() {
    for d in [-4, -3] {
        let k = make_field(d).unwrap();
        for s in [c(0.75, 0.0), c(2.0, 0.0), c(0.5, 3.0), c(3.0, 0.0)] {
            assert!(siegel_identity_check(&k, s, 0).unwrap().rel_error < 1e-6);
        }
    }
    let k = make_field(-20).unwrap();
    for class in 0..2 {
        for s in [c(0.75, 0.0), c(2.0, 0.0), c(0.5, 3.0)] {
            assert!(siegel_identity_check(&k, s, class).unwrap().rel_error < 1e-5);
        }
    }
}

#[test]
fn siegel_rejects_non_genus_class_groups() {
    // Cl(ℚ(√-23)) is cyclic of order 3
    let k = make_field(-23).unwrap();
    assert!(matches!(
        siegel_identity_check(&k, c(2.0, 0.0), 0),
        Err(Error::Unsupported(_))
    ));
    let k = make_field(-4).unwrap();
    assert!(matches!(
        siegel_identity_check(&k, c(1.0, 0.0), 0),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn character_sum_reconstructs_point_values() {
    // Σ_χ χ(A) Π_χ = E(z_A, s) for an elementary abelian 2-group
    let k = make_field(-84).unwrap();
    let chars = real_class_characters(&k);
    assert_eq!(chars.len(), k.h);
    let s = c(0.8, 1.5);
    let series = toroidal_core::eis::EisensteinSeries::new(s).unwrap();
    for class in &k.classes {
        let mut sum = c(0.0, 0.0);
        for chi in &chars {
            sum += heegner_period(&k, chi, s).unwrap().value * chi.value(class.index);
        }
        let z = HPoint::from_complex(k.heegner_point(class).unwrap()).unwrap();
        let direct = series.eval(z).unwrap().value;
        assert!((sum - direct).norm() < 1e-10 * direct.norm());
    }
}

#[test]
fn h_function_has_no_zeros_and_is_finite() {
    for d in [-4, -20, 5] {
        let k = make_field(d).unwrap();
        let chi = HeckeCharacter::trivial(&k);
        for i in 0..10 {
            for j in 0..10 {
                let s = c(0.05 + 0.1 * i as f64, -9.5 + 2.1 * j as f64);
                let h = h_closed_form(&k, &chi, s).unwrap();
                let completed = h.value * lambda_completed(s * 2.0).unwrap();
                assert!(completed.is_finite() && completed.norm() > 1e-12, "{d} {s}");
            }
        }
    }
}

#[test]
fn laplacian_period_tracks_the_eigenvalue() {
    let k = make_field(-4).unwrap();
    let chi = HeckeCharacter::trivial(&k);
    let s = c(0.6, 2.0);
    let r1 = eigen_consistency(&k, &chi, s, 1e-2).unwrap();
    let r2 = eigen_consistency(&k, &chi, s, 5e-3).unwrap();
    assert!(r1.residual < 1e-3 && r2.residual < 1e-3);
    let order = (r1.residual / r2.residual).log2();
    assert!((order - 2.0).abs() < 0.2, "{order}");
    let half = eigen_consistency(&k, &chi, c(0.5, 0.0), 1e-3).unwrap();
    assert!(half.period.norm() < 1e-6 && half.laplacian_period.norm() < 1e-6);
    assert_eq!(half.residual, 0.0);
    let real = make_field(5).unwrap();
    let r = eigen_consistency(&real, &HeckeCharacter::trivial(&real), s, 5e-3).unwrap();
    assert!(r.residual < 1e-3);
}

#[test]
fn scope_errors() {
    let k = make_field(5).unwrap();
    assert!(heegner_period(&k, &HeckeCharacter::trivial(&k), c(2.0, 0.0)).is_err());
    let k10 = make_field(40).unwrap();
    if k10.h > 1 {
        assert!(matches!(geodesic_period(&k10, c(2.0, 0.0)), Err(Error::Unsupported(_))));
    }
    let im = make_field(-4).unwrap();
    assert!(geodesic_period(&im, c(2.0, 0.0)).is_err());
    assert!(heegner_period(&im, &HeckeCharacter::trivial(&im), c(1.0, 0.0))
        .unwrap_err()
        .is_pole());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn heegner_period_matches_closed_form(sr in 0.05f64..2.5, si in -15.0f64..15.0) {
        let s = c(sr, si);
        prop_assume!((s - 1.0).norm() > 0.05);
        let k = make_field(-20).unwrap();
        for chi in real_class_characters(&k) {
            let p = heegner_period(&k, &chi, s).unwrap().value;
            let q = closed_form_period(&k, &chi, s).unwrap().value;
            prop_assert!((p - q).norm() <= 1e-8 * (1.0 + q.norm()));
        }
    }
}
