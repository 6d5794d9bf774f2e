use std::sync::OnceLock;

use proptest::prelude::*;
use toroidal_core::eis::{
    eisenstein, eisenstein_oracle, laplacian_fd, selberg_transform, FdQuadrature, HPoint, HeatProfile,
};
use toroidal_core::lfun::{find_zeros, HeckeCharacter, ZeroList};
use toroidal_core::nfield::{make_field, QuadraticField};
use toroidal_core::spectral::*;
use toroidal_core::{Complex64, Error};

fn c(a: f64, b: f64) -> Complex64 {
    Complex64::new(a, b)
}

fn pt(x: f64, y: f64) -> HPoint {
    HPoint::new(x, y).unwrap()
}

fn gaussian() -> &'static (QuadraticField, HeckeCharacter, ZeroList) {
    static CELL: OnceLock<(QuadraticField, HeckeCharacter, ZeroList)> = OnceLock::new();
    CELL.get_or_init(|| {
        let k = make_field(-4).unwrap();
        let chi = HeckeCharacter::trivial(&k);
        let zeros = find_zeros(&k, &chi, 30.0, 1e-12).unwrap();
        (k, chi, zeros)
    })
}

#[test]
fn packet_evaluation() {
    let z = pt(0.2, 1.3);
    let s = c(0.4, 2.0);
    let single = WavePacket::single(s).unwrap();
    assert_eq!(ev_packet(&single, z).unwrap(), eisenstein(z, s).unwrap().value);
    // all atoms at Re s = 2 against the lattice sums
    let p = WavePacket::new(vec![
        Atom {
            s: c(2.0, 1.0),
            a: c(0.5, -1.0),
        },
        Atom {
            s: c(2.0, -3.0),
            a: c(2.0, 0.0),
        },
    ])
    .unwrap();
    let mut oracle = c(0.0, 0.0);
    let mut bound = 0.0;
    for atom in &p.atoms {
        let o = eisenstein_oracle(z, atom.s, 2000.0).unwrap();
        oracle += atom.a * o.value;
        bound += atom.a.norm() * o.tail_bound;
    }
    assert!((ev_packet(&p, z).unwrap() - oracle).norm() < 3.0 * bound + 1e-10);
    assert!(WavePacket::single(c(1.0, 0.0)).unwrap_err().is_pole());
}

#[test]
fn symmetrization() {
    let p = WavePacket::new(vec![
        Atom {
            s: c(0.3, 2.0),
            a: c(1.0, 0.5),
        },
        Atom {
            s: c(0.5, 4.0),
            a: c(-0.7, 0.0),
        },
        Atom {
            s: c(0.8, -1.0),
            a: c(0.0, 2.0),
        },
    ])
    .unwrap();
    let plus = symmetrize(&p).unwrap();
    assert_eq!(plus.symmetry, Symmetry::PlusNormalized);
    assert!(symmetry_defect(&plus).unwrap() < 1e-10);
    assert_eq!(symmetrize(&plus).unwrap(), plus);
    let minus = antisymmetric_part(&p).unwrap();
    for k in 0..5 {
        let z = pt(-0.4 + 0.2 * k as f64, 0.9 + 0.45 * k as f64);
        let v = ev_packet(&p, z).unwrap();
        assert!((ev_packet(&plus, z).unwrap() - v).norm() < 1e-8);
        assert!(ev_packet(&minus, z).unwrap().norm() < 1e-8);
    }
    // a reflection onto the pole is refused
    let at_zero = WavePacket::single(c(0.0, 0.0)).unwrap();
    assert!(symmetrize(&at_zero).is_err());
}

#[test]
fn toroidality_of_zero_packets_and_controls() {
    let (k, chi, zeros) = gaussian();
    let g = zeros.ordinates();
    assert!((g[0] - 6.0209489).abs() < 1e-6 && (g[1] - 10.2437703).abs() < 1e-6);
    let on = WavePacket::principal(&[(g[0], c(1.0, 0.0)), (g[1], c(0.5, -1.0))]).unwrap();
    let r = toroidality_test(&on, k, chi, zeros, 1e-6).unwrap();
    assert!(r.is_toroidal && r.spectrum_in_zeros && r.consistent && r.biconditional_holds);
    assert!(r.relative_period() < 1e-6);

    let off = WavePacket::single(c(0.75, 0.0)).unwrap();
    let r = toroidality_test(&off, k, chi, zeros, 1e-6).unwrap();
    assert!(!r.is_toroidal && !r.spectrum_in_zeros && r.biconditional_holds);
    assert!(r.relative_period() > 0.01);

    let r = toroidality_test(&WavePacket::empty(), k, chi, zeros, 1e-6).unwrap();
    assert!(r.is_toroidal && r.spectrum_in_zeros);
}

#[test]
fn toroidality_biconditional_on_a_suite() {
    let (k, chi, zeros) = gaussian();
    let g = zeros.ordinates();
    let coeff = |i: usize, j: usize| c(((i * 7 + j * 3) as f64).sin() + 1.5, ((i * 5 + j) as f64).cos());
    let mut worst_on: f64 = 0.0;
    let mut best_off = f64::INFINITY;
    for i in 0..20 {
        let mut atoms: Vec<(f64, Complex64)> = (0..3).map(|j| (g[(i + 2 * j) % g.len()], coeff(i, j))).collect();
        atoms.dedup_by(|a, b| a.0 == b.0);
        let on = WavePacket::principal(&atoms).unwrap();
        let r = toroidality_test(&on, k, chi, zeros, 1e-6).unwrap();
        assert!(r.is_toroidal && r.spectrum_in_zeros);
        worst_on = worst_on.max(r.relative_period());

        atoms.push((g[i % g.len()] + 0.37 + 0.05 * i as f64, coeff(i, 9)));
        let off = WavePacket::principal(&atoms).unwrap();
        let r = toroidality_test(&off, k, chi, zeros, 1e-6).unwrap();
        assert!(!r.is_toroidal && !r.spectrum_in_zeros && r.biconditional_holds);
        best_off = best_off.min(r.relative_period());
    }
    assert!(best_off / worst_on.max(1e-300) > 1e3, "{worst_on:e} {best_off:e}");
}

#[test]
fn real_field_toroidality_uses_geodesic_periods() {
    let k = make_field(5).unwrap();
    let chi = HeckeCharacter::trivial(&k);
    let zeros = find_zeros(&k, &chi, 12.0, 1e-12).unwrap();
    let g = zeros.ordinates();
    let on = WavePacket::principal(&[(g[0], c(1.0, 0.0))]).unwrap();
    let r = toroidality_test(&on, &k, &chi, &zeros, 1e-6).unwrap();
    assert!(r.is_toroidal && r.spectrum_in_zeros && r.consistent);
}

#[test]
fn besicovitch_coefficient_path() {
    let a5 = WavePacket::principal(&[(5.0, c(1.0, 0.0))]).unwrap();
    let a3 = WavePacket::principal(&[(3.0, c(1.0, 0.0))]).unwrap();
    assert!((besicovitch_inner_coefficients(&a5, &a5).unwrap() - 0.5).norm() < 1e-15);
    assert_eq!(besicovitch_inner_coefficients(&a3, &a5).unwrap(), c(0.0, 0.0));
    // (E(½+it), E(½-it)) = c(½+it)/2
    let m5 = WavePacket::principal(&[(-5.0, c(1.0, 0.0))]).unwrap();
    let cross = besicovitch_inner_coefficients(&a5, &m5).unwrap();
    let c5 = toroidal_core::lfun::c_scattering(2, c(0.5, 5.0)).unwrap();
    assert!((cross - c5 * 0.5).norm() < 1e-14);
    let off = WavePacket::single(c(0.7, 1.0)).unwrap();
    assert!(matches!(
        besicovitch_inner_coefficients(&off, &a5),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn besicovitch_truncated_path() {
    let q = FdQuadrature::default();
    let a5 = WavePacket::principal(&[(5.0, c(1.0, 0.0))]).unwrap();
    let a3 = WavePacket::principal(&[(3.0, c(1.0, 0.0))]).unwrap();
    let heights = [20.0, 50.0, 100.0];
    let own = besicovitch_inner(&a5, &a5, &heights, &q).unwrap();
    assert!((own.path_b.re - 0.5).abs() < 0.025, "{own:?}");
    assert!(own.path_b.im.abs() < 1e-10);
    let cross = besicovitch_inner(&a3, &a5, &heights, &q).unwrap();
    assert!(cross.path_b.norm() < 0.05, "{cross:?}");
    assert_eq!(cross.path_b_samples.len(), 3);
}

#[test]
fn spectrum_of_d() {
    let (_, _, zeros) = gaussian();
    let spec = spectrum_d(zeros, false);
    assert!((spec.eigenvalues[0] - 36.5018).abs() < 1e-4);
    assert!(spec.eigenvalues.windows(2).all(|w| w[0] < w[1]));
    assert!(spec.multiplicities.iter().all(|&m| m == 1));
    let with_half = spectrum_d(zeros, true);
    assert_eq!(with_half.eigenvalues[0], 0.25);
    assert_eq!(with_half.eigenvalues.len(), spec.eigenvalues.len() + 1);
    // refinement of the scan tolerance moves λ by less than 10·tol
    let (k, chi, _) = gaussian();
    let coarse = spectrum_d(&find_zeros(k, chi, 15.0, 1e-8).unwrap(), false);
    let fine = spectrum_d(&find_zeros(k, chi, 15.0, 1e-9).unwrap(), false);
    assert_eq!(coarse.eigenvalues.len(), fine.eigenvalues.len());
    for (a, b) in coarse.eigenvalues.iter().zip(&fine.eigenvalues) {
        assert!((a - b).abs() < 1e-7);
    }
}

#[test]
fn d_acts_by_the_laplace_eigenvalue() {
    let p = WavePacket::principal(&[(0.0, c(1.0, 0.0)), (2.0, c(1.0, 0.0))]).unwrap();
    let d = apply_d(&p).unwrap();
    assert_eq!(d.atoms[0].a, c(0.25, 0.0));
    assert_eq!(d.atoms[1].a, c(17.0 / 4.0, 0.0));
    let p = WavePacket::principal(&[(3.0, c(1.0, -0.5)), (1.2, c(0.3, 0.0))]).unwrap();
    let d = apply_d(&p).unwrap();
    let prepared = p.prepare().unwrap();
    let z = pt(0.0, 1.0);
    let f = |w: HPoint| Ok(prepared.eval(w)?.0);
    let lap = laplacian_fd(f, z, 1e-3).unwrap();
    let expected = ev_packet(&d, z).unwrap();
    assert!((lap - expected).norm() < 1e-3 * expected.norm().max(1.0));
    assert!(apply_d(&WavePacket::single(c(0.6, 1.0)).unwrap()).is_err());
}

#[test]
fn resolvent_algebra() {
    let p = WavePacket::principal(&[(1.0, c(1.0, 1.0)), (4.0, c(-2.0, 0.5))]).unwrap();
    let r0 = resolvent(&p, c(0.0, 0.0)).unwrap();
    for (a, b) in r0.atoms.iter().zip(&p.atoms) {
        assert!((a.a * (0.25 + b.s.im * b.s.im) - b.a).norm() < 1e-15);
    }
    let zc = c(3.0, 0.7);
    let r = resolvent(&p, zc).unwrap();
    let back = apply_d(&r).unwrap();
    let dist = p
        .atoms
        .iter()
        .map(|a| (c(0.25 + a.s.im * a.s.im, 0.0) - zc).norm())
        .fold(f64::INFINITY, f64::min);
    for ((x, y), orig) in back.atoms.iter().zip(&r.atoms).zip(&p.atoms) {
        assert!((x.a - y.a * zc - orig.a).norm() < 1e-14 * orig.a.norm());
        assert!(y.a.norm() <= orig.a.norm() / dist * (1.0 + 1e-12));
    }
    assert!(resolvent(&p, c(1.25, 0.0)).is_err());
}

#[test]
fn trace_sums() {
    let (k, chi, zeros) = gaussian();
    let eps = central_epsilon(k, chi).unwrap();
    assert!(!eps.epsilon && !eps.warning && eps.value > 1e-6);
    let r = trace_formula(zeros, eps.epsilon, |s: Complex64| ((s - 0.5) * (s - 0.5)).exp(), 1e-12).unwrap();
    let lead = (-36.25f64).exp();
    let g1 = zeros.ordinates()[0];
    assert!((r.value.re / (-(0.25 + g1 * g1 - 0.25)).exp() - 1.0).abs() < 1e-10);
    assert!((r.value.re / lead - 1.0).abs() < 1e-2);
    assert!(r.tail_estimate < 1e-300);
    assert!(matches!(
        trace_formula(zeros, false, |s: Complex64| s, 1e-12),
        Err(Error::InvalidInput(_))
    ));
    let slow = |s: Complex64| ((s - 0.5) * (s - 0.5) * 1e-3).exp();
    assert!(matches!(
        trace_formula(zeros, false, slow, 1e-6),
        Err(Error::NoConvergence { .. })
    ));
}

#[test]
fn trace_kernel_path_agrees_on_a_short_list() {
    let (k, chi, _) = gaussian();
    let zeros = find_zeros(k, chi, 11.0, 1e-12).unwrap();
    let tau = 0.05;
    let kernel = selberg_transform(HeatProfile::new(tau).unwrap(), 1.0).unwrap();
    let spectral = trace_formula(&zeros, false, |s: Complex64| ((s - 0.5) * (s - 0.5) * tau).exp(), 1.0).unwrap();
    let kernel_side = trace_formula_kernel_path(&zeros, false, &kernel, pt(0.3, 1.4)).unwrap();
    assert!((spectral.value - kernel_side).norm() < 1e-8);
}

#[test]
fn connes_condition() {
    let (k, chi, zeros) = gaussian();
    let g = zeros.ordinates();
    let point = |gamma, order| ConnesPoint {
        gamma,
        order,
        coeff: c(1.0, 0.0),
    };
    let zero_mass = ConnesDistribution {
        points: vec![point(g[0], 0), point(g[2], 0)],
    };
    assert!(connes_test(&zero_mass, k, chi, zeros, 1e-6).unwrap().passes);
    let derivative = ConnesDistribution {
        points: vec![point(g[0], 1)],
    };
    let r = connes_test(&derivative, k, chi, zeros, 1e-6).unwrap();
    assert!(!r.passes && r.points[0].derivatives[1] > 1e-3);
    assert!(
        connes_test(&ConnesDistribution::default(), k, chi, zeros, 1e-6)
            .unwrap()
            .passes
    );
    let off = ConnesDistribution {
        points: vec![point(g[0] + 0.1, 0)],
    };
    assert!(!connes_test(&off, k, chi, zeros, 1e-6).unwrap().passes);
    let high = ConnesDistribution {
        points: vec![point(g[0], 3)],
    };
    assert!(connes_test(&high, k, chi, zeros, 1e-6).is_err());
}

fn principal_packet() -> impl Strategy<Value = Vec<(f64, Complex64)>> {
    prop::collection::vec((0.5f64..12.0, -2.0f64..2.0, -2.0f64..2.0), 1..5)
        .prop_map(|v| v.into_iter().map(|(t, a, b)| (t, c(a, b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_linear(a in principal_packet(), b in principal_packet(), x in -0.5f64..0.5, y in 0.9f64..3.0, w in -2.0f64..2.0) {
        let z = pt(x, y);
        let pa = WavePacket::principal(&a).unwrap();
        let pb = WavePacket::principal(&b).unwrap();
        let mut combined: Vec<(f64, Complex64)> = a.clone();
        combined.extend(b.iter().map(|&(t, v)| (t, v * w)));
        let pc = WavePacket::principal(&combined).unwrap();
        let lhs = ev_packet(&pc, z).unwrap();
        let rhs = ev_packet(&pa, z).unwrap() + ev_packet(&pb, z).unwrap() * w;
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn gram_matrices_are_positive_definite(ts in prop::collection::vec(0.5f64..20.0, 3), coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)) {
        // three packets on distinct ordinates with generic coefficients
        let packets: Vec<WavePacket> = (0..3).map(|i| {
            let atoms: Vec<(f64, Complex64)> = (0..3).map(|j| (ts[j] + 0.01 * j as f64, c(coeffs[3 * i + j].0, coeffs[3 * i + j].1))).collect();
            WavePacket::principal(&atoms).unwrap()
        }).collect();
        let mut g = [[c(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = besicovitch_inner_coefficients(&packets[i], &packets[j]).unwrap();
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((g[i][j] - g[j][i].conj()).norm() < 1e-12);
            }
            prop_assert!(g[i][i].re >= 0.0);
        }
        // Hermitian PSD: every principal minor is non-negative
        let det2 = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).re;
        prop_assert!(det2 >= -1e-12);
        let det3 = (g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])).re;
        prop_assert!(det3 >= -1e-10);
    }
}
