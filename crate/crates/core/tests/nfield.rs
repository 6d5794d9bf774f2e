use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;
use toroidal_core::lfun::dirichlet_l;
use toroidal_core::nfield::*;
use toroidal_core::Complex64;

const FIELDS: [i64; 12] = [-3, -4, -7, -8, -15, -20, -23, -84, 5, 8, 12, 13];

fn brute_reduced_count(d: i64) -> usize {
    // independent enumeration over a generous box
    let n = -d;
    let mut count = 0;
    for a in 1..=n {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a {
                continue;
            }
            if (b < 0) && (-b == a || a == c) {
                continue;
            }
            count += 1;
        }
    }
    count
}

#[test]
fn imaginary_field_examples() {
    let k = make_field(-4).unwrap();
    assert_eq!((k.h, k.e, k.r1, k.r2), (1, 4, 0, 1));
    let k = make_field(-20).unwrap();
    assert_eq!(k.h, 2);
    let forms: Vec<Form> = k.classes.iter().map(|c| c.form).collect();
    assert_eq!(forms, [Form::new(1, 0, 5), Form::new(2, 2, 3)]);
    assert_eq!(make_field(-3).unwrap().e, 6);
    assert_eq!(make_field(-23).unwrap().h, 3);
}

#[test]
fn class_numbers_match_brute_force() {
    for d in [-3, -4, -7, -20, -23, -47, -71, -84, -104, -211, -420] {
        let k = make_field(d).unwrap();
        assert_eq!(k.h, brute_reduced_count(d), "d = {d}");
        for class in &k.classes {
            let f = class.form;
            assert_eq!(f.discriminant(), d);
            assert!(f.b.abs() <= f.a && f.a <= f.c);
        }
    }
}

#[test]
fn class_number_formula_imaginary() {
    // L(1, χ_d) = 2π h / (e √|d|)
    for d in [-3i64, -4, -20, -23, -84] {
        let k = make_field(d).unwrap();
        let l1 = dirichlet_l(d, Complex64::new(1.0, 0.0)).unwrap().re;
        let predicted = 2.0 * std::f64::consts::PI * k.h as f64 / (k.e as f64 * (-d as f64).sqrt());
        assert!((l1 - predicted).abs() < 1e-10, "d = {d}");
    }
}

#[test]
fn class_number_formula_real() {
    // L(1, χ_d) = 2 h R / √d
    for d in [5i64, 8, 12, 13, 40, 60, 65, 136, 229, 316, 401] {
        let k = make_field(d).unwrap();
        let l1 = dirichlet_l(d, Complex64::new(1.0, 0.0)).unwrap().re;
        let predicted = 2.0 * k.h as f64 * k.regulator / (d as f64).sqrt();
        assert!(
            (l1 - predicted).abs() < 1e-9,
            "d = {d}: h = {}, R = {}",
            k.h,
            k.regulator
        );
    }
}

#[test]
fn real_field_unit_matches_pell_search() {
    // smallest (x, y), y > 0, with x² - d y² = ±4 and x > 0
    for d in [5i64, 8, 12, 13, 21, 28, 41] {
        let mut found = None;
        'outer: for y in 1i64..10_000 {
            for sign in [-4i64, 4] {
                let x2 = d * y * y + sign;
                if x2 <= 0 {
                    continue;
                }
                let x = (x2 as f64).sqrt().round() as i64;
                if x * x == x2 {
                    found = Some((x, y, sign / 4));
                    break 'outer;
                }
            }
        }
        let (x, y, n) = found.unwrap();
        let u = fundamental_unit(d);
        assert_eq!(
            (u.a.clone(), u.b.clone(), u.norm as i64),
            (BigInt::from(x), BigInt::from(y), n),
            "d = {d}"
        );
    }
    let k = make_field(5).unwrap();
    assert!((k.regulator - 0.481_211_8).abs() < 1e-7);
    assert_eq!((k.r1, k.r2, k.e), (2, 0, 2));
}

#[test]
fn discriminant_predicate() {
    assert!(is_fundamental_discriminant(-7));
    assert!(is_fundamental_discriminant(12));
    assert!(!is_fundamental_discriminant(-16));
    assert!(!is_fundamental_discriminant(9));
    assert!(!is_fundamental_discriminant(1));
    assert!(!is_fundamental_discriminant(-12));
    assert!(make_field(-7).is_ok());
    assert!(make_field(-16).is_err());
    assert!(make_field(2_000_001 * 4).is_err());
}

#[test]
fn gram_matrices() {
    assert_eq!(make_field(-4).unwrap().pk_matrix(), [[2, 0], [0, 2]]);
    assert_eq!(make_field(5).unwrap().pk_matrix(), [[2, 1], [1, 3]]);
    for d in FIELDS {
        let p = make_field(d).unwrap().pk_matrix();
        assert_eq!(p[0][1], p[1][0]);
        assert_eq!(p[0][0] * p[1][1] - p[0][1] * p[1][0], d.abs());
        assert!(p[0][0] > 0);
    }
}

#[test]
fn base_points() {
    let close = |z: Complex64, w: Complex64| (z - w).norm() < 1e-14;
    assert!(close(make_field(-4).unwrap().qk_point(), Complex64::new(0.0, 1.0)));
    assert!(close(
        make_field(-3).unwrap().qk_point(),
        Complex64::new(0.5, 3f64.sqrt() / 2.0)
    ));
    assert!(close(
        make_field(5).unwrap().qk_point(),
        Complex64::new(0.5, 5f64.sqrt() / 2.0)
    ));
    for d in FIELDS {
        let k = make_field(d).unwrap();
        let z = k.qk_point();
        let p = k.pk_matrix();
        // Gram matrix of (1, z) in ℝ² is [[1, x], [x, |z|²]]
        let g = [[1.0, z.re], [z.re, z.norm_sqr()]];
        let lam = p[0][0] as f64;
        for i in 0..2 {
            for j in 0..2 {
                assert!((lam * g[i][j] - p[i][j] as f64).abs() < 1e-12);
            }
        }
        let q = k.qk_matrix();
        let qqt = [
            [q[0][0] * q[0][0], q[0][0] * q[1][0]],
            [q[1][0] * q[0][0], q[1][0] * q[1][0] + q[1][1] * q[1][1]],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!((qqt[i][j] - p[i][j] as f64).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn multiplication_matrices() {
    let k = make_field(-4).unwrap();
    let one = k.pi_matrix(&Element::from_ints(1, 0)).unwrap();
    let id = [
        [Ratio::from_integer(1), Ratio::from_integer(0)],
        [Ratio::from_integer(0), Ratio::from_integer(1)],
    ];
    assert_eq!(one, id);
    let i = k.pi_matrix(&Element::from_ints(0, 1)).unwrap();
    assert_eq!(mat_det(&i), Ratio::from_integer(1));
    assert_eq!(i[0][0] + i[1][1], Ratio::from_integer(0));
    assert!(k.pi_matrix(&Element::from_ints(0, 0)).is_err());
}

#[test]
fn heegner_points_examples() {
    let k = make_field(-20).unwrap();
    let pts = k.heegner_points().unwrap();
    assert!((pts[0] - Complex64::new(0.0, 5f64.sqrt())).norm() < 1e-15);
    assert!((pts[1] - Complex64::new(-0.5, 5f64.sqrt() / 2.0)).norm() < 1e-15);
    let k = make_field(-4).unwrap();
    assert_eq!(k.heegner_points().unwrap(), [Complex64::new(0.0, 1.0)]);
    for d in [-3, -23, -84, -420, -1155] {
        for z in make_field(d).unwrap().heegner_points().unwrap() {
            assert!(z.re.abs() <= 0.5 + 1e-15 && z.norm() >= 1.0 - 1e-15, "d = {d}, z = {z}");
        }
    }
    assert!(make_field(5).unwrap().heegner_points().is_err());
}

#[test]
fn geodesic_examples() {
    let k = make_field(5).unwrap();
    let g = k
        .closed_geodesic(&IdealClass {
            form: k.principal_geodesic_form(),
            index: 0,
        })
        .unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((g.endpoints.0 - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-14);
    assert!((g.endpoints.1 - phi).abs() < 1e-14);
    assert!((g.length - 4.0 * phi.ln()).abs() < 1e-12);
    assert!((g.length - 1.924_847_3).abs() < 1e-7);
    assert_eq!(g.point(0.0), Complex64::new(g.center, g.radius));

    let k = make_field(8).unwrap();
    let g = k
        .closed_geodesic(&IdealClass {
            form: k.principal_geodesic_form(),
            index: 0,
        })
        .unwrap();
    assert!((g.length - 4.0 * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
    for i in 0..50 {
        let z = g.point(-3.0 + 0.13 * i as f64);
        assert!(((z - g.center).norm() - g.radius).abs() < 1e-12);
    }
    assert!(make_field(-4)
        .unwrap()
        .closed_geodesic(&make_field(-4).unwrap().classes[0])
        .is_err());
}

#[test]
fn geodesic_length_is_class_invariant() {
    let k = make_field(13).unwrap();
    let cycle = k.classes[0].form.cycle();
    let lengths: Vec<f64> = cycle
        .iter()
        .map(|&form| k.closed_geodesic(&IdealClass { form, index: 0 }).unwrap().length)
        .collect();
    for l in &lengths {
        assert!((l - lengths[0]).abs() < 1e-12);
    }
}

#[test]
fn ck_examples() {
    use std::f64::consts::PI;
    assert!((make_field(-4).unwrap().ck_constant() - PI / 2.0).abs() < 1e-15);
    assert!((make_field(-3).unwrap().ck_constant() - PI / 3.0).abs() < 1e-15);
    assert!((make_field(5).unwrap().ck_constant() - 0.962_423_7).abs() < 1e-7);
}

fn element() -> impl Strategy<Value = Element> {
    (-50i128..50, 1i128..6, -50i128..50, 1i128..6)
        .prop_map(|(a, b, c, e)| Element::new(Ratio::new(a, b), Ratio::new(c, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn pi_is_a_ring_homomorphism(
        d in prop::sample::select(FIELDS.to_vec()),
        x in element(),
        y in element(),
    ) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let k = make_field(d).unwrap();
        let px = k.pi_matrix(&x).unwrap();
        let py = k.pi_matrix(&y).unwrap();
        prop_assert_eq!(k.pi_matrix(&k.mul(&x, &y)).unwrap(), mat_mul(&px, &py));
        prop_assert_eq!(mat_det(&px), k.norm(&x));
        let sum = x + y;
        if !sum.is_zero() {
            let ps = k.pi_matrix(&sum).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert_eq!(ps[i][j], px[i][j] + py[i][j]);
                }
            }
        }
    }
}
