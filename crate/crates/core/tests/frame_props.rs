use heiscalc_core::frame::{blades_of_degree, frame_apply, hodge_star, horizontal_gradient, pairing};
use heiscalc_core::random::{random_form, random_poly, trial_rng};
use heiscalc_core::{rat, Form, MultiVector, PolyCoeff};
use rand::Rng;

#[test]
fn d_squared_vanishes() {
    for n in 1..=3 {
        for k in 0..=2 * n {
            for t in 0..200 {
                let a = random_form(n, k, 3, &mut trial_rng(1, (n * 16 + k) as u64, t));
                assert!(a.exterior_derivative().exterior_derivative().is_zero(), "n={n} k={k} trial {t}");
            }
        }
    }
}

#[test]
fn wedge_is_graded_commutative() {
    for n in 1..=2 {
        for t in 0..50 {
            let mut rng = trial_rng(2, n as u64, t);
            let (j, k) = (rng.random_range(0..=2 * n), rng.random_range(0..=2 * n));
            if j + k > 2 * n + 1 {
                continue;
            }
            let a = random_form(n, j, 2, &mut rng);
            let b = random_form(n, k, 2, &mut rng);
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            let expected = if (j * k) % 2 == 0 { ba } else { ba.neg() };
            assert_eq!(ab, expected);
        }
    }
}

#[test]
fn theta_wedge_dtheta_power_is_a_single_top_blade() {
    for n in 1..=4 {
        let mut acc = Form::theta(n);
        for _ in 0..n {
            acc = acc.wedge(&Form::dtheta(n)).unwrap();
        }
        assert_eq!(acc.degree(), 2 * n + 1);
        assert_eq!(acc.len(), 1);
        assert!(acc.is_constant() && !acc.is_zero());
    }
}

#[test]
fn hodge_is_an_involutive_isometry() {
    for n in 1..=3 {
        let dim = 2 * n + 1;
        for k in 1..=2 * n {
            let blades = blades_of_degree(dim, k);
            for b in &blades {
                let v = MultiVector::basis(n, &b.indices(), PolyCoeff::one(n)).unwrap();
                assert_eq!(hodge_star(&hodge_star(&v).unwrap()).unwrap(), v);
            }
            let mut rng = trial_rng(3, (n * 16 + k) as u64, 0);
            for _ in 0..10 {
                let mut combo = || {
                    let coeffs: Vec<_> = blades.iter().map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=3))).collect();
                    MultiVector::from_constant_vector(n, k, &coeffs)
                };
                let (a, b) = (combo(), combo());
                let lhs = hodge_star(&a).unwrap().inner(&hodge_star(&b).unwrap()).unwrap();
                assert_eq!(lhs, a.inner(&b).unwrap());
            }
        }
    }
}

#[test]
fn df_pairs_with_frame_to_derivative() {
    for n in 1..=3 {
        for t in 0..20 {
            let f = random_poly(n, 3, &mut trial_rng(4, n as u64, t));
            let df = Form::function(f.clone()).exterior_derivative();
            for j in 1..=2 * n + 1 {
                let v = MultiVector::frame(n, j).unwrap();
                assert_eq!(pairing(&df, &v).unwrap(), frame_apply(j, &f).unwrap());
            }
            let grad = horizontal_gradient(&f);
            for j in 1..=2 * n {
                assert_eq!(grad.coeff(heiscalc_core::Blade::single(j)), frame_apply(j, &f).unwrap());
            }
        }
    }
}
