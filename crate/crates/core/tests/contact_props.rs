use heiscalc_core::contact::{built_in_maps, commute_check, lambda_is_j_independent, subspace_preservation};
use heiscalc_core::frame::{frame_apply, horizontal_gradient};
use heiscalc_core::random::{random_form, random_poly, trial_rng};
use heiscalc_core::{rat, Blade, PolyCoeff, SmoothMap};
use rand::Rng;

fn built_in(n: usize) -> Vec<SmoothMap> {
    built_in_maps(n, 42).unwrap().into_iter().map(|(_, f)| f).collect()
}

fn random_map(n: usize, rng: &mut impl Rng) -> SmoothMap {
    let comps = (0..2 * n + 1).map(|_| random_poly(n, 2, rng)).collect();
    SmoothMap::new(n, comps).unwrap()
}

#[test]
fn chain_rule_in_the_frame() {
    for n in 1..=2 {
        for t in 0..20 {
            let mut rng = trial_rng(20, n as u64, t);
            let f = random_map(n, &mut rng);
            let g = random_poly(n, 3, &mut rng);
            let comps = f.components();
            let gf = g.compose(comps).unwrap();
            for j in 1..=2 * n + 1 {
                let direct = frame_apply(j, &gf).unwrap();
                let mut via = frame_apply(2 * n + 1, &g).unwrap().compose(comps).unwrap() * f.a_coefficient(j).unwrap();
                for l in 1..=2 * n {
                    via += &(frame_apply(l, &g).unwrap().compose(comps).unwrap() * frame_apply(j, &comps[l - 1]).unwrap());
                }
                assert_eq!(direct, via, "n={n} j={j}");
            }
        }
    }
}

#[test]
fn horizontal_gradient_transforms_by_transpose() {
    for n in 1..=2 {
        for f in built_in(n) {
            for t in 0..5 {
                let g = random_poly(n, 3, &mut trial_rng(21, n as u64, t));
                let lhs = horizontal_gradient(&f.pullback_function(&g).unwrap());
                let m = f.pushforward();
                for j in 1..=2 * n {
                    let mut rhs = PolyCoeff::zero(n);
                    for l in 1..=2 * n {
                        rhs += &(m.get(l, j) * &frame_apply(l, &g).unwrap().compose(f.components()).unwrap());
                    }
                    assert_eq!(lhs.coeff(Blade::single(j)), rhs);
                }
            }
        }
    }
}

#[test]
fn contactness_coefficients_of_built_in_maps() {
    for n in 1..=3 {
        let r = rat(7, 5);
        let d = SmoothMap::dilation(&r, n).unwrap();
        for j in 1..=2 * n {
            assert!(d.a_coefficient(j).unwrap().is_zero());
        }
        assert_eq!(d.a_coefficient(2 * n + 1).unwrap(), PolyCoeff::constant(n, &r * &r));
        for f in built_in(n.min(2)) {
            assert!(f.is_contact());
            assert!(lambda_is_j_independent(&f));
        }
    }
    let witness = SmoothMap::parse(1, "poly:[w1, w2, 2*w3]").unwrap();
    let (j, a) = witness.contact_obstruction().unwrap();
    assert_eq!((j, a), (1, PolyCoeff::parse(1, "-1/2*y").unwrap()));
}

#[test]
fn lambda_derivatives_match_closed_form() {
    for n in 1..=2 {
        for f in built_in(n) {
            let comps = f.components();
            let lambda = f.lambda_coefficient(1).unwrap();
            let t = 2 * n + 1;
            for j in 1..=2 * n {
                let mut expected = PolyCoeff::zero(n);
                for l in 1..=n {
                    expected += &(frame_apply(j, &comps[n + l - 1]).unwrap() * frame_apply(t, &comps[l - 1]).unwrap());
                    expected -= &(frame_apply(t, &comps[n + l - 1]).unwrap() * frame_apply(j, &comps[l - 1]).unwrap());
                }
                assert_eq!(frame_apply(j, &lambda).unwrap(), expected);
            }
        }
    }
}

#[test]
fn pullback_is_a_dga_morphism() {
    for n in 1..=2 {
        for t in 0..20 {
            let mut rng = trial_rng(22, n as u64, t);
            let f = random_map(n, &mut rng);
            let (j, k) = (rng.random_range(0..=n), rng.random_range(0..=n));
            let a = random_form(n, j, 2, &mut rng);
            let b = random_form(n, k, 2, &mut rng);
            let lhs = f.pullback_form(&a.wedge(&b).unwrap()).unwrap();
            let rhs = f.pullback_form(&a).unwrap().wedge(&f.pullback_form(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let d_then = f.pullback_form(&a.exterior_derivative()).unwrap();
            let then_d = f.pullback_form(&a).unwrap().exterior_derivative();
            assert_eq!(d_then, then_d);
        }
    }
}

#[test]
fn subspaces_are_preserved() {
    for n in 1..=2 {
        for f in built_in(n) {
            for r in subspace_preservation(&f).unwrap() {
                assert!(r.passed, "{} {:?}", r.name, r.counterexample);
            }
        }
    }
}

#[test]
fn pullback_commutes_with_the_complex() {
    for n in 1..=2 {
        for f in [built_in(n).remove(1), built_in(n).remove(5)] {
            for k in 0..=2 * n {
                let r = commute_check(&f, k, 5, 42, 3).unwrap();
                assert!(r.check.passed, "{} {:?}", r.check.name, r.check.counterexample);
            }
        }
    }
}

#[test]
fn non_contact_maps_are_rejected() {
    let f = SmoothMap::parse(1, "poly:[w1, w2, 2*w3]").unwrap();
    assert!(commute_check(&f, 0, 1, 42, 3).is_err());
    assert!(subspace_preservation(&f).is_err());
}
