use heiscalc_core::random::{random_poly, trial_rng};
use heiscalc_core::{Point, PolyCoeff};
use proptest::prelude::*;

fn poly(n: usize, seed: u64, i: u64) -> PolyCoeff {
    random_poly(n, 3, &mut trial_rng(seed, 1, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>(), n in 1usize..=3) {
        let (p, q, r) = (poly(n, seed, 0), poly(n, seed, 1), poly(n, seed, 2));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn partials_commute(seed in any::<u64>(), n in 1usize..=3) {
        let p = &poly(n, seed, 0) * &poly(n, seed, 1);
        for i in 1..=2 * n + 1 {
            for j in 1..=2 * n + 1 {
                let a = p.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
                let b = p.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), n in 1usize..=2, coords in prop::collection::vec(-3.0f64..3.0, 5)) {
        let (p, q) = (poly(n, seed, 0), poly(n, seed, 1));
        let pt = Point::new(coords[..2 * n + 1].to_vec()).unwrap();
        let lhs = (&p * &q).evaluate_at(&pt).unwrap();
        let rhs = p.evaluate_at(&pt).unwrap() * q.evaluate_at(&pt).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0));
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let p = &poly(n, seed, 0) * &poly(n, seed, 1).scale(&heiscalc_core::rat(3, 7));
        prop_assert_eq!(PolyCoeff::parse(n, &p.to_string()).unwrap(), p);
    }
}
