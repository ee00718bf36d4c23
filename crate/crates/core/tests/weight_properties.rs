use num_complex::Complex64;
use proptest::prelude::*;
use smashprod_core::gauss::GaussianRational as Q;
use smashprod_core::weights::{series_norm, series_norm_exact, Point, SeriesNorm, Weight};

fn point(z: &[(f64, f64)]) -> Point {
    Point::Complex(z.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
}

fn submultiplicative() -> Vec<Weight> {
    ["poly", "exppow(1)", "exppow(3)", "maxpow(1,2)", "const(2)", "expabs(1,-2)", "tensor(poly, exppow(2))", "pow(poly(2), 0.5)", "prod(poly(2), maxpow(2,3))"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weights_are_submultiplicative_and_at_least_one(
        z in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2),
        w in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2),
    ) {
        let zw: Vec<(f64, f64)> = z.iter().zip(&w).map(|(a, b)| (a.0 + b.0, a.1 + b.1)).collect();
        for weight in submultiplicative() {
            let k = weight.arity().unwrap();
            let (lz, lw, lzw) = (
                weight.log_eval(&point(&z[..k])).unwrap(),
                weight.log_eval(&point(&w[..k])).unwrap(),
                weight.log_eval(&point(&zw[..k])).unwrap(),
            );
            prop_assert!(lz >= 0.0, "{weight}");
            prop_assert!(lzw <= lz + lw + 1e-9 * (1.0 + lz + lw), "{weight}");
        }
    }

    #[test]
    fn tensor_is_sum_of_logs(z in -20.0f64..20.0, w in -20.0f64..20.0) {
        let t: Weight = "tensor(poly, exppow(2))".parse().unwrap();
        let lhs = t.log_eval(&Point::real(&[z, w])).unwrap();
        let rhs = Weight::poly().log_eval(&Point::real(&[z])).unwrap() + Weight::exp_power(2).log_eval(&Point::real(&[w])).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn series_norm_grows_with_radius(
        coeffs in prop::collection::vec(-9i64..=9, 1..8),
        r in 1i64..5,
        s in 0i64..3,
    ) {
        let a: Vec<Q> = coeffs.iter().map(|&c| Q::from_int(c)).collect();
        let small = SeriesNorm::from_ints(r, s).unwrap();
        let large = SeriesNorm::from_ints(r + 1, s).unwrap();
        prop_assert!(series_norm_exact(&a, &small).unwrap() <= series_norm_exact(&a, &large).unwrap());
        let exact: f64 = num_traits::ToPrimitive::to_f64(&series_norm_exact(&a, &small).unwrap()).unwrap();
        prop_assert!((series_norm(&a, &small) - exact).abs() <= 1e-9 * (1.0 + exact));
    }
}
