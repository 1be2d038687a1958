use largebohr::{Complex, TruncatedSeries};
use proptest::prelude::*;

fn series(max_len: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len).prop_map(|c| {
        TruncatedSeries::new(c.into_iter().map(|(re, im)| Complex::new(re, im)).collect()).unwrap()
    })
}

fn no_constant(s: TruncatedSeries) -> TruncatedSeries {
    let mut c = s.coeffs().to_vec();
    c[0] = Complex::new(0.0, 0.0);
    TruncatedSeries::new(c).unwrap()
}

fn point() -> impl Strategy<Value = Complex> {
    (0.0f64..0.3, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
}

proptest! {
    #[test]
    fn ring_axioms(f in series(10), g in series(10), h in series(10)) {
        let n = 9;
        prop_assert!(f.add(&g).max_abs_diff(&g.add(&f)) == 0.0);
        prop_assert!(f.mul(&g, n).max_abs_diff(&g.mul(&f, n)) < 1e-14);
        let lhs = f.mul(&g.add(&h), n);
        let rhs = f.mul(&g, n).add(&f.mul(&h, n));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
        let assoc = f.mul(&g, n).mul(&h, n).max_abs_diff(&f.mul(&g.mul(&h, n), n));
        prop_assert!(assoc < 1e-13);
        prop_assert!(f.mul(&TruncatedSeries::one(0), n).max_abs_diff(&f.truncate(n)) == 0.0);
    }

    #[test]
    fn compose_agrees_with_evaluation(f in series(8), g in series(8), z in point()) {
        let g = no_constant(g);
        // f∘g is a polynomial of degree <= 49, so order 49 is exact
        let fg = f.compose(&g, 49).unwrap();
        let direct = f.eval(g.eval(z));
        prop_assert!((fg.eval(z) - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn exp_of_negation_is_inverse(f in series(8)) {
        let f = no_constant(f);
        let n = 20;
        let prod = f.exp_series(n).mul(&f.scale(Complex::new(-1.0, 0.0)).exp_series(n), n);
        prop_assert!(prod.max_abs_diff(&TruncatedSeries::one(n)) < 1e-10);
    }

    #[test]
    fn reciprocal_inverts(f in series(8), c0 in 0.5f64..2.0) {
        let mut c = f.coeffs().to_vec();
        c[0] = Complex::new(c0, 0.0);
        let f = TruncatedSeries::new(c).unwrap();
        let n = 16;
        let prod = f.mul(&f.reciprocal(n).unwrap(), n);
        // coefficients of 1/f grow like (1/c0)^k at worst by a factor 2^k here
        prop_assert!(prod.max_abs_diff(&TruncatedSeries::one(n)) < 1e-6);
    }

    #[test]
    fn calculus_round_trip(f in series(12)) {
        let back = f.integrate().differentiate();
        prop_assert!(back.max_abs_diff(&f) < 1e-15);
    }
}
