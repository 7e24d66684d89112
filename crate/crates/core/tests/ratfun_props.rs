use proptest::prelude::*;
use quasirat::ratfun::{expand_at_infinity, q, Poly, RatFun};
use quasirat::{Var, Q};

/// Polynomial in u, v with bidegree at most (2, 2).
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 9).prop_map(|cs| {
        let u = Poly::var(Var::U);
        let v = Poly::var(Var::V);
        let mut p = Poly::zero();
        for (i, c) in cs.into_iter().enumerate() {
            let m = &u.pow((i / 3) as u32) * &v.pow((i % 3) as u32);
            p = &p + &m.scale(&q(c));
        }
        p
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

/// Evaluation oracle at a point where no denominator vanishes.
fn at(r: &RatFun, pt: (i64, i64)) -> Option<Q> {
    r.eval(&|v: &Var| match v {
        Var::U => q(pt.0),
        _ => q(pt.1),
    })
    .ok()
}

fn point() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..=20, -20i64..=20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(a in ratfun()) {
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
            prop_assert_eq!(a.div(&a).unwrap(), RatFun::one());
        }
    }

    #[test]
    fn canonical_form(a in ratfun(), p in nonzero_poly()) {
        // multiplying numerator and denominator by p changes nothing
        let b = RatFun::new(a.numer() * &p, a.denom() * &p).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.denom().leading_coeff() == q(1));
        let g = RatFun::from_poly(p.clone());
        prop_assert_eq!((&a * &g).div(&g).unwrap(), a);
    }

    #[test]
    fn agrees_with_evaluation(a in ratfun(), b in ratfun(), pt in point()) {
        let (Some(x), Some(y)) = (at(&a, pt), at(&b, pt)) else { return Ok(()) };
        if let Some(s) = at(&(&a + &b), pt) {
            prop_assert_eq!(s, &x + &y);
        }
        if let Some(m) = at(&(&a * &b), pt) {
            prop_assert_eq!(m, &x * &y);
        }
    }

    #[test]
    fn expansion_inverts_denominator(a in ratfun(), order in 0u32..6) {
        // a = N/D and E = a + O(v^(-order-1)), so D*E and N agree
        // from v^(deg D - order) upward
        let e = expand_at_infinity(&a, &Var::V, order);
        let num = RatFun::from_poly(a.numer().clone());
        let den = RatFun::from_poly(a.denom().clone());
        let m = a.denom().to_univariate(&Var::V).len() as i64 - 1;
        let de = expand_at_infinity(&den, &Var::V, 0).mul(&e, None);
        let n = expand_at_infinity(&num, &Var::V, 0);
        for k in (m - order as i64)..=8 {
            prop_assert_eq!(de.coeff(k), n.coeff(k), "v^{} in {}", k, a);
        }
    }

    #[test]
    fn expansion_is_multiplicative(a in ratfun(), b in ratfun()) {
        let order = 4;
        let lhs = expand_at_infinity(&(&a * &b), &Var::V, order);
        let rhs = expand_at_infinity(&a, &Var::V, order + 4)
            .mul(&expand_at_infinity(&b, &Var::V, order + 4), Some(-(order as i64)));
        prop_assert_eq!(lhs.terms().collect::<Vec<_>>(), rhs.terms().collect::<Vec<_>>());
    }
}
