//! The classical Yang–Baxter operator, quasi-rationality, co-brackets and
//! the built-in catalog of r-matrices.

mod bialgebra;
mod catalog;

use std::sync::Arc;

use crate::lie::{CasimirSpec, LieTable};
use crate::ratfun::{RatFun, Var};
use crate::tensor::{accumulate_bracket, embed, LegPair, Legs, Sums3, Tensor2, Tensor3};

pub use bialgebra::{cobracket, cocycle_check, cojacobi_check, cojacobi_residual};
pub use catalog::{
    calibrated_casimir, catalog, catalog_entry, eq5_rational, gamma2, gamma3, gamma4, q0, q1, q2,
    trig_part, CatalogEntry, CatalogName,
};

/// `[r₁₂, r₁₃] + [r₁₂, r₂₃] + [r₁₃, r₂₃]` in the variables `u1, u2, u3`.
pub fn cyb(r: &Tensor2) -> Tensor3 {
    let table: &Arc<LieTable> = r.table();
    let r12 = embed(r, Legs::L12);
    let r13 = embed(r, Legs::L13);
    let r23 = embed(r, Legs::L23);
    let mut sums = Sums3::new();
    accumulate_bracket(table, &r12, &r13, LegPair::P12_13, &mut sums);
    accumulate_bracket(table, &r12, &r23, LegPair::P12_23, &mut sums);
    accumulate_bracket(table, &r13, &r23, LegPair::P13_23, &mut sums);
    Tensor3::from_sums(table, sums)
}

/// `uv/(v-u)`.
pub(crate) fn quasi_rational_kernel() -> RatFun {
    let u = RatFun::var(Var::U);
    let v = RatFun::var(Var::V);
    (&u * &v).div(&(&v - &u)).expect("v - u is nonzero")
}

/// CYBE solution whose difference from `uvΩ/(v-u)` is a skew polynomial.
pub fn is_quasi_rational(r: &Tensor2, omega: &CasimirSpec) -> bool {
    if r.table().n() != omega.table().n() {
        return false;
    }
    let diff = r.sub(&omega.tensor().mul_fn(&quasi_rational_kernel()));
    diff.is_polynomial() && diff.is_skew() && cyb(r).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{casimir, make_sl};
    use crate::ratfun::{q, q_frac};
    use std::collections::BTreeMap;

    #[test]
    fn yang_is_scale_free() {
        for n in 2..=3 {
            let t = make_sl(n).unwrap();
            for c in [q(1), q_frac(3, 7), q(-5)] {
                let om = casimir(&t, &c).unwrap();
                assert!(cyb(&gamma2(&om)).is_zero());
            }
        }
    }

    #[test]
    fn single_term_fails() {
        let t = make_sl(2).unwrap();
        let r = Tensor2::elementary(&t, 0, 2, RatFun::one());
        // only [r12,r23] = e⊗[h,e]⊗h = 2 e⊗e⊗h survives
        let res = cyb(&r);
        assert_eq!(res.len(), 1);
        assert_eq!(res.coeff(0, 0, 2), RatFun::int(2));
    }

    #[test]
    fn cyb_matches_leg_brackets() {
        use crate::tensor::leg_bracket;
        let t = make_sl(2).unwrap();
        let om = casimir(&t, &q(4)).unwrap();
        let r = q1(&om).unwrap();
        let sum = leg_bracket(&r, &r, LegPair::P12_13)
            .unwrap()
            .add(&leg_bracket(&r, &r, LegPair::P12_23).unwrap())
            .add(&leg_bracket(&r, &r, LegPair::P13_23).unwrap());
        assert_eq!(sum, cyb(&r));
    }

    #[test]
    fn reparametrization() {
        // u -> 1/u on both legs maps Ω/(u-v) to uvΩ/(v-u), and cyb commutes
        let t = make_sl(2).unwrap();
        let om = casimir(&t, &q(4)).unwrap();
        let inv = |vars: &[Var]| -> BTreeMap<Var, RatFun> {
            vars.iter()
                .map(|v| (v.clone(), RatFun::var(v.clone()).recip().unwrap()))
                .collect()
        };
        let s2 = inv(&[Var::U, Var::V]);
        let g2 = gamma2(&om);
        let mapped = g2.map_coeffs(|c| c.substitute(&s2)).unwrap();
        assert_eq!(mapped, gamma4(&om));
        let s3 = inv(&[Var::U1, Var::U2, Var::U3]);
        let lhs = cyb(&g2).map_coeffs(|c| c.substitute(&s3)).unwrap();
        assert_eq!(lhs, cyb(&mapped));
    }

    #[test]
    fn quasi_rationality() {
        let t = make_sl(2).unwrap();
        let om = casimir(&t, &q(4)).unwrap();
        assert!(is_quasi_rational(&q0(&om), &om));
        assert!(is_quasi_rational(&q1(&om).unwrap(), &om));
        assert!(is_quasi_rational(&q2(&om).unwrap(), &om));
        assert!(!is_quasi_rational(&eq5_rational(&om).unwrap(), &om));
        // a non-skew polynomial part is rejected
        let bad = q0(&om).add(&Tensor2::elementary(&t, 0, 0, RatFun::one()));
        assert!(!is_quasi_rational(&bad, &om));
    }
}
