use std::collections::BTreeMap;

use super::{Poly, RatFun, Q};

/// Accumulates many rational functions, grouping numerators by
/// denominator so that gcd work happens once per distinct denominator.
#[derive(Debug, Clone, Default)]
pub struct RatFunSum {
    groups: BTreeMap<Poly, Poly>,
}

impl RatFunSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, r: &RatFun) {
        self.add_scaled(r, None);
    }

    /// Adds `c * r` (or `r` when `c` is `None`).
    pub fn add_scaled(&mut self, r: &RatFun, c: Option<&Q>) {
        if r.is_zero() {
            return;
        }
        let num = match c {
            Some(c) => r.numer().scale(c),
            None => r.numer().clone(),
        };
        match self.groups.get_mut(r.denom()) {
            Some(acc) => *acc = &*acc + &num,
            None => {
                self.groups.insert(r.denom().clone(), num);
            }
        }
    }

    pub fn total(self) -> RatFun {
        let mut acc = RatFun::zero();
        for (den, num) in self.groups {
            if num.is_zero() {
                continue;
            }
            let r = RatFun::new(num, den).expect("grouped denominators are nonzero");
            acc = &acc + &r;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Var;

    #[test]
    fn grouped_sum_matches_pairwise() {
        let u = RatFun::var(Var::U);
        let v = RatFun::var(Var::V);
        let a = u.div(&(&v - &u)).unwrap();
        let b = v.div(&(&u - &v)).unwrap();
        let c = RatFun::one().div(&u).unwrap();
        let mut s = RatFunSum::new();
        for r in [&a, &b, &c, &a] {
            s.add(r);
        }
        let expect = &(&(&a + &b) + &c) + &a;
        assert_eq!(s.total(), expect);
    }
}
