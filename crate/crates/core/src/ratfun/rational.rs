use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::{Monomial, Poly, Var, Q};
use crate::{Error, Result};

/// Rational function `num / den` in canonical form: `gcd(num, den) = 1`
/// and the leading coefficient of `den` (graded-lex) is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        RatFun::constant(super::q(n))
    }

    pub fn var(v: Var) -> Self {
        RatFun::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// Reduces `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFun::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Assumes coprime input; only fixes the denominator scale.
    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the reduced denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn scale(&self, c: &Q) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: if c.is_zero() {
                Poly::one()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Simultaneous substitution of variables by rational functions.
    /// Unbound variables are left in place.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFun>) -> Result<RatFun> {
        if let Some(renaming) = as_renaming(bindings) {
            let f = |v: &Var| renaming.get(v).cloned().unwrap_or_else(|| v.clone());
            let num = self.num.rename(f);
            let den = self.den.rename(f);
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            return Ok(Self::reduce(num, den));
        }
        let num = substitute_poly(&self.num, bindings)?;
        let den = substitute_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        num.div(&den)
    }

    /// Renames variables; `f` must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(&Var) -> Var) -> RatFun {
        let num = self.num.rename(&f);
        let den = self.den.rename(&f);
        Self::new(num, den).expect("injective renaming keeps the denominator nonzero")
    }

    pub fn eval(&self, point: &dyn Fn(&Var) -> Q) -> Result<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }
}

fn as_renaming(bindings: &BTreeMap<Var, RatFun>) -> Option<BTreeMap<Var, Var>> {
    bindings
        .iter()
        .map(|(k, r)| {
            let p = r.as_poly()?;
            if !r.den.is_one() || p.len() != 1 {
                return None;
            }
            let (m, c) = p.leading()?;
            if !c.is_one() || m.degree() != 1 {
                return None;
            }
            Some((k.clone(), m.vars().next()?.clone()))
        })
        .collect()
}

fn substitute_poly(p: &Poly, bindings: &BTreeMap<Var, RatFun>) -> Result<RatFun> {
    let mut acc = RatFun::zero();
    for (m, c) in p.terms() {
        let mut t = RatFun::constant(c.clone());
        let mut kept = Monomial::one();
        for (v, e) in m.pairs() {
            match bindings.get(v) {
                Some(b) => t = &t * &b.pow(*e),
                None => kept = kept.mul(&Monomial::power(v.clone(), *e)),
            }
        }
        t = &t * &RatFun::from_poly(Poly::term(Q::one(), kept));
        acc = &acc + &t;
    }
    Ok(acc)
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFun::from_poly(num);
            }
            return RatFun::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &self.den * &b;
        RatFun::reduce(num, den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel, then the product of coprime pairs is coprime
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::normalize(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<Q> for RatFun {
    fn from(c: Q) -> Self {
        RatFun::constant(c)
    }
}

impl fmt::Display for RatFun {
    /// Grammar-compatible: `(num)/(den)`, or the bare polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::q;

    fn u() -> RatFun {
        RatFun::var(Var::U)
    }
    fn v() -> RatFun {
        RatFun::var(Var::V)
    }

    #[test]
    fn common_denominator() {
        // u/(v-u) + v/(u-v) = -1
        let a = u().div(&(&v() - &u())).unwrap();
        let b = v().div(&(&u() - &v())).unwrap();
        assert_eq!(&a + &b, RatFun::int(-1));
    }

    #[test]
    fn absorbing_zero() {
        let g = (&u() * &v()).div(&(&v() - &u())).unwrap();
        assert!((&g * &RatFun::zero()).is_zero());
    }

    #[test]
    fn additive_inverse() {
        let a = RatFun::one().div(&(&u() - &v())).unwrap();
        let b = RatFun::one().div(&(&v() - &u())).unwrap();
        assert!((&a + &b).is_zero());
        assert_eq!(a, -&b);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(u().div(&RatFun::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            RatFun::new(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn denominator_is_monic() {
        // 2/(2v - 4u)
        let r = RatFun::int(2)
            .div(&(&v().scale(&q(2)) - &u().scale(&q(4))))
            .unwrap();
        assert!(r.denom().leading_coeff().is_one());
        assert_eq!(r, RatFun::int(-1).div(&(&u().scale(&q(2)) - &v())).unwrap());
    }

    #[test]
    fn substitute_renaming() {
        let g = (&u() * &v()).div(&(&v() - &u())).unwrap();
        let b = BTreeMap::from([
            (Var::U, RatFun::var(Var::U1)),
            (Var::V, RatFun::var(Var::U2)),
        ]);
        let expect = (&RatFun::var(Var::U1) * &RatFun::var(Var::U2))
            .div(&(&RatFun::var(Var::U2) - &RatFun::var(Var::U1)))
            .unwrap();
        assert_eq!(g.substitute(&b).unwrap(), expect);
    }

    #[test]
    fn substitute_zero_denominator() {
        let a = RatFun::one().div(&(&u() - &v())).unwrap();
        let b = BTreeMap::from([(Var::U, v())]);
        assert_eq!(a.substitute(&b), Err(Error::ZeroDenominator));
    }

    #[test]
    fn substitute_reciprocal() {
        let inv_u = RatFun::one().div(&u()).unwrap();
        let b = BTreeMap::from([(Var::U, inv_u.clone())]);
        assert_eq!(u().substitute(&b).unwrap(), inv_u);
        // u v/(v-u) under u->1/u, v->1/v is 1/(u-v)
        let g = (&u() * &v()).div(&(&v() - &u())).unwrap();
        let inv_v = RatFun::one().div(&v()).unwrap();
        let b = BTreeMap::from([(Var::U, inv_u), (Var::V, inv_v)]);
        assert_eq!(
            g.substitute(&b).unwrap(),
            RatFun::one().div(&(&u() - &v())).unwrap()
        );
    }

    #[test]
    fn swap_is_simultaneous() {
        let a = u().div(&(&v() + &RatFun::int(1))).unwrap();
        let b = BTreeMap::from([(Var::U, v()), (Var::V, u())]);
        assert_eq!(
            a.substitute(&b).unwrap(),
            v().div(&(&u() + &RatFun::int(1))).unwrap()
        );
    }
}
