use std::collections::BTreeMap;
use std::fmt;

use super::{Poly, RatFun, Var};

/// Finite Laurent polynomial in one distinguished variable, with
/// coefficients that are rational functions of the remaining variables.
///
/// `trunc` records a truncation: when `Some(lo)`, terms with exponent
/// below `lo` were dropped and the value is only known modulo `var^(lo-1)`
/// and lower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, RatFun>,
    trunc: Option<i64>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn monomial(var: Var, exp: i64, coeff: RatFun) -> Self {
        let mut p = LaurentPoly::zero(var);
        p.add_term(exp, coeff);
        p
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn truncation(&self) -> Option<i64> {
        self.trunc
    }

    pub fn with_truncation(mut self, lo: i64) -> Self {
        self.terms.retain(|e, _| *e >= lo);
        self.trunc = Some(self.trunc.map_or(lo, |t| t.max(lo)));
        self
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &RatFun)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> RatFun {
        self.terms.get(&k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add_term(&mut self, exp: i64, coeff: RatFun) {
        if self.trunc.is_some_and(|lo| exp < lo) || coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, other.var, "Laurent variables differ");
        let mut out = self.clone();
        out.trunc = match (self.trunc, other.trunc) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        if let Some(lo) = out.trunc {
            out.terms.retain(|e, _| *e >= lo);
        }
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    /// Product, truncated to exponents `>= window_lo` when given.
    pub fn mul(&self, other: &LaurentPoly, window_lo: Option<i64>) -> LaurentPoly {
        assert_eq!(self.var, other.var, "Laurent variables differ");
        let mut out = LaurentPoly::zero(self.var.clone());
        out.trunc = window_lo;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// The finite sum as a rational function.
    pub fn to_ratfun(&self) -> RatFun {
        let x = RatFun::var(self.var.clone());
        let inv = x.recip().expect("variable is nonzero");
        self.terms.iter().fold(RatFun::zero(), |acc, (e, c)| {
            let p = if *e >= 0 {
                x.pow(*e as u32)
            } else {
                inv.pow((-*e) as u32)
            };
            &acc + &(c * &p)
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{}^{e}", self.var)?;
        }
        if let Some(lo) = self.trunc {
            write!(f, " + O({}^{})", self.var, lo - 1)?;
        }
        Ok(())
    }
}

/// Coefficient of `var^k`.
pub fn laurent_coeff(p: &LaurentPoly, var: &Var, k: i64) -> RatFun {
    assert_eq!(
        p.var(),
        var,
        "coefficient requested in a different variable"
    );
    p.coeff(k)
}

/// Expansion of `a` in descending powers of `var` (the region where `var`
/// dominates every other variable), keeping every term with exponent
/// `>= -order`.
pub fn expand_at_infinity(a: &RatFun, var: &Var, order: u32) -> LaurentPoly {
    let lo = -(order as i64);
    let mut out = LaurentPoly::zero(var.clone()).with_truncation(lo);
    if a.is_zero() {
        return out;
    }
    // a = var^(k-m) * N(w) / D(w) with w = 1/var and D(0) != 0
    let num = a.numer().to_univariate(var);
    let den = a.denom().to_univariate(var);
    let k = (num.len() - 1) as i64;
    let m = (den.len() - 1) as i64;
    let num_w: Vec<Poly> = num.into_iter().rev().collect();
    let den_w: Vec<RatFun> = den.into_iter().rev().map(RatFun::from_poly).collect();
    let lead = den_w[0].clone();
    let top = k - m;
    if top < lo {
        return out;
    }
    let count = (top - lo) as usize + 1;
    let mut series: Vec<RatFun> = Vec::with_capacity(count);
    for j in 0..count {
        let mut c = num_w
            .get(j)
            .cloned()
            .map(RatFun::from_poly)
            .unwrap_or_default();
        for i in 1..=j.min(den_w.len() - 1) {
            c = &c - &(&den_w[i] * &series[j - i]);
        }
        let c = c.div(&lead).expect("leading coefficient is nonzero");
        out.add_term(top - j as i64, c.clone());
        series.push(c);
    }
    out
}
