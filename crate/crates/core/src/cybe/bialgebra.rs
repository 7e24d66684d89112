use std::collections::BTreeMap;

use crate::lie::{bracket_poly, GPoly};
use crate::ratfun::{RatFun, Var, Q};
use crate::tensor::{ad2_action, power, Sums3, Tensor2, Tensor3};
use crate::{Error, Result};

/// `δ(p) = [Γ, p(u)⊗1 + 1⊗p(v)]`, required to be polynomial.
pub fn cobracket(gamma: &Tensor2, p: &GPoly) -> Result<Tensor2> {
    let d = ad2_action(p, gamma)?.neg();
    if let Some(((a, b), c)) = d.terms().find(|(_, c)| !c.is_polynomial()) {
        let t = d.table();
        return Err(Error::PoleDoesNotCancel(format!(
            "coefficient of {}⊗{} is {c}",
            t.label(*a).display(t.n()),
            t.label(*b).display(t.n())
        )));
    }
    Ok(d)
}

/// `δ([p,q]) = p·δ(q) - q·δ(p)`.
pub fn cocycle_check(gamma: &Tensor2, p: &GPoly, q: &GPoly) -> Result<bool> {
    let table = gamma.table();
    let lhs = cobracket(gamma, &bracket_poly(table, p, q)?)?;
    let rhs = ad2_action(p, &cobracket(gamma, q)?)?.sub(&ad2_action(q, &cobracket(gamma, p)?)?);
    Ok(lhs == rhs)
}

/// Splits a polynomial coefficient in `u, v` into `(i, j, c)` for `c·u^i v^j`.
fn uv_terms(c: &RatFun) -> Result<Vec<(i64, i64, Q)>> {
    let den = c
        .denom()
        .constant_value()
        .ok_or_else(|| Error::PoleDoesNotCancel(format!("{c} is not polynomial")))?;
    let mut out = Vec::new();
    for (m, coef) in c.numer().terms() {
        if m.vars().any(|v| *v != Var::U && *v != Var::V) {
            return Err(Error::invalid(format!("unexpected variable in {c}")));
        }
        out.push((
            m.exponent(&Var::U) as i64,
            m.exponent(&Var::V) as i64,
            coef / &den,
        ));
    }
    Ok(out)
}

/// `(1 + σ + σ²)(δ⊗id)δ(p)` where `σ` rotates the three legs.
pub fn cojacobi_residual(gamma: &Tensor2, p: &GPoly) -> Result<Tensor3> {
    let table = gamma.table();
    let outer = cobracket(gamma, p)?;
    let u3 = RatFun::var(Var::U3);
    let mut cache: BTreeMap<(usize, i64), Tensor2> = BTreeMap::new();
    let mut sums = Sums3::new();
    for ((a, b), c) in outer.terms() {
        for (i, j, coef) in uv_terms(c)? {
            if !cache.contains_key(&(*a, i)) {
                let x = GPoly::monomial(table.basis(*a), i);
                let inner = cobracket(gamma, &x)?;
                let renamed = inner.map_coeffs(|f| {
                    Ok(f.rename(|v| match v {
                        Var::U => Var::U1,
                        Var::V => Var::U2,
                        o => o.clone(),
                    }))
                })?;
                cache.insert((*a, i), renamed);
            }
            let third = power(&u3, j);
            for ((k, l), g) in cache[&(*a, i)].terms() {
                sums.entry((*k, *l, *b))
                    .or_default()
                    .add_scaled(&(g * &third), Some(&coef));
            }
        }
    }
    let t = Tensor3::from_sums(table, sums);
    let r1 = t.rotate();
    let r2 = r1.rotate();
    Ok(t.add(&r1).add(&r2))
}

pub fn cojacobi_check(gamma: &Tensor2, p: &GPoly) -> Result<bool> {
    Ok(cojacobi_residual(gamma, p)?.is_zero())
}
