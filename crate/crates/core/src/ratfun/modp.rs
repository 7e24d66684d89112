//! Images in `F_p[x]` under evaluation of the other variables, used to
//! bound the `x`-degree of a gcd before any exact work is done.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, Var, Q};

/// 2^61 - 1.
const P: u64 = (1 << 61) - 1;
const ATTEMPTS: u64 = 3;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn sub(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn residue(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P))
        .to_u64()
        .expect("residue fits in u64")
}

/// `None` when the denominator vanishes mod p.
fn reduce(c: &Q) -> Option<u64> {
    let d = residue(c.denom());
    (d != 0).then(|| mul(residue(c.numer()), inv(d)))
}

/// Coefficients of the image, indexed by `x`-degree.
fn image(p: &Poly, x: &Var, point: &BTreeMap<Var, u64>) -> Option<Vec<u64>> {
    let mut out = vec![0; p.degree_in(x) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = reduce(c)?;
        let mut deg = 0;
        for (v, e) in m.pairs() {
            if v == x {
                deg = *e as usize;
            } else {
                val = mul(val, pow(point[v], *e as u64));
            }
        }
        out[deg] = add(out[deg], val);
    }
    Some(out)
}

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// `a mod b` for nonzero trimmed `b`.
fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let lb = inv(*b.last().expect("nonzero divisor"));
    while a.len() >= b.len() {
        let c = mul(*a.last().expect("nonempty"), lb);
        let shift = a.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            a[i + shift] = sub(a[i + shift], mul(c, *bi));
        }
        a = trim(a);
    }
    a
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// An upper bound on `deg_x gcd(a, b)`, or `None` when no good
/// evaluation point was found. Both inputs must involve `x`.
///
/// The bound is rigorous: evaluation points are accepted only when both
/// leading coefficients in `x` survive, so the image of the true gcd keeps
/// its degree and divides the gcd of the images.
pub(super) fn gcd_degree_bound(a: &Poly, b: &Poly, x: &Var) -> Option<usize> {
    let mut others = a.vars();
    others.extend(b.vars());
    others.remove(x);
    let (da, db) = (a.degree_in(x) as usize, b.degree_in(x) as usize);
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ attempt);
        let point: BTreeMap<Var, u64> = others
            .iter()
            .map(|v| (v.clone(), rng.gen_range(1..P)))
            .collect();
        let ia = image(a, x, &point)?;
        let ib = image(b, x, &point)?;
        if ia[da] == 0 || ib[db] == 0 {
            continue;
        }
        return Some(gcd_degree(ia, ib));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::{q, q_frac};

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(reduce(&q(-1)), Some(P - 1));
        assert_eq!(mul(reduce(&q_frac(1, 3)).unwrap(), 3), 1);
    }

    #[test]
    fn bounds() {
        let u = Poly::var(Var::U);
        let v = Poly::var(Var::V);
        let a = &(&u - &v) * &(&u + &Poly::one());
        let b = &(&u - &v) * &(&(&u * &v) - &Poly::one());
        assert_eq!(gcd_degree_bound(&a, &b, &Var::U), Some(1));
        let c = &u + &v;
        assert_eq!(gcd_degree_bound(&a, &c, &Var::U), Some(0));
    }
}
