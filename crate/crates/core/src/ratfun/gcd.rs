//! Multivariate gcd by content/primitive-part recursion on the top
//! variable, with a primitive pseudo-remainder sequence for the
//! univariate step. A modular degree bound short-cuts the common cases
//! of a trivial gcd and of one operand dividing the other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{modp, Poly, Q};

/// Monic gcd (leading coefficient 1 under graded-lex). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    let x = vars
        .into_iter()
        .next()
        .expect("non-constant polynomial has a variable");

    match (a.contains_var(&x), b.contains_var(&x)) {
        (true, true) => {
            let ua = a.to_univariate(&x);
            let ub = b.to_univariate(&x);
            // only the smaller operand's content is computed in full; the
            // gcd of contents is then seeded by it
            let bound = modp::gcd_degree_bound(a, b, &x);
            let (small, big, big_poly) = if a.len() <= b.len() {
                (ua, ub, b)
            } else {
                (ub, ua, a)
            };
            let cs = content(&small);
            let c = content_with(cs.clone(), &big);
            if bound == Some(0) {
                return c;
            }
            let ps = if cs.is_one() {
                small
            } else {
                divide_all(&small, &cs)
            };
            if bound == Some(degree(&ps)) {
                let pp = Poly::from_univariate(&x, &ps);
                if big_poly.div_exact(&pp).is_some() {
                    return (&c * &pp).monic();
                }
            }
            let g = prs(scale_rational(big), ps);
            (&c * &Poly::from_univariate(&x, &g)).monic()
        }
        (true, false) => content_with(b.clone(), &a.to_univariate(&x)),
        (false, true) => content_with(a.clone(), &b.to_univariate(&x)),
        (false, false) => unreachable!("x was drawn from the variables of a or b"),
    }
}

/// gcd of the coefficients of a univariate representation.
fn content(coeffs: &[Poly]) -> Poly {
    content_with(Poly::zero(), coeffs)
}

/// gcd of `seed` and every coefficient.
fn content_with(seed: Poly, coeffs: &[Poly]) -> Poly {
    let mut g = seed;
    if g.is_one() {
        return g;
    }
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut p: Vec<Poly>) -> Vec<Poly> {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[Poly]) -> usize {
    p.len().saturating_sub(1)
}

/// Pseudo-remainder of `f` by `g` (both univariate over Q[rest]).
fn prem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let n = degree(g);
    let lg = g.last().expect("nonzero divisor").clone();
    let mut r = trim(f.to_vec());
    while !r.is_empty() && degree(&r) >= n {
        let shift = degree(&r) - n;
        let lr = r.last().cloned().expect("nonempty");
        let mut next: Vec<Poly> = r.iter().map(|c| c * &lg).collect();
        for (i, gc) in g.iter().enumerate() {
            let t = gc * &lr;
            next[i + shift] = &next[i + shift] - &t;
        }
        r = trim(next);
    }
    r
}

/// Divides by the polynomial content and by the rational content, so
/// that pseudo-remainders keep integer coefficients of bounded size.
fn primitive_part(p: Vec<Poly>) -> Vec<Poly> {
    let c = content(&p);
    let p = if c.is_one() { p } else { divide_all(&p, &c) };
    scale_rational(p)
}

fn scale_rational(p: Vec<Poly>) -> Vec<Poly> {
    let r = rational_content(&p);
    if r.is_one() {
        p
    } else {
        let inv = r.recip();
        p.iter().map(|x| x.scale(&inv)).collect()
    }
}

/// `gcd(numerators) / lcm(denominators)` over every rational coefficient.
fn rational_content(p: &[Poly]) -> Q {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in p.iter().flat_map(|x| x.terms().map(|(_, c)| c)) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Q::one()
    } else {
        Q::new(num, den)
    }
}

/// Primitive part of the gcd; `g` must be primitive, `f` need not be.
fn prs(f: Vec<Poly>, g: Vec<Poly>) -> Vec<Poly> {
    let (mut f, mut g) = (trim(f), primitive_part(trim(g)));
    if degree(&f) < degree(&g) {
        std::mem::swap(&mut f, &mut g);
        if g.is_empty() {
            return primitive_part(f);
        }
        g = primitive_part(g);
    }
    loop {
        if g.is_empty() {
            return primitive_part(f);
        }
        if degree(&g) == 0 {
            // both inputs are primitive, so a unit remains
            return vec![Poly::one()];
        }
        let r = prem(&f, &g);
        if r.is_empty() {
            return primitive_part(g);
        }
        f = g;
        g = primitive_part(r);
    }
}
