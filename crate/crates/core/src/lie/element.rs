use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ratfun::Q;
use crate::Result;

use super::LieTable;

/// Element of `sl(n)` in coordinates over the table basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    n: usize,
    coords: Vec<Q>,
}

impl GElement {
    pub fn zero(n: usize, dim: usize) -> Self {
        GElement {
            n,
            coords: vec![Q::zero(); dim],
        }
    }

    pub fn zero_in(table: &LieTable) -> Self {
        GElement::zero(table.n(), table.dim())
    }

    pub fn basis(n: usize, dim: usize, a: usize) -> Self {
        let mut x = GElement::zero(n, dim);
        x.coords[a] = Q::from_integer(1.into());
        x
    }

    pub fn from_coords(n: usize, coords: Vec<Q>) -> Self {
        GElement { n, coords }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> GElement {
        GElement {
            n: self.n,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &GElement) -> GElement {
        debug_assert_eq!(self.n, other.n);
        GElement {
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GElement) -> GElement {
        self.add(&other.scale(&Q::from_integer((-1).into())))
    }

    pub fn add_scaled(&mut self, a: usize, c: &Q) {
        self.coords[a] += c;
    }

    /// Nonzero `(index, coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// `[x, y]` via structure constants.
pub fn bracket(table: &LieTable, x: &GElement, y: &GElement) -> Result<GElement> {
    table.check_same(x.n)?;
    table.check_same(y.n)?;
    let mut out = GElement::zero_in(table);
    for (a, xa) in x.support() {
        for (b, yb) in y.support() {
            for (k, c) in table.structure(a, b) {
                out.coords[*k] += xa * yb * c;
            }
        }
    }
    Ok(out)
}

/// Polynomial (or Laurent) element `Σ_d x_d u^d` of `g[u]` / `g((u⁻¹))`.
/// No zero coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GPoly {
    n: usize,
    dim: usize,
    terms: BTreeMap<i64, GElement>,
}

impl GPoly {
    pub fn zero_in(table: &LieTable) -> Self {
        GPoly {
            n: table.n(),
            dim: table.dim(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(x: GElement, degree: i64) -> Self {
        let dim = x.coords.len();
        let mut p = GPoly {
            n: x.n,
            dim,
            terms: BTreeMap::new(),
        };
        p.add_term(degree, &x);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &GElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: i64) -> GElement {
        self.terms
            .get(&d)
            .cloned()
            .unwrap_or_else(|| GElement::zero(self.n, self.dim))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 0)
    }

    pub fn add_term(&mut self, d: i64, x: &GElement) {
        if x.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(d)
            .or_insert_with(|| GElement::zero(x.n, x.coords.len()));
        *slot = slot.add(x);
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &GPoly) -> GPoly {
        let mut out = self.clone();
        for (d, x) in &other.terms {
            out.add_term(*d, x);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> GPoly {
        let mut out = GPoly {
            n: self.n,
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (d, x) in &self.terms {
            out.add_term(*d, &x.scale(c));
        }
        out
    }

    pub fn shift(&self, by: i64) -> GPoly {
        GPoly {
            n: self.n,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(d, x)| (d + by, x.clone()))
                .collect(),
        }
    }
}

/// Degreewise bracket `[p, q]` on `g[u]` (or on Laurent elements).
pub fn bracket_poly(table: &LieTable, p: &GPoly, q: &GPoly) -> Result<GPoly> {
    table.check_same(p.n)?;
    table.check_same(q.n)?;
    let mut out = GPoly::zero_in(table);
    for (a, x) in &p.terms {
        for (b, y) in &q.terms {
            out.add_term(a + b, &bracket(table, x, y)?);
        }
    }
    Ok(out)
}
