//! Elements of `g⊗g` and `g⊗g⊗g` with rational-function coefficients.
//!
//! Two-leg tensors use the spectral variables `u` (leg 1) and `v` (leg 2);
//! three-leg tensors use `u1, u2, u3`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::lie::{GElement, GPoly, LieTable};
use crate::ratfun::{RatFun, RatFunSum, Var, Q};
use crate::Result;

/// Sparse `Σ c_ab(u, v) x_a ⊗ x_b`.
#[derive(Debug, Clone)]
pub struct Tensor2 {
    table: Arc<LieTable>,
    terms: BTreeMap<(usize, usize), RatFun>,
}

impl PartialEq for Tensor2 {
    fn eq(&self, other: &Self) -> bool {
        self.table.n() == other.table.n() && self.terms == other.terms
    }
}

impl Eq for Tensor2 {}

impl Tensor2 {
    pub fn zero(table: &Arc<LieTable>) -> Self {
        Tensor2 {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c · x_a ⊗ x_b`.
    pub fn elementary(table: &Arc<LieTable>, a: usize, b: usize, c: RatFun) -> Self {
        let mut t = Tensor2::zero(table);
        t.add_term(a, b, &c);
        t
    }

    /// `f · x ⊗ y` for arbitrary elements.
    pub fn from_pair(table: &Arc<LieTable>, x: &GElement, y: &GElement, f: &RatFun) -> Self {
        let mut t = Tensor2::zero(table);
        for (a, xa) in x.support() {
            for (b, yb) in y.support() {
                t.add_term(a, b, &f.scale(&(xa * yb)));
            }
        }
        t
    }

    /// Constant tensor from a coefficient matrix.
    pub fn from_matrix(table: &Arc<LieTable>, m: &[Vec<Q>]) -> Self {
        let mut t = Tensor2::zero(table);
        for (a, row) in m.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                t.add_term(a, b, &RatFun::constant(c.clone()));
            }
        }
        t
    }

    pub fn table(&self) -> &Arc<LieTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &RatFun)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: usize, b: usize) -> RatFun {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: &RatFun) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c);
        }
        out
    }

    pub fn neg(&self) -> Tensor2 {
        Tensor2 {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by `f`.
    pub fn mul_fn(&self, f: &RatFun) -> Tensor2 {
        let mut out = Tensor2::zero(&self.table);
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, &(c * f));
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Tensor2 {
        self.mul_fn(&RatFun::constant(c.clone()))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> Result<RatFun>) -> Result<Tensor2> {
        let mut out = Tensor2::zero(&self.table);
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, &f(c)?);
        }
        Ok(out)
    }

    /// Exchanges the legs and the spectral variables `u ↔ v`.
    pub fn swap(&self) -> Tensor2 {
        let mut out = Tensor2::zero(&self.table);
        for ((a, b), c) in &self.terms {
            out.add_term(*b, *a, &c.rename(swap_uv));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient has a constant reduced denominator.
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RatFun::is_polynomial)
    }

    /// `swap(t) = -t`.
    pub fn is_skew(&self) -> bool {
        self.swap().add(self).is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|c| c.constant_value().is_some())
    }
}

fn swap_uv(v: &Var) -> Var {
    match v {
        Var::U => Var::V,
        Var::V => Var::U,
        other => other.clone(),
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.table.n();
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "({c})*{}(x){}",
                self.table.label(*a).display(n),
                self.table.label(*b).display(n)
            )?;
        }
        Ok(())
    }
}

/// Sparse `Σ c_abc(u1, u2, u3) x_a ⊗ x_b ⊗ x_c`.
#[derive(Debug, Clone)]
pub struct Tensor3 {
    table: Arc<LieTable>,
    terms: BTreeMap<(usize, usize, usize), RatFun>,
}

impl PartialEq for Tensor3 {
    fn eq(&self, other: &Self) -> bool {
        self.table.n() == other.table.n() && self.terms == other.terms
    }
}

impl Eq for Tensor3 {}

impl Tensor3 {
    pub fn zero(table: &Arc<LieTable>) -> Self {
        Tensor3 {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn table(&self) -> &Arc<LieTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize), &RatFun)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize) -> RatFun {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: (usize, usize, usize), c: &RatFun) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Tensor3 {
        Tensor3 {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Moves leg 1 to leg 2, leg 2 to leg 3 and leg 3 to leg 1, carrying
    /// the spectral variables along.
    pub fn rotate(&self) -> Tensor3 {
        let mut out = Tensor3::zero(&self.table);
        for ((a, b, c), f) in &self.terms {
            out.add_term((*c, *a, *b), &f.rename(rotate_vars));
        }
        out
    }

    /// Exchanges legs 1 and 2 together with `u1 ↔ u2`.
    pub fn swap12(&self) -> Tensor3 {
        let mut out = Tensor3::zero(&self.table);
        for ((a, b, c), f) in &self.terms {
            out.add_term(
                (*b, *a, *c),
                &f.rename(|v| match v {
                    Var::U1 => Var::U2,
                    Var::U2 => Var::U1,
                    o => o.clone(),
                }),
            );
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> Result<RatFun>) -> Result<Tensor3> {
        let mut out = Tensor3::zero(&self.table);
        for (k, c) in &self.terms {
            out.add_term(*k, &f(c)?);
        }
        Ok(out)
    }

    pub(crate) fn from_sums(table: &Arc<LieTable>, sums: Sums3) -> Tensor3 {
        let mut out = Tensor3::zero(table);
        for (k, s) in sums {
            let c = s.total();
            if !c.is_zero() {
                out.terms.insert(k, c);
            }
        }
        out
    }
}

fn rotate_vars(v: &Var) -> Var {
    match v {
        Var::U1 => Var::U2,
        Var::U2 => Var::U3,
        Var::U3 => Var::U1,
        o => o.clone(),
    }
}

/// Which pair of the three legs a two-leg tensor occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl Legs {
    fn vars(self) -> (Var, Var) {
        match self {
            Legs::L12 => (Var::U1, Var::U2),
            Legs::L13 => (Var::U1, Var::U3),
            Legs::L23 => (Var::U2, Var::U3),
        }
    }
}

/// A two-leg tensor placed on two of three legs, variables renamed to
/// the legs' spectral parameters. The omitted leg carries the identity.
#[derive(Debug, Clone)]
pub struct Embedded {
    legs: Legs,
    terms: Vec<((usize, usize), RatFun)>,
}

impl Embedded {
    pub fn legs(&self) -> Legs {
        self.legs
    }

    pub fn terms(&self) -> &[((usize, usize), RatFun)] {
        &self.terms
    }
}

pub fn embed(r: &Tensor2, legs: Legs) -> Embedded {
    let (x, y) = legs.vars();
    let rename = |v: &Var| match v {
        Var::U => x.clone(),
        Var::V => y.clone(),
        o => o.clone(),
    };
    Embedded {
        legs,
        terms: r
            .terms
            .iter()
            .map(|(k, c)| (*k, c.rename(rename)))
            .collect(),
    }
}

/// The three commutators appearing in the classical Yang–Baxter operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegPair {
    /// `[r₁₂, s₁₃]`
    P12_13,
    /// `[r₁₂, s₂₃]`
    P12_23,
    /// `[r₁₃, s₂₃]`
    P13_23,
}

pub fn leg_bracket(r: &Tensor2, s: &Tensor2, pair: LegPair) -> Result<Tensor3> {
    let table = r.table();
    table.check_same(s.table().n())?;
    let (lr, ls) = match pair {
        LegPair::P12_13 => (Legs::L12, Legs::L13),
        LegPair::P12_23 => (Legs::L12, Legs::L23),
        LegPair::P13_23 => (Legs::L13, Legs::L23),
    };
    let er = embed(r, lr);
    let es = embed(s, ls);
    Ok(bracket_embedded(table, &er, &es, pair))
}

pub(crate) type Sums3 = BTreeMap<(usize, usize, usize), RatFunSum>;

pub(crate) fn bracket_embedded(
    table: &Arc<LieTable>,
    er: &Embedded,
    es: &Embedded,
    pair: LegPair,
) -> Tensor3 {
    let mut sums = Sums3::new();
    accumulate_bracket(table, er, es, pair, &mut sums);
    Tensor3::from_sums(table, sums)
}

/// Adds the leg commutator of two embedded tensors into `sums`.
pub(crate) fn accumulate_bracket(
    table: &LieTable,
    er: &Embedded,
    es: &Embedded,
    pair: LegPair,
    sums: &mut Sums3,
) {
    for ((a, b), f) in &er.terms {
        for ((c, d), g) in &es.terms {
            let (x, y) = match pair {
                LegPair::P12_13 => (*a, *c),
                LegPair::P12_23 => (*b, *c),
                LegPair::P13_23 => (*b, *d),
            };
            let consts = table.structure(x, y);
            if consts.is_empty() {
                continue;
            }
            let fg = f * g;
            for (k, sc) in consts {
                let key = match pair {
                    LegPair::P12_13 => (*k, *b, *d),
                    LegPair::P12_23 => (*a, *k, *d),
                    LegPair::P13_23 => (*a, *c, *k),
                };
                sums.entry(key).or_default().add_scaled(&fg, Some(sc));
            }
        }
    }
}

/// `[p(u)⊗1 + 1⊗p(v), t]`.
pub fn ad2_action(p: &GPoly, t: &Tensor2) -> Result<Tensor2> {
    let table = t.table();
    table.check_same(p.n())?;
    let mut sums: BTreeMap<(usize, usize), RatFunSum> = BTreeMap::new();
    let u = RatFun::var(Var::U);
    let v = RatFun::var(Var::V);
    for (d, g) in p.terms() {
        let ud = power(&u, *d);
        let vd = power(&v, *d);
        for ((a, b), c) in &t.terms {
            for (i, gi) in g.support() {
                for (k, sc) in table.structure(i, *a) {
                    let coeff = gi * sc;
                    sums.entry((*k, *b))
                        .or_default()
                        .add_scaled(&(c * &ud), Some(&coeff));
                }
                for (k, sc) in table.structure(i, *b) {
                    let coeff = gi * sc;
                    sums.entry((*a, *k))
                        .or_default()
                        .add_scaled(&(c * &vd), Some(&coeff));
                }
            }
        }
    }
    let mut out = Tensor2::zero(table);
    for ((a, b), s) in sums {
        out.add_term(a, b, &s.total());
    }
    Ok(out)
}

pub(crate) fn power(x: &RatFun, d: i64) -> RatFun {
    if d >= 0 {
        x.pow(d as u32)
    } else {
        x.recip()
            .expect("spectral variable is nonzero")
            .pow((-d) as u32)
    }
}
