use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::lie::{
    calibrate_casimir, casimir, dj_rmatrix, make_sl, BasisLabel, CasimirSpec, LieTable,
};
use crate::ratfun::{q_frac, RatFun, Var, Q};
use crate::tensor::Tensor2;
use crate::{Error, Result};

use super::quasi_rational_kernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogName {
    Gamma1,
    Gamma2,
    Gamma3,
    Gamma4,
    Q0,
    Q1,
    Q2,
    Eq5Rational,
}

impl CatalogName {
    pub const ALL: [CatalogName; 8] = [
        CatalogName::Gamma1,
        CatalogName::Gamma2,
        CatalogName::Gamma3,
        CatalogName::Gamma4,
        CatalogName::Q0,
        CatalogName::Q1,
        CatalogName::Q2,
        CatalogName::Eq5Rational,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Gamma1 => "gamma1",
            CatalogName::Gamma2 => "gamma2",
            CatalogName::Gamma3 => "gamma3",
            CatalogName::Gamma4 => "gamma4",
            CatalogName::Q0 => "q0",
            CatalogName::Q1 => "q1",
            CatalogName::Q2 => "q2",
            CatalogName::Eq5Rational => "eq5_rational",
        }
    }

    /// Entries written in terms of `e, f, h` exist only for `sl(2)`.
    pub fn sl2_only(self) -> bool {
        matches!(
            self,
            CatalogName::Q1 | CatalogName::Q2 | CatalogName::Eq5Rational
        )
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown catalog entry `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub matrix: Tensor2,
    pub omega: CasimirSpec,
}

impl CatalogEntry {
    pub fn table(&self) -> &Arc<LieTable> {
        self.matrix.table()
    }
}

fn u() -> RatFun {
    RatFun::var(Var::U)
}

fn v() -> RatFun {
    RatFun::var(Var::V)
}

/// `Ω/(u-v)`.
pub fn gamma2(omega: &CasimirSpec) -> Tensor2 {
    let k = RatFun::one().div(&(&u() - &v())).expect("u - v is nonzero");
    omega.tensor().mul_fn(&k)
}

/// `vΩ/(v-u)`.
pub fn trig_part(omega: &CasimirSpec) -> Result<Tensor2> {
    let k = v().div(&(&v() - &u()))?;
    Ok(omega.tensor().mul_fn(&k))
}

/// `vΩ/(v-u) + r_DJ`.
pub fn gamma3(omega: &CasimirSpec) -> Result<Tensor2> {
    let dj = dj_rmatrix(omega.table(), omega)?;
    Ok(trig_part(omega)?.add(&dj.tensor))
}

/// `uvΩ/(v-u)`.
pub fn gamma4(omega: &CasimirSpec) -> Tensor2 {
    omega.tensor().mul_fn(&quasi_rational_kernel())
}

pub fn q0(omega: &CasimirSpec) -> Tensor2 {
    gamma4(omega)
}

struct Sl2 {
    e: usize,
    f: usize,
    h: usize,
}

fn sl2(table: &LieTable) -> Result<Sl2> {
    if table.n() != 2 {
        return Err(Error::invalid(format!(
            "entry is defined on sl(2) only, got sl({})",
            table.n()
        )));
    }
    let idx = |l| table.index_of(l).expect("sl(2) basis");
    Ok(Sl2 {
        e: idx(BasisLabel::E(1, 2)),
        f: idx(BasisLabel::E(2, 1)),
        h: idx(BasisLabel::H(1)),
    })
}

fn constant(c: Q) -> RatFun {
    RatFun::constant(c)
}

/// `uvΩ/(v-u) + e⊗h - h⊗e`.
pub fn q1(omega: &CasimirSpec) -> Result<Tensor2> {
    let t = omega.table();
    let b = sl2(t)?;
    let mut r = gamma4(omega);
    r.add_term(b.e, b.h, &RatFun::one());
    r.add_term(b.h, b.e, &RatFun::int(-1));
    Ok(r)
}

/// `uvΩ/(v-u) + ½h⊗e - ½e⊗h - eu⊗f + f⊗ev`.
pub fn q2(omega: &CasimirSpec) -> Result<Tensor2> {
    let t = omega.table();
    let b = sl2(t)?;
    let mut r = gamma4(omega);
    r.add_term(b.h, b.e, &constant(q_frac(1, 2)));
    r.add_term(b.e, b.h, &constant(q_frac(-1, 2)));
    r.add_term(b.e, b.f, &-&u());
    r.add_term(b.f, b.e, &v());
    Ok(r)
}

/// The rational matrix `Ω/(u-v) + eu⊗h - h⊗ev`.
pub fn eq5_rational(omega: &CasimirSpec) -> Result<Tensor2> {
    let t = omega.table();
    let b = sl2(t)?;
    let mut r = gamma2(omega);
    r.add_term(b.e, b.h, &u());
    r.add_term(b.h, b.e, &-&v());
    Ok(r)
}

fn calibrated_scale() -> Result<Q> {
    static SCALE: OnceLock<std::result::Result<Q, Error>> = OnceLock::new();
    SCALE
        .get_or_init(|| {
            let t = make_sl(2)?;
            Ok(calibrate_casimir(&t)?.scale().clone())
        })
        .clone()
}

/// The Casimir tensor of `sl(n)` at the scale fixed by calibration on `sl(2)`.
pub fn calibrated_casimir(table: &Arc<LieTable>) -> Result<CasimirSpec> {
    casimir(table, &calibrated_scale()?)
}

pub fn catalog_entry(name: CatalogName, omega: &CasimirSpec) -> Result<CatalogEntry> {
    let matrix = match name {
        CatalogName::Gamma1 => Tensor2::zero(omega.table()),
        CatalogName::Gamma2 => gamma2(omega),
        CatalogName::Gamma3 => gamma3(omega)?,
        CatalogName::Gamma4 => gamma4(omega),
        CatalogName::Q0 => q0(omega),
        CatalogName::Q1 => q1(omega)?,
        CatalogName::Q2 => q2(omega)?,
        CatalogName::Eq5Rational => eq5_rational(omega)?,
    };
    Ok(CatalogEntry {
        name,
        matrix,
        omega: omega.clone(),
    })
}

/// All entries defined on `table`, built from the calibrated Casimir.
pub fn catalog(table: &Arc<LieTable>) -> Result<Vec<CatalogEntry>> {
    let omega = calibrated_casimir(table)?;
    CatalogName::ALL
        .into_iter()
        .filter(|n| table.n() == 2 || !n.sl2_only())
        .map(|n| catalog_entry(n, &omega))
        .collect()
}
