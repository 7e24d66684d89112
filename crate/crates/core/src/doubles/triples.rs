use std::fmt;
use std::sync::Arc;

use crate::lie::{BasisLabel, GElement, GPoly, LieTable};
use crate::linalg::Row;
use crate::Result;

use super::{Case, Model, ModelSubspace, Window};

pub fn case2_model(table: &Arc<LieTable>, window: Window) -> Arc<Model> {
    Model::new(table, window, Case::Two)
}

pub fn case3_model(table: &Arc<LieTable>, window: Window) -> Arc<Model> {
    Model::new(table, window, Case::Three)
}

pub fn case4_model(table: &Arc<LieTable>, window: Window) -> Arc<Model> {
    Model::new(table, window, Case::Four)
}

fn expect_case(model: &Model, case: Case) -> Result<()> {
    if model.case() != case {
        return Err(crate::Error::invalid(format!(
            "expected a {case:?} model, got {:?}",
            model.case()
        )));
    }
    Ok(())
}

/// Loop monomials `x u^s` for `s` in `range`, with zero extra components.
fn loop_monomials(model: &Model, range: std::ops::RangeInclusive<i64>) -> Result<Vec<Row>> {
    let t = model.table();
    let zero = GElement::zero_in(t);
    let extra: Vec<&GElement> = vec![&zero; model.case().extra_summands()];
    let mut rows = Vec::new();
    for s in range {
        for a in 0..t.dim() {
            rows.push(model.row(&GPoly::monomial(t.basis(a), s), &extra)?);
        }
    }
    Ok(rows)
}

/// `g[u]` inside `g((u⁻¹))`.
pub fn case2_p(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Two)?;
    ModelSubspace::new(model, loop_monomials(model, 0..=model.window().hi())?)
}

/// `u⁻¹g[[u⁻¹]]`.
pub fn case2_pstar(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Two)?;
    ModelSubspace::new(model, loop_monomials(model, model.window().lo()..=-1)?)
}

/// `p ↦ (p, p(0))`.
pub fn case3_p(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Three)?;
    let t = model.table();
    let mut rows = Vec::new();
    for s in 0..=model.window().hi() {
        for a in 0..t.dim() {
            let x = t.basis(a);
            let a0 = if s == 0 {
                x.clone()
            } else {
                GElement::zero_in(t)
            };
            rows.push(model.row(&GPoly::monomial(x, s), &[&a0])?);
        }
    }
    ModelSubspace::new(model, rows)
}

/// `u⁻¹g[[u⁻¹]] ⊕ {(l, k) ∈ b₊ ⊕ b₋ : l_h + k_h = 0}`.
pub fn case3_pstar(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Three)?;
    let t = model.table();
    let mut rows = loop_monomials(model, model.window().lo()..=-1)?;
    let zero = GElement::zero_in(t);
    let empty = GPoly::zero_in(t);
    for (a, label) in t.labels().iter().enumerate() {
        let x = t.basis(a);
        match *label {
            BasisLabel::E(i, j) if i < j => rows.push(model.row(&GPoly::monomial(x, 0), &[&zero])?),
            BasisLabel::E(_, _) => rows.push(model.row(&empty, &[&x])?),
            BasisLabel::H(_) => {
                let minus = x.scale(&-crate::ratfun::q(1));
                rows.push(model.row(&GPoly::monomial(x, 0), &[&minus])?)
            }
        }
    }
    ModelSubspace::new(model, rows)
}

/// `i(g[u])` with `i(p) = p + p₀ + p₁ε`.
pub fn case4_p(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Four)?;
    let t = model.table();
    let zero = GElement::zero_in(t);
    let mut rows = Vec::new();
    for s in 0..=model.window().hi() {
        for a in 0..t.dim() {
            let x = t.basis(a);
            let a0 = if s == 0 { x.clone() } else { zero.clone() };
            let a1 = if s == 1 { x.clone() } else { zero.clone() };
            rows.push(model.row(&GPoly::monomial(x, s), &[&a0, &a1])?);
        }
    }
    ModelSubspace::new(model, rows)
}

/// `g[[u⁻¹]] ⊕ gε`.
pub fn case4_pstar(model: &Arc<Model>) -> Result<ModelSubspace> {
    expect_case(model, Case::Four)?;
    let t = model.table();
    let mut rows = loop_monomials(model, model.window().lo()..=0)?;
    let zero = GElement::zero_in(t);
    let empty = GPoly::zero_in(t);
    for a in 0..t.dim() {
        rows.push(model.row(&empty, &[&zero, &t.basis(a)])?);
    }
    ModelSubspace::new(model, rows)
}

/// The three conditions on a complement `W` of the embedded `P`, evaluated
/// at the model's window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransversalityReport {
    pub window: Window,
    pub tail_n: i64,
    /// `W ∩ P = 0`.
    pub trivial_intersection: bool,
    /// `W ⊕ P` is the whole truncated space.
    pub complementary: bool,
    /// `W ⊇ u^(-N) g[[u⁻¹]]` within the window.
    pub contains_tail: bool,
}

impl TransversalityReport {
    pub fn all(&self) -> bool {
        self.trivial_intersection && self.complementary && self.contains_tail
    }
}

impl fmt::Display for TransversalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window {}: W∩P=0 {}, W⊕P=D {}, W⊇u^-{}g[[u^-1]] {} (truncation-level check)",
            self.window,
            self.trivial_intersection,
            self.complementary,
            self.tail_n,
            self.contains_tail
        )
    }
}

/// Compares `w` against the embedded `P` of the same model.
pub fn check_transversality(w: &ModelSubspace, tail_n: i64) -> Result<TransversalityReport> {
    let model = w.model();
    let p = match model.case() {
        Case::Two => case2_p(model)?,
        Case::Three => case3_p(model)?,
        Case::Four => case4_p(model)?,
    };
    let trivial_intersection = w.intersection(&p).dim() == 0;
    let complementary = trivial_intersection && w.sum(&p).dim() == model.dim();
    let lo = model.window().lo();
    let tail = loop_monomials(model, lo..=(-tail_n).min(model.window().hi()))?;
    let contains_tail = tail.iter().all(|r| w.contains(r));
    Ok(TransversalityReport {
        window: model.window(),
        tail_n,
        trivial_intersection,
        complementary,
        contains_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::make_sl;

    #[test]
    fn case4_triple() {
        let t = make_sl(2).unwrap();
        let m = case4_model(&t, Window::default());
        let p = case4_p(&m).unwrap();
        let ps = case4_pstar(&m).unwrap();
        assert!(p.is_lagrangian_truncated());
        assert!(ps.is_lagrangian_truncated());
        assert!(check_transversality(&ps, 0).unwrap().all());
        assert!(!check_transversality(&p, 0).unwrap().trivial_intersection);
        assert!(
            !check_transversality(&ModelSubspace::zero(&m), 0)
                .unwrap()
                .complementary
        );
    }

    #[test]
    fn case2_and_case3_triples() {
        for n in 2..=3 {
            let t = make_sl(n).unwrap();
            let w = Window::new(-4, 3).unwrap();
            let m2 = case2_model(&t, w);
            let (p2, s2) = (case2_p(&m2).unwrap(), case2_pstar(&m2).unwrap());
            assert!(p2.is_lagrangian_truncated() && s2.is_lagrangian_truncated());
            assert!(check_transversality(&s2, 1).unwrap().all());
            let m3 = case3_model(&t, w);
            let (p3, s3) = (case3_p(&m3).unwrap(), case3_pstar(&m3).unwrap());
            assert!(p3.is_lagrangian_truncated() && s3.is_lagrangian_truncated());
            let r = check_transversality(&s3, 1).unwrap();
            assert!(r.all(), "{r}");
        }
    }

    #[test]
    fn small_subspaces_not_lagrangian() {
        let t = make_sl(2).unwrap();
        let m = case4_model(&t, Window::default());
        let z = GElement::zero_in(&t);
        let only_e = ModelSubspace::new(
            &m,
            vec![m.row(&GPoly::zero_in(&t), &[&t.basis(0), &z]).unwrap()],
        )
        .unwrap();
        assert!(!only_e.is_lagrangian_truncated());
    }
}
