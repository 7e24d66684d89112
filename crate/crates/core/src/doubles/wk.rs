use std::sync::Arc;

use crate::lie::{orthogonal_complement_g, parabolic, BasisLabel, GElement, GPoly, LieTable};
use crate::linalg::{self, Row};
use crate::ratfun::Q;
use crate::{Error, Result};

use super::{Case, Model, ModelSubspace, Window};

/// Exponent shift of `E(i,j)` under `d_k⁻¹ · d_k` with
/// `d_k = diag(1,…,1, u,…,u)` (`k` ones).
fn shift(label: BasisLabel, k: usize) -> i64 {
    match label {
        BasisLabel::E(i, j) if i <= k && k < j => 1,
        BasisLabel::E(i, j) if j <= k && k < i => -1,
        _ => 0,
    }
}

fn check_k(table: &LieTable, k: usize) -> Result<()> {
    if k >= table.n() {
        return Err(Error::invalid(format!(
            "k={k} outside 0..={}",
            table.n() - 1
        )));
    }
    Ok(())
}

fn loop_rows(model: &Model, k: usize) -> Result<Vec<Row>> {
    let t = model.table();
    let w = model.window();
    let zero = GElement::zero_in(t);
    let mut rows = Vec::new();
    for a in 0..t.dim() {
        let top = shift(t.label(a), k).min(w.hi());
        for s in w.lo()..=top {
            rows.push(model.row(&GPoly::monomial(t.basis(a), s), &[&zero, &zero])?);
        }
    }
    Ok(rows)
}

/// `d_k⁻¹ sl(n)[[u⁻¹]] d_k` cut to the window, inside the `D₄` model.
pub fn wk_loop_part(table: &Arc<LieTable>, k: usize, window: Window) -> Result<ModelSubspace> {
    check_k(table, k)?;
    let model = Model::new(table, window, Case::Four);
    let rows = loop_rows(&model, k)?;
    ModelSubspace::new(&model, rows)
}

/// `W_k = d_k⁻¹ sl(n)[[u⁻¹]] d_k ⊕ sl(n)[ε]` cut to the window.
pub fn build_wk(table: &Arc<LieTable>, k: usize, window: Window) -> Result<ModelSubspace> {
    check_k(table, k)?;
    let model = Model::new(table, window, Case::Four);
    let mut rows = loop_rows(&model, k)?;
    let zero = GElement::zero_in(table);
    let empty = GPoly::zero_in(table);
    for a in 0..table.dim() {
        rows.push(model.row(&empty, &[&table.basis(a), &zero])?);
        rows.push(model.row(&empty, &[&zero, &table.basis(a)])?);
    }
    ModelSubspace::new(&model, rows)
}

/// Orthogonal complement for the truncated form of the subspace's model.
pub fn orth_complement_truncated(sub: &ModelSubspace) -> ModelSubspace {
    sub.orth_complement()
}

/// Subspace of `g ⊕ εg` in coordinates `(a₀, a₁)`.
#[derive(Debug, Clone)]
pub struct DualNumberSubspace {
    table: Arc<LieTable>,
    rows: Vec<Row>,
}

impl DualNumberSubspace {
    pub fn new(table: &Arc<LieTable>, a0: &[GElement], a1: &[GElement]) -> Self {
        let d = table.dim();
        let zero = vec![Q::default(); d];
        let mut rows: Vec<Row> = a0
            .iter()
            .map(|x| [x.coords(), &zero[..]].concat())
            .collect();
        rows.extend(a1.iter().map(|x| [&zero[..], x.coords()].concat()));
        DualNumberSubspace {
            table: table.clone(),
            rows: linalg::span_basis(&rows),
        }
    }

    pub fn table(&self) -> &Arc<LieTable> {
        &self.table
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn same_span(&self, other: &DualNumberSubspace) -> bool {
        linalg::same_span(&self.rows, &other.rows)
    }
}

/// Image of `i(P) ∩ W_k` in `W_k / W_k^⊥ ≅ sl(n)[ε]`, checked against
/// `P_k + ε P_k^⊥`.
pub fn quotient_image_of_p(
    table: &Arc<LieTable>,
    k: usize,
    window: Window,
) -> Result<DualNumberSubspace> {
    if k < 1 || k >= table.n() {
        return Err(Error::invalid(format!(
            "k={k} outside 1..={}",
            table.n() - 1
        )));
    }
    let wk = build_wk(table, k, window)?;
    let model = wk.model().clone();
    let perp = wk.orth_complement();
    let p = super::case4_p(&model)?;
    let meet = p.intersection(&wk);
    let empty = GPoly::zero_in(table);
    let mut a0s = Vec::new();
    let mut a1s = Vec::new();
    for r in meet.rows() {
        let (_, extra) = model.parts(r);
        let d1 = model.row(&empty, &[&extra[0], &extra[1]])?;
        let residual: Row = r.iter().zip(&d1).map(|(x, y)| x - y).collect();
        if !perp.contains(&residual) {
            return Err(Error::Postcondition(
                "loop part of P ∩ W_k is not in W_k^⊥; the (a0, a1) identification fails".into(),
            ));
        }
        a0s.push(extra[0].clone());
        a1s.push(extra[1].clone());
    }
    let mut rows: Vec<Row> = a0s
        .iter()
        .zip(&a1s)
        .map(|(x, y)| [x.coords(), y.coords()].concat())
        .collect();
    rows = linalg::span_basis(&rows);
    let image = DualNumberSubspace {
        table: table.clone(),
        rows,
    };
    let pk = parabolic(table, k)?;
    let expected = DualNumberSubspace::new(
        table,
        pk.elements(),
        orthogonal_complement_g(&pk).elements(),
    );
    if !image.same_span(&expected) {
        return Err(Error::Postcondition(format!(
            "image of P ∩ W_{k} has dimension {} and differs from P_k + εP_k^⊥ (dimension {})",
            image.dim(),
            expected.dim()
        )));
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::make_sl;

    #[test]
    fn sl2_w1_shape() {
        let t = make_sl(2).unwrap();
        let w = Window::default();
        let wk = build_wk(&t, 1, w).unwrap();
        let m = wk.model().clone();
        let z = GElement::zero_in(&t);
        let row = |a: usize, s: i64| m.row(&GPoly::monomial(t.basis(a), s), &[&z, &z]).unwrap();
        assert!(wk.contains(&row(0, 1)));
        assert!(!wk.contains(&row(0, 2)));
        assert!(wk.contains(&row(1, -1)));
        assert!(!wk.contains(&row(1, 0)));
        assert!(wk.contains(&row(2, 0)));
        assert!(!wk.contains(&row(2, 1)));
        // 8 + 10 + 9 loop elements (f, e, h) plus sl(2)[ε]
        assert_eq!(wk.dim(), 8 + 10 + 9 + 6);
        assert!(build_wk(&t, 2, w).is_err());
    }

    #[test]
    fn w0_is_untwisted() {
        let t = make_sl(3).unwrap();
        let w = Window::new(-3, 2).unwrap();
        let loop0 = wk_loop_part(&t, 0, w).unwrap();
        assert_eq!(loop0.dim(), 8 * 4);
    }

    #[test]
    fn wk_closed_in_window() {
        let t = make_sl(2).unwrap();
        let w = Window::new(-3, 2).unwrap();
        for k in 0..2 {
            let r = build_wk(&t, k, w).unwrap().is_subalgebra().unwrap();
            assert!(r.closed);
            assert!(r.checked_pairs > 0);
        }
    }

    #[test]
    fn complement_is_loop_part_sl2() {
        let t = make_sl(2).unwrap();
        let w = Window::default();
        for k in 0..2 {
            let wk = build_wk(&t, k, w).unwrap();
            let perp = orth_complement_truncated(&wk);
            assert!(perp.same_span(&wk_loop_part(&t, k, w).unwrap()));
            assert_eq!(wk.dim() - perp.dim(), 2 * t.dim());
        }
    }

    #[test]
    fn quotient_sl2() {
        let t = make_sl(2).unwrap();
        let img = quotient_image_of_p(&t, 1, Window::default()).unwrap();
        assert_eq!(img.dim(), 3);
        let expected = DualNumberSubspace::new(&t, &[t.basis(0), t.basis(2)], &[t.basis(0)]);
        assert!(img.same_span(&expected));
        assert!(quotient_image_of_p(&t, 0, Window::default()).is_err());
    }
}
