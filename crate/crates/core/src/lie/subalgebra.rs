use std::sync::Arc;

use crate::linalg::{self, Row};
use crate::{Error, Result};

use super::{bracket, BasisLabel, GElement, LieTable};

/// A subspace of `sl(n)` given by linearly independent elements.
#[derive(Debug, Clone)]
pub struct GSubspace {
    table: Arc<LieTable>,
    elements: Vec<GElement>,
}

impl GSubspace {
    /// Fails with [`Error::LinearlyDependent`] unless the elements are independent.
    pub fn new(table: &Arc<LieTable>, elements: Vec<GElement>) -> Result<Self> {
        for x in &elements {
            table.check_same(x.n())?;
        }
        let rows: Vec<Row> = elements.iter().map(|x| x.coords().to_vec()).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(GSubspace {
            table: table.clone(),
            elements,
        })
    }

    /// Extracts a basis from an arbitrary spanning list.
    pub fn spanned_by(table: &Arc<LieTable>, elements: &[GElement]) -> Self {
        let rows: Vec<Row> = elements.iter().map(|x| x.coords().to_vec()).collect();
        GSubspace {
            table: table.clone(),
            elements: linalg::span_basis(&rows)
                .into_iter()
                .map(|r| GElement::from_coords(table.n(), r))
                .collect(),
        }
    }

    pub fn zero(table: &Arc<LieTable>) -> Self {
        GSubspace {
            table: table.clone(),
            elements: Vec::new(),
        }
    }

    pub fn full(table: &Arc<LieTable>) -> Self {
        let elements = (0..table.dim()).map(|a| table.basis(a)).collect();
        GSubspace {
            table: table.clone(),
            elements,
        }
    }

    fn from_labels(table: &Arc<LieTable>, keep: impl Fn(BasisLabel) -> bool) -> Self {
        let elements = (0..table.dim())
            .filter(|&a| keep(table.label(a)))
            .map(|a| table.basis(a))
            .collect();
        GSubspace {
            table: table.clone(),
            elements,
        }
    }

    pub fn table(&self) -> &Arc<LieTable> {
        &self.table
    }

    pub fn elements(&self) -> &[GElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn rows(&self) -> Vec<Row> {
        self.elements.iter().map(|x| x.coords().to_vec()).collect()
    }

    pub fn contains(&self, x: &GElement) -> bool {
        linalg::contained_in(&[x.coords().to_vec()], &self.rows())
    }

    pub fn same_span(&self, other: &GSubspace) -> bool {
        linalg::same_span(&self.rows(), &other.rows())
    }

    pub fn sum(&self, other: &GSubspace) -> GSubspace {
        let all: Vec<GElement> = self
            .elements
            .iter()
            .chain(&other.elements)
            .cloned()
            .collect();
        GSubspace::spanned_by(&self.table, &all)
    }

    pub fn intersection(&self, other: &GSubspace) -> GSubspace {
        let rows = linalg::intersection(&self.rows(), &other.rows(), self.table.dim());
        GSubspace {
            table: self.table.clone(),
            elements: rows
                .into_iter()
                .map(|r| GElement::from_coords(self.table.n(), r))
                .collect(),
        }
    }

    /// Closed under the bracket (exact rank check).
    pub fn is_subalgebra(&self) -> bool {
        let rows = self.rows();
        self.elements.iter().all(|x| {
            self.elements.iter().all(|y| {
                let z = bracket(&self.table, x, y).expect("same algebra");
                linalg::contained_in(&[z.into_coords()], &rows)
            })
        })
    }
}

pub fn borel_plus(table: &Arc<LieTable>) -> GSubspace {
    GSubspace::from_labels(table, |l| {
        matches!(l, BasisLabel::E(i, j) if i < j) || l.is_cartan()
    })
}

pub fn borel_minus(table: &Arc<LieTable>) -> GSubspace {
    GSubspace::from_labels(table, |l| {
        matches!(l, BasisLabel::E(i, j) if i > j) || l.is_cartan()
    })
}

pub fn cartan(table: &Arc<LieTable>) -> GSubspace {
    GSubspace::from_labels(table, |l| l.is_cartan())
}

/// Maximal parabolic `P_k ⊇ b₊` attached to the `k`-th simple root:
/// block upper-triangular matrices with diagonal blocks of sizes
/// `(k, n-k)`.
pub fn parabolic(table: &Arc<LieTable>, k: usize) -> Result<GSubspace> {
    let n = table.n();
    if k < 1 || k >= n {
        return Err(Error::invalid(format!(
            "parabolic index k={k} outside 1..={}",
            n - 1
        )));
    }
    // E(i,j) with i > j has negative root -(α_j + … + α_{i-1}); it
    // involves α_k exactly when j <= k < i
    let p = GSubspace::from_labels(table, |l| match l {
        BasisLabel::E(i, j) => i < j || !(j <= k && k < i),
        BasisLabel::H(_) => true,
    });
    if !p.is_subalgebra() {
        return Err(Error::Postcondition(format!(
            "P_{k} is not closed under the bracket"
        )));
    }
    Ok(p)
}

/// Killing-orthogonal complement `{y : K(x, y) = 0 for all x in sub}`.
pub fn orthogonal_complement_g(sub: &GSubspace) -> GSubspace {
    let table = sub.table();
    let gram: Vec<Row> = sub
        .rows()
        .iter()
        .map(|r| linalg::mat_mul(std::slice::from_ref(r), table.killing()).remove(0))
        .collect();
    let ker = linalg::kernel(&gram, table.dim());
    GSubspace {
        table: table.clone(),
        elements: ker
            .into_iter()
            .map(|r| GElement::from_coords(table.n(), r))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::make_sl;
    use crate::ratfun::q;

    #[test]
    fn sl2_parabolic() {
        let t = make_sl(2).unwrap();
        let p = parabolic(&t, 1).unwrap();
        let expect = GSubspace::new(&t, vec![t.basis(0), t.basis(2)]).unwrap();
        assert!(p.same_span(&expect));
        assert!(parabolic(&t, 0).is_err());
        assert!(parabolic(&t, 2).is_err());
    }

    #[test]
    fn sl3_parabolic_k1() {
        let t = make_sl(3).unwrap();
        let p = parabolic(&t, 1).unwrap();
        assert_eq!(p.dim(), 6);
        let e32 = t.basis(t.index_of(BasisLabel::E(3, 2)).unwrap());
        let e21 = t.basis(t.index_of(BasisLabel::E(2, 1)).unwrap());
        assert!(p.contains(&e32));
        assert!(!p.contains(&e21));
    }

    #[test]
    fn parabolics_contain_borel() {
        for n in 2..=4 {
            let t = make_sl(n).unwrap();
            let b = borel_plus(&t);
            assert!(b.is_subalgebra());
            assert!(borel_minus(&t).is_subalgebra());
            for k in 1..n {
                let p = parabolic(&t, k).unwrap();
                assert!(b.elements().iter().all(|x| p.contains(x)));
                // dim P_k = dim b₊ + k(k-1)/2 + (n-k)(n-k-1)/2
                assert_eq!(
                    p.dim(),
                    b.dim() + k * (k - 1) / 2 + (n - k) * (n - k - 1) / 2
                );
            }
        }
    }

    #[test]
    fn complements() {
        let t = make_sl(2).unwrap();
        let perp = orthogonal_complement_g(&parabolic(&t, 1).unwrap());
        assert!(perp.same_span(&GSubspace::new(&t, vec![t.basis(0)]).unwrap()));
        assert_eq!(orthogonal_complement_g(&GSubspace::full(&t)).dim(), 0);
        assert_eq!(orthogonal_complement_g(&GSubspace::zero(&t)).dim(), 3);

        let t3 = make_sl(3).unwrap();
        for k in 1..3 {
            let p = parabolic(&t3, k).unwrap();
            let perp = orthogonal_complement_g(&p);
            assert_eq!(p.dim() + perp.dim(), 8);
            // the nilradical of P_k
            assert!(perp.elements().iter().all(|x| p.contains(x)));
        }
    }

    #[test]
    fn dependent_elements_rejected() {
        let t = make_sl(2).unwrap();
        let e = t.basis(0);
        assert!(matches!(
            GSubspace::new(&t, vec![e.clone(), e.scale(&q(2))]),
            Err(Error::LinearlyDependent)
        ));
    }
}
