use std::sync::Arc;

use num_traits::Zero;

use crate::linalg;
use crate::ratfun::{RatFun, Q};
use crate::tensor::Tensor2;
use crate::Result;

use super::LieTable;

/// Casimir tensor `scale · Σ_ij (K⁻¹)_ij x_i ⊗ x_j`, i.e. `scale` times the
/// sum of Killing-dual basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasimirSpec {
    scale: Q,
    tensor: Tensor2,
}

impl CasimirSpec {
    pub fn scale(&self) -> &Q {
        &self.scale
    }

    pub fn tensor(&self) -> &Tensor2 {
        &self.tensor
    }

    pub fn table(&self) -> &Arc<LieTable> {
        self.tensor.table()
    }
}

pub fn casimir(table: &Arc<LieTable>, scale: &Q) -> Result<CasimirSpec> {
    let inv = linalg::inverse(table.killing())?;
    let mut tensor = Tensor2::zero(table);
    for (i, row) in inv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                tensor.add_term(i, j, &RatFun::constant(c * scale));
            }
        }
    }
    Ok(CasimirSpec {
        scale: scale.clone(),
        tensor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_sl, GPoly};
    use crate::ratfun::{q, q_frac};
    use crate::tensor::ad2_action;

    #[test]
    fn sl2_killing_dual() {
        let t = make_sl(2).unwrap();
        let om = casimir(&t, &q(1)).unwrap();
        let c = om.tensor();
        assert_eq!(c.coeff(0, 1), RatFun::constant(q_frac(1, 4)));
        assert_eq!(c.coeff(1, 0), RatFun::constant(q_frac(1, 4)));
        assert_eq!(c.coeff(2, 2), RatFun::constant(q_frac(1, 8)));
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn sl2_scale_four_is_trace_dual() {
        let t = make_sl(2).unwrap();
        let c = casimir(&t, &q(4)).unwrap();
        let c = c.tensor();
        assert_eq!(c.coeff(0, 1), RatFun::one());
        assert_eq!(c.coeff(1, 0), RatFun::one());
        assert_eq!(c.coeff(2, 2), RatFun::constant(q_frac(1, 2)));
    }

    #[test]
    fn symmetric_and_invariant() {
        for n in 2..=4 {
            let t = make_sl(n).unwrap();
            let om = casimir(&t, &q_frac(3, 2)).unwrap();
            assert_eq!(om.tensor().swap(), *om.tensor());
            for a in 0..t.dim() {
                let p = GPoly::monomial(t.basis(a), 0);
                assert!(ad2_action(&p, om.tensor()).unwrap().is_zero());
            }
        }
    }
}
