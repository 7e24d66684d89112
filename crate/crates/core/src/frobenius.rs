//! Quasi-Frobenius data `(L, B)` and the constant skew r-matrices they
//! produce.

use std::fmt;

use num_traits::Zero;

use crate::cybe::{cyb, gamma4, is_quasi_rational};
use crate::lie::{bracket, make_sl, parabolic, CasimirSpec, GElement, GSubspace};
use crate::linalg::{self, Row};
use crate::ratfun::{RatFun, Q};
use crate::tensor::Tensor2;
use crate::{Error, Result};

/// Skew bilinear form on a subalgebra `L`, stored as its matrix over the
/// basis of `L`, satisfying the 2-cocycle identity.
#[derive(Debug, Clone)]
pub struct TwoCocycle {
    sub: GSubspace,
    matrix: Vec<Row>,
}

impl TwoCocycle {
    /// Fails unless the matrix is square of size `dim L`, skew, `L` is
    /// closed under the bracket and the cocycle identity holds.
    pub fn new(sub: GSubspace, matrix: Vec<Row>) -> Result<Self> {
        let d = sub.dim();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::invalid(format!("form matrix must be {d}x{d}")));
        }
        for i in 0..d {
            for j in 0..d {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::invalid("form matrix is not skew"));
                }
            }
        }
        if !sub.is_subalgebra() {
            return Err(Error::invalid("L is not closed under the bracket"));
        }
        let b = TwoCocycle { sub, matrix };
        if !b.cocycle_identity_holds() {
            return Err(Error::invalid("B fails the 2-cocycle identity"));
        }
        Ok(b)
    }

    /// Matrix of `f` on the basis of `sub`.
    pub fn from_form(sub: GSubspace, f: impl Fn(&GElement, &GElement) -> Q) -> Result<Self> {
        let matrix = sub
            .elements()
            .iter()
            .map(|x| sub.elements().iter().map(|y| f(x, y)).collect())
            .collect();
        TwoCocycle::new(sub, matrix)
    }

    pub fn sub(&self) -> &GSubspace {
        &self.sub
    }

    pub fn matrix(&self) -> &[Row] {
        &self.matrix
    }

    fn coords_in_sub(&self, x: &GElement) -> Result<Row> {
        linalg::solve_in_span(&self.sub.rows(), &x.coords().to_vec())
            .ok_or_else(|| Error::invalid("element does not lie in L"))
    }

    /// `B(x, y)` for arbitrary `x, y ∈ L`.
    pub fn eval(&self, x: &GElement, y: &GElement) -> Result<Q> {
        let cx = self.coords_in_sub(x)?;
        let cy = self.coords_in_sub(y)?;
        let mut acc = Q::zero();
        for (i, a) in cx.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in cy.iter().enumerate() {
                if !b.is_zero() {
                    acc += a * &self.matrix[i][j] * b;
                }
            }
        }
        Ok(acc)
    }

    fn cocycle_identity_holds(&self) -> bool {
        let t = self.sub.table();
        let e = self.sub.elements();
        let br = |x: &GElement, y: &GElement| bracket(t, x, y).expect("same algebra");
        for x in e {
            for y in e {
                for z in e {
                    let s = self.eval(&br(x, y), z).expect("closed")
                        + self.eval(&br(y, z), x).expect("closed")
                        + self.eval(&br(z, x), y).expect("closed");
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&self.matrix) == self.sub.dim()
    }
}

/// `r = Σ ((B⁻¹)ᵀ)_ij x_i ⊗ x_j` over the basis of `L`, checked to be skew
/// and a CYBE solution.
pub fn skew_r_from_frobenius(b: &TwoCocycle) -> Result<Tensor2> {
    let sub = b.sub();
    let t = sub.table();
    let mut r = Tensor2::zero(t);
    if sub.dim() == 0 {
        return Ok(r);
    }
    let inv =
        linalg::inverse(b.matrix()).map_err(|_| Error::Singular("B is degenerate on L".into()))?;
    let e = sub.elements();
    for (i, row) in inv.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                // transpose: coefficient of x_j ⊗ x_i is (B⁻¹)_ij
                r = r.add(&Tensor2::from_pair(
                    t,
                    &e[j],
                    &e[i],
                    &RatFun::constant(c.clone()),
                ));
            }
        }
    }
    if !r.is_skew() {
        return Err(Error::Postcondition("r is not skew".into()));
    }
    let res = cyb(&r);
    if !res.is_zero() {
        return Err(Error::Postcondition(format!(
            "CYB residual has {} terms",
            res.len()
        )));
    }
    Ok(r)
}

/// `uvΩ/(v-u) + r(L, B)`, checked to be quasi-rational.
pub fn quasi_rational_lift(b: &TwoCocycle, omega: &CasimirSpec) -> Result<Tensor2> {
    let q = gamma4(omega).add(&skew_r_from_frobenius(b)?);
    if !is_quasi_rational(&q, omega) {
        return Err(Error::Postcondition("lift is not quasi-rational".into()));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicPairReport {
    pub k: usize,
    pub is_subalgebra: bool,
    pub spans_with_parabolic: bool,
    pub is_cocycle: bool,
    /// `det` of `B` restricted to `L ∩ P_k` (1 for the zero space).
    pub restricted_det: Q,
    pub nondegenerate_on_intersection: bool,
}

impl ParabolicPairReport {
    pub fn all(&self) -> bool {
        self.is_subalgebra
            && self.spans_with_parabolic
            && self.is_cocycle
            && self.nondegenerate_on_intersection
    }
}

impl fmt::Display for ParabolicPairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={}: subalgebra {}, L+P_k=sl(n) {}, cocycle {}, det B|L∩P_k = {} (nondegenerate {})",
            self.k,
            self.is_subalgebra,
            self.spans_with_parabolic,
            self.is_cocycle,
            crate::ratfun::fmt_q(&self.restricted_det),
            self.nondegenerate_on_intersection
        )
    }
}

/// Conditions on a pair `(L, B)` attached to the parabolic `P_k`.
pub fn check_parabolic_pair(b: &TwoCocycle, k: usize) -> Result<ParabolicPairReport> {
    let sub = b.sub();
    let t = sub.table();
    let pk = parabolic(t, k)?;
    let spans = sub.sum(&pk).dim() == t.dim();
    let meet = sub.intersection(&pk);
    let gram: Vec<Row> = meet
        .elements()
        .iter()
        .map(|x| {
            meet.elements()
                .iter()
                .map(|y| b.eval(x, y))
                .collect::<Result<Row>>()
        })
        .collect::<Result<_>>()?;
    let det = if gram.is_empty() {
        Q::from_integer(1.into())
    } else {
        linalg::determinant(&gram)
    };
    Ok(ParabolicPairReport {
        k,
        is_subalgebra: sub.is_subalgebra(),
        spans_with_parabolic: spans,
        is_cocycle: b.cocycle_identity_holds(),
        nondegenerate_on_intersection: !det.is_zero(),
        restricted_det: det,
    })
}

/// `(span{e, h}, B(e, h) = 1)` in sl(2).
pub fn sl2_borel_pair() -> Result<TwoCocycle> {
    let t = make_sl(2)?;
    let l = GSubspace::new(&t, vec![t.basis(0), t.basis(2)])?;
    let one = Q::from_integer(1.into());
    TwoCocycle::new(l, vec![vec![Q::zero(), one.clone()], vec![-one, Q::zero()]])
}

/// `(sl(2), B(x, y) = K(f, [x, y]))`, a coboundary.
pub fn sl2_killing_pair() -> Result<TwoCocycle> {
    let t = make_sl(2)?;
    let f = t.basis(1);
    let tt = t.clone();
    TwoCocycle::from_form(GSubspace::full(&t), move |x, y| {
        tt.killing_form(&f, &bracket(&tt, x, y).expect("same algebra"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cybe::{q0, q1};
    use crate::lie::{borel_plus, casimir, make_sl};
    use crate::ratfun::{q, q_frac};

    fn b_plus_data(scale: i64) -> TwoCocycle {
        let t = make_sl(2).unwrap();
        let l = GSubspace::new(&t, vec![t.basis(0), t.basis(2)]).unwrap();
        TwoCocycle::new(l, vec![vec![q(0), q(scale)], vec![q(-scale), q(0)]]).unwrap()
    }

    #[test]
    fn borel_gives_q1_constant_part() {
        let b = b_plus_data(1);
        let t = b.sub().table().clone();
        let r = skew_r_from_frobenius(&b).unwrap();
        let mut expect = Tensor2::zero(&t);
        expect.add_term(0, 2, &RatFun::one());
        expect.add_term(2, 0, &RatFun::int(-1));
        assert_eq!(r, expect);
        let om = casimir(&t, &q(4)).unwrap();
        assert_eq!(quasi_rational_lift(&b, &om).unwrap(), q1(&om).unwrap());
    }

    #[test]
    fn scaling_covariance() {
        let r1 = skew_r_from_frobenius(&b_plus_data(1)).unwrap();
        let r2 = skew_r_from_frobenius(&b_plus_data(2)).unwrap();
        assert_eq!(r2, r1.scale(&q_frac(1, 2)));
    }

    #[test]
    fn zero_subalgebra_gives_q0() {
        let t = make_sl(2).unwrap();
        let b = TwoCocycle::new(GSubspace::zero(&t), Vec::new()).unwrap();
        assert!(skew_r_from_frobenius(&b).unwrap().is_zero());
        let om = casimir(&t, &q(4)).unwrap();
        assert_eq!(quasi_rational_lift(&b, &om).unwrap(), q0(&om));
    }

    #[test]
    fn basis_independence() {
        let t = make_sl(2).unwrap();
        // basis {e + h, h} of the same L; B transforms as PᵀBP
        let l = GSubspace::new(&t, vec![t.basis(0).add(&t.basis(2)), t.basis(2)]).unwrap();
        let b = TwoCocycle::new(l, vec![vec![q(0), q(1)], vec![q(-1), q(0)]]).unwrap();
        assert_eq!(
            skew_r_from_frobenius(&b).unwrap(),
            skew_r_from_frobenius(&b_plus_data(1)).unwrap()
        );
    }

    #[test]
    fn rejects_bad_data() {
        let t = make_sl(2).unwrap();
        let l = GSubspace::new(&t, vec![t.basis(0), t.basis(2)]).unwrap();
        assert!(TwoCocycle::new(l.clone(), vec![vec![q(0), q(1)], vec![q(1), q(0)]]).is_err());
        let degenerate = TwoCocycle::new(l, vec![vec![q(0); 2]; 2]).unwrap();
        assert!(matches!(
            skew_r_from_frobenius(&degenerate),
            Err(Error::Singular(_))
        ));
        // {e, f} is not a subalgebra
        let not_closed = GSubspace::new(&t, vec![t.basis(0), t.basis(1)]).unwrap();
        assert!(TwoCocycle::new(not_closed, vec![vec![q(0), q(1)], vec![q(-1), q(0)]]).is_err());
        // every skew form on sl(2) is a coboundary, but not on sl(3)
        let t3 = make_sl(3).unwrap();
        let mut m = vec![vec![q(0); 8]; 8];
        m[0][1] = q(1);
        m[1][0] = q(-1);
        assert!(TwoCocycle::new(GSubspace::full(&t3), m).is_err());
    }

    #[test]
    fn parabolic_pair_examples() {
        let t = make_sl(2).unwrap();
        let f = t.basis(1);
        let kf = |x: &GElement, y: &GElement| t.killing_form(&f, &bracket(&t, x, y).unwrap());
        let b = TwoCocycle::from_form(GSubspace::full(&t), kf).unwrap();
        assert_eq!(b.eval(&t.basis(0), &t.basis(2)).unwrap(), q(-8));
        let rep = check_parabolic_pair(&b, 1).unwrap();
        assert!(rep.all(), "{rep}");
        assert_eq!(rep.restricted_det, q(64));

        let borel = TwoCocycle::from_form(borel_plus(&t), kf).unwrap();
        assert!(
            !check_parabolic_pair(&borel, 1)
                .unwrap()
                .spans_with_parabolic
        );

        let zero = TwoCocycle::from_form(GSubspace::full(&t), |_, _| q(0)).unwrap();
        assert!(
            !check_parabolic_pair(&zero, 1)
                .unwrap()
                .nondegenerate_on_intersection
        );
    }

    #[test]
    fn sl3_frobenius_fixture() {
        // L = span{H(1), E(1,2)} with B(H(1), E(1,2)) = 1 is Frobenius
        let t = make_sl(3).unwrap();
        let h1 = t.basis(t.index_of(crate::lie::BasisLabel::H(1)).unwrap());
        let e12 = t.basis(t.index_of(crate::lie::BasisLabel::E(1, 2)).unwrap());
        let l = GSubspace::new(&t, vec![h1, e12]).unwrap();
        let b = TwoCocycle::new(l, vec![vec![q(0), q(1)], vec![q(-1), q(0)]]).unwrap();
        let r = skew_r_from_frobenius(&b).unwrap();
        assert!(cyb(&r).is_zero());
        let om = casimir(&t, &q(4)).unwrap();
        assert!(quasi_rational_lift(&b, &om).is_ok());
    }
}
