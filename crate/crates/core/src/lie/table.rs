use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::ratfun::{q, Q};
use crate::{Error, Result};

use super::GElement;

/// Square matrix of rationals, row-major.
pub type Matrix = Vec<Vec<Q>>;

/// Label of a basis vector of `sl(n)`; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Matrix unit `E(i,j)`, `i != j`.
    E(usize, usize),
    /// `H(i) = E(i,i) - E(i+1,i+1)`.
    H(usize),
}

impl BasisLabel {
    /// Text-grammar spelling; `sl(2)` uses the aliases `e`, `f`, `h`.
    pub fn display(&self, n: usize) -> String {
        match (n, self) {
            (2, BasisLabel::E(1, 2)) => "e".into(),
            (2, BasisLabel::E(2, 1)) => "f".into(),
            (2, BasisLabel::H(1)) => "h".into(),
            (_, BasisLabel::E(i, j)) => format!("E({i},{j})"),
            (_, BasisLabel::H(i)) => format!("H({i})"),
        }
    }

    pub fn is_cartan(&self) -> bool {
        matches!(self, BasisLabel::H(_))
    }
}

/// Basis, structure constants and Killing form of `sl(n)`.
///
/// Basis order: positive root vectors `E(i,j)`, `i < j`, then negative
/// root vectors `E(j,i)` in the same order, then `H(1..n-1)`. For `n = 2`
/// this is `(e, f, h)`.
#[derive(Debug, PartialEq, Eq)]
pub struct LieTable {
    n: usize,
    labels: Vec<BasisLabel>,
    /// `structure[a][b]` lists `(k, c)` with `[x_a, x_b] = Σ c x_k`.
    structure: Vec<Vec<Vec<(usize, Q)>>>,
    killing: Matrix,
}

impl fmt::Display for LieTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl({})", self.n)
    }
}

/// Builds `sl(n)` from matrix commutators in the defining representation.
pub fn make_sl(n: usize) -> Result<Arc<LieTable>> {
    if n < 2 {
        return Err(Error::invalid(format!("sl(n) needs n >= 2, got {n}")));
    }
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            labels.push(BasisLabel::E(i, j));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            labels.push(BasisLabel::E(j, i));
        }
    }
    labels.extend((1..n).map(BasisLabel::H));

    let dim = labels.len();
    let mats: Vec<Matrix> = labels.iter().map(|l| label_matrix(n, *l)).collect();
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let c = commutator(&mats[a], &mats[b]);
            let coords = decompose(n, &labels, &c).expect("commutators are trace-free");
            structure[a][b] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
    }
    let mut table = LieTable {
        n,
        labels,
        structure,
        killing: Vec::new(),
    };
    table.killing = (0..dim)
        .map(|a| (0..dim).map(|b| table.ad_trace(a, b)).collect())
        .collect();
    Ok(Arc::new(table))
}

fn label_matrix(n: usize, l: BasisLabel) -> Matrix {
    let mut m = vec![vec![Q::zero(); n]; n];
    match l {
        BasisLabel::E(i, j) => m[i - 1][j - 1] = q(1),
        BasisLabel::H(i) => {
            m[i - 1][i - 1] = q(1);
            m[i][i] = q(-1);
        }
    }
    m
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn decompose(n: usize, labels: &[BasisLabel], m: &Matrix) -> Result<Vec<Q>> {
    let trace: Q = (0..n).map(|i| m[i][i].clone()).sum();
    if !trace.is_zero() {
        return Err(Error::invalid("matrix is not trace-free"));
    }
    Ok(labels
        .iter()
        .map(|l| match *l {
            BasisLabel::E(i, j) => m[i - 1][j - 1].clone(),
            // diag(d) = Σ c_i H(i) with c_i = d_1 + ... + d_i
            BasisLabel::H(i) => (0..i).map(|k| m[k][k].clone()).sum(),
        })
        .collect())
}

impl LieTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> BasisLabel {
        self.labels[a]
    }

    pub fn index_of(&self, l: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&m| m == l)
    }

    pub fn basis(&self, a: usize) -> GElement {
        GElement::basis(self.n, self.dim(), a)
    }

    /// `[x_a, x_b]` as a sparse list of `(k, c)`.
    pub fn structure(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.structure[a][b]
    }

    pub fn killing(&self) -> &Matrix {
        &self.killing
    }

    pub fn killing_form(&self, x: &GElement, y: &GElement) -> Q {
        let mut acc = Q::zero();
        for (a, xa) in x.coords().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coords().iter().enumerate() {
                if !yb.is_zero() && !self.killing[a][b].is_zero() {
                    acc += xa * yb * &self.killing[a][b];
                }
            }
        }
        acc
    }

    /// Matrix of `ad x_a`: column `b` holds the coordinates of `[x_a, x_b]`.
    pub fn ad_matrix(&self, a: usize) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![Q::zero(); d]; d];
        for b in 0..d {
            for (k, c) in &self.structure[a][b] {
                m[*k][b] = c.clone();
            }
        }
        m
    }

    /// `trace(ad x_a ∘ ad x_b)`.
    fn ad_trace(&self, a: usize, b: usize) -> Q {
        let mut t = Q::zero();
        for j in 0..self.dim() {
            // (ad_a ad_b)_{jj} = Σ_k (ad_a)_{jk} (ad_b)_{kj}
            for (k, cb) in &self.structure[b][j] {
                for (m, ca) in &self.structure[a][*k] {
                    if *m == j {
                        t += ca * cb;
                    }
                }
            }
        }
        t
    }

    /// Defining-representation matrix of an element.
    pub fn to_matrix(&self, x: &GElement) -> Matrix {
        let mut m = vec![vec![Q::zero(); self.n]; self.n];
        for (a, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let la = label_matrix(self.n, self.labels[a]);
            for i in 0..self.n {
                for j in 0..self.n {
                    if !la[i][j].is_zero() {
                        m[i][j] += c * &la[i][j];
                    }
                }
            }
        }
        m
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); fails on non-trace-free input.
    pub fn from_matrix(&self, m: &Matrix) -> Result<GElement> {
        if m.len() != self.n || m.iter().any(|r| r.len() != self.n) {
            return Err(Error::invalid("matrix has the wrong size"));
        }
        Ok(GElement::from_coords(
            self.n,
            decompose(self.n, &self.labels, m)?,
        ))
    }

    pub(crate) fn check_same(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.n,
                right: n,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::bracket;

    fn sl2() -> Arc<LieTable> {
        make_sl(2).unwrap()
    }

    #[test]
    fn rejects_small_n() {
        assert!(make_sl(1).is_err());
        assert!(make_sl(0).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(sl2().dim(), 3);
        assert_eq!(make_sl(3).unwrap().dim(), 8);
        assert_eq!(make_sl(4).unwrap().dim(), 15);
    }

    #[test]
    fn sl2_brackets() {
        let t = sl2();
        let (e, f, h) = (t.basis(0), t.basis(1), t.basis(2));
        assert_eq!(bracket(&t, &e, &f).unwrap(), h);
        assert_eq!(bracket(&t, &h, &e).unwrap(), e.scale(&q(2)));
        assert_eq!(bracket(&t, &h, &f).unwrap(), f.scale(&q(-2)));
        assert!(bracket(&t, &e, &e).unwrap().is_zero());
    }

    #[test]
    fn sl2_killing() {
        let t = sl2();
        let k = t.killing();
        assert_eq!(k[0][1], q(4));
        assert_eq!(k[2][2], q(8));
        assert_eq!(k[0][0], q(0));
    }

    /// Killing form of sl(n) equals 2n·tr(XY); checked against the
    /// defining representation directly.
    #[test]
    fn killing_matches_trace_formula() {
        for n in 2..=4 {
            let t = make_sl(n).unwrap();
            for a in 0..t.dim() {
                for b in 0..t.dim() {
                    let xy = mat_mul(&t.to_matrix(&t.basis(a)), &t.to_matrix(&t.basis(b)));
                    let tr: Q = (0..n).map(|i| xy[i][i].clone()).sum();
                    assert_eq!(t.killing()[a][b], tr * q(2 * n as i64));
                }
            }
        }
    }

    #[test]
    fn matrix_roundtrip() {
        let t = make_sl(3).unwrap();
        for a in 0..t.dim() {
            let x = t.basis(a);
            assert_eq!(t.from_matrix(&t.to_matrix(&x)).unwrap(), x);
        }
        assert!(t
            .from_matrix(&label_matrix(3, BasisLabel::E(1, 1)))
            .is_err());
    }
}
