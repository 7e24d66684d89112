//! Polynomial gauge transformations `Ad(p(u) ⊗ p(v))` and their action on
//! truncated subalgebras of the doubles.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cybe::cyb;
use crate::doubles::{Case, ModelSubspace};
use crate::lie::{BasisLabel, GElement, GPoly, LieTable};
use crate::ratfun::{fmt_q, Monomial, Poly, RatFun, RatFunSum, Var, Q};
use crate::tensor::{power, Tensor2};
use crate::{Error, Result};

type PolyMatrix = Vec<Vec<Poly>>;
/// Matrix with Laurent-polynomial entries in `u`, stored as exponent maps.
type LaurentMatrix = Vec<Vec<BTreeMap<i64, Q>>>;

/// `n×n` matrix over `ℚ[u]` with determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGroupElement {
    entries: PolyMatrix,
    inverse: PolyMatrix,
    label: String,
}

fn minor(m: &PolyMatrix, row: usize, col: usize) -> PolyMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn det(m: &PolyMatrix) -> Poly {
    match m.len() {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero();
            for (j, x) in m[0].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let term = x * &det(&minor(m, 0, j));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -&c
                    }
                })
                .collect()
        })
        .collect()
}

fn poly_mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Poly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn u_exponents(p: &Poly) -> BTreeMap<i64, Q> {
    p.terms()
        .map(|(m, c)| (m.exponent(&Var::U) as i64, c.clone()))
        .collect()
}

fn laurent(m: &PolyMatrix) -> LaurentMatrix {
    m.iter()
        .map(|r| r.iter().map(u_exponents).collect())
        .collect()
}

fn laurent_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let n = a.len();
    let mut out = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_empty() {
                continue;
            }
            for j in 0..n {
                for (da, ca) in &a[i][k] {
                    for (db, cb) in &b[k][j] {
                        let e: &mut Q = out[i][j].entry(da + db).or_insert_with(Q::zero);
                        *e += ca * cb;
                    }
                }
            }
        }
    }
    for row in out.iter_mut() {
        for e in row.iter_mut() {
            e.retain(|_, c: &mut Q| !c.is_zero());
        }
    }
    out
}

impl PolyGroupElement {
    /// Fails unless every entry is a polynomial in `u` alone and the
    /// determinant is exactly 1.
    pub fn new(entries: PolyMatrix) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("group element must be a square matrix"));
        }
        if entries
            .iter()
            .flatten()
            .any(|p| p.vars().iter().any(|v| *v != Var::U))
        {
            return Err(Error::invalid(
                "group element entries must be polynomials in u",
            ));
        }
        if !det(&entries).is_one() {
            return Err(Error::invalid(format!(
                "determinant is {}, not 1",
                det(&entries)
            )));
        }
        let inverse = adjugate(&entries);
        Ok(PolyGroupElement {
            entries,
            inverse,
            label: "p".into(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let entries: PolyMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                    .collect()
            })
            .collect();
        PolyGroupElement {
            inverse: entries.clone(),
            entries,
            label: "1".into(),
        }
    }

    /// `exp(c·E(i,j)·u^d) = I + c·u^d·E(i,j)` for a root vector `E(i,j)`.
    pub fn unip(n: usize, root: BasisLabel, degree: u32, scalar: Q) -> Result<Self> {
        let BasisLabel::E(i, j) = root else {
            return Err(Error::invalid(
                "unipotent factors need a root vector E(i,j)",
            ));
        };
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::invalid(format!(
                "E({i},{j}) is not a root vector of sl({n})"
            )));
        }
        let mut p = PolyGroupElement::identity(n);
        let t = Poly::term(scalar.clone(), Monomial::power(Var::U, degree));
        p.entries[i - 1][j - 1] = t.clone();
        p.inverse[i - 1][j - 1] = -&t;
        p.label = format!("unip({},{degree},{})", root.display(n), fmt_q(&scalar));
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn inverse_entries(&self) -> &PolyMatrix {
        &self.inverse
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `self · other`.
    pub fn mul(&self, other: &PolyGroupElement) -> PolyGroupElement {
        PolyGroupElement {
            entries: poly_mat_mul(&self.entries, &other.entries),
            inverse: poly_mat_mul(&other.inverse, &self.inverse),
            label: format!("{}*{}", self.label, other.label),
        }
    }

    pub fn inverse(&self) -> PolyGroupElement {
        PolyGroupElement {
            entries: self.inverse.clone(),
            inverse: self.entries.clone(),
            label: format!("({})^-1", self.label),
        }
    }

    /// Largest `u`-degree of an entry.
    pub fn degree(&self) -> u32 {
        self.entries
            .iter()
            .flatten()
            .map(|p| p.degree_in(&Var::U))
            .max()
            .unwrap_or(0)
    }

    /// Largest absolute value of a numerator/denominator among coefficients.
    pub fn height(&self) -> Q {
        self.entries
            .iter()
            .flatten()
            .flat_map(|p| {
                p.terms().map(|(_, c)| {
                    if c < &Q::zero() {
                        -c.clone()
                    } else {
                        c.clone()
                    }
                })
            })
            .fold(Q::zero(), |a, b| if b > a { b } else { a })
    }

    /// Constant and linear coefficients `(P₀, P₁)` and the same for the inverse.
    fn jets(&self) -> [[Vec<Vec<Q>>; 2]; 2] {
        let coeff = |m: &PolyMatrix, d: u32| -> Vec<Vec<Q>> {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|p| p.coeff(&Monomial::power(Var::U, d)))
                        .collect()
                })
                .collect()
        };
        [
            [coeff(&self.entries, 0), coeff(&self.entries, 1)],
            [coeff(&self.inverse, 0), coeff(&self.inverse, 1)],
        ]
    }
}

impl fmt::Display for PolyGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `p(u) x(u) p(u)⁻¹` in the sl(n) basis.
pub fn ad_element(table: &LieTable, p: &PolyGroupElement, x: &GPoly) -> Result<GPoly> {
    table.check_same(p.n())?;
    table.check_same(x.n())?;
    let n = table.n();
    let mut xm: LaurentMatrix = vec![vec![BTreeMap::new(); n]; n];
    for (d, g) in x.terms() {
        for (i, row) in table.to_matrix(g).into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    xm[i][j].insert(*d, c);
                }
            }
        }
    }
    let prod = laurent_mul(
        &laurent_mul(&laurent(&p.entries), &xm),
        &laurent(&p.inverse),
    );
    let mut degrees: Vec<i64> = prod
        .iter()
        .flatten()
        .flat_map(|e| e.keys().copied())
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = GPoly::zero_in(table);
    for d in degrees {
        let m: Vec<Vec<Q>> = prod
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.get(&d).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect();
        out.add_term(d, &table.from_matrix(&m)?);
    }
    Ok(out)
}

/// `Ad(p(u) ⊗ p(v)) r`; when `r` solves the CYBE the result is checked to
/// solve it too.
pub fn gauge_transform(p: &PolyGroupElement, r: &Tensor2) -> Result<Tensor2> {
    let out = gauge_transform_unchecked(p, r)?;
    if cyb(r).is_zero() && !cyb(&out).is_zero() {
        return Err(Error::Postcondition(format!("gauge {p} broke the CYBE")));
    }
    Ok(out)
}

/// [`gauge_transform`] without the CYBE postcondition.
pub fn gauge_transform_unchecked(p: &PolyGroupElement, r: &Tensor2) -> Result<Tensor2> {
    let table = r.table();
    table.check_same(p.n())?;
    let images: Vec<GPoly> = (0..table.dim())
        .map(|a| ad_element(table, p, &GPoly::monomial(table.basis(a), 0)))
        .collect::<Result<_>>()?;
    let u = RatFun::var(Var::U);
    let v = RatFun::var(Var::V);
    let mut sums: BTreeMap<(usize, usize), RatFunSum> = BTreeMap::new();
    for ((a, b), c) in r.terms() {
        for (d, x) in images[*a].terms() {
            let cu = c * &power(&u, *d);
            for (e, y) in images[*b].terms() {
                let cuv = &cu * &power(&v, *e);
                for (k, xk) in x.support() {
                    for (l, yl) in y.support() {
                        sums.entry((k, l))
                            .or_default()
                            .add_scaled(&cuv, Some(&(xk * yl)));
                    }
                }
            }
        }
    }
    let mut out = Tensor2::zero(table);
    for ((k, l), s) in sums {
        out.add_term(k, l, &s.total());
    }
    Ok(out)
}

fn matrix_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    crate::linalg::mat_mul(a, b)
}

fn matrix_add(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

/// `Ad(p(u))` on a truncated subspace of a double. Loop parts are
/// conjugated by `p(u)`; the `g` summand of `D₃` by `p(0)`; the `g[ε]`
/// summand of `D₄` by the 1-jet `P₀ + εP₁`.
pub fn transform_subalgebra(p: &PolyGroupElement, w: &ModelSubspace) -> Result<ModelSubspace> {
    let model = w.model();
    let table: &Arc<LieTable> = model.table();
    let [[p0, p1], [q0, q1]] = p.jets();
    let mut rows = Vec::new();
    for r in w.rows() {
        let (lp, extra) = model.parts(r);
        let new_loop = ad_element(table, p, &lp)?;
        let new_extra: Vec<GElement> = match model.case() {
            Case::Two => Vec::new(),
            Case::Three => {
                let a = table.to_matrix(&extra[0]);
                vec![table.from_matrix(&matrix_mul(&matrix_mul(&p0, &a), &q0))?]
            }
            Case::Four => {
                let a0 = table.to_matrix(&extra[0]);
                let a1 = table.to_matrix(&extra[1]);
                // (P₀ + εP₁)(A₀ + εA₁)(Q₀ + εQ₁) with Q = P⁻¹
                let b0 = matrix_mul(&matrix_mul(&p0, &a0), &q0);
                let b1 = matrix_add(
                    &matrix_add(
                        &matrix_mul(&matrix_mul(&p1, &a0), &q0),
                        &matrix_mul(&matrix_mul(&p0, &a1), &q0),
                    ),
                    &matrix_mul(&matrix_mul(&p0, &a0), &q1),
                );
                vec![table.from_matrix(&b0)?, table.from_matrix(&b1)?]
            }
        };
        let refs: Vec<&GElement> = new_extra.iter().collect();
        rows.push(model.row(&new_loop, &refs)?);
    }
    ModelSubspace::new(model, rows)
}

/// Products of one or two unipotent factors with entries of degree ≤ 2 and
/// height ≤ 3, drawn reproducibly from `seed`.
pub fn seeded_unipotents(n: usize, seed: u64, count: usize) -> Result<Vec<PolyGroupElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots: Vec<BasisLabel> = (1..=n)
        .flat_map(|i| {
            (1..=n)
                .filter(move |&j| j != i)
                .map(move |j| BasisLabel::E(i, j))
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let factors = rng.gen_range(1..=2);
        let mut p = PolyGroupElement::identity(n);
        for _ in 0..factors {
            let root = roots[rng.gen_range(0..roots.len())];
            let degree = rng.gen_range(0..=2u32);
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            let f = PolyGroupElement::unip(n, root, degree, Q::from_integer(c.into()))?;
            p = if p.label == "1" { f } else { p.mul(&f) };
        }
        if p.degree() <= 2 && p.height() <= Q::from_integer(3.into()) {
            out.push(p);
        }
    }
    Ok(out)
}
