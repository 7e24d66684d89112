use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::lie::{bracket, casimir, GElement, GPoly, LieTable};
use crate::linalg;
use crate::ratfun::{expand_at_infinity, LaurentPoly, RatFun, Var, Q};
use crate::tensor::Tensor2;
use crate::{Error, Result};

use super::{Model, Window};

/// `f(u) + A₀ + A₁ε` in `g((u⁻¹)) ⊕ g[ε]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D4Element {
    window: Window,
    loop_part: GPoly,
    a0: GElement,
    a1: GElement,
}

fn check_loop(window: Window, p: &GPoly) -> Result<()> {
    for (d, _) in p.terms() {
        window.check(*d)?;
    }
    Ok(())
}

impl D4Element {
    pub fn new(window: Window, loop_part: GPoly, a0: GElement, a1: GElement) -> Result<Self> {
        check_loop(window, &loop_part)?;
        if a0.n() != loop_part.n() || a1.n() != loop_part.n() {
            return Err(Error::AlgebraMismatch {
                left: loop_part.n(),
                right: if a0.n() != loop_part.n() {
                    a0.n()
                } else {
                    a1.n()
                },
            });
        }
        Ok(D4Element {
            window,
            loop_part,
            a0,
            a1,
        })
    }

    pub fn zero(table: &LieTable, window: Window) -> Self {
        D4Element {
            window,
            loop_part: GPoly::zero_in(table),
            a0: GElement::zero_in(table),
            a1: GElement::zero_in(table),
        }
    }

    /// `x·u^d` with vanishing `g[ε]` part.
    pub fn loop_monomial(window: Window, x: GElement, d: i64) -> Result<Self> {
        let zero = GElement::zero(x.n(), x.coords().len());
        D4Element::new(window, GPoly::monomial(x, d), zero.clone(), zero)
    }

    /// `A₀ + A₁ε` with vanishing loop part.
    pub fn dual_number(
        table: &LieTable,
        window: Window,
        a0: GElement,
        a1: GElement,
    ) -> Result<Self> {
        D4Element::new(window, GPoly::zero_in(table), a0, a1)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn loop_part(&self) -> &GPoly {
        &self.loop_part
    }

    pub fn a0(&self) -> &GElement {
        &self.a0
    }

    pub fn a1(&self) -> &GElement {
        &self.a1
    }

    pub fn scale(&self, c: &Q) -> D4Element {
        D4Element {
            window: self.window,
            loop_part: self.loop_part.scale(c),
            a0: self.a0.scale(c),
            a1: self.a1.scale(c),
        }
    }

    pub fn add(&self, other: &D4Element) -> D4Element {
        D4Element {
            window: self.window,
            loop_part: self.loop_part.add(&other.loop_part),
            a0: self.a0.add(&other.a0),
            a1: self.a1.add(&other.a1),
        }
    }

    pub fn to_row(&self, model: &Model) -> Result<crate::linalg::Row> {
        model.row(&self.loop_part, &[&self.a0, &self.a1])
    }
}

/// `f(u) + a` in `g((u⁻¹)) ⊕ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D3Element {
    window: Window,
    loop_part: GPoly,
    a: GElement,
}

impl D3Element {
    pub fn new(window: Window, loop_part: GPoly, a: GElement) -> Result<Self> {
        check_loop(window, &loop_part)?;
        Ok(D3Element {
            window,
            loop_part,
            a,
        })
    }

    pub fn loop_part(&self) -> &GPoly {
        &self.loop_part
    }

    pub fn a(&self) -> &GElement {
        &self.a
    }

    pub fn to_row(&self, model: &Model) -> Result<crate::linalg::Row> {
        model.row(&self.loop_part, &[&self.a])
    }
}

/// Componentwise bracket, with `ε² = 0` on the `g[ε]` part.
pub fn d4_bracket(table: &LieTable, x: &D4Element, y: &D4Element) -> Result<D4Element> {
    if x.window != y.window {
        return Err(Error::invalid(format!(
            "windows differ: {} vs {}",
            x.window, y.window
        )));
    }
    let mut lp = GPoly::zero_in(table);
    for (a, xa) in x.loop_part.terms() {
        for (b, yb) in y.loop_part.terms() {
            lp.add_term(a + b, &bracket(table, xa, yb)?);
        }
    }
    let a0 = bracket(table, &x.a0, &y.a0)?;
    let a1 = bracket(table, &x.a0, &y.a1)?.add(&bracket(table, &x.a1, &y.a0)?);
    D4Element::new(x.window, lp, a0, a1)
}

/// Coefficient of `u¹` in `K(f, g)`, minus `K(A₀, B₁) + K(A₁, B₀)`.
pub fn q4_form(table: &LieTable, x: &D4Element, y: &D4Element) -> Q {
    let mut acc = Q::zero();
    for (k, xk) in x.loop_part.terms() {
        let yk = y.loop_part.coeff(1 - k);
        acc += table.killing_form(xk, &yk);
    }
    acc - table.killing_form(&x.a0, &y.a1) - table.killing_form(&x.a1, &y.a0)
}

/// `i(p) = p(u) + p₀ + p₁ε`.
pub fn embed_i(p: &GPoly, window: Window) -> Result<D4Element> {
    if !p.is_polynomial() {
        return Err(Error::invalid("embedding needs a polynomial in u"));
    }
    D4Element::new(window, p.clone(), p.coeff(0), p.coeff(1))
}

/// Killing-dual elements `xⁱ = Σ_j (K⁻¹)_ij x_j`.
fn dual_elements(table: &LieTable) -> Result<Vec<GElement>> {
    let inv = linalg::inverse(table.killing())?;
    Ok(inv
        .into_iter()
        .map(|r| GElement::from_coords(table.n(), r))
        .collect())
}

/// The basis `{x_i u^k (2 ≤ k ≤ kmax), i(x_i u), i(x_i)}` of `i(P)` with its
/// claimed dual `{xⁱ u^(1-k), (xⁱ, 0, 0), (0, 0, -xⁱ)}`.
fn dual_pairs(table: &Arc<LieTable>, kmax: i64) -> Result<(Window, Vec<(D4Element, D4Element)>)> {
    let window = Window::new(1 - kmax, kmax)?;
    let duals = dual_elements(table)?;
    let zero = GElement::zero_in(table);
    let mut out = Vec::new();
    for (i, xd) in duals.iter().enumerate() {
        let x = table.basis(i);
        for k in 2..=kmax {
            out.push((
                embed_i(&GPoly::monomial(x.clone(), k), window)?,
                D4Element::loop_monomial(window, xd.clone(), 1 - k)?,
            ));
        }
        out.push((
            embed_i(&GPoly::monomial(x.clone(), 1), window)?,
            D4Element::loop_monomial(window, xd.clone(), 0)?,
        ));
        out.push((
            embed_i(&GPoly::monomial(x.clone(), 0), window)?,
            D4Element::new(
                window,
                GPoly::zero_in(table),
                zero.clone(),
                xd.scale(&-Q::one()),
            )?,
        ));
    }
    Ok((window, out))
}

/// Checks `Q₄(b_α, b*_β) = δ_αβ` for the embedded basis of `P` up to degree
/// `order` against its dual family.
pub fn dual_basis_check(table: &Arc<LieTable>, order: i64) -> Result<bool> {
    if order < 2 {
        return Err(Error::invalid(format!(
            "dual basis order must be at least 2, got {order}"
        )));
    }
    let (_, pairs) = dual_pairs(table, order)?;
    for (a, (b, _)) in pairs.iter().enumerate() {
        for (c, (_, d)) in pairs.iter().enumerate() {
            let expect = if a == c { Q::one() } else { Q::zero() };
            if q4_form(table, b, d) != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tensor in `g ⊗ g` whose coefficients are truncated Laurent
/// polynomials in `v` (with coefficients in `u`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedTensor2 {
    table: Arc<LieTable>,
    order: u32,
    terms: BTreeMap<(usize, usize), LaurentPoly>,
}

impl TruncatedTensor2 {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: usize, b: usize) -> Option<&LaurentPoly> {
        self.terms.get(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TruncatedTensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.table.n();
        for (k, ((a, b), p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(
                f,
                "{}⊗{}: {p}",
                self.table.label(*a).display(n),
                self.table.label(*b).display(n)
            )?;
        }
        Ok(())
    }
}

/// First-component projection `Σ_α loop(b_α) ⊗ loop(b*_α)` of the dual sum,
/// kept to `v`-exponents `>= -order`, compared termwise with the expansion
/// of `uvΩ/(v-u)` at `v = ∞` for the supplied `Ω`.
pub fn dual_sum_projection_against(
    table: &Arc<LieTable>,
    order: u32,
    omega: &Tensor2,
) -> Result<TruncatedTensor2> {
    table.check_same(omega.table().n())?;
    let lo = -(order as i64);
    let (_, pairs) = dual_pairs(table, order as i64 + 1)?;
    let u = RatFun::var(Var::U);
    let mut terms: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    for (b, d) in &pairs {
        for (i, x) in b.loop_part().terms() {
            for (j, y) in d.loop_part().terms() {
                if *j < lo {
                    continue;
                }
                let ui = crate::tensor::power(&u, *i);
                for (a, xa) in x.support() {
                    for (c, yc) in y.support() {
                        terms
                            .entry((a, c))
                            .or_insert_with(|| LaurentPoly::zero(Var::V).with_truncation(lo))
                            .add_term(*j, ui.scale(&(xa * yc)));
                    }
                }
            }
        }
    }
    terms.retain(|_, p| !p.is_zero());

    let kernel = crate::cybe::quasi_rational_kernel();
    let mut expected: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    for ((a, c), coeff) in omega.terms() {
        let e = expand_at_infinity(&(coeff * &kernel), &Var::V, order);
        if !e.is_zero() {
            expected.insert((*a, *c), e);
        }
    }
    let keys: std::collections::BTreeSet<_> =
        terms.keys().chain(expected.keys()).copied().collect();
    for key in keys {
        let got = terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(Var::V).with_truncation(lo));
        let want = expected
            .get(&key)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(Var::V).with_truncation(lo));
        let exps: std::collections::BTreeSet<i64> =
            got.terms().chain(want.terms()).map(|(e, _)| *e).collect();
        for e in exps {
            if got.coeff(e) != want.coeff(e) {
                let n = table.n();
                return Err(Error::Postcondition(format!(
                    "dual sum differs at {}⊗{} v^{e}: {} vs {}",
                    table.label(key.0).display(n),
                    table.label(key.1).display(n),
                    got.coeff(e),
                    want.coeff(e)
                )));
            }
        }
    }
    Ok(TruncatedTensor2 {
        table: table.clone(),
        order,
        terms,
    })
}

/// [`dual_sum_projection_against`] the Killing-dual Casimir `Σ xᵢ ⊗ xⁱ`.
pub fn dual_sum_projection(table: &Arc<LieTable>, order: u32) -> Result<TruncatedTensor2> {
    let omega = casimir(table, &Q::one())?;
    dual_sum_projection_against(table, order, omega.tensor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubles::Case;
    use crate::lie::make_sl;
    use crate::ratfun::{q, q_frac};

    fn w() -> Window {
        Window::default()
    }

    #[test]
    fn brackets() {
        let t = make_sl(2).unwrap();
        let (e, f, h) = (t.basis(0), t.basis(1), t.basis(2));
        let x = D4Element::dual_number(&t, w(), e.clone(), GElement::zero_in(&t)).unwrap();
        let y = D4Element::dual_number(&t, w(), f.clone(), GElement::zero_in(&t)).unwrap();
        let z = d4_bracket(&t, &x, &y).unwrap();
        assert_eq!(z.a0(), &h);
        let xe = D4Element::dual_number(&t, w(), GElement::zero_in(&t), e.clone()).unwrap();
        let ye = D4Element::dual_number(&t, w(), GElement::zero_in(&t), f.clone()).unwrap();
        assert_eq!(d4_bracket(&t, &xe, &ye).unwrap(), D4Element::zero(&t, w()));
        let lu = D4Element::loop_monomial(w(), e.clone(), 1).unwrap();
        let lf = D4Element::loop_monomial(w(), f.clone(), -1).unwrap();
        assert_eq!(
            d4_bracket(&t, &lu, &lf).unwrap().loop_part(),
            &GPoly::monomial(h, 0)
        );
        let big = D4Element::loop_monomial(w(), e, 4).unwrap();
        let big2 = D4Element::loop_monomial(w(), f, 4).unwrap();
        assert!(matches!(
            d4_bracket(&t, &big, &big2),
            Err(Error::WindowOverflow { exponent: 8, .. })
        ));
    }

    #[test]
    fn form_values() {
        let t = make_sl(2).unwrap();
        let (e, f, h) = (t.basis(0), t.basis(1), t.basis(2));
        // e and f/4 are Killing-dual: K(e, f/4) = 1
        let x = D4Element::loop_monomial(w(), e.clone(), 1).unwrap();
        let y = D4Element::loop_monomial(w(), f.scale(&q_frac(1, 4)), 0).unwrap();
        assert_eq!(q4_form(&t, &x, &y), q(1));
        let z = GElement::zero_in(&t);
        let a = D4Element::dual_number(&t, w(), e, z.clone()).unwrap();
        let b = D4Element::dual_number(&t, w(), z.clone(), f).unwrap();
        assert_eq!(q4_form(&t, &a, &b), q(-4));
        let hh = D4Element::dual_number(&t, w(), h, z).unwrap();
        assert!(q4_form(&t, &hh, &hh).is_zero());
    }

    #[test]
    fn embedding() {
        let t = make_sl(2).unwrap();
        let (e, f) = (t.basis(0), t.basis(1));
        let p = GPoly::monomial(e.clone(), 0).add(&GPoly::monomial(f.clone(), 1));
        let ip = embed_i(&p, w()).unwrap();
        assert_eq!(ip.a0(), &e);
        assert_eq!(ip.a1(), &f);
        let cubic = embed_i(&GPoly::monomial(e.clone(), 3), w()).unwrap();
        assert!(cubic.a0().is_zero() && cubic.a1().is_zero());
        assert!(embed_i(&GPoly::monomial(e, -1), w()).is_err());
        assert!(embed_i(&GPoly::monomial(f, 5), w()).is_err());
    }

    #[test]
    fn form_matches_model_gram() {
        let t = make_sl(2).unwrap();
        let model = Model::new(&t, w(), Case::Four);
        let elems: Vec<D4Element> = (0..3)
            .flat_map(|a| {
                let t = t.clone();
                (-2..=2).map(move |d| embed_i(&GPoly::monomial(t.basis(a), d.max(0)), w()).unwrap())
            })
            .chain((0..3).map(|a| D4Element::loop_monomial(w(), t.basis(a), -1).unwrap()))
            .collect();
        for x in &elems {
            for y in &elems {
                let direct = q4_form(&t, x, y);
                assert_eq!(
                    direct,
                    model.form(&x.to_row(&model).unwrap(), &y.to_row(&model).unwrap())
                );
                assert_eq!(direct, q4_form(&t, y, x));
            }
        }
    }

    #[test]
    fn dual_basis() {
        let t = make_sl(2).unwrap();
        assert!(dual_basis_check(&t, 6).unwrap());
        assert!(dual_basis_check(&t, 1).is_err());
    }

    #[test]
    fn projection_low_orders() {
        let t = make_sl(2).unwrap();
        let p0 = dual_sum_projection(&t, 0).unwrap();
        // u·Ω with Ω = (e⊗f + f⊗e)/4 + h⊗h/8
        assert_eq!(
            p0.coeff(0, 1).unwrap().coeff(0),
            RatFun::var(Var::U).scale(&q_frac(1, 4))
        );
        assert_eq!(p0.len(), 3);
        let p3 = dual_sum_projection(&t, 3).unwrap();
        let hh = p3.coeff(2, 2).unwrap();
        assert_eq!(hh.terms().count(), 4);
        assert_eq!(
            hh.coeff(-3),
            RatFun::var(Var::U).pow(4).scale(&q_frac(1, 8))
        );
    }

    #[test]
    fn projection_rejects_wrong_tensor() {
        let t = make_sl(2).unwrap();
        let bad = Tensor2::elementary(&t, 0, 0, RatFun::one());
        assert!(matches!(
            dual_sum_projection_against(&t, 3, &bad),
            Err(Error::Postcondition(_))
        ));
        let scaled = casimir(&t, &q(4)).unwrap();
        assert!(dual_sum_projection_against(&t, 3, scaled.tensor()).is_err());
    }
}
