use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::lie::{bracket, GElement, GPoly, LieTable};
use crate::linalg::{self, Row};
use crate::ratfun::Q;
use crate::{Error, Result};

/// Allowed range `lo ..= hi` of `u`-exponents for loop parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > 0 || hi < 0 {
            return Err(Error::invalid(format!(
                "window [{lo}, {hi}] must satisfy lo <= 0 <= hi"
            )));
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: i64) -> bool {
        self.lo <= e && e <= self.hi
    }

    pub fn check(&self, e: i64) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::WindowOverflow {
                exponent: e,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { lo: -8, hi: 4 }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Which double is modelled, fixing the extra summands and the form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `g((u⁻¹))` with `Q₂ = Res K(f, g)`.
    Two,
    /// `g((u⁻¹)) ⊕ g` with `Q₃ = Res u⁻¹K(f, g) - K(a, b)`.
    Three,
    /// `g((u⁻¹)) ⊕ g[ε]` with `Q₄ = Res u⁻²K(f, g) - K(A₀, B₁) - K(A₁, B₀)`.
    Four,
}

impl Case {
    /// Loop exponents `k + l` paired by the form.
    fn target(self) -> i64 {
        match self {
            Case::Two => -1,
            Case::Three => 0,
            Case::Four => 1,
        }
    }

    pub fn extra_summands(self) -> usize {
        match self {
            Case::Two => 0,
            Case::Three => 1,
            Case::Four => 2,
        }
    }
}

/// Truncated ambient space: loop coordinates `(deg, a)` for `deg` in the
/// window, followed by the extra copies of `g`.
#[derive(Debug)]
pub struct Model {
    table: Arc<LieTable>,
    window: Window,
    case: Case,
    gram: Vec<Vec<(usize, Q)>>,
}

impl Model {
    pub fn new(table: &Arc<LieTable>, window: Window, case: Case) -> Arc<Model> {
        let mut m = Model {
            table: table.clone(),
            window,
            case,
            gram: Vec::new(),
        };
        m.gram = m.build_gram();
        Arc::new(m)
    }

    fn build_gram(&self) -> Vec<Vec<(usize, Q)>> {
        let d = self.table.dim();
        let k = self.table.killing();
        let mut g = vec![Vec::new(); self.dim()];
        for deg in self.window.lo..=self.window.hi {
            let other = self.case.target() - deg;
            if !self.window.contains(other) {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    if !k[a][b].is_zero() {
                        g[self.loop_index(deg, a)]
                            .push((self.loop_index(other, b), k[a][b].clone()));
                    }
                }
            }
        }
        let pairs: &[(usize, usize)] = match self.case {
            Case::Two => &[],
            Case::Three => &[(0, 0)],
            Case::Four => &[(0, 1), (1, 0)],
        };
        for &(s, t) in pairs {
            for a in 0..d {
                for b in 0..d {
                    if !k[a][b].is_zero() {
                        g[self.extra_index(s, a)].push((self.extra_index(t, b), -k[a][b].clone()));
                    }
                }
            }
        }
        g
    }

    pub fn table(&self) -> &Arc<LieTable> {
        &self.table
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn case(&self) -> Case {
        self.case
    }

    fn loop_len(&self) -> usize {
        self.window.len() * self.table.dim()
    }

    pub fn dim(&self) -> usize {
        self.loop_len() + self.case.extra_summands() * self.table.dim()
    }

    pub fn loop_index(&self, deg: i64, a: usize) -> usize {
        debug_assert!(self.window.contains(deg));
        (deg - self.window.lo) as usize * self.table.dim() + a
    }

    pub fn extra_index(&self, s: usize, a: usize) -> usize {
        self.loop_len() + s * self.table.dim() + a
    }

    pub fn zero_row(&self) -> Row {
        vec![Q::zero(); self.dim()]
    }

    /// Coordinates of `loop + Σ extra`; fails if the loop leaves the window.
    pub fn row(&self, loop_part: &GPoly, extra: &[&GElement]) -> Result<Row> {
        if extra.len() != self.case.extra_summands() {
            return Err(Error::invalid(format!(
                "{:?} model expects {} extra components",
                self.case,
                self.case.extra_summands()
            )));
        }
        self.table.check_same(loop_part.n())?;
        let mut r = self.zero_row();
        for (deg, x) in loop_part.terms() {
            self.window.check(*deg)?;
            for (a, c) in x.support() {
                r[self.loop_index(*deg, a)] = c.clone();
            }
        }
        for (s, x) in extra.iter().enumerate() {
            self.table.check_same(x.n())?;
            for (a, c) in x.support() {
                r[self.extra_index(s, a)] = c.clone();
            }
        }
        Ok(r)
    }

    /// Inverse of [`Model::row`].
    pub fn parts(&self, row: &Row) -> (GPoly, Vec<GElement>) {
        let d = self.table.dim();
        let n = self.table.n();
        let mut p = GPoly::zero_in(&self.table);
        for deg in self.window.lo..=self.window.hi {
            let start = self.loop_index(deg, 0);
            p.add_term(
                deg,
                &GElement::from_coords(n, row[start..start + d].to_vec()),
            );
        }
        let extra = (0..self.case.extra_summands())
            .map(|s| {
                let start = self.extra_index(s, 0);
                GElement::from_coords(n, row[start..start + d].to_vec())
            })
            .collect();
        (p, extra)
    }

    /// `xᵀ G` as a dense row.
    pub fn pair_row(&self, x: &Row) -> Row {
        let mut out = self.zero_row();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.gram[i] {
                out[*j] += xi * g;
            }
        }
        out
    }

    pub fn form(&self, x: &Row, y: &Row) -> Q {
        let mut acc = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, g) in &self.gram[i] {
                if !y[*j].is_zero() {
                    acc += xi * g * &y[*j];
                }
            }
        }
        acc
    }

    /// The bracket of the double; fails when the loop part leaves the window.
    pub fn bracket_rows(&self, x: &Row, y: &Row) -> Result<Row> {
        let t = &self.table;
        let (px, ex) = self.parts(x);
        let (py, ey) = self.parts(y);
        let mut lp = GPoly::zero_in(t);
        for (a, xa) in px.terms() {
            for (b, yb) in py.terms() {
                lp.add_term(a + b, &bracket(t, xa, yb)?);
            }
        }
        let extra: Vec<GElement> = match self.case {
            Case::Two => Vec::new(),
            Case::Three => vec![bracket(t, &ex[0], &ey[0])?],
            Case::Four => vec![
                bracket(t, &ex[0], &ey[0])?,
                bracket(t, &ex[0], &ey[1])?.add(&bracket(t, &ex[1], &ey[0])?),
            ],
        };
        let refs: Vec<&GElement> = extra.iter().collect();
        self.row(&lp, &refs)
    }

    /// Kernel of the form on the whole truncated space.
    pub fn radical(&self) -> Vec<Row> {
        let g: Vec<Row> = (0..self.dim())
            .map(|i| {
                let mut e = self.zero_row();
                e[i] = Q::from_integer(1.into());
                self.pair_row(&e)
            })
            .collect();
        linalg::kernel(&g, self.dim())
    }
}

/// Outcome of a closure check at a window: pairs whose bracket left the
/// window are counted, not tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubalgebraReport {
    pub closed: bool,
    pub checked_pairs: usize,
    pub skipped_pairs: usize,
}

/// Span of linearly independent rows of a [`Model`].
#[derive(Debug, Clone)]
pub struct ModelSubspace {
    model: Arc<Model>,
    rows: Vec<Row>,
}

impl ModelSubspace {
    pub fn new(model: &Arc<Model>, rows: Vec<Row>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != model.dim()) {
            return Err(Error::invalid("row length does not match the model"));
        }
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(ModelSubspace {
            model: model.clone(),
            rows,
        })
    }

    pub fn spanned_by(model: &Arc<Model>, rows: &[Row]) -> Self {
        ModelSubspace {
            model: model.clone(),
            rows: linalg::span_basis(rows),
        }
    }

    pub fn zero(model: &Arc<Model>) -> Self {
        ModelSubspace {
            model: model.clone(),
            rows: Vec::new(),
        }
    }

    pub fn full(model: &Arc<Model>) -> Self {
        ModelSubspace {
            model: model.clone(),
            rows: linalg::identity(model.dim()),
        }
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: &Row) -> bool {
        linalg::contained_in(std::slice::from_ref(x), &self.rows)
    }

    pub fn contains_all(&self, other: &ModelSubspace) -> bool {
        linalg::contained_in(&other.rows, &self.rows)
    }

    pub fn same_span(&self, other: &ModelSubspace) -> bool {
        linalg::same_span(&self.rows, &other.rows)
    }

    pub fn sum(&self, other: &ModelSubspace) -> ModelSubspace {
        ModelSubspace::spanned_by(
            &self.model,
            &[self.rows.as_slice(), other.rows.as_slice()].concat(),
        )
    }

    pub fn intersection(&self, other: &ModelSubspace) -> ModelSubspace {
        ModelSubspace {
            model: self.model.clone(),
            rows: linalg::intersection(&self.rows, &other.rows, self.model.dim()),
        }
    }

    pub fn is_isotropic(&self) -> bool {
        self.rows.iter().all(|x| {
            let p = self.model.pair_row(x);
            self.rows.iter().all(|y| dot(&p, y).is_zero())
        })
    }

    /// `{y : Q(x, y) = 0 for all x in self}` inside the truncated space.
    pub fn orth_complement(&self) -> ModelSubspace {
        let paired: Vec<Row> = self.rows.iter().map(|r| self.model.pair_row(r)).collect();
        ModelSubspace {
            model: self.model.clone(),
            rows: linalg::kernel(&paired, self.model.dim()),
        }
    }

    /// Isotropic, and half-dimensional modulo the radical of the truncated
    /// form. The radical consists of window-edge coordinates whose partners
    /// fell outside the window.
    pub fn is_lagrangian_truncated(&self) -> bool {
        if !self.is_isotropic() {
            return false;
        }
        let radical = self.model.radical();
        let quotient_dim = self.model.dim() - radical.len();
        let image = linalg::sum_dim(&self.rows, &radical) - radical.len();
        2 * image == quotient_dim
    }

    pub fn is_subalgebra(&self) -> Result<SubalgebraReport> {
        let mut report = SubalgebraReport {
            closed: true,
            checked_pairs: 0,
            skipped_pairs: 0,
        };
        for (i, x) in self.rows.iter().enumerate() {
            for y in &self.rows[i + 1..] {
                match self.model.bracket_rows(x, y) {
                    Ok(z) => {
                        report.checked_pairs += 1;
                        if !self.contains(&z) {
                            report.closed = false;
                            return Ok(report);
                        }
                    }
                    Err(Error::WindowOverflow { .. }) => report.skipped_pairs += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(report)
    }
}

fn dot(a: &Row, b: &Row) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Q::zero(), |acc, (x, y)| acc + x * y)
}
