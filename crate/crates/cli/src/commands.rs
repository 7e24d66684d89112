use std::fs;
use std::path::Path;
use std::sync::Arc;

use quasirat::cybe::{
    calibrated_casimir, catalog_entry, cobracket as cobracket_of, cojacobi_check, cyb,
    is_quasi_rational, CatalogName,
};
use quasirat::doubles::{
    build_wk, case4_model, case4_p, case4_pstar, check_transversality, dual_basis_check,
    dual_sum_projection, orth_complement_truncated, quotient_image_of_p, wk_loop_part,
    ModelSubspace, Window,
};
use quasirat::frobenius::{
    check_parabolic_pair, quasi_rational_lift, skew_r_from_frobenius, sl2_borel_pair,
    sl2_killing_pair, TwoCocycle,
};
use quasirat::gauge::{gauge_transform_unchecked, seeded_unipotents, PolyGroupElement};
use quasirat::lie::{calibrate_casimir, make_sl, GElement, GPoly, LieTable};
use quasirat::tensor::Tensor2;
use quasirat::text::{
    parse_d4_subspace, parse_frobenius, parse_gauge, parse_gpoly, parse_rmatrix, print_rmatrix,
};
use quasirat::Error;

use crate::report::Report;
use crate::{
    BuiltinPair, BuiltinSubspace, Check, CobracketArgs, DoubleArgs, FrobeniusArgs, GaugeArgs,
    VerifyArgs,
};

pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    /// A mathematical check raised instead of returning a verdict: exit 1.
    Failed { command: String, message: String },
}

type Outcome = std::result::Result<Report, CliError>;

const MAX_N: usize = 6;

fn classify(command: &str, e: Error) -> CliError {
    match e {
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::AlgebraMismatch { .. }
        | Error::WindowOverflow { .. }
        | Error::LinearlyDependent => CliError::Usage(e.to_string()),
        other => CliError::Failed {
            command: command.into(),
            message: other.to_string(),
        },
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn table(n: usize) -> std::result::Result<Arc<LieTable>, CliError> {
    if !(2..=MAX_N).contains(&n) {
        return Err(usage(format!("--n must be between 2 and {MAX_N}")));
    }
    make_sl(n).map_err(|e| usage(e.to_string()))
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn builtin_matrix(name: &str, n: usize, command: &str) -> std::result::Result<Tensor2, CliError> {
    let name: CatalogName = name.parse().map_err(|e: Error| usage(e.to_string()))?;
    if name.sl2_only() && n != 2 {
        return Err(usage(format!("{name} is only defined on sl(2)")));
    }
    let t = table(n)?;
    let omega = calibrated_casimir(&t).map_err(|e| classify(command, e))?;
    Ok(catalog_entry(name, &omega)
        .map_err(|e| classify(command, e))?
        .matrix)
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let cmd = "verify";
    let mut rep = Report::new(cmd);
    let r = match (&a.builtin, &a.input) {
        (Some(name), _) => {
            rep.input("builtin", name).input("n", a.n);
            builtin_matrix(name, a.n, cmd)?
        }
        (None, Some(path)) => {
            rep.input("input", path.display());
            let doc = parse_rmatrix(&read(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            rep.input("n", doc.n);
            doc.into_tensor()
        }
        (None, None) => return Err(usage("one of --builtin or --input is required")),
    };
    let omega = calibrated_casimir(r.table()).map_err(|e| classify(cmd, e))?;
    let res = cyb(&r);
    rep.residual_terms = Some(res.len());
    rep.verdict(
        "cyb",
        res.is_zero(),
        format!("{} nonzero residual entries", res.len()),
    );
    rep.info(
        "quasi-rational",
        is_quasi_rational(&r, &omega),
        "uvΩ/(v-u) plus a skew polynomial",
    );
    rep.info("skew", r.is_skew(), "r(u,v) = -r21(v,u)");
    Ok(rep)
}

fn window_for(trunc: Option<i64>) -> std::result::Result<Window, CliError> {
    let t = trunc.unwrap_or(4);
    if t < 0 {
        return Err(usage("--trunc must be non-negative"));
    }
    Window::new(-2 * t, t).map_err(|e| usage(e.to_string()))
}

fn ks(a: &DoubleArgs, t: &LieTable, from: usize) -> std::result::Result<Vec<usize>, CliError> {
    match a.k {
        Some(k) if k < from || k >= t.n() => Err(usage(format!(
            "k={k} out of range {from}..={} for sl({})",
            t.n() - 1,
            t.n()
        ))),
        Some(k) => Ok(vec![k]),
        None => Ok((from..t.n()).collect()),
    }
}

/// `W_k^⊥ ⊕ εg`, a Lagrangian subalgebra sitting inside `W_k`.
fn wk_lagrangian(t: &Arc<LieTable>, k: usize, w: Window) -> quasirat::Result<ModelSubspace> {
    let loop_part = wk_loop_part(t, k, w)?;
    let model = case4_model(t, w);
    let mut rows = Vec::new();
    for r in loop_part.rows() {
        let (lp, _) = loop_part.model().parts(r);
        let z = GElement::zero_in(t);
        rows.push(model.row(&lp, &[&z, &z])?);
    }
    let empty = GPoly::zero_in(t);
    let zero = GElement::zero_in(t);
    for a in 0..t.dim() {
        rows.push(model.row(&empty, &[&zero, &t.basis(a)])?);
    }
    ModelSubspace::new(&model, rows)
}

fn lagrangian_verdicts(rep: &mut Report, name: &str, s: &ModelSubspace) -> quasirat::Result<()> {
    let lag = s.is_lagrangian_truncated();
    rep.verdict(
        &format!("{name} lagrangian"),
        lag,
        format!(
            "dim {} of {}, isotropic {}",
            s.dim(),
            s.model().dim(),
            s.is_isotropic()
        ),
    );
    let sub = s.is_subalgebra()?;
    rep.verdict(
        &format!("{name} subalgebra"),
        sub.closed,
        format!(
            "{} pairs checked, {} leave the window",
            sub.checked_pairs, sub.skipped_pairs
        ),
    );
    Ok(())
}

pub fn double(a: &DoubleArgs) -> Outcome {
    let cmd = "double";
    let t = table(a.n)?;
    let mut rep = Report::new(cmd);
    let name = match a.check {
        Check::Lagrangian => "lagrangian",
        Check::Dualbasis => "dualbasis",
        Check::Wk => "wk",
        Check::Lemma1 => "lemma1",
        Check::Quotient => "quotient",
        Check::Transversal => "transversal",
    };
    rep.input("check", name).input("n", a.n);
    if let Some(k) = a.k {
        rep.input("k", k);
    }
    let fail = |e: Error| classify(cmd, e);
    if a.check == Check::Dualbasis {
        let order = a.trunc.unwrap_or(12);
        if order < 2 {
            return Err(usage("--trunc for dualbasis must be at least 2"));
        }
        rep.input("trunc", order);
        rep.window = Some(format!("order {order}"));
        rep.verdict(
            "dual pairing",
            dual_basis_check(&t, order).map_err(fail)?,
            "q4 pairing is the identity matrix",
        );
        match dual_sum_projection(&t, order as u32) {
            Ok(proj) => rep.verdict(
                "projection",
                true,
                format!("{} coefficient series match uvΩ/(v-u)", proj.len()),
            ),
            Err(e @ Error::Postcondition(_)) => rep.verdict("projection", false, e.to_string()),
            Err(e) => return Err(fail(e)),
        };
        return Ok(rep);
    }
    let w = if a.check == Check::Transversal && a.input.is_some() {
        None
    } else {
        let w = window_for(a.trunc)?;
        rep.input("trunc", a.trunc.unwrap_or(4));
        rep.window = Some(w.to_string());
        Some(w)
    };
    match a.check {
        Check::Lagrangian => {
            let w = w.expect("window");
            if a.k.is_some() {
                for k in ks(a, &t, 0)? {
                    let s = wk_lagrangian(&t, k, w).map_err(fail)?;
                    lagrangian_verdicts(&mut rep, &format!("W_{k}^⊥ + εg"), &s).map_err(fail)?;
                }
            } else {
                let m = case4_model(&t, w);
                lagrangian_verdicts(&mut rep, "i(P)", &case4_p(&m).map_err(fail)?).map_err(fail)?;
                lagrangian_verdicts(&mut rep, "P*", &case4_pstar(&m).map_err(fail)?)
                    .map_err(fail)?;
            }
        }
        Check::Wk => {
            let w = w.expect("window");
            for k in ks(a, &t, 0)? {
                let wk = build_wk(&t, k, w).map_err(fail)?;
                let sub = wk.is_subalgebra().map_err(fail)?;
                rep.verdict(
                    &format!("W_{k} subalgebra"),
                    sub.closed,
                    format!(
                        "dim {}, {} pairs checked, {} leave the window",
                        wk.dim(),
                        sub.checked_pairs,
                        sub.skipped_pairs
                    ),
                );
                let perp = orth_complement_truncated(&wk);
                rep.verdict(
                    &format!("W_{k} coisotropic"),
                    wk.contains_all(&perp),
                    format!("dim W_{k}^⊥ = {}", perp.dim()),
                );
            }
        }
        Check::Lemma1 => {
            let w = w.expect("window");
            for k in ks(a, &t, 0)? {
                let wk = build_wk(&t, k, w).map_err(fail)?;
                let perp = orth_complement_truncated(&wk);
                let lp = wk_loop_part(&t, k, w).map_err(fail)?;
                rep.verdict(
                    &format!("W_{k}^⊥ = loop part"),
                    perp.same_span(&lp),
                    format!("dim {} vs {}", perp.dim(), lp.dim()),
                );
                let q = wk.dim() - perp.dim();
                rep.verdict(
                    &format!("dim W_{k}/W_{k}^⊥"),
                    q == 2 * t.dim(),
                    format!("{q}, expected {}", 2 * t.dim()),
                );
            }
        }
        Check::Quotient => {
            let w = w.expect("window");
            for k in ks(a, &t, 1)? {
                match quotient_image_of_p(&t, k, w) {
                    Ok(img) => rep.verdict(
                        &format!("image of P∩W_{k}"),
                        true,
                        format!("= P_{k} + εP_{k}^⊥, dim {}", img.dim()),
                    ),
                    Err(e @ Error::Postcondition(_)) => {
                        rep.verdict(&format!("image of P∩W_{k}"), false, e.to_string())
                    }
                    Err(e) => return Err(fail(e)),
                };
            }
        }
        Check::Transversal => {
            let s = match (&a.input, w) {
                (Some(path), _) => {
                    rep.input("input", path.display());
                    let s = parse_d4_subspace(&read(path)?)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    if s.model().table().n() != a.n {
                        rep.input("n", s.model().table().n());
                    }
                    rep.window = Some(s.model().window().to_string());
                    s
                }
                (None, Some(w)) => {
                    let m = case4_model(&t, w);
                    match a.subspace {
                        BuiltinSubspace::Pstar => {
                            rep.input("subspace", "pstar");
                            case4_pstar(&m).map_err(fail)?
                        }
                        BuiltinSubspace::Ip => {
                            rep.input("subspace", "ip");
                            case4_p(&m).map_err(fail)?
                        }
                    }
                }
                (None, None) => unreachable!("window is set without a fixture"),
            };
            rep.input("tail", a.tail);
            let tr = check_transversality(&s, a.tail).map_err(fail)?;
            rep.verdict("W ∩ P = 0", tr.trivial_intersection, "");
            rep.verdict("W ⊕ P = D", tr.complementary, "");
            rep.verdict(
                &format!("W ⊇ u^{} g[[u^-1]]", -a.tail),
                tr.contains_tail,
                "",
            );
        }
        Check::Dualbasis => unreachable!(),
    }
    Ok(rep)
}

pub fn cobracket(a: &CobracketArgs) -> Outcome {
    let cmd = "cobracket";
    let gamma = builtin_matrix(&a.gamma, a.n, cmd)?;
    let t = gamma.table().clone();
    let p = parse_gpoly(&t, &a.element).map_err(|e| usage(e.to_string()))?;
    let mut rep = Report::new(cmd);
    rep.input("gamma", &a.gamma)
        .input("element", &a.element)
        .input("n", a.n);
    match cobracket_of(&gamma, &p) {
        Ok(d) => {
            rep.line(format!("δ = {d}"));
            rep.verdict("polynomial", true, format!("{} terms", d.len()));
            if a.axioms {
                let ok = cojacobi_check(&gamma, &p).map_err(|e| classify(cmd, e))?;
                rep.verdict("co-Jacobi", ok, "");
            }
        }
        Err(e @ Error::PoleDoesNotCancel(_)) => {
            rep.verdict("polynomial", false, e.to_string());
        }
        Err(e) => return Err(classify(cmd, e)),
    }
    Ok(rep)
}

pub fn calibrate() -> Outcome {
    let cmd = "calibrate";
    let t = table(2)?;
    let mut rep = Report::new(cmd);
    rep.input("n", 2);
    let cal = calibrate_casimir(&t).map_err(|e| classify(cmd, e))?;
    for r in &cal.residuals {
        rep.line(format!(
            "  c = {}: rational {} terms, q2 {} terms{}",
            quasirat::ratfun::fmt_q(&r.scale),
            r.rational_terms,
            r.q2_terms,
            if r.survives() { "  <- survives" } else { "" }
        ));
    }
    rep.verdict(
        "unique scale",
        cal.residuals.iter().filter(|r| r.survives()).count() == 1,
        format!("c = {}", quasirat::ratfun::fmt_q(cal.scale())),
    );
    rep.verdict("drinfeld-jimbo orientation", true, cal.dj.to_string());
    Ok(rep)
}

pub fn gauge(a: &GaugeArgs) -> Outcome {
    let cmd = "gauge";
    let mut rep = Report::new(cmd);
    let targets: Vec<(String, Tensor2)> = match (&a.builtin, &a.input) {
        (Some(name), _) => {
            rep.input("builtin", name);
            vec![(name.clone(), builtin_matrix(name, a.n, cmd)?)]
        }
        (None, Some(path)) => {
            rep.input("input", path.display());
            let doc = parse_rmatrix(&read(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            vec![(path.display().to_string(), doc.into_tensor())]
        }
        (None, None) => {
            let names: &[&str] = if a.n == 2 {
                &["q0", "q1", "q2"]
            } else {
                &["q0"]
            };
            rep.input("builtin", names.join(","));
            names
                .iter()
                .map(|s| Ok((s.to_string(), builtin_matrix(s, a.n, cmd)?)))
                .collect::<std::result::Result<_, CliError>>()?
        }
    };
    let t = targets[0].1.table().clone();
    rep.input("n", t.n());
    let gauges: Vec<PolyGroupElement> = match &a.p {
        Some(word) => {
            rep.input("p", word);
            vec![parse_gauge(&t, word).map_err(|e| usage(e.to_string()))?]
        }
        None => {
            rep.seed = Some(a.seed);
            rep.input("count", a.count);
            seeded_unipotents(t.n(), a.seed, a.count).map_err(|e| classify(cmd, e))?
        }
    };
    let omega = calibrated_casimir(&t).map_err(|e| classify(cmd, e))?;
    let mut residual = 0;
    let single = gauges.len() == 1 && targets.len() == 1;
    for (name, r) in &targets {
        let before = cyb(r).is_zero();
        let qr = is_quasi_rational(r, &omega);
        let mut cyb_ok = 0;
        let mut qr_ok = 0;
        for p in &gauges {
            let g = gauge_transform_unchecked(p, r).map_err(|e| classify(cmd, e))?;
            let res = cyb(&g);
            residual += res.len();
            cyb_ok += usize::from(res.is_zero() || !before);
            qr_ok += usize::from(!qr || is_quasi_rational(&g, &omega));
            if single {
                rep.line(print_rmatrix(&g).trim_end().to_string());
            }
        }
        let n = gauges.len();
        rep.verdict(
            &format!("{name}: cyb preserved"),
            cyb_ok == n,
            format!(
                "{cyb_ok}/{n} gauges{}",
                if before {
                    ""
                } else {
                    " (input is not a solution)"
                }
            ),
        );
        if qr {
            rep.verdict(
                &format!("{name}: quasi-rational preserved"),
                qr_ok == n,
                format!("{qr_ok}/{n} gauges"),
            );
        }
    }
    rep.residual_terms = Some(residual);
    if a.p.is_none() {
        for p in &gauges {
            rep.line(format!("  p = {p}"));
        }
    }
    Ok(rep)
}

pub fn frobenius(a: &FrobeniusArgs) -> Outcome {
    let cmd = "frobenius";
    let mut rep = Report::new(cmd);
    let fail = |e: Error| classify(cmd, e);
    let (b, k): (TwoCocycle, Option<usize>) = match (&a.input, a.builtin) {
        (Some(path), _) => {
            rep.input("input", path.display());
            (
                parse_frobenius(&read(path)?)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?,
                a.k,
            )
        }
        (None, Some(BuiltinPair::Killing)) => {
            rep.input("builtin", "killing");
            (sl2_killing_pair().map_err(fail)?, Some(a.k.unwrap_or(1)))
        }
        (None, _) => {
            rep.input("builtin", "borel");
            (sl2_borel_pair().map_err(fail)?, a.k)
        }
    };
    let t = b.sub().table().clone();
    rep.input("n", t.n()).input("dim L", b.sub().dim());
    if b.is_nondegenerate() {
        let r = skew_r_from_frobenius(&b).map_err(fail)?;
        rep.line(format!("r = {r}"));
        rep.verdict(
            "constant r-matrix",
            cyb(&r).is_zero() && r.is_skew(),
            "skew, CYB = 0",
        );
        let omega = calibrated_casimir(&t).map_err(fail)?;
        match quasi_rational_lift(&b, &omega) {
            Ok(q) => {
                rep.line(print_rmatrix(&q).trim_end().to_string());
                rep.verdict("quasi-rational lift", true, "uvΩ/(v-u) + r solves the CYBE");
            }
            Err(e @ Error::Postcondition(_)) => {
                rep.verdict("quasi-rational lift", false, e.to_string());
            }
            Err(e) => return Err(fail(e)),
        }
    } else {
        rep.info(
            "nondegenerate",
            false,
            "B is degenerate on L; no constant r-matrix",
        );
    }
    if let Some(k) = k {
        if k == 0 || k >= t.n() {
            return Err(usage(format!("k={k} out of range 1..={}", t.n() - 1)));
        }
        rep.input("k", k);
        let r5 = check_parabolic_pair(&b, k).map_err(fail)?;
        rep.verdict("parabolic pair", r5.all(), r5.to_string());
    }
    Ok(rep)
}
