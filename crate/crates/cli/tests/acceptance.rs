//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasirat::cybe::{
    calibrated_casimir, catalog, cocycle_check, cojacobi_check, cyb, gamma2, gamma3, gamma4,
    is_quasi_rational, q0, q1, q2, CatalogName,
};
use quasirat::doubles::{
    build_wk, case4_model, case4_p, case4_pstar, check_transversality, dual_basis_check,
    dual_sum_projection, embed_i, orth_complement_truncated, q4_form, quotient_image_of_p,
    wk_loop_part, DualNumberSubspace, Window,
};
use quasirat::frobenius::{
    check_parabolic_pair, quasi_rational_lift, sl2_borel_pair, sl2_killing_pair,
};
use quasirat::gauge::{gauge_transform, seeded_unipotents};
use quasirat::lie::{calibrate_casimir, casimir, make_sl, BasisLabel, GElement, GPoly, LieTable};
use quasirat::ratfun::{expand_at_infinity, q, Var};
use quasirat::text::{parse_ratfun, parse_rmatrix, print_rmatrix, random_document};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sl(n: usize) -> Arc<LieTable> {
    make_sl(n).expect("sl(n)")
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn ac1() -> Check {
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    for n in [2, 3] {
        let t = sl(n);
        for entry in ok(catalog(&t))? {
            if entry.name == CatalogName::Gamma1 {
                continue;
            }
            let start = Instant::now();
            let res = cyb(&entry.matrix);
            slowest = slowest.max(start.elapsed());
            ensure(res.is_zero(), || {
                format!("{} on sl({n}): {} residual terms", entry.name, res.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} matrices on sl(2)/sl(3) have zero residual, slowest {}",
        secs(slowest)
    ))
}

fn ac2() -> Check {
    let t = sl(2);
    let om = ok(calibrated_casimir(&t))?;
    let kernel = ok(parse_ratfun("u*v/(v-u)"))?;
    for (name, r) in [("q0", q0(&om)), ("q1", ok(q1(&om))?), ("q2", ok(q2(&om))?)] {
        ensure(is_quasi_rational(&r, &om), || {
            format!("{name} is not quasi-rational")
        })?;
        let poly = r.sub(&om.tensor().mul_fn(&kernel));
        ensure(poly.is_polynomial() && poly.is_skew(), || {
            format!("{name}: polynomial part not skew")
        })?;
    }
    let rational = ok(quasirat::cybe::eq5_rational(&om))?;
    ensure(!is_quasi_rational(&rational, &om), || {
        "eq5_rational reported quasi-rational".into()
    })?;
    Ok("q0, q1, q2 quasi-rational with skew polynomial parts; eq5_rational is not".into())
}

fn ac3() -> Check {
    let mut pairs = 0;
    for n in [2, 3] {
        let t = sl(n);
        let w = ok(Window::new(-16, 8))?;
        let mut embedded = Vec::new();
        for d in 0..=8 {
            for a in 0..t.dim() {
                embedded.push(ok(embed_i(&GPoly::monomial(t.basis(a), d), w))?);
            }
        }
        for x in &embedded {
            for y in &embedded {
                ensure(q4_form(&t, x, y) == q(0), || {
                    format!("nonzero pairing on sl({n})")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs of embedded monomials u^a x, 0 <= a <= 8, pair to 0"
    ))
}

fn ac4() -> Check {
    let start = Instant::now();
    let t = sl(2);
    ensure(ok(dual_basis_check(&t, 12))?, || {
        "dual pairing is not the identity".into()
    })?;
    let proj = ok(dual_sum_projection(&t, 12))?;
    // independent expansion of uvΩ/(v-u) with the unit-scale Casimir
    let om = ok(casimir(&t, &q(1)))?;
    let kernel = ok(parse_ratfun("u*v/(v-u)"))?;
    let mut compared = 0;
    for ((a, b), c) in om.tensor().terms() {
        let expect = expand_at_infinity(&(c * &kernel), &Var::V, 12);
        let got = proj
            .coeff(*a, *b)
            .ok_or_else(|| format!("missing coefficient ({a},{b})"))?;
        ensure(got == &expect, || format!("coefficient ({a},{b}) differs"))?;
        compared += 1;
    }
    ensure(proj.len() == compared, || {
        "projection has extra coefficients".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(2), || {
        format!("took {}", secs(elapsed))
    })?;
    Ok(format!(
        "order 12 pairing exact, {compared} series match termwise, {}",
        secs(elapsed)
    ))
}

fn ac5() -> Check {
    let w = ok(Window::new(-8, 4))?;
    let mut cases = 0;
    for n in [2, 3] {
        let t = sl(n);
        for k in 0..n {
            let wk = ok(build_wk(&t, k, w))?;
            let perp = orth_complement_truncated(&wk);
            let lp = ok(wk_loop_part(&t, k, w))?;
            ensure(perp.same_span(&lp), || {
                format!("sl({n}), k={k}: complement differs from loop part")
            })?;
            let quotient = wk.dim() - perp.dim();
            ensure(quotient == 2 * (n * n - 1), || {
                format!("sl({n}), k={k}: quotient dim {quotient}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) cases at window [-8, 4]"))
}

/// Block upper triangular parabolic and its nilradical, from matrix units.
fn hand_parabolic(t: &LieTable, k: usize) -> (Vec<GElement>, Vec<GElement>) {
    let mut pk = Vec::new();
    let mut nil = Vec::new();
    for (a, label) in t.labels().iter().enumerate() {
        match *label {
            BasisLabel::E(i, j) if i > k && j <= k => {}
            BasisLabel::E(i, j) if i <= k && j > k => {
                pk.push(t.basis(a));
                nil.push(t.basis(a));
            }
            _ => pk.push(t.basis(a)),
        }
    }
    (pk, nil)
}

fn ac6() -> Check {
    let w = ok(Window::new(-8, 4))?;
    let mut cases = 0;
    for n in [2, 3] {
        let t = sl(n);
        for k in 1..n {
            let image = ok(quotient_image_of_p(&t, k, w))?;
            let (pk, nil) = hand_parabolic(&t, k);
            let expect = DualNumberSubspace::new(&t, &pk, &nil);
            ensure(image.same_span(&expect), || {
                format!("sl({n}), k={k}: image differs")
            })?;
            ensure(image.dim() == t.dim(), || {
                format!("sl({n}), k={k}: dim {}", image.dim())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) cases equal P_k + εP_k^⊥"))
}

fn ac7() -> Check {
    let t = sl(2);
    let m = case4_model(&t, ok(Window::new(-8, 4))?);
    let ps = ok(case4_pstar(&m))?;
    let rep = ok(check_transversality(&ps, 0))?;
    ensure(rep.all(), || format!("P*: {rep}"))?;
    let ip = ok(case4_p(&m))?;
    let neg = ok(check_transversality(&ip, 0))?;
    ensure(!neg.trivial_intersection, || {
        "i(P) passed condition 1".into()
    })?;
    Ok("P* passes all three conditions; i(P) fails W ∩ P = 0".into())
}

fn ac8() -> Check {
    let start = Instant::now();
    let t = sl(2);
    let om = ok(calibrated_casimir(&t))?;
    let gammas = [
        ("gamma2", gamma2(&om)),
        ("gamma3", ok(gamma3(&om))?),
        ("gamma4", gamma4(&om)),
    ];
    let monomials: Vec<GPoly> = (0..=5)
        .flat_map(|d| (0..t.dim()).map(move |a| (a, d)))
        .map(|(a, d)| GPoly::monomial(t.basis(a), d))
        .collect();
    let mut checks = 0;
    for (name, g) in &gammas {
        for (i, p) in monomials.iter().enumerate() {
            ensure(ok(cojacobi_check(g, p))?, || {
                format!("{name}: co-Jacobi fails")
            })?;
            checks += 1;
            for r in &monomials[i..] {
                ensure(ok(cocycle_check(g, p, r))?, || {
                    format!("{name}: cocycle identity fails")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} cocycle and co-Jacobi checks, {}",
        secs(start.elapsed())
    ))
}

const GAUGE_SEED: u64 = 2024;

fn ac9() -> Check {
    let t = sl(2);
    let om = ok(calibrated_casimir(&t))?;
    let targets = [("q0", q0(&om)), ("q1", ok(q1(&om))?), ("q2", ok(q2(&om))?)];
    let gauges = ok(seeded_unipotents(2, GAUGE_SEED, 20))?;
    for p in &gauges {
        ensure(p.degree() <= 2 && p.height() <= q(3), || {
            format!("{p} exceeds degree or height")
        })?;
        for (name, r) in &targets {
            let g = ok(gauge_transform(p, r))?;
            ensure(cyb(&g).is_zero(), || {
                format!("{p} on {name} breaks the CYBE")
            })?;
            ensure(is_quasi_rational(&g, &om), || {
                format!("{p} on {name} breaks quasi-rationality")
            })?;
        }
    }
    Ok(format!("20 gauges (seed {GAUGE_SEED}) x 3 matrices"))
}

/// `tr(ad x ad y)` from hand-written sl(2) ad matrices in the basis (e, f, h).
fn killing_oracle(x: usize, y: usize) -> i64 {
    let ad: [[[i64; 3]; 3]; 3] = [
        [[0, 0, -2], [0, 0, 0], [0, 1, 0]],
        [[0, 0, 0], [0, 0, 2], [-1, 0, 0]],
        [[2, 0, 0], [0, -2, 0], [0, 0, 0]],
    ];
    let mut tr = 0;
    for i in 0..3 {
        for k in 0..3 {
            tr += ad[x][i][k] * ad[y][k][i];
        }
    }
    tr
}

fn ac10() -> Check {
    let t = sl(2);
    let om = ok(calibrated_casimir(&t))?;
    let borel = ok(sl2_borel_pair())?;
    let lift = ok(quasi_rational_lift(&borel, &om))?;
    ensure(lift == ok(q1(&om))?, || {
        "lift of (span{e,h}, B(e,h)=1) is not q1".into()
    })?;
    let pair = ok(sl2_killing_pair())?;
    // [e, h] = -2e, so B(e, h) = K(f, -2e) = -2 tr(ad f ad e)
    let expected = -2 * killing_oracle(1, 0);
    let got = ok(pair.eval(&t.basis(0), &t.basis(2)))?;
    ensure(got == q(expected), || {
        format!("B(e,h) = {got}, oracle {expected}")
    })?;
    ensure(expected == -8, || format!("oracle gives {expected}"))?;
    let rep = ok(check_parabolic_pair(&pair, 1))?;
    ensure(rep.all(), || rep.to_string())?;
    Ok(format!("lift equals q1; B(e,h) = {expected}; {rep}"))
}

fn ac11() -> Check {
    let t = sl(2);
    let cal = ok(calibrate_casimir(&t))?;
    let survivors = cal.residuals.iter().filter(|r| r.survives()).count();
    ensure(survivors == 1, || format!("{survivors} survivors"))?;
    for n in [2, 3] {
        let tn = sl(n);
        let om = ok(casimir(&tn, cal.scale()))?;
        for name in CatalogName::ALL {
            if name.sl2_only() && n != 2 {
                continue;
            }
            let entry = ok(quasirat::cybe::catalog_entry(name, &om))?;
            ensure(cyb(&entry.matrix).is_zero(), || {
                format!("{name} on sl({n}) fails at the calibrated scale")
            })?;
        }
    }
    Ok(format!(
        "one survivor c = {} of {}, validates the catalog",
        cal.scale(),
        cal.residuals.len()
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quasirat"))
        .args(args)
        .output()
        .expect("run quasirat");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quasirat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, body).expect("write fixture");
    path
}

fn ac12() -> Check {
    let mut docs = 0;
    for n in [2, 3] {
        for entry in ok(catalog(&sl(n)))? {
            let text = print_rmatrix(&entry.matrix);
            let first = ok(parse_rmatrix(&text))?;
            ensure(first.tensor() == &entry.matrix, || {
                format!("{} does not round-trip", entry.name)
            })?;
            let again = ok(parse_rmatrix(&first.canonical()))?;
            ensure(again.tensor() == first.tensor(), || {
                format!("{} unstable", entry.name)
            })?;
            docs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let src = ok(random_document(&mut rng, 2 + i % 2))?;
        let first = ok(parse_rmatrix(&src))?;
        let again = ok(parse_rmatrix(&first.canonical()))?;
        ensure(again.tensor() == first.tensor(), || {
            format!("random document {i} unstable: {src}")
        })?;
        docs += 1;
    }

    let q1_doc = scratch(
        "q1.rm",
        &print_rmatrix(&ok(q1(&ok(calibrated_casimir(&sl(2)))?))?),
    );
    let bad_doc = scratch("single.rm", "algebra sl(2); e(x)h");
    let broken = scratch("broken.rm", "algebra sl(2); e(x)h ?");
    let expectations: [(&[&str], i32); 8] = [
        (&["verify", "--builtin", "q2"], 0),
        (&["verify", "--input", q1_doc.to_str().unwrap()], 0),
        (&["verify", "--input", bad_doc.to_str().unwrap()], 1),
        (&["verify", "--input", broken.to_str().unwrap()], 2),
        (&["verify", "--builtin", "nope"], 2),
        (
            &[
                "double",
                "--check",
                "lagrangian",
                "--n",
                "2",
                "--trunc",
                "0",
                "--k",
                "5",
            ],
            2,
        ),
        (&["double", "--check", "transversal", "--subspace", "ip"], 1),
        (&["gauge", "--p", "unip(e,1,1)", "--builtin", "q0"], 0),
    ];
    for (args, code) in expectations {
        let (got, _) = cli(args);
        ensure(got == code, || {
            format!(
                "`quasirat {}` exited {got}, expected {code}",
                args.join(" ")
            )
        })?;
    }
    let (_, json) = cli(&["--json", "verify", "--builtin", "eq5_rational"]);
    let v: serde_json::Value = ok(serde_json::from_str(&json))?;
    let keys: BTreeSet<&str> = v
        .as_object()
        .ok_or("report is not an object")?
        .keys()
        .map(|s| s.as_str())
        .collect();
    let schema: BTreeSet<&str> = [
        "command",
        "inputs",
        "window",
        "verdicts",
        "residual_terms",
        "seed",
    ]
    .into();
    ensure(keys == schema, || format!("json fields {keys:?}"))?;
    Ok(format!(
        "{docs} documents round-trip; exit codes 0/1/2 and json schema hold"
    ))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Check); 12] = [
        ("AC1", "catalog CYBE suite", ac1),
        ("AC2", "quasi-rationality", ac2),
        ("AC3", "isotropy of i(P)", ac3),
        ("AC4", "dual basis identity", ac4),
        ("AC5", "orthogonal complement of W_k", ac5),
        ("AC6", "quotient image", ac6),
        ("AC7", "transversality conditions", ac7),
        ("AC8", "bialgebra axioms", ac8),
        ("AC9", "gauge preservation", ac9),
        ("AC10", "Frobenius construction", ac10),
        ("AC11", "calibration determinism", ac11),
        ("AC12", "CLI contract", ac12),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("{id:<5} PASS  {title}: {detail} [{t}]"),
            Err(detail) => {
                failed += 1;
                println!("{id:<5} FAIL  {title}: {detail} [{t}]");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
