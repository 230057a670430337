//! End-to-end acceptance run: one line per criterion, exit status 1 if any fails.
//!
//! Suite verdicts are read from a full gallery report; expected bases and
//! values are rebuilt here from first principles rather than taken from the
//! library.

use std::process::ExitCode;
use std::time::Instant;

use stackcalc::cohomology::{anchor_map_lbar, AlgebroidWindows, GroupoidWindows};
use stackcalc::groupoid::gallery::{build_example, GALLERY};
use stackcalc::report::{CertificateKind, ExampleReport};
use stackcalc::run::execute;
use stackcalc::window::encode;
use stackcalc::{ChartFunction, Command, Exec, Format, Report, RunConfig, Scalar, Section, VectorField};

const SEED: u64 = 20_261_018;
const DEGREE: u32 = 4;
const SAMPLES: usize = 20;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gallery_config() -> RunConfig {
    let mut c = RunConfig::new(Command::Gallery);
    c.seed = SEED;
    c.degree = DEGREE;
    c.samples = SAMPLES;
    c.format = Format::Json;
    c
}

fn example<'a>(r: &'a Report, name: &str) -> Result<&'a ExampleReport, String> {
    r.example(name).ok_or_else(|| format!("{name} missing from the gallery report"))
}

/// Every named check is present in `suite` and every check there holds.
fn suite_holds(e: &ExampleReport, suite: &str, required: &[&str]) -> Outcome {
    let checks: Vec<_> = e.suite(suite).collect();
    ensure(!checks.is_empty(), || format!("{}: no `{suite}` checks", e.example))?;
    if let Some(bad) = checks.iter().find(|v| !v.holds) {
        let cert = e
            .certificates
            .iter()
            .find(|c| c.suite == suite && c.check == bad.check)
            .map(|c| c.certificate.as_str())
            .unwrap_or("");
        return Err(format!("{}: `{}` failed: {cert}", e.example, bad.check));
    }
    for name in required {
        ensure(checks.iter().any(|v| v.check == *name), || {
            format!("{}: `{suite}` lacks `{name}`", e.example)
        })?;
    }
    Ok(())
}

fn on_gallery(r: &Report, suite: &str, required: &[&str]) -> Outcome {
    for name in GALLERY {
        suite_holds(example(r, name)?, suite, required)?;
    }
    Ok(())
}

const LEMMAS: &[&str] = &[
    "L_{a^l} F = i*(L_{a^r} F)",
    "L_{a^r} F(h) = L_{a^r} F(hg)",
    "L_{a^l} F(h) = L_{a^l} F(gh)",
    "L_{a^r} F = t*u* L_{a^r} F = t*u* L_{a^l} F",
    "L_{a^l} F = s*u* L_{a^l} F = s*u* L_{a^r} F",
    "L_{a^r} F = t*(a . F)",
    "L_{a^l} F = s*(a . F)",
    "delta(X . f) = X . delta f",
    "a . delta f = (da) . f",
    "delta(a . F) = (da) . F",
    "[X,Y] . f = X.(Y.f) - Y.(X.f)",
    "[X,Y] . F = X.(Y.F) - Y.(X.F)",
    "[[X,a]] . F = X.(a.F) - a.(X.F)",
];

fn criterion_1(r: &Report) -> Outcome {
    ensure(r.samples == SAMPLES, || format!("ran {} samples", r.samples))?;
    on_gallery(r, "lemmas", LEMMAS)
}

const MODULE: &[&str] = &[
    "d(a . f) = da . f - a . df",
    "d(a . F) = da . F - a . dF",
    "d(X . f) = dX . f + X . df",
    "d(X . F) = dX . F + X . dF",
    "[X,Y] . f = X.(Y.f) - Y.(X.f)",
    "[X,Y] . F = X.(Y.F) - Y.(X.F)",
    "[X,b] . f = X.(b.f) - b.(X.f)",
    "[X,b] . F = X.(b.F) - b.(X.F)",
    "[a,Y] . f = a.(Y.f) - Y.(a.f)",
    "[a,Y] . F = a.(Y.F) - Y.(a.F)",
    "[a,b] . f = 0 = a.(b.f) + b.(a.f)",
    "[a,b] . F = 0 = a.(b.F) + b.(a.F)",
];

fn criterion_2(r: &Report) -> Outcome {
    on_gallery(r, "module", MODULE)?;
    suite_holds(example(r, "molino")?, "module", MODULE)
}

fn criterion_3(r: &Report) -> Outcome {
    on_gallery(
        r,
        "vanest",
        &[
            "oVE(a . f) = VE(a) o oVE(f)",
            "oVE(a . F) = VE(a) o oVE(F)",
            "oVE(X . f) = VE(X) o oVE(f)",
            "oVE(X . F) = VE(X) o oVE(F)",
            "VE(da) = ad(a)",
            "oVE(delta f) = d_A f",
        ],
    )?;
    suite_holds(
        example(r, "pair-R")?,
        "vanest-window",
        &[
            "VE injective on multiplicative fields",
            "oVE injective on multiplicative functions",
            "every window cocycle has an oVE preimage",
        ],
    )
}

fn criterion_4(r: &Report) -> Outcome {
    let e = example(r, "z2-reflection")?;
    let g = build_example("z2-reflection").map_err(|e| e.to_string())?;
    let x = g.base().var("x");
    // Reynolds average of each monomial over x -> -x.
    let invariants: Vec<String> = (0..=DEGREE)
        .map(|k| {
            let m = x.pow(k);
            let reflected = x.scale(&Scalar::int(-1)).pow(k);
            (&m + &reflected).scale(&Scalar::ratio(1, 2))
        })
        .filter(|f| !f.is_zero())
        .map(|f| f.render())
        .collect();
    let got = &e.basis("invariant functions").ok_or("no invariant basis")?.elements;
    ensure(got == &invariants, || format!("invariants {got:?}, expected {invariants:?}"))?;

    // Equivariant fields phi d/dx need phi odd.
    let fields: Vec<VectorField> = (0..=DEGREE)
        .filter(|k| k % 2 == 1)
        .map(|k| VectorField::new(g.base(), vec![x.pow(k)]).unwrap())
        .collect();
    let expect: Vec<String> = fields.iter().map(VectorField::render).collect();
    let got = &e.basis("H^0 base fields").ok_or("no field basis")?.elements;
    ensure(got == &expect, || format!("fields {got:?}, expected {expect:?}"))?;

    // Image derivations send x^2 to 2x phi(x): no constant term.
    let x2 = x.pow(2);
    for f in &fields {
        let c = f.apply(&x2).map_err(|e| e.to_string())?.constant_term();
        ensure(c.is_zero(), || format!("{f} sends x^2 to a function with constant term {c}"))?;
    }
    let obstruction = e
        .certificates
        .iter()
        .find(|c| c.kind == CertificateKind::Obstruction)
        .ok_or("no obstruction certificate")?;
    ensure(obstruction.certificate.ends_with("takes the value 2"), || {
        format!("obstruction: {}", obstruction.certificate)
    })
}

fn criterion_5(r: &Report) -> Outcome {
    for name in ["circle-group", "torus-bundle-R"] {
        let e = example(r, name)?;
        let g = build_example(name).map_err(|e| e.to_string())?;
        let frame = Section::frame(g.base(), g.rank(), 0).render(&g.frame_names());
        let hm1 = &e.basis("H^-1").ok_or("no H^-1 basis")?.elements;
        ensure(hm1.contains(&frame), || format!("{name}: H^-1 = {hm1:?} lacks the frame section {frame}"))?;
        ensure(
            e.certificates.iter().any(|c| c.kind == CertificateKind::NonInjectivity),
            || format!("{name}: no non-injectivity certificate"),
        )?;
    }
    Ok(())
}

fn criterion_6(r: &Report) -> Outcome {
    let a = stackcalc::algebroid::examples::molino();
    let (l0, l1) = (Scalar::param("l0"), Scalar::param("l1"));
    let expect = VectorField::new(
        a.base(),
        vec![ChartFunction::constant(a.base(), -l1), ChartFunction::constant(a.base(), l0)],
    )
    .unwrap();
    for d in 1..=6 {
        let w = AlgebroidWindows::new(&a, d, Exec::Parallel);
        let inv = w.invariants();
        ensure(inv == vec![ChartFunction::one(a.base())], || format!("d = {d}: invariants {inv:?}"))?;
        let (dim, reps) = w.h0();
        ensure(dim == 1 && reps[0].symbol == expect, || {
            format!("d = {d}: quotient {:?}", reps.iter().map(|r| r.symbol.render()).collect::<Vec<_>>())
        })?;
        let cols = anchor_map_lbar(&inv, &[reps[0].symbol.clone()]);
        ensure(cols.iter().all(|c| c.is_empty()), || format!("d = {d}: L-bar is nonzero"))?;
    }
    let e = example(r, "molino")?;
    let lbar = e.matrices.iter().find(|m| m.name == "L-bar").ok_or("no L-bar matrix")?;
    ensure(lbar.entries.is_empty(), || "reported L-bar has entries".into())
}

fn criterion_7(r: &Report) -> Outcome {
    let check = |e: &ExampleReport, d: usize| -> Outcome {
        suite_holds(
            e,
            "morita",
            &[
                "H^0 windows agree",
                "phi^* is a bijection on invariant windows",
                "phi^*(mu(phi_bar x, y)) = mu(x, phi^* y)",
            ],
        )?;
        // polynomial fields (and functions) on R of degree <= d
        let h0 = &e.dimensions["H^0 (source, projectable, target)"];
        let inv = &e.dimensions["invariants (source, target)"];
        ensure(h0 == &vec![d + 1; 3] && inv == &vec![d + 1; 2], || format!("d = {d}: H^0 {h0:?}, invariants {inv:?}"))
    };
    check(example(r, "submersion-R2-R->unit-R")?, DEGREE as usize)?;
    for d in [2, 3] {
        let mut c = RunConfig::new(Command::Morita).example("submersion-R2-R->unit-R");
        c.degree = d;
        c.samples = 5;
        c.seed = SEED;
        let rep = execute(&c).map_err(|e| e.to_string())?;
        check(&rep.examples[0], d as usize)?;
    }
    Ok(())
}

fn criterion_8(r: &Report) -> Outcome {
    on_gallery(
        r,
        "lie-rinehart",
        &[
            "graded Leibniz [X, fY]",
            "graded Leibniz [X, f alpha]",
            "graded Leibniz [alpha, fX]",
            "anchor map preserves brackets",
            "anchor map is linear over invariants",
        ],
    )?;
    for name in ["unit-R", "unit-R2"] {
        suite_holds(example(r, name)?, "lie-rinehart", &["unit groupoid: action is the Lie derivative"])?;
    }
    // For unit(R) the anchor map is the Lie derivative itself.
    let g = build_example("unit-R").map_err(|e| e.to_string())?;
    let w = GroupoidWindows::new(&g, 2, Exec::Sequential);
    let x = g.base().var("x");
    let inv = w.invariants();
    let expect_inv = vec![ChartFunction::one(g.base()), x.clone(), x.pow(2)];
    ensure(inv == expect_inv, || format!("unit-R invariants {inv:?}"))?;
    let field = VectorField::new(g.base(), vec![x.pow(2)]).unwrap();
    let by_hand = vec![ChartFunction::zero(g.base()), x.pow(2), x.pow(3).scale(&Scalar::int(2))];
    ensure(anchor_map_lbar(&inv, &[field])[0] == encode(&by_hand), || {
        "L-bar(x^2 d/dx) differs from the Lie derivative".into()
    })
}

fn criterion_9(r: &Report) -> Outcome {
    on_gallery(
        r,
        "hom-category",
        &[
            "(f', F') o (f, F) = (f + f', F)",
            "composition matches vertical composition",
            "morphisms are natural transformations",
        ],
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cfg = gallery_config();
    let first = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            println!("gallery run failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let gallery_secs = start.elapsed().as_secs_f64();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "derivative lemmas on every gallery groupoid", criterion_1(&first)),
        (2, "dg-module identities incl. the degree -2 case", criterion_2(&first)),
        (3, "Van-Est square, VE o d = ad, oVE o delta = d_A", criterion_3(&first)),
        (4, "reflection: {1,x^2,x^4}, {x d_x, x^3 d_x}, D(x^2) = 2 obstruction", criterion_4(&first)),
        (5, "circle / torus bundle: nonzero H^-1 with the frame section", criterion_5(&first)),
        (6, "Molino: constants, {-l1 d_t0 + l0 d_t1}, L-bar = 0 for d <= 6", criterion_6(&first)),
        (7, "Morita submersion -> unit: H^0 dims d+1, phi^* bijective, mu compatible", criterion_7(&first)),
        (8, "graded Lie-Rinehart checks; unit case is the Lie derivative", criterion_8(&first)),
        (9, "hom-category composition vs natural transformations", criterion_9(&first)),
    ];
    let second = execute(&cfg).map_err(|e| e.to_string());
    let determinism = second.and_then(|r| {
        ensure(r.to_json() == first.to_json(), || "gallery reports differ between runs".into())
    });
    results.push((10, "two gallery runs with one seed are byte-identical", determinism));

    let mut ok = true;
    for (n, what, res) in &results {
        match res {
            Ok(()) => println!("criterion {n:>2}: PASS  {what}"),
            Err(e) => {
                ok = false;
                println!("criterion {n:>2}: FAIL  {what}: {e}");
            }
        }
    }
    println!(
        "gallery run {gallery_secs:.1}s, total {:.1}s (degree {DEGREE}, {SAMPLES} samples, seed {SEED})",
        start.elapsed().as_secs_f64()
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
