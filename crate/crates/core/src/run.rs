//! Command dispatch: resolves the subject, runs the requested suites in a
//! fixed order and assembles the report.

use std::path::PathBuf;

use crate::algebroid::examples::build_algebroid;
use crate::algebroid::io::load_algebroid;
use crate::algebroid::{AlgebroidDerivation, AlgebroidPresentation, LinkedPair, Section};
use crate::check::ValidationReport;
use crate::chart::CoordKind;
use crate::cohomology::{
    anchor_map_lbar, derivation_solver, lie_rinehart_check, morita_compare, proper_crosscheck, vanest_window_check,
    AlgebroidWindows, DerivationDecision, GroupoidWindows,
};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::{ChartFunction, Mono};
use crate::groupoid::gallery::{
    build_example, morita_example, GroupoidMorphism, GALLERY, MORITA_PAIRS, PROPER, SOURCE_SIMPLY_CONNECTED,
};
use crate::groupoid::io::load_groupoid;
use crate::groupoid::Groupoid;
use crate::linalg::{self, Reducer, SVec, SparseMatrix};
use crate::par::Exec;
use crate::report::{CertificateKind, ExampleReport, Report};
use crate::suites::{
    algebroid_module_suite, hom_category_suite, lemma_suite, module_suite, validate_suite, vanest_suite, AlgebroidPool,
    GroupoidPool,
};
use crate::window::{encode, Key};

/// Built-in algebroids that enter the gallery directly.
pub const ALGEBROID_GALLERY: &[&str] = &["molino"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Lemmas,
    Vanest,
    Cohomology,
    LieRinehart,
    Morita,
    HomCategory,
    Gallery,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Lemmas => "lemmas",
            Command::Vanest => "vanest",
            Command::Cohomology => "cohomology",
            Command::LieRinehart => "lie-rinehart",
            Command::Morita => "morita",
            Command::HomCategory => "hom-category",
            Command::Gallery => "gallery",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub example: Option<String>,
    pub input: Option<PathBuf>,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub exec: Exec,
}

pub const DEFAULT_DEGREE: u32 = 4;
pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_SEED: u64 = 0;

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            example: None,
            input: None,
            degree: DEFAULT_DEGREE,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            format: Format::Text,
            output: None,
            exec: Exec::default(),
        }
    }

    pub fn example(mut self, name: &str) -> Self {
        self.example = Some(name.to_string());
        self
    }

    fn check(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Config("degree bound must be at least 1".into()));
        }
        if self.samples < 1 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        if self.example.is_some() && self.input.is_some() {
            return Err(Error::Config("give either --example or --input, not both".into()));
        }
        Ok(())
    }
}

pub struct RunOutcome {
    /// 0: every identity held; 1: some identity failed; 2: input or configuration error.
    pub status: i32,
    pub report: Option<Report>,
    /// Rendered report, or the error message.
    pub output: String,
}

enum Subject {
    Groupoid(Groupoid),
    Algebroid(AlgebroidPresentation),
    Morphism(GroupoidMorphism),
}

fn builtin(name: &str) -> Result<Subject> {
    if let Ok(g) = build_example(name) {
        return Ok(Subject::Groupoid(g));
    }
    if let Ok(a) = build_algebroid(name) {
        return Ok(Subject::Algebroid(a));
    }
    if let Ok(m) = morita_example(name) {
        return Ok(Subject::Morphism(m));
    }
    Err(Error::UnknownExample(name.to_string()))
}

fn from_input(path: &PathBuf) -> Result<Subject> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&src).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("line {}: {e}", e.line()),
    })?;
    if value.get("frame").is_some() {
        Ok(Subject::Algebroid(load_algebroid(&src)?))
    } else {
        Ok(Subject::Groupoid(load_groupoid(&src)?))
    }
}

/// Runs the command and renders the report; errors become exit status 2.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    let result = execute(cfg).and_then(|report| {
        let text = match cfg.format {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        };
        if let Some(path) = &cfg.output {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        Ok((report, text))
    });
    match result {
        Ok((report, text)) => RunOutcome {
            status: if report.all_pass() { 0 } else { 1 },
            report: Some(report),
            output: text,
        },
        Err(e) => RunOutcome {
            status: 2,
            report: None,
            output: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    cfg.check()?;
    let examples = if cfg.command == Command::Gallery {
        gallery(cfg)?
    } else {
        let subject = match (&cfg.example, &cfg.input) {
            (Some(name), None) => Some(builtin(name)?),
            (None, Some(path)) => Some(from_input(path)?),
            _ => None,
        };
        match subject {
            Some(s) => vec![single(cfg, cfg.command, s)?],
            None if cfg.command == Command::Morita => MORITA_PAIRS
                .iter()
                .map(|n| morita(cfg, &morita_example(n)?))
                .collect::<Result<_>>()?,
            None => return Err(Error::Config(format!("`{}` needs --example or --input", cfg.command.name()))),
        }
    };
    Ok(Report {
        command: cfg.command.name().to_string(),
        seed: cfg.seed,
        samples: cfg.samples,
        degree_bound: cfg.degree,
        examples,
    })
}

fn gallery(cfg: &RunConfig) -> Result<Vec<ExampleReport>> {
    let mut out = Vec::new();
    for name in GALLERY {
        out.push(groupoid_all(cfg, &build_example(name)?)?);
    }
    for name in ALGEBROID_GALLERY {
        out.push(algebroid_all(cfg, &build_algebroid(name)?));
    }
    for name in MORITA_PAIRS {
        out.push(morita(cfg, &morita_example(name)?)?);
    }
    Ok(out)
}

fn single(cfg: &RunConfig, cmd: Command, subject: Subject) -> Result<ExampleReport> {
    match subject {
        Subject::Groupoid(g) => groupoid_command(cfg, cmd, &g),
        Subject::Algebroid(a) => algebroid_command(cfg, cmd, &a),
        Subject::Morphism(m) if cmd == Command::Morita => morita(cfg, &m),
        Subject::Morphism(m) => Err(Error::Config(format!(
            "`{}` is a morphism; only `morita` accepts it",
            m.name
        ))),
    }
}

// ---- groupoids ----

/// Structure axioms first; nothing else runs on an invalid presentation.
fn structurally_valid(rep: &mut ExampleReport, g: &Groupoid) -> bool {
    let v = g.validate();
    if v.all_pass() {
        true
    } else {
        rep.add_suite("validate", &v);
        false
    }
}

fn groupoid_command(cfg: &RunConfig, cmd: Command, g: &Groupoid) -> Result<ExampleReport> {
    let mut rep = ExampleReport::new(g.name(), cfg.degree);
    if !structurally_valid(&mut rep, g) {
        return Ok(rep);
    }
    let (e, n, seed) = (cfg.exec, cfg.samples, cfg.seed);
    let pool = || GroupoidPool::new(g, e);
    match cmd {
        Command::Validate => rep.add_suite("validate", &validate_suite(&pool(), n, seed, e)),
        Command::Lemmas => {
            let p = pool();
            rep.add_suite("lemmas", &lemma_suite(&p, n, seed, e));
            rep.add_suite("module", &module_suite(&p, n, seed, e));
        }
        Command::Vanest => vanest(cfg, &mut rep, g, &pool())?,
        Command::Cohomology => cohomology(cfg, &mut rep, &GroupoidWindows::new(g, cfg.degree, e)),
        Command::LieRinehart => {
            let w = GroupoidWindows::new(g, cfg.degree, e);
            rep.add_suite("lie-rinehart", &lie_rinehart_check(&w, n, seed, e));
        }
        Command::HomCategory => rep.add_suite("hom-category", &hom_category_suite(&pool(), n, seed, e)),
        Command::Morita => {
            return Err(Error::Config(format!(
                "`morita` takes a morphism ({}), not a groupoid",
                MORITA_PAIRS.join(", ")
            )))
        }
        Command::Gallery => unreachable!("gallery is dispatched separately"),
    }
    Ok(rep)
}

fn groupoid_all(cfg: &RunConfig, g: &Groupoid) -> Result<ExampleReport> {
    let mut rep = ExampleReport::new(g.name(), cfg.degree);
    if !structurally_valid(&mut rep, g) {
        return Ok(rep);
    }
    let (e, n, seed) = (cfg.exec, cfg.samples, cfg.seed);
    let pool = GroupoidPool::new(g, e);
    rep.add_suite("validate", &validate_suite(&pool, n, seed, e));
    rep.add_suite("lemmas", &lemma_suite(&pool, n, seed, e));
    rep.add_suite("module", &module_suite(&pool, n, seed, e));
    vanest(cfg, &mut rep, g, &pool)?;
    let w = GroupoidWindows::new(g, cfg.degree, e);
    cohomology(cfg, &mut rep, &w);
    rep.add_suite("lie-rinehart", &lie_rinehart_check(&w, n, seed, e));
    rep.add_suite("hom-category", &hom_category_suite(&pool, n, seed, e));
    Ok(rep)
}

fn vanest(cfg: &RunConfig, rep: &mut ExampleReport, g: &Groupoid, pool: &GroupoidPool) -> Result<()> {
    let pair = LinkedPair::new(g.clone())?;
    rep.add_suite("vanest", &vanest_suite(&pair, pool, cfg.samples, cfg.seed, cfg.exec));
    if SOURCE_SIMPLY_CONNECTED.contains(&g.name()) {
        rep.add_suite("vanest-window", &vanest_window_check(&pair, cfg.degree, cfg.exec));
    }
    Ok(())
}

fn render_section(s: &Section, frame: &[String]) -> String {
    s.render(frame)
}

fn render_fields(fields: &[VectorField]) -> Vec<String> {
    fields.iter().map(VectorField::render).collect()
}

fn cohomology(cfg: &RunConfig, rep: &mut ExampleReport, w: &GroupoidWindows) {
    let g = &w.groupoid;
    let frame = g.frame_names();
    let inv = w.invariants();
    let (_, h0) = w.h0();
    let symbols: Vec<VectorField> = h0.iter().map(|x| x.base.clone()).collect();
    let hm1 = w.h_minus1();
    let (_, h1) = w.h1();

    rep.add_basis("invariant functions", false, inv.iter().map(ChartFunction::render).collect());
    rep.add_basis(
        "multiplicative functions",
        false,
        w.multiplicative_functions().iter().map(|f| f.render()).collect(),
    );
    rep.add_basis("H^-1", false, hm1.iter().map(|a| render_section(a, &frame)).collect());
    rep.add_basis("H^0 base fields", true, render_fields(&symbols));
    rep.add_basis("H^0 arrow fields", true, h0.iter().map(|x| x.arrow.render()).collect());
    rep.add_basis("H^1", true, h1.iter().map(|f| f.render()).collect());
    rep.matrices.push(w.functions.matrix("delta"));
    rep.matrices.push(w.sections.matrix("partial"));
    rep.matrices.push(w.fields.matrix("multiplicativity of fields"));
    rep.matrices.push(w.arrow_functions.matrix("multiplicativity of functions"));

    lbar(rep, &inv, &symbols, &h0.iter().map(|x| x.base.render()).collect::<Vec<_>>());
    for (a, name) in hm1.iter().zip(0..) {
        rep.certify(
            "cohomology",
            &format!("L-bar on H^-1 class {name}"),
            CertificateKind::NonInjectivity,
            format!("nonzero class {} acts by 0 on invariant functions", render_section(a, &frame)),
        );
    }
    probes(rep, g.base().coords(), &inv, &symbols);
    if PROPER.contains(&g.name()) {
        rep.add_suite("proper", &proper_crosscheck(w, cfg.samples, cfg.seed));
    }
}

/// The anchor map on degree-0 classes: matrix, Leibniz check on every image,
/// and a certificate for each kernel vector.
fn lbar(rep: &mut ExampleReport, inv: &[ChartFunction], symbols: &[VectorField], labels: &[String]) {
    let cols = anchor_map_lbar(inv, symbols);
    rep.matrices.push(SparseMatrix::from_columns("L-bar", &cols, labels.to_vec(), |(j, m): &Key| {
        format!("D({}):{}", inv[*j as usize], m.render(inv[*j as usize].chart()))
    }));
    let mut leibniz = ValidationReport::default();
    let bad = symbols.iter().find_map(|s| {
        let target: Vec<ChartFunction> = inv.iter().map(|b| s.apply_unchecked(b)).collect();
        derivation_solver(inv, symbols, &target).err().map(|e| format!("{s}: {e}"))
    });
    leibniz.push(
        "L-bar lands in derivations of the invariant algebra",
        crate::check::Verdict::from_bool(bad.is_none(), || bad.clone().unwrap_or_default()),
    );
    rep.add_suite("cohomology", &leibniz);
    for k in linalg::kernel(&cols) {
        let combo: Vec<String> = k.iter().map(|(i, c)| format!("({c})*[{}]", labels[*i])).collect();
        rep.certify(
            "cohomology",
            "L-bar on H^0",
            CertificateKind::NonInjectivity,
            format!("nonzero class {} acts by 0 on invariant functions", combo.join(" + ")),
        );
    }
}

/// `D = (1/x) d/dx` on the invariant window, for each affine coordinate `x`
/// where it is defined and stays invariant.
fn inverse_coordinate_probe(coords: &[crate::chart::Coord], inv: &[ChartFunction], c: usize) -> Option<Vec<ChartFunction>> {
    if coords[c].kind != CoordKind::Affine || inv.is_empty() {
        return None;
    }
    let chart = inv[0].chart();
    let gidx = chart.first_gen(c);
    let mut out = Vec::new();
    for b in inv {
        let db = b.derive_coord(c);
        let mut q = ChartFunction::zero(chart);
        for (m, k) in db.terms() {
            let mut e = m.exponents().to_vec();
            if e[gidx] == 0 {
                return None;
            }
            e[gidx] -= 1;
            q.add_term(Mono(e), k.clone());
        }
        out.push(q);
    }
    let span = Reducer::from_columns(&inv.iter().map(|b| encode(std::slice::from_ref(b))).collect::<Vec<SVec<Key>>>());
    out.iter().all(|v| span.contains(&encode(std::slice::from_ref(v)))).then_some(out)
}

fn probes(rep: &mut ExampleReport, coords: &[crate::chart::Coord], inv: &[ChartFunction], symbols: &[VectorField]) {
    let mut lines = Vec::new();
    for c in 0..coords.len() {
        let Some(target) = inverse_coordinate_probe(coords, inv, c) else { continue };
        let name = format!("(1/{0}) d/d{0}", coords[c].name);
        let values: Vec<String> = inv.iter().zip(&target).map(|(b, v)| format!("D({b}) = {v}")).collect();
        match derivation_solver(inv, symbols, &target) {
            Ok(DerivationDecision::InImage { witness }) => {
                lines.push(format!("{name} [{}]: in the image, witness {witness:?}", values.join(", ")));
            }
            Ok(DerivationDecision::NotInImage { functional, value }) => {
                lines.push(format!("{name} [{}]: not in the image", values.join(", ")));
                let f: Vec<String> = functional.iter().map(|(k, w)| format!("{w} * [{k}]")).collect();
                rep.certify(
                    "cohomology",
                    &format!("{name} is not in the image of L-bar"),
                    CertificateKind::Obstruction,
                    format!("functional {} vanishes on the image and takes the value {value}", f.join(" + ")),
                );
            }
            Err(e) => lines.push(format!("{name}: {e}")),
        }
    }
    if !lines.is_empty() {
        rep.add_basis("derivation probes", true, lines);
    }
}

// ---- algebroids ----

fn render_derivation(a: &AlgebroidPresentation, d: &AlgebroidDerivation) -> String {
    let acts: Vec<String> = a
        .frame()
        .iter()
        .zip(&d.action)
        .map(|(e, s)| format!("{e} -> {}", s.render(a.frame())))
        .collect();
    format!("symbol {}; {}", d.symbol.render(), acts.join(", "))
}

fn algebroid_command(cfg: &RunConfig, cmd: Command, a: &AlgebroidPresentation) -> Result<ExampleReport> {
    let mut rep = ExampleReport::new(a.name(), cfg.degree);
    let v = a.validate();
    if !v.all_pass() {
        rep.add_suite("validate", &v);
        return Ok(rep);
    }
    match cmd {
        Command::Validate => rep.add_suite("validate", &v),
        Command::Lemmas => {
            let pool = AlgebroidPool::new(a, cfg.exec);
            rep.add_suite("module", &algebroid_module_suite(&pool, cfg.samples, cfg.seed, cfg.exec));
        }
        Command::Cohomology => algebroid_cohomology(&mut rep, &AlgebroidWindows::new(a, cfg.degree, cfg.exec)),
        other => {
            return Err(Error::Config(format!(
                "`{}` needs a groupoid; `{}` is an algebroid",
                other.name(),
                a.name()
            )))
        }
    }
    Ok(rep)
}

fn algebroid_all(cfg: &RunConfig, a: &AlgebroidPresentation) -> ExampleReport {
    let mut rep = ExampleReport::new(a.name(), cfg.degree);
    let v = a.validate();
    rep.add_suite("validate", &v);
    if !v.all_pass() {
        return rep;
    }
    let pool = AlgebroidPool::new(a, cfg.exec);
    rep.add_suite("module", &algebroid_module_suite(&pool, cfg.samples, cfg.seed, cfg.exec));
    algebroid_cohomology(&mut rep, &AlgebroidWindows::new(a, cfg.degree, cfg.exec));
    rep
}

fn algebroid_cohomology(rep: &mut ExampleReport, w: &AlgebroidWindows) {
    let a = &w.algebroid;
    let inv = w.invariants();
    let (_, h0) = w.h0();
    let symbols: Vec<VectorField> = h0.iter().map(|d| d.symbol.clone()).collect();
    let hm1 = w.h_minus1();
    let (_, h1) = w.h1();
    rep.add_basis("invariant functions", false, inv.iter().map(ChartFunction::render).collect());
    rep.add_basis("H^-1", false, hm1.iter().map(|s| s.render(a.frame())).collect());
    rep.add_basis("H^0 base fields", true, render_fields(&symbols));
    rep.add_basis("H^0 derivations", true, h0.iter().map(|d| render_derivation(a, d)).collect());
    rep.add_basis(
        "H^1",
        true,
        h1.iter()
            .map(|w| w.values.iter().map(ChartFunction::render).collect::<Vec<_>>().join("; "))
            .collect(),
    );
    rep.matrices.push(w.functions.matrix("d_A"));
    rep.matrices.push(w.sections.matrix("ad"));
    lbar(rep, &inv, &symbols, &render_fields(&symbols));
    for (s, k) in hm1.iter().zip(0..) {
        rep.certify(
            "cohomology",
            &format!("L-bar on H^-1 class {k}"),
            CertificateKind::NonInjectivity,
            format!("nonzero class {} acts by 0 on invariant functions", s.render(a.frame())),
        );
    }
}

// ---- morphisms ----

fn morita(cfg: &RunConfig, m: &GroupoidMorphism) -> Result<ExampleReport> {
    let mut rep = ExampleReport::new(&m.name, cfg.degree);
    let r = morita_compare(m, cfg.degree, cfg.samples, cfg.seed, cfg.exec)?;
    rep.add_suite("morita", &r.checks);
    rep.dimensions.insert("H^-1 (source, projectable, target)".into(), r.dims.h_minus1.to_vec());
    rep.dimensions.insert("H^0 (source, projectable, target)".into(), r.dims.h0.to_vec());
    rep.dimensions.insert("invariants (source, target)".into(), r.dims.invariants.to_vec());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(cmd: Command, example: &str) -> RunConfig {
        let mut c = RunConfig::new(cmd).example(example);
        c.samples = 3;
        c
    }

    #[test]
    fn reflection_cohomology_report() {
        let r = execute(&cfg(Command::Cohomology, "z2-reflection")).unwrap();
        let e = &r.examples[0];
        assert_eq!(e.basis("invariant functions").unwrap().elements, ["1", "x^2", "x^4"]);
        assert_eq!(e.basis("H^0 base fields").unwrap().elements, ["x*d_x", "x^3*d_x"]);
        let obs: Vec<_> = e
            .certificates
            .iter()
            .filter(|c| c.kind == CertificateKind::Obstruction)
            .collect();
        assert_eq!(obs.len(), 1);
        assert!(obs[0].certificate.ends_with("value 2"), "{}", obs[0].certificate);
        assert!(r.all_pass());
    }

    #[test]
    fn config_errors() {
        let mut c = cfg(Command::Lemmas, "pair-R");
        c.degree = 0;
        assert_eq!(run(&c).status, 2);
        assert_eq!(run(&cfg(Command::Lemmas, "no-such")).status, 2);
        assert_eq!(run(&RunConfig::new(Command::Lemmas)).status, 2);
        assert_eq!(run(&cfg(Command::LieRinehart, "molino")).status, 2);
    }

    #[test]
    fn lemmas_on_pair_groupoid() {
        let out = run(&cfg(Command::Lemmas, "pair-R"));
        assert_eq!(out.status, 0, "{}", out.output);
    }
}
