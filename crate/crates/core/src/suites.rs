//! Seeded property suites: derivative identities, the module axioms, the
//! Van-Est square, the algebroid module and the hom-category.
//!
//! Every suite evaluates its samples through [`Exec`] and folds verdicts
//! per identity in sample order, so the report is scheduling-independent.

use crate::algebroid::{AlgebroidDerivation, AlgebroidPresentation, IMFunction, LinkedPair, Section};
use crate::check::{ValidationReport, Verdict};
use crate::cohomology::collect_by_name;
use crate::function::ChartFunction;
use crate::groupoid::{ArrowFunction, Groupoid, HomMorphism, MultVectorField};
use crate::multcalc::{self, field_certificate, FunPart, GradedFunElement, GradedVFElement, VFPart};
use crate::par::Exec;
use crate::sample::{Sampler, SAMPLE_DEGREE};
use crate::window::{
    self, derivation_of_parts, field_of_parts, im_of_parts, section_of_parts, WindowMap,
};

type Sample = Vec<(&'static str, Verdict)>;

fn arrow_zero(g: &Groupoid, d: &ArrowFunction) -> Verdict {
    match d.first_nonzero() {
        None => Verdict::pass(),
        Some((k, c)) => Verdict::fail(format!("component {}: {c} != 0", g.component_names()[k])),
    }
}

fn fun_eq(g: &Groupoid, a: &GradedFunElement, b: &GradedFunElement) -> Verdict {
    Verdict::zero("degree 0", &(&a.f - &b.f)).and(|| arrow_zero(g, &a.big_f.sub(&b.big_f)))
}

fn section_zero(d: &Section) -> Verdict {
    match d.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
        None => Verdict::pass(),
        Some((k, c)) => Verdict::fail(format!("frame {k}: {c} != 0")),
    }
}

fn field_zero(g: &Groupoid, d: &MultVectorField) -> Verdict {
    match field_certificate(g, d) {
        None => Verdict::pass(),
        Some(c) => Verdict::fail(c),
    }
}

fn im_zero(d: &IMFunction) -> Verdict {
    Verdict::all_zero(d.values.iter().enumerate().map(|(k, v)| (format!("frame {k}"), v)))
}

fn der_zero(d: &AlgebroidDerivation) -> Verdict {
    let parts = window::derivation_parts(d);
    Verdict::all_zero(parts.iter().enumerate().map(|(k, v)| (format!("entry {k}"), v)))
}

/// Sampling pool of one groupoid: kernel bases of the multiplicative
/// windows at the sample degree, plus the coboundaries added per draw.
#[derive(Clone, Debug)]
pub struct GroupoidPool {
    pub groupoid: Groupoid,
    mult_functions: WindowMap,
    mult_fields: WindowMap,
}

impl GroupoidPool {
    pub fn new(g: &Groupoid, exec: Exec) -> GroupoidPool {
        let gg = g.clone();
        let mult_functions = WindowMap::new(window::arrow_function_space(g, SAMPLE_DEGREE), exec, move |p| {
            gg.mult_residual(&ArrowFunction(p))
        });
        let gg = g.clone();
        let mult_fields = WindowMap::new(window::mult_field_space(g, SAMPLE_DEGREE), exec, move |p| {
            gg.mult_field_residual(&field_of_parts(&gg, p))
        });
        GroupoidPool {
            groupoid: g.clone(),
            mult_functions,
            mult_fields,
        }
    }

    pub fn function(&self, s: &mut Sampler) -> ChartFunction {
        s.function(self.groupoid.base(), SAMPLE_DEGREE)
    }

    pub fn section(&self, s: &mut Sampler) -> Section {
        let g = &self.groupoid;
        let cs = s.functions(g.base(), SAMPLE_DEGREE, g.rank());
        Section::new(g.base(), cs).expect("base chart")
    }

    /// Window multiplicative function plus a coboundary `delta f`.
    pub fn mult_function(&self, s: &mut Sampler) -> ArrowFunction {
        let g = &self.groupoid;
        let k = ArrowFunction(self.mult_functions.domain.decode(&s.combination(&self.mult_functions.kernel)));
        k.add(&g.delta(&self.function(s)).expect("base chart"))
    }

    /// Window multiplicative field plus a coboundary `∂alpha`.
    pub fn mult_field(&self, s: &mut Sampler) -> MultVectorField {
        let g = &self.groupoid;
        let k = field_of_parts(g, self.mult_fields.domain.decode(&s.combination(&self.mult_fields.kernel)));
        k.add(&multcalc::partial(g, &self.section(s)).expect("section"))
    }
}

// ---- derivatives of multiplicative functions ----

pub fn lemma_suite(pool: &GroupoidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &pool.groupoid;
    let algebroid = AlgebroidPresentation::of_groupoid(g).ok();
    collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "lemmas", i as u64);
        let f = pool.function(&mut s);
        let big_f = pool.mult_function(&mut s);
        let alpha = pool.section(&mut s);
        let beta = pool.section(&mut s);
        let x = pool.mult_field(&mut s);
        let y = pool.mult_field(&mut s);
        lemma_sample(g, algebroid.as_ref(), &f, &big_f, &alpha, &beta, &x, &y)
    }))
}

#[allow(clippy::too_many_arguments)]
fn lemma_sample(
    g: &Groupoid,
    a: Option<&AlgebroidPresentation>,
    f: &ChartFunction,
    big_f: &ArrowFunction,
    alpha: &Section,
    beta: &Section,
    x: &MultVectorField,
    y: &MultVectorField,
) -> Sample {
    let mut out: Sample = Vec::new();
    let lr = g.right_invariant(alpha).apply(big_f);
    let ll = g.left_invariant(alpha).apply(big_f);

    out.push(("L_{a^l} F = i*(L_{a^r} F)", arrow_zero(g, &ll.sub(&g.i_pull(&lr)))));
    let inv = |h: &ArrowFunction, slot: usize| {
        let bad = g.g2_pulls(h).into_iter().find_map(|(lab, p)| {
            let d = &p[0] - &p[slot];
            (!d.is_zero()).then(|| format!("{lab}: {d} != 0"))
        });
        match bad {
            None => Verdict::pass(),
            Some(c) => Verdict::fail(c),
        }
    };
    out.push(("L_{a^r} F(h) = L_{a^r} F(hg)", inv(&lr, 1)));
    out.push(("L_{a^l} F(h) = L_{a^l} F(gh)", inv(&ll, 2)));
    out.push((
        "L_{a^r} F = t*u* L_{a^r} F = t*u* L_{a^l} F",
        arrow_zero(g, &lr.sub(&g.t_pull(&g.u_pull(&lr)))).and(|| arrow_zero(g, &lr.sub(&g.t_pull(&g.u_pull(&ll))))),
    ));
    out.push((
        "L_{a^l} F = s*u* L_{a^l} F = s*u* L_{a^r} F",
        arrow_zero(g, &ll.sub(&g.s_pull(&g.u_pull(&ll)))).and(|| arrow_zero(g, &ll.sub(&g.s_pull(&g.u_pull(&lr))))),
    ));

    let af = multcalc::bullet_section(g, alpha, big_f).expect("sample data");
    out.push(("L_{a^r} F = t*(a . F)", arrow_zero(g, &lr.sub(&g.t_pull(&af)))));
    out.push(("L_{a^l} F = s*(a . F)", arrow_zero(g, &ll.sub(&g.s_pull(&af)))));

    let df = g.delta(f).expect("base chart");
    let da = multcalc::partial(g, alpha).expect("section");
    out.push((
        "delta(X . f) = X . delta f",
        arrow_zero(g, &g.delta(&x.base.apply_unchecked(f)).unwrap().sub(&x.arrow.apply(&df))),
    ));
    out.push((
        "a . delta f = (da) . f",
        Verdict::zero("difference", &(&multcalc::bullet_section(g, alpha, &df).unwrap() - &da.base.apply_unchecked(f))),
    ));
    out.push((
        "delta(a . F) = (da) . F",
        arrow_zero(g, &g.delta(&af).unwrap().sub(&da.arrow.apply(big_f))),
    ));

    let xy = x.bracket(y);
    let xyf = &x.base.apply_unchecked(&y.base.apply_unchecked(f)) - &y.base.apply_unchecked(&x.base.apply_unchecked(f));
    out.push(("[X,Y] . f = X.(Y.f) - Y.(X.f)", Verdict::zero("difference", &(&xy.base.apply_unchecked(f) - &xyf))));
    let xy_f = x.arrow.apply(&y.arrow.apply(big_f)).sub(&y.arrow.apply(&x.arrow.apply(big_f)));
    out.push(("[X,Y] . F = X.(Y.F) - Y.(X.F)", arrow_zero(g, &xy.arrow.apply(big_f).sub(&xy_f))));
    let xa = multcalc::bracket_field_section(g, x, alpha).expect("sample data");
    let lhs = multcalc::bullet_section(g, &xa, big_f).unwrap();
    let rhs = &x.base.apply_unchecked(&af) - &multcalc::bullet_section(g, alpha, &x.arrow.apply(big_f)).unwrap();
    out.push(("[[X,a]] . F = X.(a.F) - a.(X.F)", Verdict::zero("difference", &(&lhs - &rhs))));

    // membership of the constructions
    let mult = |h: &ArrowFunction| g.is_multiplicative_function(h).expect("arrow data");
    out.push(("delta f is multiplicative", mult(&df)));
    out.push(("X . F is multiplicative", mult(&x.arrow.apply(big_f))));
    out.push((
        "da is multiplicative with base a(alpha)",
        g.is_multiplicative_vector_field(&da)
            .expect("field data")
            .and(|| field_zero(g, &MultVectorField { arrow: g.zero_field(), base: da.base.sub(&g.anchor(alpha)) })),
    ));
    out.push(("[X,Y] is multiplicative", g.is_multiplicative_vector_field(&xy).expect("field data")));
    if let Some(a) = a {
        let lhs = multcalc::bracket_field_section(g, &da, beta).unwrap();
        out.push(("[[da, b]] = [a, b]_A", section_zero(&lhs.sub(&a.bracket(alpha, beta)))));
    }

    // graded antisymmetry and Jacobi on (X, Y, (beta, Z)) with Z = da
    let e = |a: &Section, v: &MultVectorField| GradedVFElement {
        alpha: a.clone(),
        x: v.clone(),
    };
    let zs = g.zero_section();
    let (x1, x2, x3) = (e(&zs, x), e(&zs, y), e(beta, &da));
    let br = |p: &GradedVFElement, q: &GradedVFElement| multcalc::bracket2(g, p, q).expect("sample data");
    let anti = br(&x1, &x3).add(&br(&x3, &x1));
    out.push((
        "graded antisymmetry",
        section_zero(&anti.alpha).and(|| field_zero(g, &anti.x)),
    ));
    let jac = br(&x1, &br(&x2, &x3)).sub(&br(&br(&x1, &x2), &x3)).sub(&br(&x2, &br(&x1, &x3)));
    out.push(("graded Jacobi", section_zero(&jac.alpha).and(|| field_zero(g, &jac.x))));
    out
}

// ---- module axioms ----

const CHAIN_NAMES: [[&str; 2]; 2] = [
    ["d(a . f) = da . f - a . df", "d(a . F) = da . F - a . dF"],
    ["d(X . f) = dX . f + X . df", "d(X . F) = dX . F + X . dF"],
];

const BRACKET_NAMES: [[&str; 2]; 4] = [
    ["[X,Y] . f = X.(Y.f) - Y.(X.f)", "[X,Y] . F = X.(Y.F) - Y.(X.F)"],
    ["[X,b] . f = X.(b.f) - b.(X.f)", "[X,b] . F = X.(b.F) - b.(X.F)"],
    ["[a,Y] . f = a.(Y.f) - Y.(a.f)", "[a,Y] . F = a.(Y.F) - Y.(a.F)"],
    ["[a,b] . f = 0 = a.(b.f) + b.(a.f)", "[a,b] . F = 0 = a.(b.F) + b.(a.F)"],
];

pub fn module_suite(pool: &GroupoidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &pool.groupoid;
    collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "module", i as u64);
        let f = pool.function(&mut s);
        let big_f = pool.mult_function(&mut s);
        let (alpha, beta) = (pool.section(&mut s), pool.section(&mut s));
        let (x, y) = (pool.mult_field(&mut s), pool.mult_field(&mut s));
        module_sample(g, &f, &big_f, &alpha, &beta, &x, &y)
    }))
}

fn module_sample(
    g: &Groupoid,
    f: &ChartFunction,
    big_f: &ArrowFunction,
    alpha: &Section,
    beta: &Section,
    x: &MultVectorField,
    y: &MultVectorField,
) -> Sample {
    let mu = |a: &GradedVFElement, b: &GradedFunElement| multcalc::mu(g, a, b).expect("sample data");
    let vf = |p: VFPart| GradedVFElement::from_part(g, &p);
    let ys = [
        GradedFunElement::from_part(g, &FunPart::Base(f.clone())),
        GradedFunElement::from_part(g, &FunPart::Mult(big_f.clone())),
    ];
    let mut out: Sample = Vec::new();

    for (xi, xe) in [vf(VFPart::Sec(alpha.clone())), vf(VFPart::Field(x.clone()))].iter().enumerate() {
        for (yi, ye) in ys.iter().enumerate() {
            let lhs = multcalc::d_fun(g, &mu(xe, ye)).unwrap();
            let a = mu(&multcalc::d_vf(g, xe).unwrap(), ye);
            let b = mu(xe, &multcalc::d_fun(g, ye).unwrap());
            // |alpha| = -1, |X| = 0
            let rhs = if xi == 0 { a.sub(&b) } else { a.add(&b) };
            out.push((CHAIN_NAMES[xi][yi], fun_eq(g, &lhs, &rhs)));
        }
    }

    let pairs = [
        (vf(VFPart::Field(x.clone())), vf(VFPart::Field(y.clone())), false),
        (vf(VFPart::Field(x.clone())), vf(VFPart::Sec(beta.clone())), false),
        (vf(VFPart::Sec(alpha.clone())), vf(VFPart::Field(y.clone())), false),
        (vf(VFPart::Sec(alpha.clone())), vf(VFPart::Sec(beta.clone())), true),
    ];
    for (pi, (x1, x2, odd)) in pairs.iter().enumerate() {
        let b = multcalc::bracket2(g, x1, x2).unwrap();
        for (yi, ye) in ys.iter().enumerate() {
            let lhs = mu(&b, ye);
            let p = mu(x1, &mu(x2, ye));
            let q = mu(x2, &mu(x1, ye));
            let rhs = if *odd { p.add(&q) } else { p.sub(&q) };
            let mut v = fun_eq(g, &lhs, &rhs);
            if *odd {
                v = v.and(|| fun_eq(g, &lhs, &GradedFunElement::zero(g)));
            }
            out.push((BRACKET_NAMES[pi][yi], v));
        }
    }
    out
}

// ---- the Van-Est square ----

pub fn vanest_suite(pair: &LinkedPair, pool: &GroupoidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &pair.groupoid;
    let a = &pair.algebroid;
    collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "vanest", i as u64);
        let f = pool.function(&mut s);
        let big_f = pool.mult_function(&mut s);
        let alpha = pool.section(&mut s);
        let (x, y) = (pool.mult_field(&mut s), pool.mult_field(&mut s));
        let mut out: Sample = Vec::new();
        let ve_x = pair.ve(&x);
        let w = pair.ove(&big_f);

        // (alpha, f): both sides vanish by degree
        let l = multcalc::bullet(g, &VFPart::Sec(alpha.clone()), &FunPart::Base(f.clone())).unwrap();
        let r = a.obullet(&crate::algebroid::XA::Sec(pair.ve_section(&alpha)), &crate::algebroid::CA::Fun(f.clone()));
        out.push((
            "oVE(a . f) = VE(a) o oVE(f)",
            Verdict::from_bool(l.is_none() && r.is_none(), || "a degree -1 value appeared".into()),
        ));
        // (alpha, F)
        let l = pair.ove_function(&multcalc::bullet_section(g, &alpha, &big_f).unwrap());
        let r = w.eval(&pair.ve_section(&alpha));
        out.push(("oVE(a . F) = VE(a) o oVE(F)", Verdict::zero("difference", &(&l - &r))));
        // (X, f)
        let l = pair.ove_function(&x.base.apply_unchecked(&f));
        let r = ve_x.symbol.apply_unchecked(&f);
        out.push(("oVE(X . f) = VE(X) o oVE(f)", Verdict::zero("difference", &(&l - &r))));
        // (X, F)
        let l = pair.ove(&x.arrow.apply(&big_f));
        let r = match a.obullet(&crate::algebroid::XA::Der(ve_x.clone()), &crate::algebroid::CA::IM(w.clone())) {
            Some(crate::algebroid::CA::IM(v)) => v,
            _ => unreachable!("D o w is an IM function"),
        };
        out.push(("oVE(X . F) = VE(X) o oVE(F)", im_zero(&l.sub(&r))));

        // chain maps
        out.push((
            "VE(da) = ad(a)",
            der_zero(&pair.ve(&multcalc::partial(g, &alpha).unwrap()).sub(&a.ad(&alpha))),
        ));
        out.push((
            "oVE(delta f) = d_A f",
            im_zero(&pair.ove(&g.delta(&f).unwrap()).sub(&a.d_a(&f).unwrap())),
        ));
        // dgla morphism and landing
        out.push((
            "VE[X,Y] = [VE X, VE Y]",
            der_zero(&pair.ve(&x.bracket(&y)).sub(&a.commutator(&ve_x, &pair.ve(&y)))),
        ));
        let xa = multcalc::bracket_field_section(g, &x, &alpha).unwrap();
        out.push(("VE[[X,a]] = VE(X)(a)", section_zero(&pair.ve_section(&xa).sub(&ve_x.apply(&alpha)))));
        out.push(("VE(X) is a derivation with symbol X_M", a.derivation_check(&ve_x)));
        out.push(("oVE(F) is a cocycle", a.is_cocycle(&w)));
        out
    }))
}

// ---- the algebroid module ----

/// Kernel vectors per algebroid draw; parametric coefficients grow fast in
/// dense combinations.
const SPARSE: usize = 3;

/// Sampling pool of an algebroid: window cocycles and derivations.
#[derive(Clone, Debug)]
pub struct AlgebroidPool {
    pub algebroid: AlgebroidPresentation,
    cocycles: WindowMap,
    derivations: WindowMap,
}

impl AlgebroidPool {
    pub fn new(a: &AlgebroidPresentation, exec: Exec) -> AlgebroidPool {
        let aa = a.clone();
        let cocycles = WindowMap::new(window::im_space(a, SAMPLE_DEGREE), exec, move |p| {
            aa.cocycle_residual(&im_of_parts(p))
        });
        let aa = a.clone();
        let derivations = WindowMap::new(window::derivation_space(a, SAMPLE_DEGREE), exec, move |p| {
            aa.derivation_residual(&derivation_of_parts(&aa, p))
        });
        AlgebroidPool {
            algebroid: a.clone(),
            cocycles,
            derivations,
        }
    }

    fn function(&self, s: &mut Sampler) -> ChartFunction {
        s.function(self.algebroid.base(), SAMPLE_DEGREE)
    }

    fn section(&self, s: &mut Sampler) -> Section {
        let a = &self.algebroid;
        section_of_parts(a.base(), s.functions(a.base(), SAMPLE_DEGREE, a.rank()))
    }

    fn cocycle(&self, s: &mut Sampler) -> IMFunction {
        let a = &self.algebroid;
        let k = im_of_parts(self.cocycles.domain.decode(&s.sparse_combination(&self.cocycles.kernel, SPARSE)));
        k.add(&a.d_a(&self.function(s)).expect("base chart"))
    }

    fn derivation(&self, s: &mut Sampler) -> AlgebroidDerivation {
        let a = &self.algebroid;
        let k = derivation_of_parts(a, self.derivations.domain.decode(&s.sparse_combination(&self.derivations.kernel, SPARSE)));
        k.add(&a.ad(&self.section(s)))
    }
}

/// `(f, w)` and `(alpha, D)` as full elements, as on the groupoid side.
type CElem = (ChartFunction, IMFunction);
type XElem = (Section, AlgebroidDerivation);

pub fn algebroid_module_suite(pool: &AlgebroidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let a = &pool.algebroid;
    let zc = || -> CElem { (ChartFunction::zero(a.base()), a.zero_im()) };
    let mu = |x: &XElem, y: &CElem| -> CElem { a.mu_bar(&x.0, &x.1, &y.0, &y.1) };
    let dc = |y: &CElem| -> CElem { (ChartFunction::zero(a.base()), a.d_a(&y.0).unwrap()) };
    let dx = |x: &XElem| -> XElem { (a.zero_section(), a.ad(&x.0)) };
    let br = |x: &XElem, y: &XElem| -> XElem { (y.1.apply(&x.0).neg().add(&x.1.apply(&y.0)), a.commutator(&x.1, &y.1)) };
    let add = |p: &CElem, q: &CElem, sign: bool| -> CElem {
        if sign {
            (&p.0 - &q.0, p.1.sub(&q.1))
        } else {
            (&p.0 + &q.0, p.1.add(&q.1))
        }
    };
    let eq = |p: &CElem, q: &CElem| Verdict::zero("degree 0", &(&p.0 - &q.0)).and(|| im_zero(&p.1.sub(&q.1)));

    collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "algebroid-module", i as u64);
        let f = pool.function(&mut s);
        let w = pool.cocycle(&mut s);
        let (alpha, beta) = (pool.section(&mut s), pool.section(&mut s));
        let (d, e) = (pool.derivation(&mut s), pool.derivation(&mut s));
        let ys: [CElem; 2] = [(f, a.zero_im()), (ChartFunction::zero(a.base()), w)];
        let xs: [XElem; 2] = [(alpha.clone(), a.zero_derivation()), (a.zero_section(), d.clone())];
        let mut out: Sample = Vec::new();
        for (xi, x) in xs.iter().enumerate() {
            for (yi, y) in ys.iter().enumerate() {
                let lhs = dc(&mu(x, y));
                let rhs = add(&mu(&dx(x), y), &mu(x, &dc(y)), xi == 0);
                out.push((CHAIN_NAMES[xi][yi], eq(&lhs, &rhs)));
            }
        }
        let sec = |b: &Section| (b.clone(), a.zero_derivation());
        let der = |d: &AlgebroidDerivation| (a.zero_section(), d.clone());
        let pairs = [
            (der(&d), der(&e), false),
            (der(&d), sec(&beta), false),
            (sec(&alpha), der(&e), false),
            (sec(&alpha), sec(&beta), true),
        ];
        for (pi, (x1, x2, odd)) in pairs.iter().enumerate() {
            let b = br(x1, x2);
            for (yi, y) in ys.iter().enumerate() {
                let lhs = mu(&b, y);
                let rhs = add(&mu(x1, &mu(x2, y)), &mu(x2, &mu(x1, y)), !odd);
                let mut v = eq(&lhs, &rhs);
                if *odd {
                    v = v.and(|| eq(&lhs, &zc()));
                }
                out.push((BRACKET_NAMES[pi][yi], v));
            }
        }
        out.push(("d_A f is a cocycle", a.is_cocycle(&a.d_a(&ys[0].0).unwrap())));
        out.push(("ad(a) is a derivation", a.derivation_check(&a.ad(&alpha))));
        out.push((
            "[ad a, ad b] = ad [a, b]",
            der_zero(&a.commutator(&a.ad(&alpha), &a.ad(&beta)).sub(&a.ad(&a.bracket(&alpha, &beta)))),
        ));
        out.push(("[D, a] = D(a) is ad-compatible", der_zero(&a.ad(&d.apply(&alpha)).sub(&a.commutator(&d, &a.ad(&alpha))))));
        out
    }))
}

// ---- the hom-category ----

pub fn hom_category_suite(pool: &GroupoidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &pool.groupoid;
    collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "hom-category", i as u64);
        let big_f = pool.mult_function(&mut s);
        let (f1, f2, f3) = (pool.function(&mut s), pool.function(&mut s), pool.function(&mut s));
        let first = HomMorphism { f: f1.clone(), source: big_f.clone() };
        let second = HomMorphism { f: f2.clone(), source: g.hom_target(&first).unwrap() };
        let third = HomMorphism { f: f3, source: g.hom_target(&second).unwrap() };
        let mut out: Sample = Vec::new();

        let c = g.compose_hom(&first, &second).unwrap();
        out.push((
            "(f', F') o (f, F) = (f + f', F)",
            Verdict::zero("base", &(&c.f - &(&f1 + &f2))).and(|| arrow_zero(g, &c.source.sub(&big_f))),
        ));
        let nt = |m: &HomMorphism| g.as_natural_transformation(m).unwrap();
        let v = g.vertical(&nt(&first), &nt(&second)).unwrap();
        let cn = nt(&c);
        out.push((
            "composition matches vertical composition",
            Verdict::zero("component", &(&cn.psi - &v.psi))
                .and(|| arrow_zero(g, &cn.source.sub(&v.source)))
                .and(|| arrow_zero(g, &cn.target.sub(&v.target))),
        ));
        out.push((
            "morphisms are natural transformations",
            g.naturality(&nt(&first)).and(|| g.naturality(&nt(&second))).and(|| g.naturality(&cn)),
        ));
        out.push((
            "identity laws",
            Verdict::from_bool(
                g.compose_hom(&g.hom_identity(&big_f), &first).unwrap() == first
                    && g.compose_hom(&first, &g.hom_identity(&g.hom_target(&first).unwrap())).unwrap() == first,
                || "identity composite differs".into(),
            ),
        ));
        let l = g.compose_hom(&g.compose_hom(&first, &second).unwrap(), &third).unwrap();
        let r = g.compose_hom(&first, &g.compose_hom(&second, &third).unwrap()).unwrap();
        out.push((
            "associativity",
            Verdict::zero("base", &(&l.f - &r.f)).and(|| arrow_zero(g, &l.source.sub(&r.source))),
        ));
        // negative control: composing in the wrong order is rejected unless delta f1 = 0
        let wrong = g.compose_hom(&second, &first);
        let df_zero = g.delta(&f1).unwrap().is_zero() && g.delta(&f2).unwrap().is_zero();
        out.push((
            "non-composable pairs are rejected",
            Verdict::from_bool(wrong.is_err() || df_zero || g.delta(&(&f1 + &f2)).unwrap().is_zero(), || {
                "wrong-order composite accepted".into()
            }),
        ));
        out
    }))
}

/// Axioms of the presentation, closure of the differentials, and a
/// negative control per predicate.
pub fn validate_suite(pool: &GroupoidPool, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &pool.groupoid;
    let mut r = g.validate();
    let sampled = collect_by_name(exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "validate", i as u64);
        let f = pool.function(&mut s);
        let alpha = pool.section(&mut s);
        vec![
            ("delta f is multiplicative", g.is_multiplicative_function(&g.delta(&f).unwrap()).unwrap()),
            (
                "da is multiplicative",
                g.is_multiplicative_vector_field(&multcalc::partial(g, &alpha).unwrap()).unwrap(),
            ),
        ]
    }));
    r.checks.extend(sampled.checks);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::gallery::build_example;

    #[test]
    fn suites_pass_on_pair_groupoid() {
        let g = build_example("pair-R").unwrap();
        let pool = GroupoidPool::new(&g, Exec::Parallel);
        for r in [
            lemma_suite(&pool, 4, 1, Exec::Parallel),
            module_suite(&pool, 4, 1, Exec::Parallel),
            hom_category_suite(&pool, 4, 1, Exec::Parallel),
            validate_suite(&pool, 4, 1, Exec::Parallel),
        ] {
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
        let pair = LinkedPair::new(g).unwrap();
        let r = vanest_suite(&pair, &pool, 4, 1, Exec::Parallel);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = build_example("z2-reflection").unwrap();
        let pool = GroupoidPool::new(&g, Exec::Sequential);
        assert_eq!(
            module_suite(&pool, 5, 9, Exec::Sequential),
            module_suite(&pool, 5, 9, Exec::Parallel)
        );
    }

    #[test]
    fn algebroid_module_on_molino() {
        let pool = AlgebroidPool::new(&crate::algebroid::examples::molino(), Exec::Parallel);
        let r = algebroid_module_suite(&pool, 3, 5, Exec::Parallel);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
