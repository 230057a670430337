//! Bounded-degree cohomology of the 2-term complexes: invariants, exact
//! kernels, window-relative quotients, the anchor map to derivations of the
//! invariant algebra, and the Lie-Rinehart, proper and Morita cross-checks.

use serde::Serialize;

use crate::algebroid::{AlgebroidDerivation, AlgebroidPresentation, IMFunction, LinkedPair, Section};
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::groupoid::gallery::GroupoidMorphism;
use crate::groupoid::{ArrowField, ArrowFunction, Groupoid, MultVectorField};
use crate::linalg::{self, Reducer, SVec, Solution};
use crate::multcalc::{self, field_certificate, GradedFunElement, GradedVFElement};
use crate::par::Exec;
use crate::sample::Sampler;
use crate::scalar::Scalar;
use crate::window::{
    self, derivation_of_parts, derivation_parts, derivation_space, encode, field_of_parts, field_parts,
    function_space, im_of_parts, im_space, mult_field_space, section_of_parts, section_space, Key, Space,
    WindowMap,
};

fn labelled(labels: &[String], parts: Vec<ChartFunction>) -> Vec<(String, ChartFunction)> {
    labels.iter().cloned().zip(parts).collect()
}

fn slot_labels(space: &Space) -> Vec<String> {
    space.slots.iter().map(|s| s.label.clone()).collect()
}

/// Windows of both complexes attached to a groupoid.
#[derive(Clone, Debug)]
pub struct GroupoidWindows {
    pub groupoid: Groupoid,
    pub degree: u32,
    /// `delta` on base functions; kernel = invariant functions.
    pub functions: WindowMap,
    /// Multiplicativity residual on arrow functions; kernel = `C_m^1`.
    pub arrow_functions: WindowMap,
    /// Multiplicativity residual on field pairs; kernel = `X_m^0`.
    pub fields: WindowMap,
    /// `∂` on sections, valued in field keys; kernel = `H^-1`.
    pub sections: WindowMap,
}

impl GroupoidWindows {
    pub fn new(g: &Groupoid, d: u32, exec: Exec) -> GroupoidWindows {
        let fun_sp = function_space("base functions", g.base(), d);
        let arrow_sp = window::arrow_function_space(g, d);
        let arrow_labels = slot_labels(&arrow_sp);
        let field_sp = mult_field_space(g, d);
        let field_labels = slot_labels(&field_sp);
        let sec_sp = section_space(g.base(), &g.frame_names(), d);

        let gg = g.clone();
        let functions = WindowMap::new(fun_sp, exec, move |p| {
            labelled(&arrow_labels, gg.delta(&p[0]).expect("base chart").0)
        });
        let gg = g.clone();
        let arrow_functions = WindowMap::new(arrow_sp, exec, move |p| gg.mult_residual(&ArrowFunction(p)));
        let gg = g.clone();
        let fields = WindowMap::new(field_sp, exec, move |p| gg.mult_field_residual(&field_of_parts(&gg, p)));
        let gg = g.clone();
        let sections = WindowMap::new(sec_sp, exec, move |p| {
            let alpha = section_of_parts(gg.base(), p);
            labelled(&field_labels, field_parts(&multcalc::partial(&gg, &alpha).expect("section")))
        });
        GroupoidWindows {
            groupoid: g.clone(),
            degree: d,
            functions,
            arrow_functions,
            fields,
            sections,
        }
    }

    pub fn invariants(&self) -> Vec<ChartFunction> {
        self.functions
            .kernel
            .iter()
            .map(|v| self.functions.domain.decode(v).remove(0))
            .collect()
    }

    pub fn multiplicative_functions(&self) -> Vec<ArrowFunction> {
        self.arrow_functions
            .kernel
            .iter()
            .map(|v| ArrowFunction(self.arrow_functions.domain.decode(v)))
            .collect()
    }

    pub fn multiplicative_fields(&self) -> Vec<MultVectorField> {
        self.fields
            .kernel
            .iter()
            .map(|v| field_of_parts(&self.groupoid, self.fields.domain.decode(v)))
            .collect()
    }

    /// `H^-1 = ker ∂` (exact).
    pub fn h_minus1(&self) -> Vec<Section> {
        self.sections
            .kernel
            .iter()
            .map(|v| section_of_parts(self.groupoid.base(), self.sections.domain.decode(v)))
            .collect()
    }

    /// `H^0 = X_m / im ∂` (window-relative): dimension and representatives.
    pub fn h0(&self) -> (usize, Vec<MultVectorField>) {
        let (dim, reps) = linalg::quotient(&self.fields.kernel, &self.sections.columns);
        let reps = reps
            .iter()
            .map(|v| field_of_parts(&self.groupoid, self.fields.domain.decode(v)))
            .collect();
        (dim, reps)
    }

    /// `H^1 = C_m^1 / im delta` (window-relative).
    pub fn h1(&self) -> (usize, Vec<ArrowFunction>) {
        let (dim, reps) = linalg::quotient(&self.arrow_functions.kernel, &self.functions.columns);
        let reps = reps
            .iter()
            .map(|v| ArrowFunction(self.arrow_functions.domain.decode(v)))
            .collect();
        (dim, reps)
    }
}

/// Windows of the algebroid complexes.
#[derive(Clone, Debug)]
pub struct AlgebroidWindows {
    pub algebroid: AlgebroidPresentation,
    pub degree: u32,
    /// `d_A` on functions, valued in IM keys; kernel = invariants.
    pub functions: WindowMap,
    /// `ad` on sections, valued in derivation keys; kernel = `H^-1`.
    pub sections: WindowMap,
    /// Derivation residual; kernel = `Der(A)` inside the window.
    pub derivations: WindowMap,
    /// Cocycle residual on IM functions; kernel = cocycles.
    pub im: WindowMap,
}

impl AlgebroidWindows {
    pub fn new(a: &AlgebroidPresentation, d: u32, exec: Exec) -> AlgebroidWindows {
        let im_sp = im_space(a, d);
        let im_labels = slot_labels(&im_sp);
        let der_sp = derivation_space(a, d);
        let der_labels = slot_labels(&der_sp);

        let aa = a.clone();
        let functions = WindowMap::new(function_space("base functions", a.base(), d), exec, move |p| {
            labelled(&im_labels, aa.d_a(&p[0]).expect("base chart").values)
        });
        let aa = a.clone();
        let sections = WindowMap::new(section_space(a.base(), a.frame(), d), exec, move |p| {
            labelled(&der_labels, derivation_parts(&aa.ad(&section_of_parts(aa.base(), p))))
        });
        let aa = a.clone();
        let derivations = WindowMap::new(der_sp, exec, move |p| {
            aa.derivation_residual(&derivation_of_parts(&aa, p))
        });
        let aa = a.clone();
        let im = WindowMap::new(im_sp, exec, move |p| aa.cocycle_residual(&im_of_parts(p)));
        AlgebroidWindows {
            algebroid: a.clone(),
            degree: d,
            functions,
            sections,
            derivations,
            im,
        }
    }

    pub fn invariants(&self) -> Vec<ChartFunction> {
        self.functions
            .kernel
            .iter()
            .map(|v| self.functions.domain.decode(v).remove(0))
            .collect()
    }

    pub fn h_minus1(&self) -> Vec<Section> {
        self.sections
            .kernel
            .iter()
            .map(|v| section_of_parts(self.algebroid.base(), self.sections.domain.decode(v)))
            .collect()
    }

    /// `Der(A) / im ad` (window-relative).
    pub fn h0(&self) -> (usize, Vec<AlgebroidDerivation>) {
        let (dim, reps) = linalg::quotient(&self.derivations.kernel, &self.sections.columns);
        let reps = reps
            .iter()
            .map(|v| derivation_of_parts(&self.algebroid, self.derivations.domain.decode(v)))
            .collect();
        (dim, reps)
    }

    /// Cocycles modulo `d_A` (window-relative).
    pub fn h1(&self) -> (usize, Vec<IMFunction>) {
        let (dim, reps) = linalg::quotient(&self.im.kernel, &self.functions.columns);
        let reps = reps.iter().map(|v| im_of_parts(self.im.domain.decode(v))).collect();
        (dim, reps)
    }
}

// ---- the anchor map to derivations of the invariant algebra ----

/// Action of `L_V` on the invariant basis, keyed by `(basis index, monomial)`.
pub fn lbar_column(invariants: &[ChartFunction], symbol: &VectorField) -> SVec<Key> {
    let values: Vec<ChartFunction> = invariants.iter().map(|b| symbol.apply_unchecked(b)).collect();
    encode(&values)
}

/// `([alpha], [X]) -> L_{X_M}`: one column per degree-0 class; degree -1
/// classes map to zero.
pub fn anchor_map_lbar(invariants: &[ChartFunction], symbols: &[VectorField]) -> Vec<SVec<Key>> {
    symbols.iter().map(|s| lbar_column(invariants, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum DerivationDecision {
    /// Coefficients of the class representatives.
    InImage { witness: Vec<(usize, String)> },
    /// A functional on derivation values (`(invariant index, monomial)` ->
    /// weight) that kills every image derivation but not the target.
    NotInImage {
        functional: Vec<(String, String)>,
        value: String,
    },
}

/// Decides whether the derivation with values `target[j] = D(b_j)` on the
/// invariant basis is `L_{X_M}` for a combination of the given classes.
pub fn derivation_solver(
    invariants: &[ChartFunction],
    symbols: &[VectorField],
    target: &[ChartFunction],
) -> Result<DerivationDecision> {
    if target.len() != invariants.len() {
        return Err(Error::Config(format!(
            "derivation data has {} values for {} invariant generators",
            target.len(),
            invariants.len()
        )));
    }
    // Leibniz on every window product that stays inside the window.
    let basis: Vec<SVec<Key>> = invariants.iter().map(|b| encode(std::slice::from_ref(b))).collect();
    let red = Reducer::from_columns(&basis);
    for i in 0..invariants.len() {
        for j in i..invariants.len() {
            let p = &invariants[i] * &invariants[j];
            if let Solution::Witness(c) = red.solve(&encode(std::slice::from_ref(&p))) {
                let mut lhs = ChartFunction::zero(p.chart());
                for (k, x) in &c {
                    lhs = &lhs + &target[*k].scale(x);
                }
                let rhs = &(&invariants[i] * &target[j]) + &(&invariants[j] * &target[i]);
                let d = &lhs - &rhs;
                if !d.is_zero() {
                    return Err(Error::precondition(
                        "derivation data satisfy Leibniz",
                        format!("D(b{i} b{j}) - b{i} D(b{j}) - b{j} D(b{i}) = {d}"),
                    ));
                }
            }
        }
    }
    let cols = anchor_map_lbar(invariants, symbols);
    let red = Reducer::from_columns(&cols);
    let label = |(j, m): &Key| format!("coefficient of {} in D({})", m.render(invariants[*j as usize].chart()), invariants[*j as usize]);
    Ok(match red.solve(&encode(target)) {
        Solution::Witness(c) => DerivationDecision::InImage {
            witness: c.iter().map(|(k, x)| (*k, x.to_string())).collect(),
        },
        Solution::Obstruction { functional, value } => DerivationDecision::NotInImage {
            functional: functional.iter().map(|(k, x)| (label(k), x.to_string())).collect(),
            value: value.to_string(),
        },
    })
}

// ---- graded Lie-Rinehart structure on the window classes ----

fn combo<T: Clone>(s: &mut Sampler, items: &[T], zero: T, add: impl Fn(&T, &T) -> T, scale: impl Fn(&T, &Scalar) -> T) -> T {
    let mut acc = zero;
    for it in items {
        let c = s.coeff();
        acc = add(&acc, &scale(it, &c));
    }
    acc
}

fn invariant_sample(s: &mut Sampler, g: &Groupoid, inv: &[ChartFunction]) -> ChartFunction {
    combo(s, inv, ChartFunction::zero(g.base()), |a, b| a + b, |f, c| f.scale(c))
}

fn first_section_difference(a: &Section, b: &Section) -> Option<String> {
    a.sub(b).coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(k, c)| format!("frame {k}: {c}"))
}

/// Graded Leibniz rule and the morphism properties of the anchor map,
/// checked on `samples` seeded samples drawn from the window classes.
pub fn lie_rinehart_check(w: &GroupoidWindows, samples: usize, seed: u64, exec: Exec) -> ValidationReport {
    let g = &w.groupoid;
    let inv = w.invariants();
    let (_, h0) = w.h0();
    let hm1 = w.h_minus1();
    let zero_field = g.zero_mult_field();
    let zero_sec = g.zero_section();
    let unit_like = is_unit(g);

    let results = exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "lie-rinehart", i as u64);
        let f = invariant_sample(&mut s, g, &inv);
        let x = combo(&mut s, &h0, zero_field.clone(), |a, b| a.add(b), |v, c| v.scale_scalar(c));
        let y = combo(&mut s, &h0, zero_field.clone(), |a, b| a.add(b), |v, c| v.scale_scalar(c));
        let alpha = combo(&mut s, &hm1, zero_sec.clone(), |a, b| a.add(b), |v, c| v.scale_scalar(c));
        let fx = |v: &MultVectorField| MultVectorField {
            arrow: v.arrow.scale(&g.t_pull(&f)),
            base: v.base.scale(&f),
        };
        let lbar_f = x.base.apply_unchecked(&f);
        let mut out: Vec<(&'static str, Verdict)> = Vec::new();

        // [X, fY] = L(X)(f) Y + f [X, Y]
        let lhs = x.bracket(&fx(&y));
        let rhs = MultVectorField {
            arrow: y.arrow.scale(&g.t_pull(&lbar_f)),
            base: y.base.scale(&lbar_f),
        }
        .add(&fx(&x.bracket(&y)));
        out.push((
            "graded Leibniz [X, fY]",
            match field_certificate(g, &lhs.sub(&rhs)) {
                None => Verdict::pass(),
                Some(c) => Verdict::fail(c),
            },
        ));

        // [[X, f alpha]] = L(X)(f) alpha + f [[X, alpha]]
        let l = multcalc::bracket_field_section(g, &x, &alpha.scale(&f)).expect("window data");
        let r = alpha
            .scale(&lbar_f)
            .add(&multcalc::bracket_field_section(g, &x, &alpha).expect("window data").scale(&f));
        out.push((
            "graded Leibniz [X, f alpha]",
            Verdict::from_bool(first_section_difference(&l, &r).is_none(), || {
                first_section_difference(&l, &r).unwrap_or_default()
            }),
        ));

        // [[alpha, fX]] = 0 * X + f [[alpha, X]] since L(alpha) = 0
        let l = multcalc::bracket_field_section(g, &fx(&x), &alpha).expect("window data").neg();
        let r = multcalc::bracket_field_section(g, &x, &alpha).expect("window data").neg().scale(&f);
        out.push((
            "graded Leibniz [alpha, fX]",
            Verdict::from_bool(first_section_difference(&l, &r).is_none(), || {
                first_section_difference(&l, &r).unwrap_or_default()
            }),
        ));

        // L([X, Y]) = [L(X), L(Y)] on the invariant basis; L([[X, alpha]]) = 0 holds by degree.
        let xy = x.bracket(&y).base;
        let mut v = Verdict::pass();
        for b in &inv {
            let d = &xy.apply_unchecked(b)
                - &(&x.base.apply_unchecked(&y.base.apply_unchecked(b)) - &y.base.apply_unchecked(&x.base.apply_unchecked(b)));
            if !d.is_zero() {
                v = Verdict::fail(format!("on {b}: {d}"));
                break;
            }
        }
        out.push(("anchor map preserves brackets", v));

        // L(f X) = f L(X)
        let mut v = Verdict::pass();
        let e = GradedVFElement::from_part(g, &multcalc::VFPart::Field(x.clone()));
        let fxe = multcalc::cm0_action(g, &f, &e).expect("invariant f");
        for b in &inv {
            let d = &fxe.x.base.apply_unchecked(b) - &(&f * &x.base.apply_unchecked(b));
            if !d.is_zero() {
                v = Verdict::fail(format!("on {b}: {d}"));
                break;
            }
        }
        out.push(("anchor map is linear over invariants", v));

        if unit_like {
            let h = s.function(g.base(), crate::sample::SAMPLE_DEGREE);
            let m = multcalc::mu(g, &e, &GradedFunElement { f: h.clone(), big_f: g.zero_function() })
                .expect("window data");
            let d = &m.f - &x.base.apply_unchecked(&h);
            out.push(("unit groupoid: action is the Lie derivative", Verdict::zero("mu - L_X", &d)));
        }
        out
    });
    collect_by_name(results)
}

/// Folds per-sample verdicts into one check per identity (first failure wins).
pub(crate) fn collect_by_name(results: Vec<Vec<(&'static str, Verdict)>>) -> ValidationReport {
    let mut names: Vec<&'static str> = Vec::new();
    let mut verdicts: Vec<Verdict> = Vec::new();
    for (i, sample) in results.into_iter().enumerate() {
        for (name, v) in sample {
            let pos = match names.iter().position(|n| *n == name) {
                Some(p) => p,
                None => {
                    names.push(name);
                    verdicts.push(Verdict::pass());
                    names.len() - 1
                }
            };
            if verdicts[pos].holds && !v.holds {
                verdicts[pos] = Verdict::fail(format!(
                    "sample {i}: {}",
                    v.certificate.unwrap_or_default()
                ));
            }
        }
    }
    let mut r = ValidationReport::default();
    for (n, v) in names.into_iter().zip(verdicts) {
        r.push(n, v);
    }
    r
}

/// A chart presentation with `s = t` and no fiber directions.
pub fn is_unit(g: &Groupoid) -> bool {
    match g {
        Groupoid::Chart(p) => p.rank() == 0 && p.s().first_difference(p.t()).is_none(),
        Groupoid::Action(a) => a.order() == 1,
    }
}

// ---- proper groupoids ----

/// For proper groupoids: `H^-1` consists of isotropy sections and the
/// window `H^1` of `C_m` vanishes (every sampled multiplicative `F` is
/// solved as `delta f`).
pub fn proper_crosscheck(w: &GroupoidWindows, samples: usize, seed: u64) -> ValidationReport {
    let g = &w.groupoid;
    let mut r = ValidationReport::default();
    let hm1 = w.h_minus1();
    let isotropic = hm1.iter().find(|a| !g.anchor(a).is_zero());
    r.push(
        "H^-1 lies in the isotropy",
        Verdict::from_bool(isotropic.is_none(), || {
            format!("anchor of {} is nonzero", isotropic.unwrap().render(&g.frame_names()))
        }),
    );
    let (h1, reps) = w.h1();
    r.push(
        "window H^1 of C_m vanishes",
        Verdict::from_bool(h1 == 0, || format!("class of {}", reps[0].render())),
    );
    let red = Reducer::from_columns(&w.functions.columns);
    let mut v = Verdict::pass();
    for i in 0..samples {
        let mut s = Sampler::new(seed, "proper", i as u64);
        let target = s.combination(&w.arrow_functions.kernel);
        match red.solve(&target) {
            Solution::Witness(c) => {
                let f = w.functions.domain.decode(&w.functions.domain.keys_of(&c)).remove(0);
                let back = encode(&g.delta(&f).expect("base chart").0);
                if back != target {
                    v = Verdict::fail(format!("sample {i}: delta of the witness {f} differs"));
                    break;
                }
            }
            Solution::Obstruction { value, .. } => {
                v = Verdict::fail(format!("sample {i}: not a coboundary (functional value {value})"));
                break;
            }
        }
    }
    r.push("sampled multiplicative functions are coboundaries", v);
    r
}

// ---- Van-Est at window scale ----

/// Injectivity of VE and oVE on windows, and oVE preimages of cocycles
/// searched one degree higher (integrating raises the degree by one).
pub fn vanest_window_check(pair: &LinkedPair, d: u32, exec: Exec) -> ValidationReport {
    let g = &pair.groupoid;
    let a = &pair.algebroid;
    let mut r = ValidationReport::default();
    let der_labels = slot_labels(&derivation_space(a, 0));
    let im_labels = slot_labels(&im_space(a, 0));

    let gg = g.clone();
    let pp = pair.clone();
    let ve = WindowMap::new(mult_field_space(g, d), exec, move |p| {
        let x = field_of_parts(&gg, p);
        let mut res = gg.mult_field_residual(&x);
        res.extend(labelled(&der_labels, derivation_parts(&pp.ve(&x))));
        res
    });
    r.push(
        "VE injective on multiplicative fields",
        Verdict::from_bool(ve.kernel.is_empty(), || {
            format!("nonzero field in the kernel: {}", field_of_parts(g, ve.domain.decode(&ve.kernel[0])).base)
        }),
    );

    let gg = g.clone();
    let pp = pair.clone();
    let labels = im_labels.clone();
    let ove = WindowMap::new(window::arrow_function_space(g, d), exec, move |p| {
        let f = ArrowFunction(p);
        let mut res = gg.mult_residual(&f);
        res.extend(labelled(&labels, pp.ove(&f).values));
        res
    });
    r.push(
        "oVE injective on multiplicative functions",
        Verdict::from_bool(ove.kernel.is_empty(), || {
            format!("nonzero function in the kernel: {}", ArrowFunction(ove.domain.decode(&ove.kernel[0])).render())
        }),
    );

    let aw = AlgebroidWindows::new(a, d, exec);
    let gw_up = GroupoidWindows::new(g, d + 1, exec);
    let cols: Vec<SVec<Key>> = gw_up
        .multiplicative_functions()
        .iter()
        .map(|f| encode(&pair.ove(f).values))
        .collect();
    let red = Reducer::from_columns(&cols);
    let missing = aw.im.kernel.iter().find(|w| !red.contains(w));
    r.push(
        "every window cocycle has an oVE preimage",
        Verdict::from_bool(missing.is_none(), || {
            let w = im_of_parts(aw.im.domain.decode(missing.unwrap()));
            format!("no preimage of degree <= {} for {:?}", d + 1, w.values.iter().map(|v| v.to_string()).collect::<Vec<_>>())
        }),
    );
    r
}

// ---- Morita comparison ----

#[derive(Clone, Debug, Serialize)]
pub struct MoritaDims {
    pub h_minus1: [usize; 3],
    pub h0: [usize; 3],
    pub invariants: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct MoritaReport {
    pub checks: ValidationReport,
    /// `[G, X_m^phi, H]` for the field side, `[G, H]` for invariants.
    pub dims: MoritaDims,
}

struct Pushdown<'a> {
    m: &'a GroupoidMorphism,
    h: &'a Groupoid,
}

impl Pushdown<'_> {
    /// `phi_bar(X)` via the right inverses, plus the projectability residual.
    fn push(&self, x: &MultVectorField) -> (MultVectorField, Vec<(String, ChartFunction)>) {
        let hp = self.h.as_chart().expect("chart target");
        let mut res = Vec::new();
        let xa = &x.arrow.comps()[0];
        let mut imgs = Vec::new();
        for (gen, n) in hp.arrow().generators().iter().zip(hp.arrow().gen_names()) {
            let v = xa.apply_unchecked(&self.m.arrows.pullback_unchecked(gen));
            let down = self.m.arrow_section.pullback_unchecked(&v);
            res.push((format!("arrow projectable on {n}"), &v - &self.m.arrows.pullback_unchecked(&down)));
            imgs.push(down);
        }
        let arrow = VectorField::from_generator_action(hp.arrow(), &imgs);
        let mut imgs = Vec::new();
        for (gen, n) in hp.base().generators().iter().zip(hp.base().gen_names()) {
            let v = x.base.apply_unchecked(&self.m.base.pullback_unchecked(gen));
            let down = self.m.base_section.pullback_unchecked(&v);
            res.push((format!("base projectable on {n}"), &v - &self.m.base.pullback_unchecked(&down)));
            imgs.push(down);
        }
        let base = VectorField::from_generator_action(hp.base(), &imgs);
        (
            MultVectorField {
                arrow: ArrowField(vec![arrow]),
                base,
            },
            res,
        )
    }

    /// `phi_bar(alpha) = phi_bar(alpha^r)|_M`, with projectability residual of `alpha^r`.
    fn push_section(&self, g: &Groupoid, alpha: &Section) -> (Section, Vec<(String, ChartFunction)>) {
        let ar = MultVectorField {
            arrow: g.right_invariant(alpha),
            base: VectorField::zero(g.base()),
        };
        let (down, res) = self.push(&ar);
        let res = res.into_iter().filter(|(l, _)| l.starts_with("arrow")).collect();
        (self.h.restrict(&down.arrow), res)
    }
}

pub fn morita_compare(m: &GroupoidMorphism, d: u32, samples: usize, seed: u64, exec: Exec) -> Result<MoritaReport> {
    let mut checks = m.validate()?;
    let (g, h) = (&m.source, &m.target);
    let gw = GroupoidWindows::new(g, d, exec);
    let hw = GroupoidWindows::new(h, d, exec);
    let pd = Pushdown { m, h };

    // The phi-projectable subcomplex.
    let field_labels = slot_labels(&mult_field_space(g, 0));
    let gg = g.clone();
    let proj_fields = WindowMap::new(mult_field_space(g, d), exec, |p| {
        let x = field_of_parts(&gg, p);
        let mut res = gg.mult_field_residual(&x);
        res.extend(pd.push(&x).1);
        res
    });
    let proj_sections = WindowMap::new(section_space(g.base(), &g.frame_names(), d), exec, |p| {
        let alpha = section_of_parts(gg.base(), p);
        let mut res = pd.push_section(&gg, &alpha).1;
        res.extend(pd.push(&multcalc::partial(&gg, &alpha).expect("section")).1);
        res
    });
    let phi_sections: Vec<Section> = proj_sections
        .kernel
        .iter()
        .map(|v| section_of_parts(g.base(), proj_sections.domain.decode(v)))
        .collect();
    let phi_image: Vec<SVec<Key>> = phi_sections
        .iter()
        .map(|a| {
            let p = field_parts(&multcalc::partial(g, a).expect("section"));
            labelled(&field_labels, p).into_iter().map(|(_, c)| c).collect::<Vec<_>>()
        })
        .map(|p| encode(&p))
        .collect();
    // dimension of ker ∂ inside the projectable sections
    let phi_hm1 = linalg::kernel(&phi_image).len();
    let (phi_h0, phi_reps) = linalg::quotient(&proj_fields.kernel, &phi_image);
    let phi_reps: Vec<MultVectorField> = phi_reps
        .iter()
        .map(|v| field_of_parts(g, proj_fields.domain.decode(v)))
        .collect();

    let (g_h0, _) = gw.h0();
    let (h_h0, _) = hw.h0();
    let dims = MoritaDims {
        h_minus1: [gw.h_minus1().len(), phi_hm1, hw.h_minus1().len()],
        h0: [g_h0, phi_h0, h_h0],
        invariants: [gw.invariants().len(), hw.invariants().len()],
    };
    checks.push(
        "H^-1 windows agree",
        Verdict::from_bool(dims.h_minus1[0] == dims.h_minus1[1] && dims.h_minus1[1] == dims.h_minus1[2], || {
            format!("dimensions {:?}", dims.h_minus1)
        }),
    );
    checks.push(
        "H^0 windows agree",
        Verdict::from_bool(dims.h0[0] == dims.h0[1] && dims.h0[1] == dims.h0[2], || format!("dimensions {:?}", dims.h0)),
    );

    // inc: projectable classes stay independent modulo im ∂ on G.
    let mut red = Reducer::from_columns(&gw.sections.columns);
    let base_rank = red.rank();
    for x in &phi_reps {
        red.push(&encode(&field_parts(x)));
    }
    checks.push(
        "inclusion is injective on H^0",
        Verdict::from_bool(red.rank() - base_rank == phi_reps.len(), || {
            format!("rank {} of {}", red.rank() - base_rank, phi_reps.len())
        }),
    );
    // phi_bar: classes map to independent classes on H.
    let mut red = Reducer::from_columns(&hw.sections.columns);
    let base_rank = red.rank();
    for x in &phi_reps {
        red.push(&encode(&field_parts(&pd.push(x).0)));
    }
    checks.push(
        "projection is injective on H^0",
        Verdict::from_bool(red.rank() - base_rank == phi_reps.len(), || {
            format!("rank {} of {}", red.rank() - base_rank, phi_reps.len())
        }),
    );

    // phi_0^* on invariants: a bijection between the windows.
    let g_inv = gw.invariants();
    let h_inv = hw.invariants();
    let inv_basis: Vec<SVec<Key>> = g_inv.iter().map(|b| encode(std::slice::from_ref(b))).collect();
    let red = Reducer::from_columns(&inv_basis);
    let pulled: Vec<SVec<Key>> = h_inv
        .iter()
        .map(|b| encode(std::slice::from_ref(&m.base.pullback_unchecked(b))))
        .collect();
    let all_in = pulled.iter().all(|v| red.contains(v));
    let pulled_rank = linalg::rank(&pulled);
    checks.push(
        "phi^* is a bijection on invariant windows",
        Verdict::from_bool(all_in && pulled_rank == h_inv.len() && h_inv.len() == g_inv.len(), || {
            format!(
                "pulled back rank {pulled_rank}, target {} invariants, source {} invariants, all invariant: {all_in}",
                h_inv.len(),
                g_inv.len()
            )
        }),
    );

    // Module compatibility on samples.
    let proj_kernel = &proj_fields.kernel;
    let results = exec.map_range(samples, |i| {
        let mut s = Sampler::new(seed, "morita", i as u64);
        let x = field_of_parts(g, proj_fields.domain.decode(&s.combination(proj_kernel)));
        let alpha = {
            let mut acc = g.zero_section();
            for a in &phi_sections {
                acc = acc.add(&a.scale_scalar(&s.coeff()));
            }
            acc
        };
        let f = s.function(h.base(), crate::sample::SAMPLE_DEGREE);
        let big_f = ArrowFunction(hw.arrow_functions.domain.decode(&s.combination(&hw.arrow_functions.kernel)));
        let (xd, _) = pd.push(&x);
        let (ad, _) = pd.push_section(g, &alpha);
        let down = multcalc::mu(
            h,
            &GradedVFElement { alpha: ad, x: xd },
            &GradedFunElement { f: f.clone(), big_f: big_f.clone() },
        )
        .expect("window data");
        let pulled_y = GradedFunElement {
            f: m.base.pullback_unchecked(&f),
            big_f: ArrowFunction(vec![m.arrows.pullback_unchecked(&big_f.comps()[0])]),
        };
        let up = multcalc::mu(g, &GradedVFElement { alpha, x: x.clone() }, &pulled_y).expect("window data");
        let d0 = &m.base.pullback_unchecked(&down.f) - &up.f;
        let d1 = &m.arrows.pullback_unchecked(&down.big_f.comps()[0]) - &up.big_f.comps()[0];
        let mut out = vec![(
            "phi^*(mu(phi_bar x, y)) = mu(x, phi^* y)",
            Verdict::zero("degree 0", &d0).and(|| Verdict::zero("degree 1", &d1)),
        )];
        // invariant functions act compatibly: phi_bar((phi^* f) x) = f phi_bar(x)
        let fi = invariant_sample(&mut s, h, &h_inv);
        let e = GradedVFElement::from_part(g, &multcalc::VFPart::Field(x.clone()));
        let lhs = pd.push(&multcalc::cm0_action(g, &m.base.pullback_unchecked(&fi), &e).expect("pulled invariant").x).0;
        let rhs = multcalc::cm0_action(h, &fi, &GradedVFElement::from_part(h, &multcalc::VFPart::Field(pd.push(&x).0)))
            .expect("invariant")
            .x;
        out.push((
            "projection is linear over invariants",
            match field_certificate(h, &lhs.sub(&rhs)) {
                None => Verdict::pass(),
                Some(c) => Verdict::fail(c),
            },
        ));
        out
    });
    for c in collect_by_name(results).checks {
        checks.push(c.name, c.verdict);
    }
    Ok(MoritaReport { checks, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::examples::molino;
    use crate::groupoid::gallery::{build_example, morita_example};

    fn x_pow(g: &Groupoid, k: u32) -> ChartFunction {
        g.base().var("x").pow(k)
    }

    #[test]
    fn reflection_invariants_and_fields() {
        let g = build_example("z2-reflection").unwrap();
        let w = GroupoidWindows::new(&g, 4, Exec::Sequential);
        let inv = w.invariants();
        assert_eq!(inv, vec![x_pow(&g, 0), x_pow(&g, 2), x_pow(&g, 4)]);
        let (dim, reps) = w.h0();
        assert_eq!(dim, 2);
        let bases: Vec<VectorField> = reps.iter().map(|r| r.base.clone()).collect();
        let expect: Vec<VectorField> = [1, 3]
            .iter()
            .map(|&k| VectorField::new(g.base(), vec![x_pow(&g, k)]).unwrap())
            .collect();
        assert_eq!(bases, expect);
        assert!(w.sections.columns.is_empty());
        assert_eq!(w.h1().0, 0);
    }

    #[test]
    fn inverse_x_derivative_is_not_an_anchor_image() {
        let g = build_example("z2-reflection").unwrap();
        let w = GroupoidWindows::new(&g, 4, Exec::Sequential);
        let inv = w.invariants();
        let symbols: Vec<VectorField> = w.h0().1.iter().map(|r| r.base.clone()).collect();
        // D = (1/x) d/dx on even functions: x^{2k} -> 2k x^{2k-2}
        let target = vec![
            ChartFunction::zero(g.base()),
            ChartFunction::int(g.base(), 2),
            x_pow(&g, 2).scale(&Scalar::int(4)),
        ];
        match derivation_solver(&inv, &symbols, &target).unwrap() {
            DerivationDecision::NotInImage { value, functional } => {
                assert_eq!(value, "2");
                assert_eq!(functional.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let image = vec![
            ChartFunction::zero(g.base()),
            x_pow(&g, 2).scale(&Scalar::int(2)),
            x_pow(&g, 4).scale(&Scalar::int(4)),
        ];
        assert_eq!(
            derivation_solver(&inv, &symbols, &image).unwrap(),
            DerivationDecision::InImage {
                witness: vec![(0, "1".into())]
            }
        );
        let bad = vec![ChartFunction::one(g.base()), ChartFunction::zero(g.base()), ChartFunction::zero(g.base())];
        assert!(derivation_solver(&inv, &symbols, &bad).is_err());
    }

    #[test]
    fn pair_groupoid_windows_vanish() {
        let g = build_example("pair-R").unwrap();
        let w = GroupoidWindows::new(&g, 2, Exec::Sequential);
        assert_eq!(w.invariants(), vec![ChartFunction::one(g.base())]);
        assert!(w.h_minus1().is_empty());
        assert_eq!(w.multiplicative_fields().len(), 3);
        assert_eq!(w.h0().0, 0);
        assert_eq!(w.h1().0, 0);
    }

    #[test]
    fn circle_group_has_isotropy_classes() {
        let g = build_example("circle-group").unwrap();
        let w = GroupoidWindows::new(&g, 3, Exec::Sequential);
        assert_eq!(w.h_minus1(), vec![Section::frame(g.base(), 1, 0)]);
        assert_eq!(w.h0().0, 0);
    }

    #[test]
    fn molino_quotient_and_invariants() {
        let a = molino();
        let w = AlgebroidWindows::new(&a, 3, Exec::Parallel);
        assert_eq!(w.invariants(), vec![ChartFunction::one(a.base())]);
        let (dim, reps) = w.h0();
        assert_eq!(dim, 1);
        let (l0, l1) = (Scalar::param("l0"), Scalar::param("l1"));
        let expect = VectorField::new(
            a.base(),
            vec![ChartFunction::constant(a.base(), -l1), ChartFunction::constant(a.base(), l0)],
        )
        .unwrap();
        assert_eq!(reps[0].symbol, expect);
        assert!(reps[0].action.iter().all(|s| s.is_zero()));
        assert!(anchor_map_lbar(&w.invariants(), &[reps[0].symbol.clone()])[0].is_empty());
    }

    #[test]
    fn lie_rinehart_on_gallery() {
        for name in ["z2-reflection", "pair-R", "unit-R", "torus-bundle-R"] {
            let g = build_example(name).unwrap();
            let w = GroupoidWindows::new(&g, 3, Exec::Parallel);
            let r = lie_rinehart_check(&w, 5, 7, Exec::Parallel);
            assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn pair_groupoid_van_est_windows() {
        let pair = LinkedPair::new(build_example("pair-R").unwrap()).unwrap();
        let r = vanest_window_check(&pair, 3, Exec::Parallel);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn proper_examples() {
        for name in ["z2-reflection", "pair-R", "torus-bundle-R", "submersion-R2-R"] {
            let g = build_example(name).unwrap();
            let w = GroupoidWindows::new(&g, 3, Exec::Parallel);
            let r = proper_crosscheck(&w, 5, 3);
            assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn submersion_morita_windows() {
        let m = morita_example("submersion-R2-R->unit-R").unwrap();
        for d in [2, 3] {
            let r = morita_compare(&m, d, 5, 11, Exec::Parallel).unwrap();
            assert!(r.checks.all_pass(), "{:?}", r.checks.failures().collect::<Vec<_>>());
            assert_eq!(r.dims.h0, [d as usize + 1; 3]);
        }
    }
}
