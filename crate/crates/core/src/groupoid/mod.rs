//! Lie groupoids: chart presentations and finite action groupoids behind one
//! interface, plus multiplicativity predicates and the hom-category.

mod action;
pub mod gallery;
mod hom;
pub mod io;
mod presentation;

pub use action::DiscreteActionGroupoid;
pub use hom::{HomMorphism, NatTransformation};
pub use presentation::{GroupoidPresentation, PresentationParts};

use crate::algebroid::Section;
use crate::chart::Chart;
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::scalar::Scalar;

/// A function on the arrows: one component per arrow chart (a single
/// component for chart presentations, one per group element otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowFunction(pub Vec<ChartFunction>);

impl ArrowFunction {
    pub fn comps(&self) -> &[ChartFunction] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &ArrowFunction) -> ArrowFunction {
        ArrowFunction(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &ArrowFunction) -> ArrowFunction {
        ArrowFunction(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ArrowFunction {
        ArrowFunction(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale_scalar(&self, k: &Scalar) -> ArrowFunction {
        ArrowFunction(self.0.iter().map(|a| a.scale(k)).collect())
    }

    /// Componentwise product.
    pub fn mul(&self, o: &ArrowFunction) -> ArrowFunction {
        ArrowFunction(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }

    /// First nonzero component, labelled; `None` when zero.
    pub fn first_nonzero(&self) -> Option<(usize, &ChartFunction)> {
        self.0.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn render(&self) -> String {
        if self.0.len() == 1 {
            self.0[0].render()
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.render()).collect();
            format!("[{}]", parts.join("; "))
        }
    }
}

/// A vector field on the arrows, componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowField(pub Vec<VectorField>);

impl ArrowField {
    pub fn comps(&self) -> &[VectorField] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &ArrowField) -> ArrowField {
        ArrowField(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &ArrowField) -> ArrowField {
        ArrowField(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> ArrowField {
        ArrowField(self.0.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, f: &ArrowFunction) -> ArrowField {
        ArrowField(self.0.iter().zip(&f.0).map(|(a, g)| a.scale(g)).collect())
    }

    pub fn scale_scalar(&self, k: &Scalar) -> ArrowField {
        ArrowField(self.0.iter().map(|a| a.scale_scalar(k)).collect())
    }

    pub fn apply(&self, f: &ArrowFunction) -> ArrowFunction {
        ArrowFunction(
            self.0
                .iter()
                .zip(&f.0)
                .map(|(x, g)| x.apply_unchecked(g))
                .collect(),
        )
    }

    pub fn bracket(&self, o: &ArrowField) -> ArrowField {
        ArrowField(
            self.0
                .iter()
                .zip(&o.0)
                .map(|(a, b)| a.bracket(b).expect("same arrow chart"))
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        if self.0.len() == 1 {
            self.0[0].render()
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.render()).collect();
            format!("[{}]", parts.join("; "))
        }
    }
}

/// Candidate multiplicative vector field `(X, X_M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultVectorField {
    pub arrow: ArrowField,
    pub base: VectorField,
}

impl MultVectorField {
    pub fn add(&self, o: &MultVectorField) -> MultVectorField {
        MultVectorField {
            arrow: self.arrow.add(&o.arrow),
            base: self.base.add(&o.base),
        }
    }

    pub fn sub(&self, o: &MultVectorField) -> MultVectorField {
        MultVectorField {
            arrow: self.arrow.sub(&o.arrow),
            base: self.base.sub(&o.base),
        }
    }

    pub fn neg(&self) -> MultVectorField {
        MultVectorField {
            arrow: self.arrow.neg(),
            base: self.base.neg(),
        }
    }

    pub fn scale_scalar(&self, k: &Scalar) -> MultVectorField {
        MultVectorField {
            arrow: self.arrow.scale_scalar(k),
            base: self.base.scale_scalar(k),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.arrow.is_zero() && self.base.is_zero()
    }

    /// Commutator of both components.
    pub fn bracket(&self, o: &MultVectorField) -> MultVectorField {
        MultVectorField {
            arrow: self.arrow.bracket(&o.arrow),
            base: self.base.bracket(&o.base).expect("same base chart"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Groupoid {
    Chart(GroupoidPresentation),
    Action(DiscreteActionGroupoid),
}

impl Groupoid {
    pub fn name(&self) -> &str {
        match self {
            Groupoid::Chart(g) => g.name(),
            Groupoid::Action(g) => g.name(),
        }
    }

    pub fn base(&self) -> &Chart {
        match self {
            Groupoid::Chart(g) => g.base(),
            Groupoid::Action(g) => g.base(),
        }
    }

    pub fn params(&self) -> &[String] {
        match self {
            Groupoid::Chart(g) => g.params(),
            Groupoid::Action(_) => &[],
        }
    }

    /// Chart of each arrow component.
    pub fn arrow_charts(&self) -> Vec<Chart> {
        match self {
            Groupoid::Chart(g) => vec![g.arrow().clone()],
            Groupoid::Action(g) => vec![g.base().clone(); g.order()],
        }
    }

    pub fn component_names(&self) -> Vec<String> {
        match self {
            Groupoid::Chart(g) => vec![g.arrow().label().to_string()],
            Groupoid::Action(g) => g.elements().to_vec(),
        }
    }

    pub fn as_chart(&self) -> Option<&GroupoidPresentation> {
        match self {
            Groupoid::Chart(g) => Some(g),
            Groupoid::Action(_) => None,
        }
    }

    pub fn as_action(&self) -> Option<&DiscreteActionGroupoid> {
        match self {
            Groupoid::Action(g) => Some(g),
            Groupoid::Chart(_) => None,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Groupoid::Chart(g) => g.validate(),
            Groupoid::Action(g) => g.validate(),
        }
    }

    /// Rank of the Lie algebroid (0 for étale groupoids).
    pub fn rank(&self) -> usize {
        match self {
            Groupoid::Chart(g) => g.rank(),
            Groupoid::Action(_) => 0,
        }
    }

    pub fn frame_names(&self) -> Vec<String> {
        match self {
            Groupoid::Chart(g) => g.frame_names(),
            Groupoid::Action(_) => Vec::new(),
        }
    }

    pub fn zero_function(&self) -> ArrowFunction {
        ArrowFunction(self.arrow_charts().iter().map(ChartFunction::zero).collect())
    }

    pub fn zero_field(&self) -> ArrowField {
        ArrowField(self.arrow_charts().iter().map(VectorField::zero).collect())
    }

    pub fn zero_mult_field(&self) -> MultVectorField {
        MultVectorField {
            arrow: self.zero_field(),
            base: VectorField::zero(self.base()),
        }
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(self.base(), self.rank())
    }

    fn ensure_base(&self, f: &ChartFunction) -> Result<()> {
        self.base().ensure_same(f.chart())
    }

    pub(crate) fn ensure_arrow(&self, f: &ArrowFunction) -> Result<()> {
        let charts = self.arrow_charts();
        if charts.len() != f.0.len() {
            return Err(Error::ChartMismatch {
                expected: format!("{} arrow components", charts.len()),
                found: format!("{} components", f.0.len()),
            });
        }
        for (c, g) in charts.iter().zip(&f.0) {
            c.ensure_same(g.chart())?;
        }
        Ok(())
    }

    pub(crate) fn ensure_arrow_field(&self, x: &ArrowField) -> Result<()> {
        let charts = self.arrow_charts();
        if charts.len() != x.0.len() {
            return Err(Error::ChartMismatch {
                expected: format!("{} arrow components", charts.len()),
                found: format!("{} components", x.0.len()),
            });
        }
        for (c, v) in charts.iter().zip(&x.0) {
            c.ensure_same(v.chart())?;
        }
        Ok(())
    }

    pub fn s_pull(&self, f: &ChartFunction) -> ArrowFunction {
        match self {
            Groupoid::Chart(g) => ArrowFunction(vec![g.s().pullback_unchecked(f)]),
            Groupoid::Action(g) => ArrowFunction(vec![f.clone(); g.order()]),
        }
    }

    pub fn t_pull(&self, f: &ChartFunction) -> ArrowFunction {
        match self {
            Groupoid::Chart(g) => ArrowFunction(vec![g.t().pullback_unchecked(f)]),
            Groupoid::Action(g) => ArrowFunction(
                (0..g.order())
                    .map(|k| g.action(k).pullback_unchecked(f))
                    .collect(),
            ),
        }
    }

    pub fn u_pull(&self, f: &ArrowFunction) -> ChartFunction {
        match self {
            Groupoid::Chart(g) => g.u().pullback_unchecked(&f.0[0]),
            Groupoid::Action(g) => f.0[g.identity()].clone(),
        }
    }

    pub fn i_pull(&self, f: &ArrowFunction) -> ArrowFunction {
        match self {
            Groupoid::Chart(g) => ArrowFunction(vec![g.i().pullback_unchecked(&f.0[0])]),
            Groupoid::Action(g) => ArrowFunction(
                (0..g.order())
                    .map(|k| g.action(k).pullback_unchecked(&f.0[g.inverse(k)]))
                    .collect(),
            ),
        }
    }

    /// `delta f = t*f - s*f`.
    pub fn delta(&self, f: &ChartFunction) -> Result<ArrowFunction> {
        self.ensure_base(f)?;
        Ok(self.t_pull(f).sub(&self.s_pull(f)))
    }

    /// Labelled components of `m*F - pr1*F - pr2*F`.
    pub fn mult_residual(&self, f: &ArrowFunction) -> Vec<(String, ChartFunction)> {
        match self {
            Groupoid::Chart(g) => {
                let f = &f.0[0];
                let d = &(&g.m().pullback_unchecked(f) - &g.pr1().pullback_unchecked(f))
                    - &g.pr2().pullback_unchecked(f);
                vec![("m*F - pr1*F - pr2*F".into(), d)]
            }
            Groupoid::Action(g) => {
                let mut out = Vec::new();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let d = &(&f.0[g.mul(a, b)] - &g.action(b).pullback_unchecked(&f.0[a]))
                            - &f.0[b];
                        let e = g.elements();
                        out.push((
                            format!("F_{}{} - phi_{}*F_{} - F_{}", e[a], e[b], e[b], e[a], e[b]),
                            d,
                        ));
                    }
                }
                out
            }
        }
    }

    /// `[m*H, pr1*H, pr2*H]` on each component of the composable pairs,
    /// where `m(g, h) = gh` and `s(g) = t(h)`.
    pub fn g2_pulls(&self, h: &ArrowFunction) -> Vec<(String, [ChartFunction; 3])> {
        match self {
            Groupoid::Chart(g) => {
                let h = &h.0[0];
                vec![(
                    "G2".into(),
                    [g.m(), g.pr1(), g.pr2()].map(|p| p.pullback_unchecked(h)),
                )]
            }
            Groupoid::Action(g) => {
                let e = g.elements();
                let mut out = Vec::new();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        out.push((
                            format!("({},{})", e[a], e[b]),
                            [
                                h.0[g.mul(a, b)].clone(),
                                g.action(b).pullback_unchecked(&h.0[a]),
                                h.0[b].clone(),
                            ],
                        ));
                    }
                }
                out
            }
        }
    }

    pub fn is_multiplicative_function(&self, f: &ArrowFunction) -> Result<Verdict> {
        self.ensure_arrow(f)?;
        let res = self.mult_residual(f);
        Ok(Verdict::all_zero(res.iter().map(|(l, d)| (l.clone(), d))))
    }

    /// Labelled residuals of s-, t- and m-relatedness.
    pub fn mult_field_residual(&self, x: &MultVectorField) -> Vec<(String, ChartFunction)> {
        let mut out = Vec::new();
        let base_gens = self.base().generators();
        let names = self.base().gen_names().to_vec();
        match self {
            Groupoid::Chart(g) => {
                let xa = &x.arrow.0[0];
                for (f, n) in base_gens.iter().zip(&names) {
                    let xm = x.base.apply_unchecked(f);
                    out.push((
                        format!("s-related on {n}"),
                        &xa.apply_unchecked(&g.s().pullback_unchecked(f)) - &g.s().pullback_unchecked(&xm),
                    ));
                    out.push((
                        format!("t-related on {n}"),
                        &xa.apply_unchecked(&g.t().pullback_unchecked(f)) - &g.t().pullback_unchecked(&xm),
                    ));
                }
                let z = g.pair_field(xa, xa);
                for (h, n) in g.arrow().generators().iter().zip(g.arrow().gen_names()) {
                    let xh = xa.apply_unchecked(h);
                    for (label, pr) in [("pr1", g.pr1()), ("pr2", g.pr2()), ("m", g.m())] {
                        out.push((
                            format!("(X,X) {label}-related on {n}"),
                            &z.apply_unchecked(&pr.pullback_unchecked(h)) - &pr.pullback_unchecked(&xh),
                        ));
                    }
                }
            }
            Groupoid::Action(g) => {
                let e = g.elements();
                for k in 0..g.order() {
                    let xk = &x.arrow.0[k];
                    for (f, n) in base_gens.iter().zip(&names) {
                        let xm = x.base.apply_unchecked(f);
                        out.push((
                            format!("s-related on {n} (component {})", e[k]),
                            &xk.apply_unchecked(f) - &xm,
                        ));
                        let phi = g.action(k);
                        out.push((
                            format!("t-related on {n} (component {})", e[k]),
                            &xk.apply_unchecked(&phi.pullback_unchecked(f)) - &phi.pullback_unchecked(&xm),
                        ));
                    }
                }
                // On the pair component (a, b) the field (X, X) is X_b in the
                // parameter x; m-relatedness compares it with X_ab.
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        for (f, n) in base_gens.iter().zip(&names) {
                            out.push((
                                format!("m-related on {n} (pair {},{})", e[a], e[b]),
                                &x.arrow.0[b].apply_unchecked(f) - &x.arrow.0[g.mul(a, b)].apply_unchecked(f),
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_multiplicative_vector_field(&self, x: &MultVectorField) -> Result<Verdict> {
        self.ensure_arrow_field(&x.arrow)?;
        self.base().ensure_same(x.base.chart())?;
        let res = self.mult_field_residual(x);
        Ok(Verdict::all_zero(res.iter().map(|(l, d)| (l.clone(), d))))
    }

    /// Lifts an invariant field on the base of an action groupoid to a
    /// candidate multiplicative field (the same field on every component).
    pub fn constant_lift(&self, xm: &VectorField) -> Option<MultVectorField> {
        match self {
            Groupoid::Action(g) => Some(MultVectorField {
                arrow: ArrowField(vec![xm.clone(); g.order()]),
                base: xm.clone(),
            }),
            Groupoid::Chart(_) => None,
        }
    }

    /// Anchor `a(alpha)` on the base.
    pub fn anchor(&self, alpha: &Section) -> VectorField {
        match self {
            Groupoid::Chart(g) => {
                let mut out = VectorField::zero(g.base());
                for (a, e) in alpha.coeffs().iter().zip(g.anchor_frame()) {
                    out = out.add(&e.scale(a));
                }
                out
            }
            Groupoid::Action(g) => VectorField::zero(g.base()),
        }
    }

    pub fn right_invariant(&self, alpha: &Section) -> ArrowField {
        match self {
            Groupoid::Chart(g) => ArrowField(vec![g.right_invariant(alpha)]),
            Groupoid::Action(_) => self.zero_field(),
        }
    }

    pub fn left_invariant(&self, alpha: &Section) -> ArrowField {
        match self {
            Groupoid::Chart(g) => ArrowField(vec![g.left_invariant(alpha)]),
            Groupoid::Action(_) => self.zero_field(),
        }
    }

    /// Restriction to the units of a right-invariant field.
    pub fn restrict(&self, v: &ArrowField) -> Section {
        match self {
            Groupoid::Chart(g) => g.restrict(&v.0[0]),
            Groupoid::Action(_) => self.zero_section(),
        }
    }

    /// `i_* X` (the inversion is an involution).
    pub fn i_push(&self, x: &ArrowField) -> ArrowField {
        match self {
            Groupoid::Chart(g) => ArrowField(vec![x.0[0].pushforward_unchecked(g.i(), g.i())]),
            Groupoid::Action(g) => ArrowField(
                (0..g.order())
                    .map(|k| {
                        let inv = g.inverse(k);
                        x.0[inv].pushforward_unchecked(g.action(inv), g.action(k))
                    })
                    .collect(),
            ),
        }
    }

    /// Right-invariant frame fields `e_k^r`.
    pub fn frame_right(&self) -> Vec<ArrowField> {
        (0..self.rank())
            .map(|k| self.right_invariant(&Section::frame(self.base(), self.rank(), k)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::gallery::build_example;

    #[test]
    fn multiplicative_functions_on_pair_groupoid() {
        let g = build_example("pair-R").unwrap();
        let a = g.as_chart().unwrap().arrow().clone();
        let (x, y) = (a.var("x"), a.var("y"));
        assert!(g.is_multiplicative_function(&ArrowFunction(vec![&x - &y])).unwrap().holds);
        let res = g.mult_residual(&ArrowFunction(vec![&x * &y]));
        let g2 = g.as_chart().unwrap().g2().clone();
        let (x2, y2, z2) = (g2.var("x"), g2.var("y"), g2.var("z"));
        // xz - xy - yz
        let expect = &(&(&x2 * &z2) - &(&x2 * &y2)) - &(&y2 * &z2);
        assert_eq!(res[0].1, expect);
        assert!(!g.is_multiplicative_function(&ArrowFunction(vec![&x * &y])).unwrap().holds);
    }

    #[test]
    fn sine_is_not_multiplicative_on_circle() {
        let g = build_example("circle-group").unwrap();
        let a = g.as_chart().unwrap().arrow().clone();
        let v = g.is_multiplicative_function(&ArrowFunction(vec![a.sin("t")])).unwrap();
        assert!(!v.holds);
        assert!(v.certificate.is_some());
    }

    #[test]
    fn multiplicative_fields_on_pair_groupoid() {
        let g = build_example("pair-R").unwrap();
        let a = g.as_chart().unwrap().arrow().clone();
        let dz = VectorField::coordinate(g.base(), "z");
        let dx = VectorField::coordinate(&a, "x");
        let both = dx.add(&VectorField::coordinate(&a, "y"));
        let good = MultVectorField {
            arrow: ArrowField(vec![both]),
            base: dz.clone(),
        };
        assert!(g.is_multiplicative_vector_field(&good).unwrap().holds);
        let bad = MultVectorField {
            arrow: ArrowField(vec![dx]),
            base: dz,
        };
        assert!(!g.is_multiplicative_vector_field(&bad).unwrap().holds);
    }

    #[test]
    fn reflection_lifts_odd_fields_only() {
        let g = build_example("z2-reflection").unwrap();
        let x = g.base().var("x");
        let odd = VectorField::new(g.base(), vec![x.clone()]).unwrap();
        let even = VectorField::new(g.base(), vec![x.pow(2)]).unwrap();
        assert!(g.is_multiplicative_vector_field(&g.constant_lift(&odd).unwrap()).unwrap().holds);
        assert!(!g.is_multiplicative_vector_field(&g.constant_lift(&even).unwrap()).unwrap().holds);
    }
}
