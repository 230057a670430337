//! The 2-term complex of multiplicative functions, the dgla of
//! multiplicative vector fields, the `•` operation and the module action.

use crate::algebroid::Section;
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::function::ChartFunction;
use crate::groupoid::{ArrowFunction, Groupoid, MultVectorField};

/// `(f, F)`: `f` in degree 0, a multiplicative `F` in degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFunElement {
    pub f: ChartFunction,
    pub big_f: ArrowFunction,
}

/// `(alpha, X)`: a section in degree -1, a multiplicative field in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVFElement {
    pub alpha: Section,
    pub x: MultVectorField,
}

/// A homogeneous part of `C_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunPart {
    Base(ChartFunction),
    Mult(ArrowFunction),
}

/// A homogeneous part of `X_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VFPart {
    Sec(Section),
    Field(MultVectorField),
}

impl FunPart {
    pub fn degree(&self) -> i32 {
        match self {
            FunPart::Base(_) => 0,
            FunPart::Mult(_) => 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FunPart::Base(f) => f.is_zero(),
            FunPart::Mult(f) => f.is_zero(),
        }
    }
}

impl VFPart {
    pub fn degree(&self) -> i32 {
        match self {
            VFPart::Sec(_) => -1,
            VFPart::Field(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            VFPart::Sec(a) => a.is_zero(),
            VFPart::Field(x) => x.is_zero(),
        }
    }
}

impl GradedFunElement {
    pub fn zero(g: &Groupoid) -> Self {
        GradedFunElement {
            f: ChartFunction::zero(g.base()),
            big_f: g.zero_function(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedFunElement {
            f: &self.f + &o.f,
            big_f: self.big_f.add(&o.big_f),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GradedFunElement {
            f: &self.f - &o.f,
            big_f: self.big_f.sub(&o.big_f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.big_f.is_zero()
    }

    pub fn parts(&self) -> [FunPart; 2] {
        [FunPart::Base(self.f.clone()), FunPart::Mult(self.big_f.clone())]
    }

    pub fn from_part(g: &Groupoid, p: &FunPart) -> Self {
        let mut out = Self::zero(g);
        match p {
            FunPart::Base(f) => out.f = f.clone(),
            FunPart::Mult(f) => out.big_f = f.clone(),
        }
        out
    }
}

impl GradedVFElement {
    pub fn zero(g: &Groupoid) -> Self {
        GradedVFElement {
            alpha: g.zero_section(),
            x: g.zero_mult_field(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedVFElement {
            alpha: self.alpha.add(&o.alpha),
            x: self.x.add(&o.x),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GradedVFElement {
            alpha: self.alpha.sub(&o.alpha),
            x: self.x.sub(&o.x),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.x.is_zero()
    }

    pub fn parts(&self) -> [VFPart; 2] {
        [VFPart::Sec(self.alpha.clone()), VFPart::Field(self.x.clone())]
    }

    pub fn from_part(g: &Groupoid, p: &VFPart) -> Self {
        let mut out = Self::zero(g);
        match p {
            VFPart::Sec(a) => out.alpha = a.clone(),
            VFPart::Field(x) => out.x = x.clone(),
        }
        out
    }
}

fn ensure_section(g: &Groupoid, a: &Section) -> Result<()> {
    g.zero_section().ensure_compatible(a)
}

fn ensure_field(g: &Groupoid, x: &MultVectorField) -> Result<()> {
    g.ensure_arrow_field(&x.arrow)?;
    g.base().ensure_same(x.base.chart())
}

/// `∂alpha = (alpha^r - alpha^l, a(alpha))`.
pub fn partial(g: &Groupoid, alpha: &Section) -> Result<MultVectorField> {
    ensure_section(g, alpha)?;
    Ok(MultVectorField {
        arrow: g.right_invariant(alpha).sub(&g.left_invariant(alpha)),
        base: g.anchor(alpha),
    })
}

/// `x • y`. `None` is the zero of the empty degree -1 of `C_m`
/// (only `alpha • f` lands there).
pub fn bullet(g: &Groupoid, x: &VFPart, y: &FunPart) -> Result<Option<FunPart>> {
    match (x, y) {
        (VFPart::Field(x), FunPart::Base(f)) => {
            ensure_field(g, x)?;
            Ok(Some(FunPart::Base(x.base.apply(f)?)))
        }
        (VFPart::Field(x), FunPart::Mult(f)) => {
            ensure_field(g, x)?;
            g.ensure_arrow(f)?;
            Ok(Some(FunPart::Mult(x.arrow.apply(f))))
        }
        (VFPart::Sec(a), FunPart::Base(f)) => {
            ensure_section(g, a)?;
            g.base().ensure_same(f.chart())?;
            Ok(None)
        }
        (VFPart::Sec(a), FunPart::Mult(f)) => {
            ensure_section(g, a)?;
            g.ensure_arrow(f)?;
            Ok(Some(FunPart::Base(g.u_pull(&g.right_invariant(a).apply(f)))))
        }
    }
}

/// `alpha • F = u*(alpha^r F)`.
pub fn bullet_section(g: &Groupoid, alpha: &Section, f: &ArrowFunction) -> Result<ChartFunction> {
    match bullet(g, &VFPart::Sec(alpha.clone()), &FunPart::Mult(f.clone()))? {
        Some(FunPart::Base(h)) => Ok(h),
        _ => unreachable!("alpha • F has degree 0"),
    }
}

/// `mu((alpha, X), (f, F)) = (alpha • F + X • f, X • F)`.
pub fn mu(g: &Groupoid, x: &GradedVFElement, y: &GradedFunElement) -> Result<GradedFunElement> {
    ensure_section(g, &x.alpha)?;
    ensure_field(g, &x.x)?;
    g.base().ensure_same(y.f.chart())?;
    g.ensure_arrow(&y.big_f)?;
    let af = g.u_pull(&g.right_invariant(&x.alpha).apply(&y.big_f));
    let xf = x.x.base.apply_unchecked(&y.f);
    Ok(GradedFunElement {
        f: &af + &xf,
        big_f: x.x.arrow.apply(&y.big_f),
    })
}

/// Differential of `C_m`: `(f, F) -> (0, delta f)`.
pub fn d_fun(g: &Groupoid, y: &GradedFunElement) -> Result<GradedFunElement> {
    Ok(GradedFunElement {
        f: ChartFunction::zero(g.base()),
        big_f: g.delta(&y.f)?,
    })
}

/// Differential of `X_m`: `(alpha, X) -> (0, ∂alpha)`.
pub fn d_vf(g: &Groupoid, x: &GradedVFElement) -> Result<GradedVFElement> {
    Ok(GradedVFElement {
        alpha: g.zero_section(),
        x: partial(g, &x.alpha)?,
    })
}

/// `[[X, alpha]] = [X, alpha^r]|_M`.
pub fn bracket_field_section(g: &Groupoid, x: &MultVectorField, alpha: &Section) -> Result<Section> {
    ensure_field(g, x)?;
    ensure_section(g, alpha)?;
    Ok(g.restrict(&x.arrow.bracket(&g.right_invariant(alpha))))
}

/// Graded bracket on homogeneous parts; `None` is the degree -2 zero.
pub fn bracket_parts(g: &Groupoid, x1: &VFPart, x2: &VFPart) -> Result<Option<VFPart>> {
    Ok(match (x1, x2) {
        (VFPart::Field(x), VFPart::Field(y)) => {
            ensure_field(g, x)?;
            ensure_field(g, y)?;
            Some(VFPart::Field(x.bracket(y)))
        }
        (VFPart::Field(x), VFPart::Sec(a)) => Some(VFPart::Sec(bracket_field_section(g, x, a)?)),
        (VFPart::Sec(a), VFPart::Field(x)) => Some(VFPart::Sec(bracket_field_section(g, x, a)?.neg())),
        (VFPart::Sec(a), VFPart::Sec(b)) => {
            ensure_section(g, a)?;
            ensure_section(g, b)?;
            None
        }
    })
}

/// `[(alpha, X), (beta, Y)] = ([[X, beta]] - [[Y, alpha]], [X, Y])`.
pub fn bracket2(g: &Groupoid, x1: &GradedVFElement, x2: &GradedVFElement) -> Result<GradedVFElement> {
    let a = bracket_field_section(g, &x1.x, &x2.alpha)?;
    let b = bracket_field_section(g, &x2.x, &x1.alpha)?;
    Ok(GradedVFElement {
        alpha: a.sub(&b),
        x: x1.x.bracket(&x2.x),
    })
}

fn require_invariant(g: &Groupoid, f: &ChartFunction) -> Result<()> {
    let d = g.delta(f)?;
    match d.first_nonzero() {
        None => Ok(()),
        Some((k, c)) => Err(Error::precondition(
            "delta f = 0",
            format!("delta f on component {}: {c}", g.component_names()[k]),
        )),
    }
}

/// `f (alpha, X) = (f alpha, (t*f) X)` with base `f X_M`, for invariant `f`.
pub fn cm0_action(g: &Groupoid, f: &ChartFunction, x: &GradedVFElement) -> Result<GradedVFElement> {
    require_invariant(g, f)?;
    ensure_section(g, &x.alpha)?;
    ensure_field(g, &x.x)?;
    Ok(GradedVFElement {
        alpha: x.alpha.scale(f),
        x: MultVectorField {
            arrow: x.x.arrow.scale(&g.t_pull(f)),
            base: x.x.base.scale(f),
        },
    })
}

/// Product of cohomology representatives: `[F][alpha] = [F alpha^r]`,
/// `[f][X] = [(t*f) X]`, `[f][alpha] = [f alpha]`, `[F][X] = 0` (`None`).
/// Preconditions are checked and reported with a certificate.
pub fn h_cdot(g: &Groupoid, y: &FunPart, x: &VFPart) -> Result<Option<VFPart>> {
    match (y, x) {
        (FunPart::Mult(big_f), VFPart::Sec(alpha)) => {
            g.ensure_arrow(big_f)?;
            let v = g.is_multiplicative_function(big_f)?;
            if !v.holds {
                return Err(Error::precondition("F multiplicative", v.certificate.unwrap_or_default()));
            }
            let d = partial(g, alpha)?;
            if let Some(cert) = field_certificate(g, &d) {
                return Err(Error::precondition("alpha in ker ∂", cert));
            }
            Ok(Some(VFPart::Field(MultVectorField {
                arrow: g.right_invariant(alpha).scale(big_f),
                base: d.base,
            })))
        }
        (FunPart::Base(f), VFPart::Field(xf)) => {
            let e = GradedVFElement::from_part(g, &VFPart::Field(xf.clone()));
            Ok(Some(VFPart::Field(cm0_action(g, f, &e)?.x)))
        }
        (FunPart::Base(f), VFPart::Sec(a)) => {
            let e = GradedVFElement::from_part(g, &VFPart::Sec(a.clone()));
            Ok(Some(VFPart::Sec(cm0_action(g, f, &e)?.alpha)))
        }
        (FunPart::Mult(big_f), VFPart::Field(xf)) => {
            g.ensure_arrow(big_f)?;
            ensure_field(g, xf)?;
            Ok(None)
        }
    }
}

/// Shifting `F` by `delta h` changes `F alpha^r` by `∂(h alpha)` when
/// `∂alpha = 0`, so the class of the product does not move.
pub fn h_cdot_shift_check(g: &Groupoid, alpha: &Section, h: &ChartFunction) -> Result<Verdict> {
    let shift = g.right_invariant(alpha).scale(&g.delta(h)?);
    let cob = partial(g, &alpha.scale(h))?;
    let diff = MultVectorField {
        arrow: shift.sub(&cob.arrow),
        base: cob.base.neg(),
    };
    Ok(match field_certificate(g, &diff) {
        None => Verdict::pass(),
        Some(c) => Verdict::fail(format!("(delta h) alpha^r - ∂(h alpha): {c}")),
    })
}

/// Shifting `X` by `∂beta` changes `(t*f) X` by `∂(f beta)` for invariant `f`.
pub fn h_cdot_field_shift_check(g: &Groupoid, f: &ChartFunction, beta: &Section) -> Result<Verdict> {
    require_invariant(g, f)?;
    let d = partial(g, beta)?;
    let lhs = MultVectorField {
        arrow: d.arrow.scale(&g.t_pull(f)),
        base: d.base.scale(f),
    };
    let rhs = partial(g, &beta.scale(f))?;
    Ok(match field_certificate(g, &lhs.sub(&rhs)) {
        None => Verdict::pass(),
        Some(c) => Verdict::fail(format!("(t*f) ∂beta - ∂(f beta): {c}")),
    })
}

/// First nonzero coefficient of a field pair, labelled.
pub(crate) fn field_certificate(g: &Groupoid, x: &MultVectorField) -> Option<String> {
    let names = g.component_names();
    for (k, v) in x.arrow.comps().iter().enumerate() {
        for (c, coord) in v.coeffs().iter().zip(v.chart().coords()) {
            if !c.is_zero() {
                return Some(format!("component {}, d_{}: {c}", names[k], coord.name));
            }
        }
    }
    for (c, coord) in x.base.coeffs().iter().zip(x.base.chart().coords()) {
        if !c.is_zero() {
            return Some(format!("base, d_{}: {c}", coord.name));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::VectorField;
    use crate::groupoid::gallery::build_example;
    use crate::groupoid::ArrowField;

    fn single(g: &Groupoid, f: ChartFunction) -> ArrowFunction {
        let _ = g;
        ArrowFunction(vec![f])
    }

    #[test]
    fn partial_on_pair_groupoid() {
        let g = build_example("pair-R").unwrap();
        let p = g.as_chart().unwrap();
        let d = partial(&g, &Section::frame(g.base(), 1, 0)).unwrap();
        let expect = VectorField::coordinate(p.arrow(), "x").add(&VectorField::coordinate(p.arrow(), "y"));
        assert_eq!(d.arrow.0[0], expect);
        assert_eq!(d.base, VectorField::coordinate(g.base(), "z"));
        assert!(g.is_multiplicative_vector_field(&d).unwrap().holds);
    }

    #[test]
    fn partial_vanishes_on_abelian_groups() {
        for name in ["real-line-group", "circle-group"] {
            let g = build_example(name).unwrap();
            let d = partial(&g, &Section::frame(g.base(), 1, 0)).unwrap();
            assert!(d.is_zero(), "{name}");
        }
    }

    #[test]
    fn bullet_cases_on_pair_groupoid() {
        let g = build_example("pair-R").unwrap();
        let p = g.as_chart().unwrap();
        let (x, y) = (p.arrow().var("x"), p.arrow().var("y"));
        let big_f = single(&g, &x - &y);
        let alpha = Section::frame(g.base(), 1, 0);
        assert_eq!(
            bullet_section(&g, &alpha, &big_f).unwrap(),
            ChartFunction::one(g.base())
        );
        let z = g.base().var("z");
        assert_eq!(bullet(&g, &VFPart::Sec(alpha.clone()), &FunPart::Base(z)).unwrap(), None);
        let dx = partial(&g, &alpha).unwrap();
        let xf = bullet(&g, &VFPart::Field(dx), &FunPart::Mult(big_f.clone())).unwrap();
        assert!(matches!(xf, Some(FunPart::Mult(h)) if h.is_zero()));

        let e = mu(
            &g,
            &GradedVFElement::from_part(&g, &VFPart::Sec(alpha)),
            &GradedFunElement::from_part(&g, &FunPart::Mult(big_f)),
        )
        .unwrap();
        assert_eq!(e.f, ChartFunction::one(g.base()));
        assert!(e.big_f.is_zero());
    }

    #[test]
    fn delta_of_even_function_on_reflection_groupoid() {
        let g = build_example("z2-reflection").unwrap();
        let d = g.delta(&g.base().var("x").pow(2)).unwrap();
        assert_eq!(d.0.len(), 2);
        assert!(d.is_zero());
    }

    #[test]
    fn euler_field_against_constant_section() {
        let g = build_example("pair-R").unwrap();
        let p = g.as_chart().unwrap();
        let a = p.arrow();
        let (x, y) = (a.var("x"), a.var("y"));
        let euler = MultVectorField {
            arrow: ArrowField(vec![VectorField::new(a, vec![x, y]).unwrap()]),
            base: VectorField::new(g.base(), vec![g.base().var("z")]).unwrap(),
        };
        assert!(g.is_multiplicative_vector_field(&euler).unwrap().holds);
        let alpha = Section::frame(g.base(), 1, 0);
        let b = bracket_field_section(&g, &euler, &alpha).unwrap();
        assert_eq!(b, alpha.neg());
        let back = bracket_parts(&g, &VFPart::Sec(alpha.clone()), &VFPart::Field(euler)).unwrap();
        assert_eq!(back, Some(VFPart::Sec(alpha)));
    }

    #[test]
    fn invariant_function_scales_reflection_field() {
        let g = build_example("z2-reflection").unwrap();
        let m = g.base();
        let x = m.var("x");
        let xm = VectorField::new(m, vec![x.clone()]).unwrap();
        let lift = g.constant_lift(&xm).unwrap();
        assert!(g.is_multiplicative_vector_field(&lift).unwrap().holds);
        let e = GradedVFElement::from_part(&g, &VFPart::Field(lift));
        let out = cm0_action(&g, &x.pow(2), &e).unwrap();
        assert_eq!(out.x.base, VectorField::new(m, vec![x.pow(3)]).unwrap());
        assert!(g.is_multiplicative_vector_field(&out.x).unwrap().holds);
        assert!(matches!(
            cm0_action(&g, &x, &e),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn product_on_real_line_group() {
        let g = build_example("real-line-group").unwrap();
        let a = g.as_chart().unwrap().arrow().clone();
        let big_f = single(&g, a.var("g"));
        let alpha = Section::frame(g.base(), 1, 0);
        let out = h_cdot(&g, &FunPart::Mult(big_f.clone()), &VFPart::Sec(alpha.clone()))
            .unwrap()
            .unwrap();
        let VFPart::Field(v) = out else { panic!("degree 0 expected") };
        assert_eq!(v.arrow.0[0], VectorField::new(&a, vec![a.var("g")]).unwrap());
        assert!(g.is_multiplicative_vector_field(&v).unwrap().holds);
        assert_eq!(
            h_cdot(&g, &FunPart::Mult(big_f), &VFPart::Field(v)).unwrap(),
            None
        );
        let h = ChartFunction::int(g.base(), 5);
        assert!(h_cdot_shift_check(&g, &alpha, &h).unwrap().holds);
    }

    #[test]
    fn product_rejects_non_multiplicative_input() {
        let g = build_example("real-line-group").unwrap();
        let a = g.as_chart().unwrap().arrow().clone();
        let big_f = single(&g, a.var("g").pow(2));
        let err = h_cdot(&g, &FunPart::Mult(big_f), &VFPart::Sec(Section::frame(g.base(), 1, 0)));
        assert!(matches!(err, Err(Error::Precondition { .. })));
    }

    #[test]
    fn pair_groupoid_class_shift() {
        let g = build_example("pair-R").unwrap();
        let z = g.base().var("z");
        let beta = Section::new(g.base(), vec![z.pow(2)]).unwrap();
        let one = ChartFunction::one(g.base());
        assert!(h_cdot_field_shift_check(&g, &one, &beta).unwrap().holds);
    }
}
