//! The two-term complexes `C(A): C(M) -> IM` and `X(A): Gamma(A) -> Der(A)`,
//! the dgla bracket on `X(A)` and its action on `C(A)`.

use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;

use super::{AlgebroidPresentation, Section};

/// A linear functional on sections, stored by its values on the frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMFunction {
    pub values: Vec<ChartFunction>,
}

impl IMFunction {
    pub fn eval(&self, alpha: &Section) -> ChartFunction {
        let base = alpha.base();
        self.values
            .iter()
            .zip(alpha.coeffs())
            .fold(ChartFunction::zero(base), |acc, (w, a)| &acc + &(w * a))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, o: &IMFunction) -> IMFunction {
        IMFunction {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &IMFunction) -> IMFunction {
        IMFunction {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, f: &ChartFunction) -> IMFunction {
        IMFunction {
            values: self.values.iter().map(|a| a * f).collect(),
        }
    }
}

/// A Lie algebroid derivation, stored by its symbol and its frame action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidDerivation {
    pub symbol: VectorField,
    pub action: Vec<Section>,
}

impl AlgebroidDerivation {
    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero() && self.action.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, o: &AlgebroidDerivation) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: self.symbol.add(&o.symbol),
            action: self.action.iter().zip(&o.action).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &AlgebroidDerivation) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: self.symbol.sub(&o.symbol),
            action: self.action.iter().zip(&o.action).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: self.symbol.neg(),
            action: self.action.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, f: &ChartFunction) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: self.symbol.scale(f),
            action: self.action.iter().map(|a| a.scale(f)).collect(),
        }
    }

    /// `D(sum a_k e_k) = sum sigma(a_k) e_k + a_k D(e_k)`.
    pub fn apply(&self, alpha: &Section) -> Section {
        let mut coeffs: Vec<ChartFunction> = alpha
            .coeffs()
            .iter()
            .map(|a| self.symbol.apply_unchecked(a))
            .collect();
        for (a, de) in alpha.coeffs().iter().zip(&self.action) {
            if a.is_zero() {
                continue;
            }
            for (c, d) in coeffs.iter_mut().zip(de.coeffs()) {
                *c = &*c + &(a * d);
            }
        }
        Section::new(alpha.base(), coeffs).expect("base chart")
    }
}

/// Homogeneous element of `X(A)`: a section (degree -1) or a derivation (degree 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XA {
    Sec(Section),
    Der(AlgebroidDerivation),
}

/// Homogeneous element of `C(A)`: a function (degree 0) or an IM function (degree 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CA {
    Fun(ChartFunction),
    IM(IMFunction),
}

impl AlgebroidPresentation {
    pub fn zero_im(&self) -> IMFunction {
        IMFunction {
            values: vec![ChartFunction::zero(self.base()); self.rank()],
        }
    }

    pub fn zero_derivation(&self) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: VectorField::zero(self.base()),
            action: vec![self.zero_section(); self.rank()],
        }
    }

    /// `d_A f (alpha) = a(alpha) f`.
    pub fn d_a(&self, f: &ChartFunction) -> Result<IMFunction> {
        self.base().ensure_same(f.chart())?;
        Ok(IMFunction {
            values: self.anchor_frame().iter().map(|x| x.apply_unchecked(f)).collect(),
        })
    }

    /// Residual of `a(e_i) w(e_j) - a(e_j) w(e_i) - w([e_i, e_j])` on frame pairs.
    pub fn cocycle_residual(&self, w: &IMFunction) -> Vec<(String, ChartFunction)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d = &(&self.anchor_frame()[i].apply_unchecked(&w.values[j])
                    - &self.anchor_frame()[j].apply_unchecked(&w.values[i]))
                    - &w.eval(self.structure(i, j));
                out.push((format!("cocycle on ({},{})", self.frame()[i], self.frame()[j]), d));
            }
        }
        out
    }

    pub fn is_cocycle(&self, w: &IMFunction) -> Verdict {
        let r = self.cocycle_residual(w);
        Verdict::all_zero(r.iter().map(|(l, d)| (l.clone(), d)))
    }

    /// `ad_alpha = ([alpha, -], a(alpha))`.
    pub fn ad(&self, alpha: &Section) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: self.anchor(alpha),
            action: (0..self.rank())
                .map(|k| self.bracket(alpha, &self.frame_section(k)))
                .collect(),
        }
    }

    /// Labelled residuals of the derivation axioms on the frame: anchor
    /// compatibility per coordinate and the bracket rule per frame pair.
    /// Leibniz holds by construction. Expects a full frame action.
    pub fn derivation_residual(&self, d: &AlgebroidDerivation) -> Vec<(String, ChartFunction)> {
        let n = self.rank();
        let mut out = Vec::new();
        for k in 0..n {
            let lhs = self.anchor(&d.action[k]);
            let rhs = d.symbol.bracket(&self.anchor_frame()[k]).expect("base chart");
            let diff = lhs.sub(&rhs);
            for (c, coord) in diff.coeffs().iter().zip(self.base().coords()) {
                out.push((
                    format!("a(D {0}) - [sigma(D), a({0})] on d_{1}", self.frame()[k], coord.name),
                    c.clone(),
                ));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.frame_section(i), self.frame_section(j));
                let lhs = d.apply(&self.bracket(&a, &b));
                let rhs = self
                    .bracket(&d.apply(&a), &b)
                    .add(&self.bracket(&a, &d.apply(&b)));
                let diff = lhs.sub(&rhs);
                for (c, e) in diff.coeffs().iter().zip(self.frame()) {
                    out.push((
                        format!("D[{0},{1}] - [D{0},{1}] - [{0},D{1}] on {e}", self.frame()[i], self.frame()[j]),
                        c.clone(),
                    ));
                }
            }
        }
        out
    }

    pub fn derivation_check(&self, d: &AlgebroidDerivation) -> Verdict {
        let n = self.rank();
        if d.action.len() != n {
            return Verdict::fail(format!("frame action has {} entries, rank is {n}", d.action.len()));
        }
        let r = self.derivation_residual(d);
        Verdict::all_zero(r.iter().map(|(l, c)| (l.clone(), c)))
    }

    /// Commutator of derivations.
    pub fn commutator(&self, d1: &AlgebroidDerivation, d2: &AlgebroidDerivation) -> AlgebroidDerivation {
        AlgebroidDerivation {
            symbol: d1.symbol.bracket(&d2.symbol).expect("base chart"),
            action: (0..self.rank())
                .map(|k| d1.apply(&d2.action[k]).sub(&d2.apply(&d1.action[k])))
                .collect(),
        }
    }

    /// Graded bracket on `X(A)`; `[alpha, beta]` lands in degree -2, which is zero.
    pub fn xa_bracket(&self, x: &XA, y: &XA) -> Option<XA> {
        match (x, y) {
            (XA::Der(a), XA::Der(b)) => Some(XA::Der(self.commutator(a, b))),
            (XA::Der(d), XA::Sec(s)) => Some(XA::Sec(d.apply(s))),
            (XA::Sec(s), XA::Der(d)) => Some(XA::Sec(d.apply(s).neg())),
            (XA::Sec(_), XA::Sec(_)) => None,
        }
    }

    /// `x obullet y`, `None` when the result lands in a zero degree.
    pub fn obullet(&self, x: &XA, y: &CA) -> Option<CA> {
        match (x, y) {
            (XA::Der(d), CA::Fun(f)) => Some(CA::Fun(d.symbol.apply_unchecked(f))),
            (XA::Der(d), CA::IM(w)) => Some(CA::IM(IMFunction {
                values: (0..self.rank())
                    .map(|k| &d.symbol.apply_unchecked(&w.values[k]) - &w.eval(&d.action[k]))
                    .collect(),
            })),
            (XA::Sec(a), CA::IM(w)) => Some(CA::Fun(w.eval(a))),
            (XA::Sec(_), CA::Fun(_)) => None,
        }
    }

    /// `mu((alpha, D), (f, w)) = (alpha obullet w + D obullet f, D obullet w)`.
    pub fn mu_bar(
        &self,
        alpha: &Section,
        d: &AlgebroidDerivation,
        f: &ChartFunction,
        w: &IMFunction,
    ) -> (ChartFunction, IMFunction) {
        let f0 = &w.eval(alpha) + &d.symbol.apply_unchecked(f);
        let w1 = match self.obullet(&XA::Der(d.clone()), &CA::IM(w.clone())) {
            Some(CA::IM(v)) => v,
            _ => unreachable!(),
        };
        (f0, w1)
    }

    /// `[w] . [alpha] = [w alpha]`, the derivation `beta -> w(beta) alpha`.
    pub fn h_ocdot_section(&self, w: &IMFunction, alpha: &Section) -> Result<AlgebroidDerivation> {
        let c = self.is_cocycle(w);
        if !c.holds {
            return Err(Error::precondition("IM function is not a cocycle", c.certificate.unwrap_or_default()));
        }
        let ad = self.ad(alpha);
        if !ad.is_zero() {
            return Err(Error::precondition(
                "section is not in the kernel of ad",
                format!("ad symbol {}", ad.symbol),
            ));
        }
        Ok(AlgebroidDerivation {
            symbol: VectorField::zero(self.base()),
            action: w.values.iter().map(|v| alpha.scale(v)).collect(),
        })
    }

    /// `[f] . [D] = [fD]`.
    pub fn h_ocdot_derivation(&self, f: &ChartFunction, d: &AlgebroidDerivation) -> Result<AlgebroidDerivation> {
        let df = self.d_a(f)?;
        if !df.is_zero() {
            return Err(Error::precondition(
                "function is not in the kernel of d_A",
                df.values.iter().find(|v| !v.is_zero()).unwrap(),
            ));
        }
        Ok(d.scale(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::examples::molino;
    use crate::groupoid::gallery::build_example;

    fn pair_r() -> AlgebroidPresentation {
        AlgebroidPresentation::of_groupoid(&build_example("pair-R").unwrap()).unwrap()
    }

    #[test]
    fn d_a_examples() {
        let a = pair_r();
        let z = a.base().var("z");
        let w = a.d_a(&z.pow(2)).unwrap();
        assert_eq!(w.values, vec![z.scale(&crate::Scalar::int(2))]);
        assert!(a.is_cocycle(&w).holds);

        let m = molino();
        let c0 = m.base().cos("t0");
        let w = m.d_a(&c0).unwrap();
        let expected = m.base().sin("t0").scale(&-crate::Scalar::param("l0"));
        assert_eq!(w.values, vec![expected]);
    }

    #[test]
    fn derivation_identities() {
        let a = pair_r();
        let z = a.base().var("z");
        let alpha = a.section(vec![z.clone()]).unwrap();
        let beta = a.section(vec![z.pow(2)]).unwrap();
        let (da, db) = (a.ad(&alpha), a.ad(&beta));
        assert!(a.derivation_check(&da).holds);
        assert_eq!(a.commutator(&da, &db), a.ad(&a.bracket(&alpha, &beta)));
        assert!(a.commutator(&da, &da).is_zero());
        let x = XA::Der(da.clone());
        assert_eq!(a.xa_bracket(&x, &XA::Sec(beta.clone())), Some(XA::Sec(da.apply(&beta))));
    }

    #[test]
    fn ocdot_on_circle_algebroid() {
        let a = AlgebroidPresentation::of_groupoid(&build_example("circle-group").unwrap()).unwrap();
        let w = IMFunction {
            values: vec![ChartFunction::one(a.base())],
        };
        let e = a.frame_section(0);
        let d = a.h_ocdot_section(&w, &e).unwrap();
        assert!(d.symbol.is_zero());
        assert_eq!(d.action, vec![e.clone()]);
        assert!(a.derivation_check(&d).holds);
    }
}
