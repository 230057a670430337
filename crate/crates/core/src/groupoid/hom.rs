//! The category whose objects are multiplicative functions and whose
//! morphisms `F -> F + delta f` are base functions `f`, composed additively;
//! and the same data read as natural transformations between functors to
//! the additive reals.

use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::function::ChartFunction;

use super::{ArrowFunction, Groupoid};

/// Morphism `(f, F): F -> F + delta f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMorphism {
    pub f: ChartFunction,
    pub source: ArrowFunction,
}

/// Natural transformation `psi: F => F'` between functors `G -> R`:
/// `psi(t g) + F(g) = F'(g) + psi(s g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub psi: ChartFunction,
    pub source: ArrowFunction,
    pub target: ArrowFunction,
}

impl Groupoid {
    pub fn hom_target(&self, mor: &HomMorphism) -> Result<ArrowFunction> {
        Ok(mor.source.add(&self.delta(&mor.f)?))
    }

    pub fn hom_identity(&self, obj: &ArrowFunction) -> HomMorphism {
        HomMorphism {
            f: ChartFunction::zero(self.base()),
            source: obj.clone(),
        }
    }

    /// `second o first = (f + f', F)`, defined when `F' = F + delta f`.
    pub fn compose_hom(&self, first: &HomMorphism, second: &HomMorphism) -> Result<HomMorphism> {
        self.ensure_arrow(&first.source)?;
        self.ensure_arrow(&second.source)?;
        let mid = self.hom_target(first)?;
        let gap = second.source.sub(&mid);
        if let Some((k, d)) = gap.first_nonzero() {
            return Err(Error::NotComposable(format!(
                "source of the second morphism differs from the target of the first on component {}: {d}",
                self.component_names()[k]
            )));
        }
        Ok(HomMorphism {
            f: &first.f + &second.f,
            source: first.source.clone(),
        })
    }

    pub fn as_natural_transformation(&self, mor: &HomMorphism) -> Result<NatTransformation> {
        Ok(NatTransformation {
            psi: mor.f.clone(),
            source: mor.source.clone(),
            target: self.hom_target(mor)?,
        })
    }

    pub fn naturality(&self, nt: &NatTransformation) -> Verdict {
        let lhs = self.t_pull(&nt.psi).add(&nt.source);
        let rhs = nt.target.add(&self.s_pull(&nt.psi));
        match lhs.sub(&rhs).first_nonzero() {
            None => Verdict::pass(),
            Some((k, d)) => Verdict::fail(format!(
                "naturality fails on component {}: {d}",
                self.component_names()[k]
            )),
        }
    }

    /// Vertical composite `next . first`; components add.
    pub fn vertical(&self, first: &NatTransformation, next: &NatTransformation) -> Result<NatTransformation> {
        if let Some((k, d)) = next.source.sub(&first.target).first_nonzero() {
            return Err(Error::NotComposable(format!(
                "functors differ on component {}: {d}",
                self.component_names()[k]
            )));
        }
        Ok(NatTransformation {
            psi: &first.psi + &next.psi,
            source: first.source.clone(),
            target: next.target.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::groupoid::gallery::build_example;
    use crate::groupoid::HomMorphism;

    #[test]
    fn composite_adds_base_functions() {
        let g = build_example("pair-R").unwrap();
        let m = g.base().clone();
        let z = m.var("z");
        let zero = g.zero_function();
        let first = HomMorphism {
            f: z.clone(),
            source: zero.clone(),
        };
        let second = HomMorphism {
            f: z.pow(2),
            source: g.hom_target(&first).unwrap(),
        };
        let c = g.compose_hom(&first, &second).unwrap();
        assert_eq!(c.f, &z + &z.pow(2));
        assert_eq!(c.source, zero);
        let id = g.hom_identity(&zero);
        assert_eq!(g.compose_hom(&id, &first).unwrap(), first);
        assert!(g.compose_hom(&second, &first).is_err());
    }
}
