//! Van-Est maps from the groupoid complexes to the algebroid complexes.

use crate::error::Result;
use crate::function::ChartFunction;
use crate::groupoid::{ArrowFunction, Groupoid, MultVectorField};

use super::{AlgebroidDerivation, AlgebroidPresentation, IMFunction, Section};

/// A groupoid together with its extracted Lie algebroid.
#[derive(Clone, Debug)]
pub struct LinkedPair {
    pub groupoid: Groupoid,
    pub algebroid: AlgebroidPresentation,
}

impl LinkedPair {
    pub fn new(groupoid: Groupoid) -> Result<Self> {
        let algebroid = AlgebroidPresentation::of_groupoid(&groupoid)?;
        Ok(LinkedPair { groupoid, algebroid })
    }

    /// Degree -1: the identity on sections.
    pub fn ve_section(&self, alpha: &Section) -> Section {
        alpha.clone()
    }

    /// Degree 0: `X -> D_X`, `D_X(alpha) = [X, alpha^r]|_M`, symbol `X_M`.
    pub fn ve(&self, x: &MultVectorField) -> AlgebroidDerivation {
        let g = &self.groupoid;
        AlgebroidDerivation {
            symbol: x.base.clone(),
            action: g
                .frame_right()
                .iter()
                .map(|er| g.restrict(&x.arrow.bracket(er)))
                .collect(),
        }
    }

    /// Degree 0: the identity on functions.
    pub fn ove_function(&self, f: &ChartFunction) -> ChartFunction {
        f.clone()
    }

    /// Degree 1: `F -> w_F`, `w_F(alpha) = u*(alpha^r F)`.
    pub fn ove(&self, f: &ArrowFunction) -> IMFunction {
        let g = &self.groupoid;
        IMFunction {
            values: g
                .frame_right()
                .iter()
                .map(|er| g.u_pull(&er.apply(f)))
                .collect(),
        }
    }
}
