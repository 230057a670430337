use std::fmt;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::function::ChartFunction;
use crate::scalar::Scalar;

/// Section of a Lie algebroid: one coefficient per frame element.
#[derive(Clone, PartialEq, Eq)]
pub struct Section {
    base: Chart,
    coeffs: Vec<ChartFunction>,
}

impl Section {
    pub fn zero(base: &Chart, rank: usize) -> Self {
        Section {
            base: base.clone(),
            coeffs: vec![ChartFunction::zero(base); rank],
        }
    }

    pub fn new(base: &Chart, coeffs: Vec<ChartFunction>) -> Result<Self> {
        for c in &coeffs {
            base.ensure_same(c.chart())?;
        }
        Ok(Section {
            base: base.clone(),
            coeffs,
        })
    }

    /// The k-th frame element.
    pub fn frame(base: &Chart, rank: usize, k: usize) -> Self {
        let mut s = Section::zero(base, rank);
        s.coeffs[k] = ChartFunction::one(base);
        s
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ChartFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    pub(crate) fn ensure_compatible(&self, other: &Section) -> Result<()> {
        self.base.ensure_same(&other.base)?;
        if self.rank() != other.rank() {
            return Err(Error::ChartMismatch {
                expected: format!("rank {}", self.rank()),
                found: format!("rank {}", other.rank()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Section) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, f: &ChartFunction) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale_scalar(&self, k: &Scalar) -> Section {
        Section {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn render(&self, frame: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(frame)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| {
                if c.is_constant() && c.constant_term().is_one() {
                    e.clone()
                } else {
                    format!("({c})*{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank()).map(|k| format!("e{k}")).collect();
        write!(f, "{}", self.render(&names))
    }
}
