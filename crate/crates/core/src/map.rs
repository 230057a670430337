//! Smooth maps between charts, acting on functions by substitution.

use std::fmt;

use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::function::ChartFunction;

/// Image of one target coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordImage {
    Affine(ChartFunction),
    /// (cos, sin) images; must satisfy `p^2 + q^2 = 1` on the source.
    Circle(ChartFunction, ChartFunction),
}

#[derive(Clone, PartialEq, Eq)]
pub struct SmoothMap {
    source: Chart,
    target: Chart,
    images: Vec<CoordImage>,
}

impl SmoothMap {
    pub fn new(source: &Chart, target: &Chart, images: Vec<CoordImage>) -> Result<SmoothMap> {
        if images.len() != target.dim() {
            return Err(Error::MapInvariant(format!(
                "{} images supplied for target {}",
                images.len(),
                target.describe()
            )));
        }
        for (img, coord) in images.iter().zip(target.coords()) {
            match (img, coord.kind) {
                (CoordImage::Affine(f), CoordKind::Affine) => source.ensure_same(f.chart())?,
                (CoordImage::Circle(p, q), CoordKind::Circle) => {
                    source.ensure_same(p.chart())?;
                    source.ensure_same(q.chart())?;
                    let rel = &(&(p * p) + &(q * q)) - &ChartFunction::one(source);
                    if !rel.is_zero() {
                        return Err(Error::MapInvariant(format!(
                            "circle image for `{}` violates cos^2 + sin^2 = 1: residual {}",
                            coord.name, rel
                        )));
                    }
                }
                _ => {
                    return Err(Error::MapInvariant(format!(
                        "image kind does not match coordinate `{}`",
                        coord.name
                    )))
                }
            }
        }
        Ok(SmoothMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(chart: &Chart) -> SmoothMap {
        let images = chart
            .coords()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let g = chart.first_gen(k);
                match c.kind {
                    CoordKind::Affine => CoordImage::Affine(chart.gen(g)),
                    CoordKind::Circle => CoordImage::Circle(chart.gen(g), chart.gen(g + 1)),
                }
            })
            .collect();
        SmoothMap {
            source: chart.clone(),
            target: chart.clone(),
            images,
        }
    }

    /// Map whose images are given per target generator (cos/sin listed separately).
    pub fn from_generator_images(
        source: &Chart,
        target: &Chart,
        gens: Vec<ChartFunction>,
    ) -> Result<SmoothMap> {
        if gens.len() != target.n_gens() {
            return Err(Error::MapInvariant("generator image count".into()));
        }
        let mut images = Vec::with_capacity(target.dim());
        for (k, c) in target.coords().iter().enumerate() {
            let g = target.first_gen(k);
            images.push(match c.kind {
                CoordKind::Affine => CoordImage::Affine(gens[g].clone()),
                CoordKind::Circle => CoordImage::Circle(gens[g].clone(), gens[g + 1].clone()),
            });
        }
        SmoothMap::new(source, target, images)
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn images(&self) -> &[CoordImage] {
        &self.images
    }

    /// Pullback of each target generator, in generator order.
    pub fn generator_images(&self) -> Vec<ChartFunction> {
        let mut out = Vec::with_capacity(self.target.n_gens());
        for img in &self.images {
            match img {
                CoordImage::Affine(f) => out.push(f.clone()),
                CoordImage::Circle(p, q) => {
                    out.push(p.clone());
                    out.push(q.clone());
                }
            }
        }
        out
    }

    /// Substitution `f -> f o self`.
    pub fn pullback(&self, f: &ChartFunction) -> Result<ChartFunction> {
        self.target.ensure_same(f.chart())?;
        Ok(self.pullback_unchecked(f))
    }

    pub(crate) fn pullback_unchecked(&self, f: &ChartFunction) -> ChartFunction {
        let gens = self.generator_images();
        let mut powers: Vec<Vec<ChartFunction>> = gens
            .iter()
            .map(|g| vec![ChartFunction::one(&self.source), g.clone()])
            .collect();
        let mut out = ChartFunction::zero(&self.source);
        for (m, c) in f.terms() {
            let mut term = ChartFunction::constant(&self.source, c.clone());
            for (g, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[g].len() <= e as usize {
                    let next = &powers[g][powers[g].len() - 1] * &gens[g];
                    powers[g].push(next);
                }
                term = &term * &powers[g][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// `other o self` (first `self`, then `other`).
    pub fn then(&self, other: &SmoothMap) -> Result<SmoothMap> {
        self.target.ensure_same(&other.source)?;
        let images = other
            .images
            .iter()
            .map(|img| match img {
                CoordImage::Affine(f) => CoordImage::Affine(self.pullback_unchecked(f)),
                CoordImage::Circle(p, q) => {
                    CoordImage::Circle(self.pullback_unchecked(p), self.pullback_unchecked(q))
                }
            })
            .collect();
        Ok(SmoothMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// First generator where the two maps differ, with the difference of images.
    pub fn first_difference(&self, other: &SmoothMap) -> Option<(String, ChartFunction)> {
        if !self.source.same_as(&other.source) || !self.target.same_as(&other.target) {
            return Some((
                "<charts>".into(),
                ChartFunction::one(&self.source),
            ));
        }
        let a = self.generator_images();
        let b = other.generator_images();
        for (g, (x, y)) in a.iter().zip(&b).enumerate() {
            let d = x - y;
            if !d.is_zero() {
                return Some((self.target.gen_names()[g].clone(), d));
            }
        }
        None
    }

    /// Checks that `inverse` is a two-sided inverse on generators.
    pub fn check_inverse(&self, inverse: &SmoothMap) -> Result<()> {
        let fwd = self.then(inverse)?;
        if let Some((g, d)) = fwd.first_difference(&SmoothMap::identity(&self.source)) {
            return Err(Error::InverseCheck(format!(
                "inverse o map differs from identity on `{g}` by {d}"
            )));
        }
        let back = inverse.then(self)?;
        if let Some((g, d)) = back.first_difference(&SmoothMap::identity(&self.target)) {
            return Err(Error::InverseCheck(format!(
                "map o inverse differs from identity on `{g}` by {d}"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.source.describe(), self.target.describe())?;
        for (k, (img, c)) in self.images.iter().zip(self.target.coords()).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            match img {
                CoordImage::Affine(x) => write!(f, "{} = {}", c.name, x)?,
                CoordImage::Circle(p, q) => write!(f, "{} = ({}, {})", c.name, p, q)?,
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_source_pullback() {
        let m = Chart::new("M", &["z"], &[]).unwrap();
        let g = Chart::new("G", &["x", "y"], &[]).unwrap();
        let s = SmoothMap::new(&g, &m, vec![CoordImage::Affine(g.var("y"))]).unwrap();
        assert_eq!(s.pullback(&m.var("z").pow(2)).unwrap(), g.var("y").pow(2));
        assert!(s.pullback(&g.var("x")).is_err());
    }

    #[test]
    fn angle_addition() {
        let g = Chart::new("G", &[], &["t"]).unwrap();
        let g2 = Chart::new("G2", &[], &["t1", "t2"]).unwrap();
        let (c1, s1, c2, s2) = (g2.cos("t1"), g2.sin("t1"), g2.cos("t2"), g2.sin("t2"));
        let m = SmoothMap::new(
            &g2,
            &g,
            vec![CoordImage::Circle(
                &(&c1 * &c2) - &(&s1 * &s2),
                &(&s1 * &c2) + &(&c1 * &s2),
            )],
        )
        .unwrap();
        assert_eq!(m.pullback(&g.cos("t")).unwrap(), &(&c1 * &c2) - &(&s1 * &s2));
    }

    #[test]
    fn circle_relation_enforced() {
        let g = Chart::new("G", &[], &["t"]).unwrap();
        let bad = SmoothMap::new(
            &g,
            &g,
            vec![CoordImage::Circle(g.cos("t"), g.cos("t"))],
        );
        assert!(matches!(bad, Err(Error::MapInvariant(_))));
    }
}
