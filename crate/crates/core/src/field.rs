//! Vector fields as derivations of a chart's function ring.

use std::fmt;

use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::function::ChartFunction;
use crate::map::SmoothMap;
use crate::scalar::Scalar;

/// `sum_k coeffs[k] * D_k`, where `D_k` is `d/dx` for an affine coordinate and
/// the angular derivation for a circular one.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    coeffs: Vec<ChartFunction>,
}

impl VectorField {
    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            coeffs: vec![ChartFunction::zero(chart); chart.dim()],
        }
    }

    pub fn new(chart: &Chart, coeffs: Vec<ChartFunction>) -> Result<Self> {
        if coeffs.len() != chart.dim() {
            return Err(Error::ChartMismatch {
                expected: chart.describe(),
                found: format!("{} coefficients", coeffs.len()),
            });
        }
        for c in &coeffs {
            chart.ensure_same(c.chart())?;
        }
        Ok(VectorField {
            chart: chart.clone(),
            coeffs,
        })
    }

    /// The coordinate derivation along `name`.
    pub fn coordinate(chart: &Chart, name: &str) -> Self {
        let k = chart
            .coord_index(name)
            .unwrap_or_else(|| panic!("no coordinate `{name}`"));
        let mut v = VectorField::zero(chart);
        v.coeffs[k] = ChartFunction::one(chart);
        v
    }

    /// Builds a field from its action on every generator. Circular coefficients
    /// are read off as `cos * X(sin) - sin * X(cos)`.
    pub fn from_generator_action(chart: &Chart, images: &[ChartFunction]) -> Self {
        assert_eq!(images.len(), chart.n_gens());
        let coeffs = chart
            .coords()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let g = chart.first_gen(k);
                match c.kind {
                    CoordKind::Affine => images[g].clone(),
                    CoordKind::Circle => {
                        &(&chart.gen(g) * &images[g + 1]) - &(&chart.gen(g + 1) * &images[g])
                    }
                }
            })
            .collect();
        VectorField {
            chart: chart.clone(),
            coeffs,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coeffs(&self) -> &[ChartFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> &ChartFunction {
        &self.coeffs[self.chart.coord_index(name).expect("coordinate")]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Lie derivative `L_X f`.
    pub fn apply(&self, f: &ChartFunction) -> Result<ChartFunction> {
        self.chart.ensure_same(f.chart())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &ChartFunction) -> ChartFunction {
        let mut out = ChartFunction::zero(&self.chart);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derive_coord(k);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// Action on every generator of the chart.
    pub fn generator_action(&self) -> Vec<ChartFunction> {
        self.chart
            .generators()
            .iter()
            .map(|g| self.apply_unchecked(g))
            .collect()
    }

    /// Commutator `[X, Y]`. Coordinate derivations commute, so the k-th
    /// coefficient is `X(Y_k) - Y(X_k)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(&other.chart)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(xk, yk)| &self.apply_unchecked(yk) - &other.apply_unchecked(xk))
            .collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, f: &ChartFunction) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale_scalar(&self, k: &Scalar) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        assert!(self.chart.same_as(&other.chart));
        VectorField {
            chart: self.chart.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        assert!(self.chart.same_as(&other.chart));
        VectorField {
            chart: self.chart.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `phi_* X` for a diffeomorphism with supplied inverse:
    /// `(phi_* X)(f) = (phi^-1)^* (X(phi^* f))`.
    pub fn pushforward(&self, diffeo: &SmoothMap, inverse: &SmoothMap) -> Result<VectorField> {
        self.chart.ensure_same(diffeo.source())?;
        diffeo.check_inverse(inverse)?;
        Ok(self.pushforward_unchecked(diffeo, inverse))
    }

    pub(crate) fn pushforward_unchecked(
        &self,
        diffeo: &SmoothMap,
        inverse: &SmoothMap,
    ) -> VectorField {
        let target = diffeo.target();
        let images: Vec<ChartFunction> = diffeo
            .generator_images()
            .iter()
            .map(|g| inverse.pullback_unchecked(&self.apply_unchecked(g)))
            .collect();
        VectorField::from_generator_action(target, &images)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (c, coord) in self.coeffs.iter().zip(self.chart.coords()) {
            if c.is_zero() {
                continue;
            }
            let d = format!("d_{}", coord.name);
            if c == &ChartFunction::one(&self.chart) {
                parts.push(d);
            } else if c.n_terms() == 1 {
                parts.push(format!("{}*{}", c, d));
            } else {
                parts.push(format!("({})*{}", c, d));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::CoordImage;

    #[test]
    fn lie_derivative_examples() {
        let r = Chart::new("R", &["x"], &[]).unwrap();
        let x = r.var("x");
        let xdx = VectorField::coordinate(&r, "x").scale(&x);
        assert_eq!(xdx.apply(&x.pow(2)).unwrap(), x.pow(2).scale(&Scalar::int(2)));

        let s = Chart::new("S", &[], &["t"]).unwrap();
        let dt = VectorField::coordinate(&s, "t");
        assert_eq!(dt.apply(&s.cos("t")).unwrap(), -&s.sin("t"));
        let cs = &s.cos("t") * &s.sin("t");
        assert_eq!(
            dt.apply(&cs).unwrap(),
            &s.cos("t").pow(2) - &s.sin("t").pow(2)
        );
    }

    #[test]
    fn bracket_examples() {
        let r = Chart::new("R", &["x"], &[]).unwrap();
        let dx = VectorField::coordinate(&r, "x");
        let xdx = dx.scale(&r.var("x"));
        assert_eq!(dx.bracket(&xdx).unwrap(), dx);
        assert!(xdx.bracket(&xdx).unwrap().is_zero());
        let t2 = Chart::new("T", &[], &["a", "b"]).unwrap();
        let da = VectorField::coordinate(&t2, "a");
        let db = VectorField::coordinate(&t2, "b");
        assert!(da.bracket(&db).unwrap().is_zero());
    }

    #[test]
    fn generator_action_roundtrip_on_circle() {
        let s = Chart::new("S", &["x"], &["t"]).unwrap();
        let x = s.var("x");
        let v = VectorField::new(&s, vec![s.cos("t"), &x * &s.sin("t")]).unwrap();
        let back = VectorField::from_generator_action(&s, &v.generator_action());
        assert_eq!(back, v);
    }

    #[test]
    fn pushforward_examples() {
        let p = Chart::new("G", &["x", "y"], &[]).unwrap();
        let swap = SmoothMap::new(
            &p,
            &p,
            vec![CoordImage::Affine(p.var("y")), CoordImage::Affine(p.var("x"))],
        )
        .unwrap();
        let dx = VectorField::coordinate(&p, "x");
        assert_eq!(
            dx.pushforward(&swap, &swap).unwrap(),
            VectorField::coordinate(&p, "y")
        );
        let id = SmoothMap::identity(&p);
        assert_eq!(dx.pushforward(&id, &id).unwrap(), dx);

        let r = Chart::new("R", &["x"], &[]).unwrap();
        let flip = SmoothMap::new(&r, &r, vec![CoordImage::Affine(-&r.var("x"))]).unwrap();
        let xdx = VectorField::coordinate(&r, "x").scale(&r.var("x"));
        assert_eq!(xdx.pushforward(&flip, &flip).unwrap(), xdx);
    }

    #[test]
    fn pushforward_rejects_bad_inverse() {
        let r = Chart::new("R", &["x"], &[]).unwrap();
        let shift = SmoothMap::new(
            &r,
            &r,
            vec![CoordImage::Affine(&r.var("x") + &ChartFunction::one(&r))],
        )
        .unwrap();
        let dx = VectorField::coordinate(&r, "x");
        assert!(matches!(
            dx.pushforward(&shift, &shift),
            Err(Error::InverseCheck(_))
        ));
    }
}
