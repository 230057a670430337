//! Normal-form elements of a chart's function ring.
//!
//! Every stored monomial has sine exponent 0 or 1 per circular coordinate;
//! `sin^2` is rewritten to `1 - cos^2` on insertion, so equality of normal
//! forms is equality of functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector indexed by generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub(crate) Vec<u16>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn render(&self, chart: &Chart) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (g, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(chart.gen_names()[g].clone()),
                _ => parts.push(format!("{}^{}", chart.gen_names()[g], e)),
            }
        }
        parts.join("*")
    }
}

#[derive(Clone)]
pub struct ChartFunction {
    chart: Chart,
    terms: BTreeMap<Mono, Scalar>,
}

fn insert_reduced(chart: &Chart, terms: &mut BTreeMap<Mono, Scalar>, mono: Mono, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    if let Some(&(c, s)) = chart
        .circle_pairs()
        .iter()
        .find(|&&(_, s)| mono.0[s] >= 2)
    {
        // s^2 -> 1 - c^2
        let mut low = mono.clone();
        low.0[s] -= 2;
        let mut high = low.clone();
        high.0[c] += 2;
        insert_reduced(chart, terms, low, coeff.clone());
        insert_reduced(chart, terms, high, -coeff);
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get() + &coeff;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl ChartFunction {
    pub fn zero(chart: &Chart) -> Self {
        ChartFunction {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Scalar) -> Self {
        let mut f = ChartFunction::zero(chart);
        f.add_term(Mono::one(chart.n_gens()), c);
        f
    }

    pub fn int(chart: &Chart, n: i64) -> Self {
        ChartFunction::constant(chart, Scalar::int(n))
    }

    pub fn one(chart: &Chart) -> Self {
        ChartFunction::int(chart, 1)
    }

    pub(crate) fn generator(chart: &Chart, idx: usize) -> Self {
        let mut m = Mono::one(chart.n_gens());
        m.0[idx] = 1;
        ChartFunction::monomial(chart, m, Scalar::one())
    }

    /// `coeff * mono`, reduced to normal form.
    pub fn monomial(chart: &Chart, mono: Mono, coeff: Scalar) -> Self {
        assert_eq!(mono.0.len(), chart.n_gens());
        let mut f = ChartFunction::zero(chart);
        f.add_term(mono, coeff);
        f
    }

    /// Normalizes an arbitrary formal sum over the chart's generators.
    pub fn normalize(chart: &Chart, raw: &RawPoly) -> Result<Self> {
        let mut f = ChartFunction::zero(chart);
        for (factors, coeff) in &raw.terms {
            let mut m = Mono::one(chart.n_gens());
            for (sym, e) in factors {
                let g = chart
                    .gen_index(sym)
                    .ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
                m.0[g] += *e as u16;
            }
            f.add_term(m, coeff.clone());
        }
        Ok(f)
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Scalar) {
        insert_reduced(&self.chart, &mut self.terms, mono, coeff);
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Mono) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Mono::one(self.chart.n_gens()))
    }

    /// Total degree; cosine and sine generators each count 1. Zero has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return ChartFunction::zero(&self.chart);
        }
        ChartFunction {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = ChartFunction::one(&self.chart);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Re-homes the function on a structurally identical chart.
    pub fn on_chart(&self, chart: &Chart) -> Result<Self> {
        self.chart.ensure_same(chart)?;
        Ok(ChartFunction {
            chart: chart.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Derivative along coordinate `coord`: `d/dx` for affine coordinates,
    /// the angular derivation (`cos -> -sin`, `sin -> cos`) for circular ones.
    pub fn derive_coord(&self, coord: usize) -> Self {
        let g = self.chart.first_gen(coord);
        let mut out = ChartFunction::zero(&self.chart);
        match self.chart.coords()[coord].kind {
            CoordKind::Affine => {
                for (m, c) in &self.terms {
                    let e = m.0[g];
                    if e == 0 {
                        continue;
                    }
                    let mut d = m.clone();
                    d.0[g] -= 1;
                    out.add_term(d, c * &Scalar::int(e as i64));
                }
            }
            CoordKind::Circle => {
                let (cg, sg) = (g, g + 1);
                for (m, c) in &self.terms {
                    let (a, b) = (m.0[cg], m.0[sg]);
                    if a > 0 {
                        // a c^(a-1) (-s) s^b
                        let mut d = m.clone();
                        d.0[cg] -= 1;
                        d.0[sg] += 1;
                        out.add_term(d, -(c * &Scalar::int(a as i64)));
                    }
                    if b > 0 {
                        let mut d = m.clone();
                        d.0[sg] -= 1;
                        d.0[cg] += 1;
                        out.add_term(d, c * &Scalar::int(b as i64));
                    }
                }
            }
        }
        out
    }

    /// Infix rendering, highest degree first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Mono, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.looks_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = abs.to_string();
            let cs = if cs.contains(' ') && !cs.starts_with('(') {
                format!("({cs})")
            } else {
                cs
            };
            if m.is_one() {
                out.push_str(&cs);
            } else if abs.is_one() {
                out.push_str(&m.render(&self.chart));
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&m.render(&self.chart));
            }
        }
        out
    }
}

impl PartialEq for ChartFunction {
    fn eq(&self, other: &Self) -> bool {
        self.chart.same_as(&other.chart) && self.terms == other.terms
    }
}

impl Eq for ChartFunction {}

impl fmt::Debug for ChartFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for ChartFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn assert_same(a: &Chart, b: &Chart) {
    assert!(
        a.same_as(b),
        "chart mismatch in ring operation: {} vs {}",
        a.describe(),
        b.describe()
    );
}

impl<'a> Add<&'a ChartFunction> for &'a ChartFunction {
    type Output = ChartFunction;
    fn add(self, rhs: &ChartFunction) -> ChartFunction {
        assert_same(&self.chart, &rhs.chart);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            insert_reduced(&self.chart, &mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ChartFunction> for &'a ChartFunction {
    type Output = ChartFunction;
    fn sub(self, rhs: &ChartFunction) -> ChartFunction {
        assert_same(&self.chart, &rhs.chart);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            insert_reduced(&self.chart, &mut out.terms, m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a ChartFunction> for &'a ChartFunction {
    type Output = ChartFunction;
    fn mul(self, rhs: &ChartFunction) -> ChartFunction {
        assert_same(&self.chart, &rhs.chart);
        let mut out = ChartFunction::zero(&self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ChartFunction {
    type Output = ChartFunction;
    fn neg(self) -> ChartFunction {
        ChartFunction {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<ChartFunction> for ChartFunction {
            type Output = ChartFunction;
            fn $f(self, rhs: ChartFunction) -> ChartFunction {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ChartFunction> for ChartFunction {
            type Output = ChartFunction;
            fn $f(self, rhs: &ChartFunction) -> ChartFunction {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for ChartFunction {
    type Output = ChartFunction;
    fn neg(self) -> ChartFunction {
        -&self
    }
}

/// A formal sum of generator power products with exact coefficients, not yet
/// reduced modulo the circle relations.
#[derive(Clone, Debug, Default)]
pub struct RawPoly {
    pub terms: Vec<(Vec<(String, u32)>, Scalar)>,
}

impl RawPoly {
    pub fn term(mut self, coeff: impl Into<Scalar>, factors: &[(&str, u32)]) -> Self {
        self.terms.push((
            factors.iter().map(|(s, e)| (s.to_string(), *e)).collect(),
            coeff.into(),
        ));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Chart {
        Chart::new("S", &[], &["t"]).unwrap()
    }

    #[test]
    fn sine_square_rewrites() {
        let c = circle();
        let raw = RawPoly::default().term(1, &[("sin_t", 2)]);
        let f = ChartFunction::normalize(&c, &raw).unwrap();
        assert_eq!(f, &ChartFunction::one(&c) - &c.cos("t").pow(2));
    }

    #[test]
    fn sine_cube_rewrites_to_fixpoint() {
        let c = circle();
        let f = ChartFunction::normalize(&c, &RawPoly::default().term(1, &[("sin_t", 3)])).unwrap();
        let expected = &c.sin("t") - &(&c.cos("t").pow(2) * &c.sin("t"));
        assert_eq!(f, expected);
        assert_eq!(f.render(), "-cos_t^2*sin_t + sin_t");
    }

    #[test]
    fn zero_coefficients_pruned() {
        let c = Chart::new("A", &["x", "y"], &[]).unwrap();
        let raw = RawPoly::default().term(1, &[("x", 1)]).term(0, &[("y", 1)]);
        let f = ChartFunction::normalize(&c, &raw).unwrap();
        assert_eq!(f, c.var("x"));
        assert_eq!(f.n_terms(), 1);
    }

    #[test]
    fn unknown_symbol_rejected() {
        let c = Chart::new("A", &["x"], &[]).unwrap();
        let raw = RawPoly::default().term(1, &[("q", 1)]);
        assert_eq!(
            ChartFunction::normalize(&c, &raw),
            Err(Error::UnknownSymbol("q".into()))
        );
    }

    #[test]
    fn angular_derivative() {
        let c = circle();
        let (co, si) = (c.cos("t"), c.sin("t"));
        assert_eq!(co.derive_coord(0), -&si);
        // d(cs) = c^2 - s^2
        let d = (&co * &si).derive_coord(0);
        assert_eq!(d, &(&co * &co) - &(&si * &si));
    }
}
