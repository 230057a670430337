//! Coordinate charts: affine coordinates and circular coordinates.
//!
//! A circular coordinate `t` contributes the generator pair `cos_t`, `sin_t`
//! subject to `cos_t^2 + sin_t^2 = 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::ChartFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordKind {
    Affine,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coord {
    pub name: String,
    pub kind: CoordKind,
}

#[derive(Debug)]
struct ChartInner {
    label: String,
    coords: Vec<Coord>,
    first_gen: Vec<usize>,
    gen_names: Vec<String>,
    /// (cos, sin) generator indices per circular coordinate, in coordinate order.
    circle_pairs: Vec<(usize, usize)>,
}

/// Immutable chart; cloning shares the underlying data.
#[derive(Clone)]
pub struct Chart(Arc<ChartInner>);

impl Chart {
    pub fn new(label: &str, affine: &[&str], circle: &[&str]) -> Result<Chart> {
        let mut coords: Vec<Coord> = affine
            .iter()
            .map(|n| Coord {
                name: n.to_string(),
                kind: CoordKind::Affine,
            })
            .collect();
        coords.extend(circle.iter().map(|n| Coord {
            name: n.to_string(),
            kind: CoordKind::Circle,
        }));
        Chart::from_coords(label, coords)
    }

    pub fn from_coords(label: &str, coords: Vec<Coord>) -> Result<Chart> {
        let mut first_gen = Vec::with_capacity(coords.len());
        let mut gen_names = Vec::new();
        let mut circle_pairs = Vec::new();
        for (k, c) in coords.iter().enumerate() {
            if c.name.is_empty() || coords[..k].iter().any(|o| o.name == c.name) {
                return Err(Error::DuplicateCoordinate(c.name.clone()));
            }
            first_gen.push(gen_names.len());
            match c.kind {
                CoordKind::Affine => gen_names.push(c.name.clone()),
                CoordKind::Circle => {
                    circle_pairs.push((gen_names.len(), gen_names.len() + 1));
                    gen_names.push(format!("cos_{}", c.name));
                    gen_names.push(format!("sin_{}", c.name));
                }
            }
        }
        let all: Vec<&String> = gen_names.iter().collect();
        for (k, g) in all.iter().enumerate() {
            if all[..k].contains(g) {
                return Err(Error::DuplicateCoordinate((*g).clone()));
            }
        }
        Ok(Chart(Arc::new(ChartInner {
            label: label.to_string(),
            coords,
            first_gen,
            gen_names,
            circle_pairs,
        })))
    }

    /// Chart of a single point (no coordinates).
    pub fn point(label: &str) -> Chart {
        Chart::new(label, &[], &[]).expect("point chart")
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0.coords
    }

    pub fn dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn n_gens(&self) -> usize {
        self.0.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.0.gen_names
    }

    pub fn first_gen(&self, coord: usize) -> usize {
        self.0.first_gen[coord]
    }

    pub(crate) fn circle_pairs(&self) -> &[(usize, usize)] {
        &self.0.circle_pairs
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.0.coords.iter().position(|c| c.name == name)
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.0.gen_names.iter().position(|g| g == name)
    }

    pub fn same_as(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.coords == other.0.coords
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::ChartMismatch {
                expected: self.describe(),
                found: other.describe(),
            })
        }
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self
            .0
            .coords
            .iter()
            .map(|c| match c.kind {
                CoordKind::Affine => c.name.clone(),
                CoordKind::Circle => format!("{}:S1", c.name),
            })
            .collect();
        format!("{}({})", self.0.label, names.join(","))
    }

    /// Generator function by generator index.
    pub fn gen(&self, idx: usize) -> ChartFunction {
        ChartFunction::generator(self, idx)
    }

    /// The affine coordinate function `name`.
    pub fn var(&self, name: &str) -> ChartFunction {
        let k = self
            .coord_index(name)
            .unwrap_or_else(|| panic!("no coordinate `{name}` in {}", self.describe()));
        assert_eq!(self.0.coords[k].kind, CoordKind::Affine);
        self.gen(self.0.first_gen[k])
    }

    pub fn cos(&self, name: &str) -> ChartFunction {
        let k = self
            .coord_index(name)
            .unwrap_or_else(|| panic!("no coordinate `{name}` in {}", self.describe()));
        assert_eq!(self.0.coords[k].kind, CoordKind::Circle);
        self.gen(self.0.first_gen[k])
    }

    pub fn sin(&self, name: &str) -> ChartFunction {
        let k = self
            .coord_index(name)
            .unwrap_or_else(|| panic!("no coordinate `{name}` in {}", self.describe()));
        assert_eq!(self.0.coords[k].kind, CoordKind::Circle);
        self.gen(self.0.first_gen[k] + 1)
    }

    pub fn generators(&self) -> Vec<ChartFunction> {
        (0..self.n_gens()).map(|g| self.gen(g)).collect()
    }

    pub fn relabeled(&self, label: &str) -> Chart {
        Chart::from_coords(label, self.0.coords.clone()).expect("valid coordinates")
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_layout() {
        let c = Chart::new("T", &["x"], &["a", "b"]).unwrap();
        assert_eq!(c.gen_names(), &["x", "cos_a", "sin_a", "cos_b", "sin_b"]);
        assert_eq!(c.circle_pairs(), &[(1, 2), (3, 4)]);
        assert_eq!(c.first_gen(2), 3);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(
            Chart::new("M", &["x", "x"], &[]),
            Err(Error::DuplicateCoordinate(_))
        ));
        assert!(Chart::new("M", &["cos_t"], &["t"]).is_err());
    }
}
