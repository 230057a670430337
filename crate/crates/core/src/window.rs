//! Degree windows: finite monomial bases of the graded pieces, truncated at
//! a total degree bound, and the exact matrices of linear maps on them.
//!
//! Every object of a window is a tuple of chart functions ("slots"); a
//! vector is keyed by `(slot, monomial)`. Images are computed exactly and
//! never truncated, so kernels inside a window are exact. Quotients are
//! window-relative.

use serde::Serialize;

use crate::algebroid::{AlgebroidDerivation, AlgebroidPresentation, IMFunction, Section};
use crate::chart::Chart;
use crate::field::VectorField;
use crate::function::{ChartFunction, Mono};
use crate::groupoid::{ArrowField, ArrowFunction, Groupoid, MultVectorField};
use crate::linalg::{self, SVec, SparseMatrix};
use crate::par::Exec;
use crate::scalar::Scalar;

pub type Key = (u32, Mono);

/// Normal-form monomials of total degree `<= d`, by degree and then with
/// earlier generators first.
pub fn monomials(chart: &Chart, d: u32) -> Vec<Mono> {
    let n = chart.n_gens();
    let sines: Vec<usize> = chart.circle_pairs().iter().map(|&(_, s)| s).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, sines: &[usize], out: &mut Vec<Mono>) {
        if i == cur.len() {
            out.push(Mono(cur.clone()));
            return;
        }
        let cap = if sines.contains(&i) { left.min(1) } else { left };
        for e in 0..=cap {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, sines, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &sines, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out
}

#[derive(Clone, Debug)]
pub struct Slot {
    pub label: String,
    pub chart: Chart,
}

/// A truncated space: slots and the monomial basis items `(slot, mono)`.
#[derive(Clone, Debug)]
pub struct Space {
    pub name: String,
    pub degree: u32,
    pub slots: Vec<Slot>,
    pub items: Vec<Key>,
}

impl Space {
    pub fn new(name: &str, slots: Vec<Slot>, degree: u32) -> Space {
        let mut items = Vec::new();
        for (k, s) in slots.iter().enumerate() {
            for m in monomials(&s.chart, degree) {
                items.push((k as u32, m));
            }
        }
        Space {
            name: name.to_string(),
            degree,
            slots,
            items,
        }
    }

    pub fn dim(&self) -> usize {
        self.items.len()
    }

    pub fn zero_parts(&self) -> Vec<ChartFunction> {
        self.slots.iter().map(|s| ChartFunction::zero(&s.chart)).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<ChartFunction> {
        let mut parts = self.zero_parts();
        let (k, m) = &self.items[i];
        parts[*k as usize] = ChartFunction::monomial(&self.slots[*k as usize].chart, m.clone(), Scalar::one());
        parts
    }

    /// Key-space vector of a combination of basis items.
    pub fn keys_of(&self, combo: &SVec<usize>) -> SVec<Key> {
        combo.iter().map(|(i, c)| (self.items[*i].clone(), c.clone())).collect()
    }

    pub fn decode(&self, v: &SVec<Key>) -> Vec<ChartFunction> {
        let mut parts = self.zero_parts();
        for ((k, m), c) in v {
            parts[*k as usize].add_term(m.clone(), c.clone());
        }
        parts
    }

    pub fn item_label(&self, i: usize) -> String {
        key_label(&self.slots, &self.items[i])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.item_label(i)).collect()
    }

    pub fn key_label(&self, k: &Key) -> String {
        key_label(&self.slots, k)
    }

    /// Exact images of every basis item under `f`, assembled in parallel
    /// when `exec` allows.
    pub fn columns<F>(&self, exec: Exec, f: F) -> Vec<SVec<Key>>
    where
        F: Fn(Vec<ChartFunction>) -> Vec<ChartFunction> + Sync + Send,
    {
        exec.map_range(self.dim(), |i| encode(&f(self.unit(i))))
    }
}

fn key_label(slots: &[Slot], (k, m): &Key) -> String {
    let s = &slots[*k as usize];
    format!("{}:{}", s.label, m.render(&s.chart))
}

pub fn encode(parts: &[ChartFunction]) -> SVec<Key> {
    let mut v = SVec::new();
    for (k, f) in parts.iter().enumerate() {
        for (m, c) in f.terms() {
            v.insert((k as u32, m.clone()), c.clone());
        }
    }
    v
}

/// Residual labels turned into row slots for matrices.
pub fn residual_parts(r: Vec<(String, ChartFunction)>) -> (Vec<String>, Vec<ChartFunction>) {
    r.into_iter().unzip()
}

/// A linear map restricted to a window, with its kernel.
#[derive(Clone, Debug)]
pub struct WindowMap {
    pub domain: Space,
    pub row_labels: Vec<String>,
    pub columns: Vec<SVec<Key>>,
    pub kernel: Vec<SVec<Key>>,
}

impl WindowMap {
    /// `f` returns labelled residual functions; labels must not depend on
    /// the input.
    pub fn new<F>(domain: Space, exec: Exec, f: F) -> WindowMap
    where
        F: Fn(Vec<ChartFunction>) -> Vec<(String, ChartFunction)> + Sync + Send,
    {
        let row_labels = if domain.dim() > 0 {
            f(domain.zero_parts()).into_iter().map(|(l, _)| l).collect()
        } else {
            Vec::new()
        };
        let columns = domain.columns(exec, |p| f(p).into_iter().map(|(_, c)| c).collect());
        let kernel = linalg::kernel(&columns)
            .iter()
            .map(|c| linalg::normalize(&domain.keys_of(c)))
            .collect();
        WindowMap {
            domain,
            row_labels,
            columns,
            kernel,
        }
    }

    pub fn matrix(&self, name: &str) -> SparseMatrix {
        let labels = &self.row_labels;
        SparseMatrix::from_columns(name, &self.columns, self.domain.labels(), |(r, m)| {
            format!("{}:{:?}", labels.get(*r as usize).map(String::as_str).unwrap_or("?"), m.0)
        })
    }
}

// ---- typed slot layouts ----

pub fn function_space(name: &str, chart: &Chart, d: u32) -> Space {
    Space::new(
        name,
        vec![Slot {
            label: chart.label().to_string(),
            chart: chart.clone(),
        }],
        d,
    )
}

pub fn arrow_function_space(g: &Groupoid, d: u32) -> Space {
    let slots = g
        .arrow_charts()
        .into_iter()
        .zip(g.component_names())
        .map(|(chart, n)| Slot { label: n, chart })
        .collect();
    Space::new("arrow functions", slots, d)
}

pub fn arrow_function_of(parts: Vec<ChartFunction>) -> ArrowFunction {
    ArrowFunction(parts)
}

pub fn mult_field_space(g: &Groupoid, d: u32) -> Space {
    let mut slots = Vec::new();
    for (chart, n) in g.arrow_charts().into_iter().zip(g.component_names()) {
        for c in chart.coords() {
            slots.push(Slot {
                label: format!("{n}.d_{}", c.name),
                chart: chart.clone(),
            });
        }
    }
    for c in g.base().coords() {
        slots.push(Slot {
            label: format!("M.d_{}", c.name),
            chart: g.base().clone(),
        });
    }
    Space::new("multiplicative vector fields", slots, d)
}

pub fn field_parts(x: &MultVectorField) -> Vec<ChartFunction> {
    let mut parts: Vec<ChartFunction> = x.arrow.comps().iter().flat_map(|v| v.coeffs().to_vec()).collect();
    parts.extend(x.base.coeffs().iter().cloned());
    parts
}

pub fn field_of_parts(g: &Groupoid, parts: Vec<ChartFunction>) -> MultVectorField {
    let mut it = parts.into_iter();
    let mut comps = Vec::new();
    for chart in g.arrow_charts() {
        let cs: Vec<ChartFunction> = it.by_ref().take(chart.dim()).collect();
        comps.push(VectorField::new(&chart, cs).expect("slot layout"));
    }
    let base: Vec<ChartFunction> = it.collect();
    MultVectorField {
        arrow: ArrowField(comps),
        base: VectorField::new(g.base(), base).expect("slot layout"),
    }
}

pub fn section_space(base: &Chart, frame: &[String], d: u32) -> Space {
    let slots = frame
        .iter()
        .map(|e| Slot {
            label: e.clone(),
            chart: base.clone(),
        })
        .collect();
    Space::new("sections", slots, d)
}

pub fn section_of_parts(base: &Chart, parts: Vec<ChartFunction>) -> Section {
    Section::new(base, parts).expect("slot layout")
}

pub fn derivation_space(a: &AlgebroidPresentation, d: u32) -> Space {
    let mut slots: Vec<Slot> = a
        .base()
        .coords()
        .iter()
        .map(|c| Slot {
            label: format!("sigma.d_{}", c.name),
            chart: a.base().clone(),
        })
        .collect();
    for k in a.frame() {
        for l in a.frame() {
            slots.push(Slot {
                label: format!("D{k}.{l}"),
                chart: a.base().clone(),
            });
        }
    }
    Space::new("algebroid derivations", slots, d)
}

pub fn derivation_parts(d: &AlgebroidDerivation) -> Vec<ChartFunction> {
    let mut parts = d.symbol.coeffs().to_vec();
    for s in &d.action {
        parts.extend(s.coeffs().iter().cloned());
    }
    parts
}

pub fn derivation_of_parts(a: &AlgebroidPresentation, parts: Vec<ChartFunction>) -> AlgebroidDerivation {
    let dim = a.base().dim();
    let n = a.rank();
    let mut it = parts.into_iter();
    let symbol = VectorField::new(a.base(), it.by_ref().take(dim).collect()).expect("slot layout");
    let action = (0..n)
        .map(|_| Section::new(a.base(), it.by_ref().take(n).collect()).expect("slot layout"))
        .collect();
    AlgebroidDerivation { symbol, action }
}

pub fn im_space(a: &AlgebroidPresentation, d: u32) -> Space {
    let slots = a
        .frame()
        .iter()
        .map(|e| Slot {
            label: format!("w({e})"),
            chart: a.base().clone(),
        })
        .collect();
    Space::new("IM functions", slots, d)
}

pub fn im_of_parts(parts: Vec<ChartFunction>) -> IMFunction {
    IMFunction { values: parts }
}

/// Serializable summary of a window basis.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisReport {
    pub name: String,
    pub degree_bound: u32,
    /// Window-relative quotient (as opposed to an exact kernel).
    pub window_relative: bool,
    pub elements: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        let r = Chart::new("M", &["x"], &[]).unwrap();
        assert_eq!(monomials(&r, 4).len(), 5);
        let t = Chart::new("T", &[], &["t"]).unwrap();
        // 1, c, s, c^2, cs, ..., c^{d-1}s, c^d
        assert_eq!(monomials(&t, 3).len(), 7);
        let t2 = Chart::new("T2", &[], &["a", "b"]).unwrap();
        assert_eq!(monomials(&t2, 6).len(), 85);
        let m = monomials(&Chart::new("M", &["x", "y"], &[]).unwrap(), 1);
        assert_eq!(m, vec![Mono(vec![0, 0]), Mono(vec![1, 0]), Mono(vec![0, 1])]);
    }

    #[test]
    fn kernel_of_window_map() {
        let r = Chart::new("M", &["x"], &[]).unwrap();
        let sp = function_space("f", &r, 3);
        let wm = WindowMap::new(sp, Exec::Sequential, |p| vec![("d/dx".into(), p[0].derive_coord(0))]);
        assert_eq!(wm.kernel.len(), 1);
        assert_eq!(wm.domain.decode(&wm.kernel[0])[0], ChartFunction::one(&r));
    }
}
