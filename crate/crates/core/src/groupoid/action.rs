//! Action groupoids `Gamma x M => M` of finite groups acting by diffeomorphisms.
//!
//! Arrows are pairs `(g, x)` with `s = x` and `t = phi_g(x)`; composition is
//! `(g, phi_h x)(h, x) = (gh, x)`. Data on arrows is stored per group element.

use crate::chart::Chart;
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::map::SmoothMap;

#[derive(Clone, Debug)]
pub struct DiscreteActionGroupoid {
    name: String,
    base: Chart,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    actions: Vec<SmoothMap>,
}

impl DiscreteActionGroupoid {
    /// `table[a][b]` is the index of `ab`; `actions[g]` is `phi_g: M -> M`.
    pub fn new(
        name: &str,
        base: &Chart,
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        actions: Vec<SmoothMap>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Config("group has no elements".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Config("multiplication table has the wrong shape".into()));
        }
        if actions.len() != n {
            return Err(Error::Missing(format!("{} action maps for {} elements", actions.len(), n)));
        }
        for a in &actions {
            base.ensure_same(a.source())?;
            base.ensure_same(a.target())?;
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Config("multiplication table has no identity".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::Config(format!("`{}` has no inverse", elements[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscreteActionGroupoid {
            name: name.to_string(),
            base: base.clone(),
            elements,
            table,
            identity,
            inverse,
            actions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn action(&self, g: usize) -> &SmoothMap {
        &self.actions[g]
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.order();
        let mut r = ValidationReport::default();
        let mut assoc = Verdict::pass();
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        assoc = Verdict::fail(format!(
                            "({}{}){} != {}({}{})",
                            self.elements[a], self.elements[b], self.elements[c],
                            self.elements[a], self.elements[b], self.elements[c]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        r.push("table associativity", assoc);
        r.push(
            "identity acts trivially",
            Verdict::maps_equal(&self.actions[self.identity], &SmoothMap::identity(&self.base)),
        );
        // phi_{gh} = phi_g o phi_h, i.e. first phi_h then phi_g.
        let mut hom = Verdict::pass();
        'hom: for g in 0..n {
            for h in 0..n {
                let lhs = self.actions[h].then(&self.actions[g]).expect("same chart");
                let v = Verdict::maps_equal(&lhs, &self.actions[self.mul(g, h)]);
                if !v.holds {
                    hom = Verdict::fail(format!(
                        "phi_{} o phi_{} != phi_{}: {}",
                        self.elements[g],
                        self.elements[h],
                        self.elements[self.mul(g, h)],
                        v.certificate.unwrap_or_default()
                    ));
                    break 'hom;
                }
            }
        }
        r.push("action respects multiplication", hom);
        let mut inv = Verdict::pass();
        for g in 0..n {
            if let Err(e) = self.actions[g].check_inverse(&self.actions[self.inverse[g]]) {
                inv = Verdict::fail(format!("phi_{}: {e}", self.elements[g]));
                break;
            }
        }
        r.push("action maps are diffeomorphisms", inv);
        r
    }
}
