use crate::chart::Chart;
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::groupoid::Groupoid;

use super::Section;

/// A Lie algebroid over a chart, given by a global frame, the anchor of
/// each frame element and the bracket structure functions.
#[derive(Clone, Debug)]
pub struct AlgebroidPresentation {
    name: String,
    params: Vec<String>,
    base: Chart,
    frame: Vec<String>,
    anchor: Vec<VectorField>,
    /// `structure[i][j] = [e_i, e_j]`.
    structure: Vec<Vec<Section>>,
}

impl AlgebroidPresentation {
    pub fn new(
        name: &str,
        params: Vec<String>,
        base: &Chart,
        frame: Vec<String>,
        anchor: Vec<VectorField>,
        structure: Vec<Vec<Section>>,
    ) -> Result<Self> {
        let n = frame.len();
        if anchor.len() != n {
            return Err(Error::Missing(format!("anchor for {} frame elements", n)));
        }
        for a in &anchor {
            base.ensure_same(a.chart())?;
        }
        if structure.len() != n || structure.iter().any(|row| row.len() != n) {
            return Err(Error::Config("structure functions must form an n x n table".into()));
        }
        for s in structure.iter().flatten() {
            base.ensure_same(s.base())?;
            if s.rank() != n {
                return Err(Error::Config("structure function has the wrong rank".into()));
            }
        }
        Ok(AlgebroidPresentation {
            name: name.to_string(),
            params,
            base: base.clone(),
            frame,
            anchor,
            structure,
        })
    }

    /// The Lie algebroid `(ker ds)|_M` of a source-adapted groupoid: frame =
    /// fiber directions along the units, anchor = `dt`, bracket from
    /// `[e_i^r, e_j^r]|_M`.
    pub fn of_groupoid(g: &Groupoid) -> Result<Self> {
        match g {
            Groupoid::Chart(p) => {
                let n = p.rank();
                let er = p.frame_right();
                let structure = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| p.restrict(&er[i].bracket(&er[j]).expect("arrow chart")))
                            .collect()
                    })
                    .collect();
                AlgebroidPresentation::new(
                    p.name(),
                    p.params().to_vec(),
                    p.base(),
                    p.frame_names(),
                    p.anchor_frame().to_vec(),
                    structure,
                )
            }
            Groupoid::Action(a) => {
                AlgebroidPresentation::new(a.name(), Vec::new(), a.base(), Vec::new(), Vec::new(), Vec::new())
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn frame(&self) -> &[String] {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn anchor_frame(&self) -> &[VectorField] {
        &self.anchor
    }

    pub fn structure(&self, i: usize, j: usize) -> &Section {
        &self.structure[i][j]
    }

    pub fn frame_section(&self, k: usize) -> Section {
        Section::frame(&self.base, self.rank(), k)
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(&self.base, self.rank())
    }

    pub fn section(&self, coeffs: Vec<ChartFunction>) -> Result<Section> {
        if coeffs.len() != self.rank() {
            return Err(Error::ChartMismatch {
                expected: format!("rank {}", self.rank()),
                found: format!("{} coefficients", coeffs.len()),
            });
        }
        Section::new(&self.base, coeffs)
    }

    pub fn anchor(&self, alpha: &Section) -> VectorField {
        let mut out = VectorField::zero(&self.base);
        for (a, e) in alpha.coeffs().iter().zip(&self.anchor) {
            if !a.is_zero() {
                out = out.add(&e.scale(a));
            }
        }
        out
    }

    /// `[alpha, beta] = sum a_i b_j c_ij + a(alpha)(b_j) e_j - a(beta)(a_i) e_i`.
    pub fn bracket(&self, alpha: &Section, beta: &Section) -> Section {
        let n = self.rank();
        let mut out = self.zero_section();
        for i in 0..n {
            let ai = &alpha.coeffs()[i];
            if ai.is_zero() {
                continue;
            }
            for j in 0..n {
                let bj = &beta.coeffs()[j];
                if bj.is_zero() {
                    continue;
                }
                out = out.add(&self.structure[i][j].scale(&(ai * bj)));
            }
        }
        let (xa, xb) = (self.anchor(alpha), self.anchor(beta));
        let mut extra = Vec::with_capacity(n);
        for k in 0..n {
            extra.push(
                &xa.apply_unchecked(&beta.coeffs()[k]) - &xb.apply_unchecked(&alpha.coeffs()[k]),
            );
        }
        out.add(&Section::new(&self.base, extra).expect("base chart"))
    }

    /// Antisymmetry, Jacobi and anchor compatibility on the frame.
    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut r = ValidationReport::default();
        let first_nonzero = |s: &Section| {
            s.coeffs()
                .iter()
                .zip(&self.frame)
                .find(|(c, _)| !c.is_zero())
                .map(|(c, e)| format!("component {e}: {c}"))
        };
        let mut anti = Verdict::pass();
        'a: for i in 0..n {
            for j in 0..n {
                let d = self.structure[i][j].add(&self.structure[j][i]);
                if let Some(c) = first_nonzero(&d) {
                    anti = Verdict::fail(format!("[{0},{1}] + [{1},{0}]: {c}", self.frame[i], self.frame[j]));
                    break 'a;
                }
            }
        }
        r.push("bracket antisymmetry", anti);

        let mut jac = Verdict::pass();
        'j: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.frame_section(i), self.frame_section(j), self.frame_section(k));
                    let sum = self
                        .bracket(&self.bracket(&a, &b), &c)
                        .add(&self.bracket(&self.bracket(&b, &c), &a))
                        .add(&self.bracket(&self.bracket(&c, &a), &b));
                    if let Some(cert) = first_nonzero(&sum) {
                        jac = Verdict::fail(format!(
                            "Jacobi on ({},{},{}): {cert}",
                            self.frame[i], self.frame[j], self.frame[k]
                        ));
                        break 'j;
                    }
                }
            }
        }
        r.push("Jacobi identity", jac);

        let mut anc = Verdict::pass();
        'c: for i in 0..n {
            for j in 0..n {
                let lhs = self.anchor(&self.structure[i][j]);
                let rhs = self.anchor[i].bracket(&self.anchor[j]).expect("base chart");
                let d = lhs.sub(&rhs);
                if let Some((c, coord)) = d.coeffs().iter().zip(self.base.coords()).find(|(c, _)| !c.is_zero()) {
                    anc = Verdict::fail(format!(
                        "a([{},{}]) - [a({}),a({})] on d_{}: {c}",
                        self.frame[i], self.frame[j], self.frame[i], self.frame[j], coord.name
                    ));
                    break 'c;
                }
            }
        }
        r.push("anchor preserves brackets", anc);
        r
    }
}
