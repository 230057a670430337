//! Run reports: per-example bases, matrices, verdicts and certificates,
//! rendered as JSON or plain text. Assembly order is fixed by the caller,
//! so identical inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::check::ValidationReport;
use crate::linalg::SparseMatrix;
use crate::window::BasisReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// A checked identity failed.
    Failure,
    /// A functional separating a target from an image.
    Obstruction,
    /// A nonzero class sent to zero.
    NonInjectivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub suite: String,
    pub check: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub suite: String,
    pub check: String,
    pub kind: CertificateKind,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub degree_bound: u32,
    pub bases: Vec<BasisReport>,
    pub matrices: Vec<SparseMatrix>,
    pub verdicts: Vec<VerdictEntry>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dimensions: BTreeMap<String, Vec<usize>>,
}

impl ExampleReport {
    pub fn new(example: &str, degree_bound: u32) -> Self {
        ExampleReport {
            example: example.to_string(),
            degree_bound,
            bases: Vec::new(),
            matrices: Vec::new(),
            verdicts: Vec::new(),
            certificates: Vec::new(),
            dimensions: BTreeMap::new(),
        }
    }

    /// Appends every check of `r` under `suite`; failures also leave a certificate.
    pub fn add_suite(&mut self, suite: &str, r: &ValidationReport) {
        for c in &r.checks {
            self.verdicts.push(VerdictEntry {
                suite: suite.to_string(),
                check: c.name.clone(),
                holds: c.verdict.holds,
            });
            if !c.verdict.holds {
                self.certificates.push(Certificate {
                    suite: suite.to_string(),
                    check: c.name.clone(),
                    kind: CertificateKind::Failure,
                    certificate: c.verdict.certificate.clone().unwrap_or_default(),
                });
            }
        }
    }

    pub fn add_basis(&mut self, name: &str, window_relative: bool, elements: Vec<String>) {
        self.bases.push(BasisReport {
            name: name.to_string(),
            degree_bound: self.degree_bound,
            window_relative,
            elements,
        });
    }

    pub fn certify(&mut self, suite: &str, check: &str, kind: CertificateKind, certificate: String) {
        self.certificates.push(Certificate {
            suite: suite.to_string(),
            check: check.to_string(),
            kind,
            certificate,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn basis(&self, name: &str) -> Option<&BasisReport> {
        self.bases.iter().find(|b| b.name == name)
    }

    pub fn suite(&self, suite: &str) -> impl Iterator<Item = &VerdictEntry> {
        let suite = suite.to_string();
        self.verdicts.iter().filter(move |v| v.suite == suite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub degree_bound: u32,
    pub examples: Vec<ExampleReport>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.examples.iter().all(ExampleReport::all_pass)
    }

    pub fn example(&self, name: &str) -> Option<&ExampleReport> {
        self.examples.iter().find(|e| e.example == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (seed {}, {} samples, degree <= {})",
            self.command, self.seed, self.samples, self.degree_bound
        );
        for e in &self.examples {
            let _ = writeln!(out, "\n== {} ==", e.example);
            for b in &e.bases {
                let flag = if b.window_relative { ", window-relative" } else { "" };
                let _ = writeln!(out, "  basis {} (dim {}{flag}): {{{}}}", b.name, b.elements.len(), b.elements.join(", "));
            }
            for (k, v) in &e.dimensions {
                let _ = writeln!(out, "  dimensions {k}: {v:?}");
            }
            for m in &e.matrices {
                let _ = writeln!(out, "  matrix {}: {}x{}, {} nonzero", m.name, m.rows.len(), m.cols.len(), m.entries.len());
            }
            for v in &e.verdicts {
                let tag = if v.holds { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  [{tag}] {}: {}", v.suite, v.check);
            }
            for c in &e.certificates {
                let kind = match c.kind {
                    CertificateKind::Failure => "failure",
                    CertificateKind::Obstruction => "obstruction",
                    CertificateKind::NonInjectivity => "non-injectivity",
                };
                let _ = writeln!(out, "  certificate ({kind}) {} / {}: {}", c.suite, c.check, c.certificate);
            }
        }
        let total = self.examples.iter().map(|e| e.verdicts.len()).sum::<usize>();
        let failed = self
            .examples
            .iter()
            .flat_map(|e| &e.verdicts)
            .filter(|v| !v.holds)
            .count();
        let _ = writeln!(out, "\n{} checks, {} failed", total, failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Verdict;

    #[test]
    fn failures_leave_certificates() {
        let mut r = ValidationReport::default();
        r.push("a", Verdict::pass());
        r.push("b", Verdict::fail("x != 0"));
        let mut e = ExampleReport::new("ex", 2);
        e.add_suite("s", &r);
        assert!(!e.all_pass());
        assert_eq!(e.certificates.len(), 1);
        assert_eq!(e.certificates[0].check, "b");
        let rep = Report {
            command: "validate".into(),
            seed: 1,
            samples: 1,
            degree_bound: 2,
            examples: vec![e],
        };
        assert!(rep.to_text().contains("[FAIL] s: b"));
        assert!(rep.to_json().contains("\"kind\": \"failure\""));
    }
}
