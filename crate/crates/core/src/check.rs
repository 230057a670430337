//! Pass/fail verdicts carrying a machine-readable certificate on failure.

use serde::Serialize;

use crate::function::ChartFunction;
use crate::map::SmoothMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            certificate: None,
        }
    }

    pub fn fail(certificate: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            certificate: Some(certificate.into()),
        }
    }

    pub fn from_bool(ok: bool, certificate: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::pass()
        } else {
            Verdict::fail(certificate())
        }
    }

    /// Passes iff `diff` is zero; otherwise the certificate is its normal form.
    pub fn zero(label: &str, diff: &ChartFunction) -> Self {
        if diff.is_zero() {
            Verdict::pass()
        } else {
            Verdict::fail(format!("{label}: {diff} != 0"))
        }
    }

    /// First failure among the zero-checks, in order.
    pub fn all_zero<'a>(items: impl IntoIterator<Item = (String, &'a ChartFunction)>) -> Self {
        for (label, d) in items {
            if !d.is_zero() {
                return Verdict::fail(format!("{label}: {d} != 0"));
            }
        }
        Verdict::pass()
    }

    pub fn maps_equal(lhs: &SmoothMap, rhs: &SmoothMap) -> Self {
        match lhs.first_difference(rhs) {
            None => Verdict::pass(),
            Some((g, d)) => Verdict::fail(format!("generator `{g}`: difference {d}")),
        }
    }

    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        if self.holds {
            other()
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Check {
            name: name.into(),
            verdict,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push(Check::new(name, verdict));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.verdict.holds)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
