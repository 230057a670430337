//! JSON documents for algebroid presentations.
//!
//! ```json
//! { "name": "molino", "parameters": ["l0", "l1"],
//!   "base_chart": {"circle": ["t0", "t1"]},
//!   "frame": ["e"],
//!   "anchor": {"e": ["l0", "l1"]},
//!   "structure_functions": {} }
//! ```
//!
//! Anchor entries list one coefficient per base coordinate. A structure
//! function entry `"a,b": {"c": expr}` gives `[a, b]`; when only one of
//! `"a,b"` and `"b,a"` is listed, the other is its negative.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr;
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::groupoid::io::{chart_from_doc, chart_to_doc, ChartDoc};

use super::{AlgebroidPresentation, Section};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidDoc {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    pub base_chart: ChartDoc,
    pub frame: Vec<String>,
    pub anchor: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub structure_functions: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn load_algebroid(src: &str) -> Result<AlgebroidPresentation> {
    let doc: AlgebroidDoc = serde_json::from_str(src).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("line {}: {e}", e.line()),
    })?;
    algebroid_from_doc(&doc)
}

pub fn algebroid_from_doc(doc: &AlgebroidDoc) -> Result<AlgebroidPresentation> {
    let base = chart_from_doc("M", &doc.base_chart)?;
    let params = &doc.parameters;
    let n = doc.frame.len();
    let index = |name: &str| -> Result<usize> {
        doc.frame
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    };
    let mut anchor = Vec::with_capacity(n);
    for e in &doc.frame {
        let coeffs = doc
            .anchor
            .get(e)
            .ok_or_else(|| Error::Missing(format!("anchor of `{e}`")))?;
        if coeffs.len() != base.dim() {
            return Err(Error::Config(format!(
                "anchor of `{e}` lists {} coefficients for {}",
                coeffs.len(),
                base.describe()
            )));
        }
        let cs = coeffs
            .iter()
            .map(|c| expr::parse(c, &base, params))
            .collect::<Result<Vec<_>>>()?;
        anchor.push(VectorField::new(&base, cs)?);
    }
    for k in doc.anchor.keys() {
        index(k)?;
    }
    let mut table: Vec<Vec<Option<Section>>> = vec![vec![None; n]; n];
    for (pair, value) in &doc.structure_functions {
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("structure function key `{pair}` is not `a,b`")))?;
        let (i, j) = (index(a.trim())?, index(b.trim())?);
        let mut coeffs = vec![ChartFunction::zero(&base); n];
        for (e, v) in value {
            coeffs[index(e)?] = expr::parse(v, &base, params)?;
        }
        table[i][j] = Some(Section::new(&base, coeffs)?);
    }
    let structure = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (&table[i][j], &table[j][i]) {
                    (Some(s), _) => s.clone(),
                    (None, Some(s)) => s.neg(),
                    (None, None) => Section::zero(&base, n),
                })
                .collect()
        })
        .collect();
    AlgebroidPresentation::new(&doc.name, params.clone(), &base, doc.frame.clone(), anchor, structure)
}

pub fn algebroid_to_doc(a: &AlgebroidPresentation) -> AlgebroidDoc {
    let n = a.rank();
    let frame = a.frame().to_vec();
    let anchor = frame
        .iter()
        .zip(a.anchor_frame())
        .map(|(e, x)| (e.clone(), x.coeffs().iter().map(expr::print).collect()))
        .collect();
    let mut structure_functions = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = a.structure(i, j);
            if s.is_zero() {
                continue;
            }
            let entry = frame
                .iter()
                .zip(s.coeffs())
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), expr::print(c)))
                .collect();
            structure_functions.insert(format!("{},{}", frame[i], frame[j]), entry);
        }
    }
    AlgebroidDoc {
        name: a.name().to_string(),
        parameters: a.params().to_vec(),
        base_chart: chart_to_doc(a.base()),
        frame,
        anchor,
        structure_functions,
    }
}

pub fn algebroid_to_json(a: &AlgebroidPresentation) -> String {
    serde_json::to_string_pretty(&algebroid_to_doc(a)).expect("serializable document")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::examples::molino;

    #[test]
    fn molino_round_trip() {
        let m = molino();
        let json = algebroid_to_json(&m);
        let back = load_algebroid(&json).unwrap();
        assert_eq!(algebroid_to_json(&back), json);
        assert!(back.validate().all_pass());
    }

    #[test]
    fn broken_jacobi_is_reported() {
        // [a,b] = c, [a,c] = a: the Jacobiator on (a,b,c) is -c.
        let src = r#"{
            "name": "bad", "base_chart": {}, "frame": ["a", "b", "c"],
            "anchor": {"a": [], "b": [], "c": []},
            "structure_functions": {"a,b": {"c": "1"}, "a,c": {"a": "1"}}
        }"#;
        let a = load_algebroid(src).unwrap();
        let r = a.validate();
        assert!(r.get("bracket antisymmetry").unwrap().verdict.holds);
        assert!(!r.get("Jacobi identity").unwrap().verdict.holds);
    }
}
