//! JSON documents for groupoid presentations.
//!
//! ```json
//! { "name": "pair-R",
//!   "base_chart": {"affine": ["z"]},
//!   "arrow_chart": {"affine": ["x", "y"]},
//!   "g2_chart": {"affine": ["x", "y", "z"]},
//!   "g3_chart": {"affine": ["w", "x", "y", "z"]},
//!   "maps": {"s": ["y"], "t": ["x"], "u": ["z", "z"], "i": ["y", "x"],
//!            "m": ["x", "z"], "pr1": ["x", "y"], "pr2": ["y", "z"],
//!            "g3_p1": ["w", "x"], "g3_p2": ["x", "y"], "g3_p3": ["y", "z"]} }
//! ```
//!
//! Map entries follow the target chart's coordinate order; a circular target
//! coordinate takes a `[cos, sin]` pair. Action groupoids use
//! `"kind": "action"` with `group: {elements, table}` (table entries are
//! element names) and `actions: {element: [images]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chart::{Chart, CoordKind};
use crate::error::{Error, Result};
use crate::expr;
use crate::map::{CoordImage, SmoothMap};

use super::{DiscreteActionGroupoid, Groupoid, GroupoidPresentation, PresentationParts};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub affine: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub circle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageDoc {
    Affine(String),
    Circle([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    pub base_chart: ChartDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrow_chart: Option<ChartDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2_chart: Option<ChartDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g3_chart: Option<ChartDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Vec<ImageDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, Vec<ImageDoc>>,
}

pub(crate) fn chart_from_doc(label: &str, doc: &ChartDoc) -> Result<Chart> {
    let a: Vec<&str> = doc.affine.iter().map(String::as_str).collect();
    let c: Vec<&str> = doc.circle.iter().map(String::as_str).collect();
    Chart::new(label, &a, &c)
}

pub(crate) fn chart_to_doc(chart: &Chart) -> ChartDoc {
    let mut doc = ChartDoc::default();
    for c in chart.coords() {
        match c.kind {
            CoordKind::Affine => doc.affine.push(c.name.clone()),
            CoordKind::Circle => doc.circle.push(c.name.clone()),
        }
    }
    doc
}

pub(crate) fn map_from_doc(
    what: &str,
    src: &Chart,
    tgt: &Chart,
    imgs: &[ImageDoc],
    params: &[String],
) -> Result<SmoothMap> {
    if imgs.len() != tgt.dim() {
        return Err(Error::MapInvariant(format!(
            "map `{what}` lists {} images for target {}",
            imgs.len(),
            tgt.describe()
        )));
    }
    let images = imgs
        .iter()
        .zip(tgt.coords())
        .map(|(img, c)| match (img, c.kind) {
            (ImageDoc::Affine(e), CoordKind::Affine) => {
                Ok(CoordImage::Affine(expr::parse(e, src, params)?))
            }
            (ImageDoc::Circle([p, q]), CoordKind::Circle) => Ok(CoordImage::Circle(
                expr::parse(p, src, params)?,
                expr::parse(q, src, params)?,
            )),
            _ => Err(Error::MapInvariant(format!(
                "map `{what}`: image kind does not match coordinate `{}`",
                c.name
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    SmoothMap::new(src, tgt, images)
}

pub(crate) fn map_to_doc(map: &SmoothMap) -> Vec<ImageDoc> {
    map.images()
        .iter()
        .map(|img| match img {
            CoordImage::Affine(f) => ImageDoc::Affine(expr::print(f)),
            CoordImage::Circle(p, q) => ImageDoc::Circle([expr::print(p), expr::print(q)]),
        })
        .collect()
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        pos: e.column(),
        msg: format!("line {}: {e}", e.line()),
    }
}

pub fn parse_groupoid_doc(src: &str) -> Result<GroupoidDoc> {
    serde_json::from_str(src).map_err(json_error)
}

pub fn load_groupoid(src: &str) -> Result<Groupoid> {
    groupoid_from_doc(&parse_groupoid_doc(src)?)
}

pub fn groupoid_from_doc(doc: &GroupoidDoc) -> Result<Groupoid> {
    let params = &doc.parameters;
    let base = chart_from_doc("M", &doc.base_chart)?;
    match doc.kind.as_deref() {
        None | Some("chart") => {}
        Some("action") => return action_from_doc(doc, &base),
        Some(other) => return Err(Error::Config(format!("unknown groupoid kind `{other}`"))),
    }
    let arrow = chart_from_doc(
        "G",
        doc.arrow_chart
            .as_ref()
            .ok_or_else(|| Error::Missing("arrow_chart".into()))?,
    )?;
    let g2 = doc.g2_chart.as_ref().map(|c| chart_from_doc("G2", c)).transpose()?;
    let g3 = doc.g3_chart.as_ref().map(|c| chart_from_doc("G3", c)).transpose()?;
    let get = |k: &str| doc.maps.get(k);
    let required = |k: &str, src: &Chart, tgt: &Chart| -> Result<SmoothMap> {
        let imgs = get(k).ok_or_else(|| Error::Missing(format!("map `{k}`")))?;
        map_from_doc(k, src, tgt, imgs, params)
    };
    let optional = |k: &str, src: &Option<Chart>, tgt: &Chart| -> Result<Option<SmoothMap>> {
        match (get(k), src) {
            (Some(imgs), Some(src)) => Ok(Some(map_from_doc(k, src, tgt, imgs, params)?)),
            _ => Ok(None),
        }
    };
    let g3_proj = match (
        optional("g3_p1", &g3, &arrow)?,
        optional("g3_p2", &g3, &arrow)?,
        optional("g3_p3", &g3, &arrow)?,
    ) {
        (Some(a), Some(b), Some(c)) => Some([a, b, c]),
        _ => None,
    };
    let parts = PresentationParts {
        name: doc.name.clone(),
        params: params.clone(),
        s: required("s", &arrow, &base)?,
        t: required("t", &arrow, &base)?,
        u: required("u", &base, &arrow)?,
        i: required("i", &arrow, &arrow)?,
        m: optional("m", &g2, &arrow)?,
        pr1: optional("pr1", &g2, &arrow)?,
        pr2: optional("pr2", &g2, &arrow)?,
        g3_proj,
        g2,
        g3,
        base,
        arrow,
    };
    Ok(Groupoid::Chart(GroupoidPresentation::assemble(parts)?))
}

fn action_from_doc(doc: &GroupoidDoc, base: &Chart) -> Result<Groupoid> {
    let group = doc
        .group
        .as_ref()
        .ok_or_else(|| Error::Missing("group".into()))?;
    let index = |name: &str| -> Result<usize> {
        group
            .elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    };
    let table = group
        .table
        .iter()
        .map(|row| row.iter().map(|e| index(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let actions = group
        .elements
        .iter()
        .map(|e| {
            let imgs = doc
                .actions
                .get(e)
                .ok_or_else(|| Error::Missing(format!("action of `{e}`")))?;
            map_from_doc(e, base, base, imgs, &doc.parameters)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Groupoid::Action(DiscreteActionGroupoid::new(
        &doc.name,
        base,
        group.elements.clone(),
        table,
        actions,
    )?))
}

pub fn groupoid_to_doc(g: &Groupoid) -> GroupoidDoc {
    match g {
        Groupoid::Chart(p) => {
            let mut maps = BTreeMap::new();
            maps.insert("s".into(), map_to_doc(p.s()));
            maps.insert("t".into(), map_to_doc(p.t()));
            maps.insert("u".into(), map_to_doc(p.u()));
            maps.insert("i".into(), map_to_doc(p.i()));
            maps.insert("m".into(), map_to_doc(p.m()));
            maps.insert("pr1".into(), map_to_doc(p.pr1()));
            maps.insert("pr2".into(), map_to_doc(p.pr2()));
            for (k, q) in p.g3_proj().iter().enumerate() {
                maps.insert(format!("g3_p{}", k + 1), map_to_doc(q));
            }
            GroupoidDoc {
                name: p.name().to_string(),
                kind: None,
                parameters: p.params().to_vec(),
                base_chart: chart_to_doc(p.base()),
                arrow_chart: Some(chart_to_doc(p.arrow())),
                g2_chart: Some(chart_to_doc(p.g2())),
                g3_chart: Some(chart_to_doc(p.g3())),
                maps,
                group: None,
                actions: BTreeMap::new(),
            }
        }
        Groupoid::Action(a) => {
            let els = a.elements();
            let table = (0..a.order())
                .map(|x| (0..a.order()).map(|y| els[a.mul(x, y)].clone()).collect())
                .collect();
            GroupoidDoc {
                name: a.name().to_string(),
                kind: Some("action".into()),
                parameters: Vec::new(),
                base_chart: chart_to_doc(a.base()),
                arrow_chart: None,
                g2_chart: None,
                g3_chart: None,
                maps: BTreeMap::new(),
                group: Some(GroupDoc {
                    elements: els.to_vec(),
                    table,
                }),
                actions: (0..a.order())
                    .map(|k| (els[k].clone(), map_to_doc(a.action(k))))
                    .collect(),
            }
        }
    }
}

pub fn groupoid_to_json(g: &Groupoid) -> String {
    serde_json::to_string_pretty(&groupoid_to_doc(g)).expect("serializable document")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::gallery::{build_example, GALLERY};

    #[test]
    fn gallery_round_trips_through_json() {
        for name in GALLERY {
            let g = build_example(name).unwrap();
            let json = groupoid_to_json(&g);
            let back = load_groupoid(&json).unwrap();
            assert_eq!(groupoid_to_json(&back), json, "{name}");
            assert!(back.validate().all_pass(), "{name}");
        }
    }

    #[test]
    fn missing_pieces_are_named() {
        let g = build_example("pair-R").unwrap();
        let mut doc = groupoid_to_doc(&g);
        doc.g2_chart = None;
        let err = groupoid_from_doc(&doc).unwrap_err();
        assert!(matches!(err, Error::Missing(ref m) if m.contains("g2")), "{err}");
        let mut doc = groupoid_to_doc(&g);
        doc.maps.remove("g3_p2");
        let err = groupoid_from_doc(&doc).unwrap_err();
        assert!(matches!(err, Error::Missing(ref m) if m.contains("g3")), "{err}");
    }

    #[test]
    fn corrupted_multiplication_fails_target_axiom() {
        let g = build_example("pair-R").unwrap();
        let mut doc = groupoid_to_doc(&g);
        doc.maps.insert(
            "m".into(),
            vec![ImageDoc::Affine("y".into()), ImageDoc::Affine("z".into())],
        );
        let bad = groupoid_from_doc(&doc).unwrap();
        let report = bad.validate();
        let check = report.get("t o m = t o pr1").unwrap();
        assert!(!check.verdict.holds);
        assert!(check.verdict.certificate.as_ref().unwrap().contains("y - x") || check.verdict.certificate.as_ref().unwrap().contains("-x + y"));
    }

    #[test]
    fn non_source_adapted_rejected() {
        let g = build_example("pair-R").unwrap();
        let mut doc = groupoid_to_doc(&g);
        doc.maps.insert("s".into(), vec![ImageDoc::Affine("(+ x y)".into())]);
        assert!(matches!(
            groupoid_from_doc(&doc),
            Err(Error::NotSourceAdapted(_))
        ));
    }
}
