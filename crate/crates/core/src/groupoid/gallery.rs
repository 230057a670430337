//! Built-in example groupoids, addressed by stable identifiers.

use crate::chart::{Chart, CoordKind};
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::expr;
use crate::map::{CoordImage, SmoothMap};

use super::{DiscreteActionGroupoid, Groupoid, GroupoidPresentation, PresentationParts};

/// Every built-in groupoid, in report order.
pub const GALLERY: &[&str] = &[
    "unit-R",
    "unit-R2",
    "pair-R",
    "pair-S1",
    "submersion-R2-R",
    "circle-group",
    "torus-bundle-R",
    "z2-reflection",
    "real-line-group",
];

/// Gallery members whose orbit space is Hausdorff and isotropy compact.
pub const PROPER: &[&str] = &[
    "unit-R",
    "unit-R2",
    "pair-R",
    "pair-S1",
    "submersion-R2-R",
    "circle-group",
    "torus-bundle-R",
    "z2-reflection",
];

/// Gallery members with connected, simply connected source fibers.
pub const SOURCE_SIMPLY_CONNECTED: &[&str] = &["unit-R", "unit-R2", "pair-R", "submersion-R2-R", "real-line-group"];

/// Builds a map from per-coordinate expressions. A circular target
/// coordinate takes `"cos_expr | sin_expr"`.
pub(crate) fn smap(src: &Chart, tgt: &Chart, imgs: &[&str]) -> SmoothMap {
    assert_eq!(imgs.len(), tgt.dim(), "image count for {}", tgt.describe());
    let images = imgs
        .iter()
        .zip(tgt.coords())
        .map(|(s, c)| match c.kind {
            CoordKind::Affine => CoordImage::Affine(expr::parse(s, src, &[]).expect("gallery expression")),
            CoordKind::Circle => {
                let (p, q) = s.split_once('|').expect("circle image pair");
                CoordImage::Circle(
                    expr::parse(p.trim(), src, &[]).expect("gallery expression"),
                    expr::parse(q.trim(), src, &[]).expect("gallery expression"),
                )
            }
        })
        .collect();
    SmoothMap::new(src, tgt, images).expect("gallery map")
}

fn chart(label: &str, affine: &[&str], circle: &[&str]) -> Chart {
    Chart::new(label, affine, circle).expect("gallery chart")
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    name: &str,
    base: Chart,
    arrow: Chart,
    g2: Chart,
    g3: Chart,
    maps: [&[&str]; 7],
    g3_proj: [&[&str]; 3],
) -> Groupoid {
    let [s, t, u, i, m, pr1, pr2] = maps;
    let parts = PresentationParts {
        name: name.to_string(),
        params: Vec::new(),
        s: smap(&arrow, &base, s),
        t: smap(&arrow, &base, t),
        u: smap(&base, &arrow, u),
        i: smap(&arrow, &arrow, i),
        m: Some(smap(&g2, &arrow, m)),
        pr1: Some(smap(&g2, &arrow, pr1)),
        pr2: Some(smap(&g2, &arrow, pr2)),
        g3_proj: Some(g3_proj.map(|p| smap(&g3, &arrow, p))),
        g2: Some(g2),
        g3: Some(g3),
        base,
        arrow,
    };
    Groupoid::Chart(GroupoidPresentation::assemble(parts).expect("gallery presentation"))
}

fn unit(name: &str, coords: &[&str]) -> Groupoid {
    let base = chart("M", coords, &[]);
    let arrow = base.relabeled("G");
    let g2 = base.relabeled("G2");
    let g3 = base.relabeled("G3");
    let id: Vec<&str> = coords.to_vec();
    assemble(
        name,
        base,
        arrow,
        g2,
        g3,
        [&id, &id, &id, &id, &id, &id, &id],
        [&id, &id, &id],
    )
}

fn pair_r() -> Groupoid {
    assemble(
        "pair-R",
        chart("M", &["z"], &[]),
        chart("G", &["x", "y"], &[]),
        chart("G2", &["x", "y", "z"], &[]),
        chart("G3", &["w", "x", "y", "z"], &[]),
        [
            &["y"],
            &["x"],
            &["z", "z"],
            &["y", "x"],
            &["x", "z"],
            &["x", "y"],
            &["y", "z"],
        ],
        [&["w", "x"], &["x", "y"], &["y", "z"]],
    )
}

fn pair_s1() -> Groupoid {
    let c = |v: &str| format!("cos_{v} | sin_{v}");
    let (w, x, y, z) = (c("w"), c("x"), c("y"), c("z"));
    assemble(
        "pair-S1",
        chart("M", &[], &["z"]),
        chart("G", &[], &["x", "y"]),
        chart("G2", &[], &["x", "y", "z"]),
        chart("G3", &[], &["w", "x", "y", "z"]),
        [
            &[&y],
            &[&x],
            &[&z, &z],
            &[&y, &x],
            &[&x, &z],
            &[&x, &y],
            &[&y, &z],
        ],
        [&[&w, &x], &[&x, &y], &[&y, &z]],
    )
}

fn submersion() -> Groupoid {
    assemble(
        "submersion-R2-R",
        chart("N", &["x", "y"], &[]),
        chart("G", &["x", "y", "y'"], &[]),
        chart("G2", &["x", "y", "y'", "y''"], &[]),
        chart("G3", &["x", "y", "y'", "y''", "y'''"], &[]),
        [
            &["x", "y'"],
            &["x", "y"],
            &["x", "y", "y"],
            &["x", "y'", "y"],
            &["x", "y", "y''"],
            &["x", "y", "y'"],
            &["x", "y'", "y''"],
        ],
        [&["x", "y", "y'"], &["x", "y'", "y''"], &["x", "y''", "y'''"]],
    )
}

const ANGLE_SUM: &str = "(- (* cos_t1 cos_t2) (* sin_t1 sin_t2)) | (+ (* sin_t1 cos_t2) (* cos_t1 sin_t2))";

fn circle_group() -> Groupoid {
    assemble(
        "circle-group",
        Chart::point("M"),
        chart("G", &[], &["t"]),
        chart("G2", &[], &["t1", "t2"]),
        chart("G3", &[], &["t1", "t2", "t3"]),
        [
            &[],
            &[],
            &["1 | 0"],
            &["cos_t | (- sin_t)"],
            &[ANGLE_SUM],
            &["cos_t1 | sin_t1"],
            &["cos_t2 | sin_t2"],
        ],
        [
            &["cos_t1 | sin_t1"],
            &["cos_t2 | sin_t2"],
            &["cos_t3 | sin_t3"],
        ],
    )
}

fn torus_bundle() -> Groupoid {
    assemble(
        "torus-bundle-R",
        chart("M", &["x"], &[]),
        chart("G", &["x"], &["t"]),
        chart("G2", &["x"], &["t1", "t2"]),
        chart("G3", &["x"], &["t1", "t2", "t3"]),
        [
            &["x"],
            &["x"],
            &["x", "1 | 0"],
            &["x", "cos_t | (- sin_t)"],
            &["x", ANGLE_SUM],
            &["x", "cos_t1 | sin_t1"],
            &["x", "cos_t2 | sin_t2"],
        ],
        [
            &["x", "cos_t1 | sin_t1"],
            &["x", "cos_t2 | sin_t2"],
            &["x", "cos_t3 | sin_t3"],
        ],
    )
}

fn real_line_group() -> Groupoid {
    assemble(
        "real-line-group",
        Chart::point("M"),
        chart("G", &["g"], &[]),
        chart("G2", &["g1", "g2"], &[]),
        chart("G3", &["g1", "g2", "g3"], &[]),
        [
            &[],
            &[],
            &["0"],
            &["(- g)"],
            &["(+ g1 g2)"],
            &["g1"],
            &["g2"],
        ],
        [&["g1"], &["g2"], &["g3"]],
    )
}

fn z2_reflection() -> Groupoid {
    let m = chart("M", &["x"], &[]);
    let actions = vec![SmoothMap::identity(&m), smap(&m, &m, &["(- x)"])];
    Groupoid::Action(
        DiscreteActionGroupoid::new(
            "z2-reflection",
            &m,
            vec!["e".into(), "sigma".into()],
            vec![vec![0, 1], vec![1, 0]],
            actions,
        )
        .expect("gallery action groupoid"),
    )
}

pub fn build_example(name: &str) -> Result<Groupoid> {
    Ok(match name {
        "unit-R" => unit(name, &["x"]),
        "unit-R2" => unit(name, &["x", "y"]),
        "pair-R" => pair_r(),
        "pair-S1" => pair_s1(),
        "submersion-R2-R" => submersion(),
        "circle-group" => circle_group(),
        "torus-bundle-R" => torus_bundle(),
        "z2-reflection" => z2_reflection(),
        "real-line-group" => real_line_group(),
        other => return Err(Error::UnknownExample(other.to_string())),
    })
}

/// A groupoid morphism given on arrows and on the base, together with
/// right inverses of both maps (used to push projectable fields down).
#[derive(Clone, Debug)]
pub struct GroupoidMorphism {
    pub name: String,
    pub source: Groupoid,
    pub target: Groupoid,
    pub arrows: SmoothMap,
    pub base: SmoothMap,
    pub arrow_section: SmoothMap,
    pub base_section: SmoothMap,
}

impl GroupoidMorphism {
    /// Compatibility with the structure maps and right-inverse property.
    pub fn validate(&self) -> Result<ValidationReport> {
        let (g, h) = match (self.source.as_chart(), self.target.as_chart()) {
            (Some(g), Some(h)) => (g, h),
            _ => return Err(Error::Config("morphisms are supported between chart presentations".into())),
        };
        let mut r = ValidationReport::default();
        let eq = |a: SmoothMap, b: SmoothMap| Verdict::maps_equal(&a, &b);
        r.push("phi0 o s = s o phi1", eq(self.arrows.then(h.s())?, g.s().then(&self.base)?));
        r.push("phi0 o t = t o phi1", eq(self.arrows.then(h.t())?, g.t().then(&self.base)?));
        r.push("phi1 o u = u o phi0", eq(g.u().then(&self.arrows)?, self.base.then(h.u())?));
        let paired = h.pair(&g.pr1().then(&self.arrows)?, &g.pr2().then(&self.arrows)?)?;
        r.push("phi1 o m = m o (phi1, phi1)", eq(g.m().then(&self.arrows)?, paired.then(h.m())?));
        r.push(
            "phi1 o section = id",
            eq(self.arrow_section.then(&self.arrows)?, SmoothMap::identity(h.arrow())),
        );
        r.push(
            "phi0 o section = id",
            eq(self.base_section.then(&self.base)?, SmoothMap::identity(h.base())),
        );
        Ok(r)
    }
}

/// Built-in Morita morphisms, by identifier.
pub const MORITA_PAIRS: &[&str] = &["submersion-R2-R->unit-R", "pair-R->pair-R"];

pub fn morita_example(name: &str) -> Result<GroupoidMorphism> {
    match name {
        "submersion-R2-R->unit-R" => {
            let source = submersion();
            let target = unit("unit-R", &["x"]);
            let (gs, gt) = (source.as_chart().unwrap(), target.as_chart().unwrap());
            Ok(GroupoidMorphism {
                name: name.to_string(),
                arrows: smap(gs.arrow(), gt.arrow(), &["x"]),
                base: smap(gs.base(), gt.base(), &["x"]),
                arrow_section: smap(gt.arrow(), gs.arrow(), &["x", "0", "0"]),
                base_section: smap(gt.base(), gs.base(), &["x", "0"]),
                source,
                target,
            })
        }
        "pair-R->pair-R" => {
            let g = pair_r();
            let gp = g.as_chart().unwrap().clone();
            Ok(GroupoidMorphism {
                name: name.to_string(),
                arrows: SmoothMap::identity(gp.arrow()),
                base: SmoothMap::identity(gp.base()),
                arrow_section: SmoothMap::identity(gp.arrow()),
                base_section: SmoothMap::identity(gp.base()),
                source: g.clone(),
                target: g,
            })
        }
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_gallery_groupoid_validates() {
        for name in GALLERY {
            let g = build_example(name).unwrap();
            let r = g.validate();
            assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn morita_pairs_are_morphisms() {
        for name in MORITA_PAIRS {
            let m = morita_example(name).unwrap();
            let r = m.validate().unwrap();
            assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn unknown_name_rejected() {
        assert_eq!(
            build_example("klein-bottle").unwrap_err(),
            Error::UnknownExample("klein-bottle".into())
        );
    }
}
