//! Lie groupoids presented over charts by substitution maps.
//!
//! Two layout conventions make everything explicit:
//!
//! * the source map renames base coordinates onto a block of arrow
//!   coordinates (the *base block*); the remaining arrow coordinates form the
//!   *fiber block*, which frames `ker ds`;
//! * the composable-pairs chart is *fibered*: `pr2` renames every arrow
//!   coordinate, and `pr1` renames the fiber block onto the remaining
//!   coordinates. The base block of the first factor is then determined by
//!   `s o pr1 = t o pr2`.
//!
//! With this layout a pair of maps `(a, b): K -> G x_M G` is assembled by
//! substitution, which is all that associativity, inverses, units and the
//! right-invariant fields need.

use crate::algebroid::Section;
use crate::chart::{Chart, CoordKind};
use crate::check::{ValidationReport, Verdict};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::map::{CoordImage, SmoothMap};

/// Raw presentation data; optional pieces are rejected by [`GroupoidPresentation::assemble`].
#[derive(Clone, Debug)]
pub struct PresentationParts {
    pub name: String,
    pub params: Vec<String>,
    pub base: Chart,
    pub arrow: Chart,
    pub g2: Option<Chart>,
    pub g3: Option<Chart>,
    pub s: SmoothMap,
    pub t: SmoothMap,
    pub u: SmoothMap,
    pub i: SmoothMap,
    pub m: Option<SmoothMap>,
    pub pr1: Option<SmoothMap>,
    pub pr2: Option<SmoothMap>,
    pub g3_proj: Option<[SmoothMap; 3]>,
}

#[derive(Clone, Debug)]
struct Layout {
    fiber_block: Vec<usize>,
    /// G2 coordinate that `pr2` assigns to each arrow coordinate.
    second: Vec<usize>,
    /// G2 coordinate that `pr1` assigns to each fiber coordinate.
    first_fiber: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GroupoidPresentation {
    name: String,
    params: Vec<String>,
    base: Chart,
    arrow: Chart,
    g2: Chart,
    g3: Chart,
    s: SmoothMap,
    t: SmoothMap,
    u: SmoothMap,
    i: SmoothMap,
    m: SmoothMap,
    pr1: SmoothMap,
    pr2: SmoothMap,
    g3_proj: [SmoothMap; 3],
    layout: Layout,
    /// Right-invariant fields of the fiber frame.
    frame_r: Vec<VectorField>,
    /// `a(e_k)`, the restriction of `dt` to the frame.
    anchor: Vec<VectorField>,
}

/// If `img` is exactly a coordinate of `chart` (of the given kind), its index.
fn renamed_coord(chart: &Chart, img: &CoordImage) -> Option<usize> {
    let gens = chart.generators();
    match img {
        CoordImage::Affine(f) => (0..chart.dim()).find(|&k| {
            chart.coords()[k].kind == CoordKind::Affine && *f == gens[chart.first_gen(k)]
        }),
        CoordImage::Circle(p, q) => (0..chart.dim()).find(|&k| {
            let g = chart.first_gen(k);
            chart.coords()[k].kind == CoordKind::Circle && *p == gens[g] && *q == gens[g + 1]
        }),
    }
}

fn renaming(map: &SmoothMap, what: &str) -> std::result::Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for (img, c) in map.images().iter().zip(map.target().coords()) {
        match renamed_coord(map.source(), img) {
            Some(k) if !out.contains(&k) => out.push(k),
            _ => {
                return Err(format!(
                    "{what} does not rename coordinate `{}` onto a distinct coordinate",
                    c.name
                ))
            }
        }
    }
    Ok(out)
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Missing(what.to_string()))
}

impl GroupoidPresentation {
    pub fn assemble(parts: PresentationParts) -> Result<Self> {
        let g2 = need(parts.g2, "g2_chart (composable pairs)")?;
        let g3 = need(parts.g3, "g3_chart (composable triples)")?;
        let m = need(parts.m, "multiplication map m")?;
        let pr1 = need(parts.pr1, "projection pr1")?;
        let pr2 = need(parts.pr2, "projection pr2")?;
        let g3_proj = need(parts.g3_proj, "triple projections g3_p1..g3_p3")?;

        let (base, arrow) = (parts.base, parts.arrow);
        let check_map = |mp: &SmoothMap, src: &Chart, tgt: &Chart, name: &str| -> Result<()> {
            if !mp.source().same_as(src) || !mp.target().same_as(tgt) {
                return Err(Error::ChartMismatch {
                    expected: format!("{name}: {} -> {}", src.describe(), tgt.describe()),
                    found: format!("{} -> {}", mp.source().describe(), mp.target().describe()),
                });
            }
            Ok(())
        };
        check_map(&parts.s, &arrow, &base, "s")?;
        check_map(&parts.t, &arrow, &base, "t")?;
        check_map(&parts.u, &base, &arrow, "u")?;
        check_map(&parts.i, &arrow, &arrow, "i")?;
        check_map(&m, &g2, &arrow, "m")?;
        check_map(&pr1, &g2, &arrow, "pr1")?;
        check_map(&pr2, &g2, &arrow, "pr2")?;
        for (k, p) in g3_proj.iter().enumerate() {
            check_map(p, &g3, &arrow, &format!("g3_p{}", k + 1))?;
        }

        let base_block = renaming(&parts.s, "s").map_err(Error::NotSourceAdapted)?;
        let fiber_block: Vec<usize> = (0..arrow.dim()).filter(|k| !base_block.contains(k)).collect();
        let second = renaming(&pr2, "pr2").map_err(Error::Layout)?;
        let mut first_fiber = Vec::new();
        for &k in &fiber_block {
            match renamed_coord(&g2, &pr1.images()[k]) {
                Some(j) if !second.contains(&j) && !first_fiber.contains(&j) => first_fiber.push(j),
                _ => {
                    return Err(Error::Layout(format!(
                        "pr1 does not rename fiber coordinate `{}` onto a free coordinate",
                        arrow.coords()[k].name
                    )))
                }
            }
        }
        if second.len() + first_fiber.len() != g2.dim() {
            return Err(Error::Layout(format!(
                "{} has {} coordinates, expected {}",
                g2.describe(),
                g2.dim(),
                second.len() + first_fiber.len()
            )));
        }

        let mut gp = GroupoidPresentation {
            name: parts.name,
            params: parts.params,
            base,
            arrow,
            g2,
            g3,
            s: parts.s,
            t: parts.t,
            u: parts.u,
            i: parts.i,
            m,
            pr1,
            pr2,
            g3_proj,
            layout: Layout {
                fiber_block,
                second,
                first_fiber,
            },
            frame_r: Vec::new(),
            anchor: Vec::new(),
        };
        gp.frame_r = (0..gp.rank()).map(|k| gp.compute_frame_r(k)).collect();
        gp.anchor = gp
            .frame_r
            .iter()
            .map(|e| {
                let images: Vec<ChartFunction> = gp
                    .t
                    .generator_images()
                    .iter()
                    .map(|tf| gp.u.pullback_unchecked(&e.apply_unchecked(tf)))
                    .collect();
                VectorField::from_generator_action(&gp.base, &images)
            })
            .collect();
        Ok(gp)
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

    pub fn arrow(&self) -> &Chart {
        &self.arrow
    }

    pub fn g2(&self) -> &Chart {
        &self.g2
    }

    pub fn g3(&self) -> &Chart {
        &self.g3
    }

    pub fn s(&self) -> &SmoothMap {
        &self.s
    }

    pub fn t(&self) -> &SmoothMap {
        &self.t
    }

    pub fn u(&self) -> &SmoothMap {
        &self.u
    }

    pub fn i(&self) -> &SmoothMap {
        &self.i
    }

    pub fn m(&self) -> &SmoothMap {
        &self.m
    }

    pub fn pr1(&self) -> &SmoothMap {
        &self.pr1
    }

    pub fn pr2(&self) -> &SmoothMap {
        &self.pr2
    }

    pub fn g3_proj(&self) -> &[SmoothMap; 3] {
        &self.g3_proj
    }

    /// Rank of the Lie algebroid: the size of the fiber block.
    pub fn rank(&self) -> usize {
        self.layout.fiber_block.len()
    }

    /// Names of the fiber coordinates, which label the algebroid frame.
    pub fn frame_names(&self) -> Vec<String> {
        self.layout
            .fiber_block
            .iter()
            .map(|&k| self.arrow.coords()[k].name.clone())
            .collect()
    }

    /// `(a, b): K -> G2` for maps `a, b: K -> G` with `s o a = t o b`.
    /// Only the fiber block of `a` is read.
    pub fn pair(&self, a: &SmoothMap, b: &SmoothMap) -> Result<SmoothMap> {
        a.source().ensure_same(b.source())?;
        self.arrow.ensure_same(a.target())?;
        self.arrow.ensure_same(b.target())?;
        let mut images: Vec<Option<CoordImage>> = vec![None; self.g2.dim()];
        for (k, &j) in self.layout.second.iter().enumerate() {
            images[j] = Some(b.images()[k].clone());
        }
        for (f, &j) in self.layout.first_fiber.iter().enumerate() {
            images[j] = Some(a.images()[self.layout.fiber_block[f]].clone());
        }
        SmoothMap::new(
            a.source(),
            &self.g2,
            images.into_iter().map(|x| x.expect("layout covers G2")).collect(),
        )
    }

    /// Structure-map identities, in a fixed order.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let id_m = SmoothMap::identity(&self.base);
        let id_g = SmoothMap::identity(&self.arrow);
        let comp = |a: &SmoothMap, b: &SmoothMap| a.then(b).expect("charts checked at assembly");
        let eq = |a: &SmoothMap, b: &SmoothMap| Verdict::maps_equal(a, b);
        let paired = |a: &SmoothMap, b: &SmoothMap| self.pair(a, b).expect("charts checked");

        r.push("s o u = id", eq(&comp(&self.u, &self.s), &id_m));
        r.push("t o u = id", eq(&comp(&self.u, &self.t), &id_m));
        r.push("s o m = s o pr2", eq(&comp(&self.m, &self.s), &comp(&self.pr2, &self.s)));
        r.push("t o m = t o pr1", eq(&comp(&self.m, &self.t), &comp(&self.pr1, &self.t)));
        r.push(
            "s o pr1 = t o pr2",
            eq(&comp(&self.pr1, &self.s), &comp(&self.pr2, &self.t)),
        );

        let [p1, p2, p3] = &self.g3_proj;
        let fibered3 = eq(&comp(p1, &self.s), &comp(p2, &self.t))
            .and(|| eq(&comp(p2, &self.s), &comp(p3, &self.t)));
        let assoc = fibered3.and(|| {
            let left = comp(&paired(&comp(&paired(p1, p2), &self.m), p3), &self.m);
            let right = comp(&paired(p1, &comp(&paired(p2, p3), &self.m)), &self.m);
            eq(&left, &right)
        });
        r.push("associativity", assoc);

        r.push("i o i = id", eq(&comp(&self.i, &self.i), &id_g));
        r.push("s o i = t", eq(&comp(&self.i, &self.s), &self.t));
        r.push("t o i = s", eq(&comp(&self.i, &self.t), &self.s));
        let u_t = comp(&self.t, &self.u);
        let u_s = comp(&self.s, &self.u);
        r.push(
            "m o (id, i) = u o t",
            eq(&comp(&paired(&id_g, &self.i), &self.m), &u_t),
        );
        r.push(
            "m o (i, id) = u o s",
            eq(&comp(&paired(&self.i, &id_g), &self.m), &u_s),
        );
        r.push(
            "m o (u o t, id) = id",
            eq(&comp(&paired(&u_t, &id_g), &self.m), &id_g),
        );
        r.push(
            "m o (id, u o s) = id",
            eq(&comp(&paired(&id_g, &u_s), &self.m), &id_g),
        );
        r
    }

    /// `e_k^r`: derivative of `m` in the k-th fiber direction of the first
    /// factor, evaluated along `(u o t, id)`.
    fn compute_frame_r(&self, k: usize) -> VectorField {
        let sigma = self
            .pair(&self.t.then(&self.u).expect("charts"), &SmoothMap::identity(&self.arrow))
            .expect("charts");
        let eta = self.layout.first_fiber[k];
        let images: Vec<ChartFunction> = self
            .m
            .generator_images()
            .iter()
            .map(|g| sigma.pullback_unchecked(&g.derive_coord(eta)))
            .collect();
        VectorField::from_generator_action(&self.arrow, &images)
    }

    pub fn frame_right(&self) -> &[VectorField] {
        &self.frame_r
    }

    /// Anchor of each frame element: `a(e_k) f = u*(e_k^r (t* f))`.
    pub fn anchor_frame(&self) -> &[VectorField] {
        &self.anchor
    }

    /// `alpha^r = sum_k t*(a_k) e_k^r`.
    pub fn right_invariant(&self, alpha: &Section) -> VectorField {
        let mut out = VectorField::zero(&self.arrow);
        for (a, e) in alpha.coeffs().iter().zip(&self.frame_r) {
            if !a.is_zero() {
                out = out.add(&e.scale(&self.t.pullback_unchecked(a)));
            }
        }
        out
    }

    /// `alpha^l = -i_* alpha^r`.
    pub fn left_invariant(&self, alpha: &Section) -> VectorField {
        self.right_invariant(alpha)
            .pushforward_unchecked(&self.i, &self.i)
            .neg()
    }

    /// `V|_M`: u-pullback of the fiber coefficients.
    pub fn restrict(&self, v: &VectorField) -> Section {
        let coeffs = self
            .layout
            .fiber_block
            .iter()
            .map(|&k| self.u.pullback_unchecked(&v.coeffs()[k]))
            .collect();
        Section::new(&self.base, coeffs).expect("base chart")
    }

    /// The vector field `(X, Y)` on G2 that is pr1-related to X and pr2-related to Y.
    pub fn pair_field(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let mut images: Vec<Option<ChartFunction>> = vec![None; self.g2.n_gens()];
        let xa = x.generator_action();
        let ya = y.generator_action();
        let put = |images: &mut Vec<Option<ChartFunction>>, g2c: usize, gc: usize, act: &[ChartFunction], pr: &SmoothMap| {
            let n = match self.arrow.coords()[gc].kind {
                CoordKind::Affine => 1,
                CoordKind::Circle => 2,
            };
            for d in 0..n {
                images[self.g2.first_gen(g2c) + d] =
                    Some(pr.pullback_unchecked(&act[self.arrow.first_gen(gc) + d]));
            }
        };
        for (k, &j) in self.layout.second.iter().enumerate() {
            put(&mut images, j, k, &ya, &self.pr2);
        }
        for (f, &j) in self.layout.first_fiber.iter().enumerate() {
            put(&mut images, j, self.layout.fiber_block[f], &xa, &self.pr1);
        }
        let images: Vec<ChartFunction> = images.into_iter().map(|x| x.expect("covered")).collect();
        VectorField::from_generator_action(&self.g2, &images)
    }
}
