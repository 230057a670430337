//! Directly presented algebroids.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::function::ChartFunction;
use crate::scalar::Scalar;

use super::{AlgebroidPresentation, Section};

pub const ALGEBROID_GALLERY: &[&str] = &["molino"];

/// Action algebroid of the Kronecker flow on the torus: one frame element
/// `e` with anchor `l0 d_t0 + l1 d_t1` and zero bracket. The formal
/// parameters `l0`, `l1` are algebraically independent, which models an
/// irrational slope.
pub fn molino() -> AlgebroidPresentation {
    let base = Chart::new("T2", &[], &["t0", "t1"]).expect("torus chart");
    let rho = VectorField::new(
        &base,
        vec![
            ChartFunction::constant(&base, Scalar::param("l0")),
            ChartFunction::constant(&base, Scalar::param("l1")),
        ],
    )
    .expect("torus field");
    AlgebroidPresentation::new(
        "molino",
        vec!["l0".into(), "l1".into()],
        &base,
        vec!["e".into()],
        vec![rho],
        vec![vec![Section::zero(&base, 1)]],
    )
    .expect("molino presentation")
}

pub fn build_algebroid(name: &str) -> Result<AlgebroidPresentation> {
    match name {
        "molino" => Ok(molino()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}
