//! Exact symbolic calculus for multiplicative structures on Lie groupoids.

pub mod algebroid;
pub mod chart;
pub mod check;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod field;
pub mod function;
pub mod linalg;
pub mod groupoid;
pub mod map;
pub mod multcalc;
pub mod par;
pub mod report;
pub mod run;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod window;

pub use chart::{Chart, Coord, CoordKind};
pub use algebroid::{AlgebroidDerivation, AlgebroidPresentation, IMFunction, LinkedPair, Section};
pub use check::{Check, ValidationReport, Verdict};
pub use error::{Error, Result};
pub use field::VectorField;
pub use groupoid::{ArrowField, ArrowFunction, Groupoid, MultVectorField};
pub use function::{ChartFunction, Mono, RawPoly};
pub use map::{CoordImage, SmoothMap};
pub use scalar::Scalar;
pub use par::Exec;
pub use report::{Report, ExampleReport};
pub use run::{run, Command, Format, RunConfig, RunOutcome};
