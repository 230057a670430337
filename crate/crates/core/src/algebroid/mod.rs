//! Lie algebroids: extracted from groupoids or presented directly, their
//! two-term complexes, and the Van-Est maps from the groupoid side.

mod cochain;
pub mod examples;
pub mod io;
mod presentation;
mod section;
mod vanest;

pub use cochain::{AlgebroidDerivation, IMFunction, CA, XA};
pub use presentation::AlgebroidPresentation;
pub use section::Section;
pub use vanest::LinkedPair;
