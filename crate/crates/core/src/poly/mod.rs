//! Exact polynomials over `Q(i)`.

mod fmt;
mod multi;
pub(crate) mod parse;
mod uni;

pub use multi::{default_names, MultiPoly};
pub use uni::UniPoly;
