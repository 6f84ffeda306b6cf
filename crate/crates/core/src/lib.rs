//! Construction and certification of a small Z-acyclic, non-contractible 2-complex
//! together with an exact check of its piecewise-linear realization in R^4.

#![allow(clippy::needless_range_loop)]

pub mod collapse;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod formats;
pub mod geometry;
pub mod homology;
pub mod pi1;
pub mod realization;
pub mod snf;

pub use complex::{make_complex, Simplex, SimplicialComplex, VertexLabel, VertexMap};
pub use error::{Error, Result};
