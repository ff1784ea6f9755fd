//! Exact finite free probability on monic polynomials.

#![allow(clippy::cloned_ref_to_slice_refs)]

pub mod commutator;
pub mod conv;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod hypergeom;
pub mod measures;
pub mod numeric;
pub mod poly;
pub mod rmt;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use hypergeom::HgpSpec;
pub use numeric::{Rational, TruncatedSeries};
pub use poly::{DilationScale, MonicPoly};
