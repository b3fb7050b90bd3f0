//! Exact computation in free medial quandles and their n-symmetric and
//! m-reductive subvarieties, plus tools for finite quandles given by
//! Cayley tables.
//!
//! - [`poly`] and [`ring`]: `Z[t, t^-1]` and quotients `Z[t]/f`.
//! - [`cyclotomic`]: cyclotomic factors of `1 + t + ... + t^(n-1)` and residue maps.
//! - [`free`]: the free (f-)quandle `M x X`, displacements, affine embedding.
//! - [`term`]: term parsing, normal forms and identity decisions.
//! - [`finite`]: Cayley tables, permutation groups, structural checks.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod finite;
pub mod free;
pub mod poly;
pub mod ring;
pub mod suite;
pub mod term;

pub use error::{Error, Result};
pub use free::{Displacement, FreeElement, FreeQuandle, GeneratorSet, Vector};
pub use poly::LaurentPoly;
pub use ring::{RingElement, RingSpec};
