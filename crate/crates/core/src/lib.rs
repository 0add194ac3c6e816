//! Exact computations over a codimension-six Gorenstein local ring with
//! `m^4 = 0`: its structure constants, graded free resolutions, a complete
//! resolution, Tate cohomology, and an inverse-system check.

pub mod algebra;
pub mod error;
pub mod homalg;
pub mod invsys;
pub mod linalg;
pub mod polyring;
pub mod scalars;

pub use error::{Error, Result};
