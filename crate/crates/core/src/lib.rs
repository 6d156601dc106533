//! Exact computations around logarithmic bundles of arrangements: Jacobian
//! spaces of multi-homogeneous polynomials, split-type normal forms on
//! P1 x P1, quadric apolarity, hyperplane arrangement crossing tests and
//! Chern class bookkeeping on the quadric surface.

pub mod arrangements;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod mpoly;
pub mod quadrics;
pub mod torelli;

pub use arrangements::HArrangement;
pub use error::{Error, Result};
pub use exact::{Matrix, QuadExt, Rational, UniPoly};
pub use mpoly::{FactorChange, MPoly, MultiDegree, Shape};
pub use quadrics::{Hyperplane, Quadric};
