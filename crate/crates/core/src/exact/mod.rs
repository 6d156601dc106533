//! Exact arithmetic: rationals, quadratic extensions, dense matrices,
//! univariate polynomials and resultants.

mod finite_field;
mod matrix;
mod quadext;
mod rational;
mod resultant;
mod ring;
mod unipoly;

pub use finite_field::Fp;
pub use matrix::{Matrix, Rref};
pub use quadext::{squarefree_decompose, QuadExt};
pub(crate) use rational::{denom_lcm, numer_gcd};
pub use rational::{parse_rational, rat, rat_int, rational_from_json, rational_to_json, Rational};
pub use resultant::{bareiss_det, sylvester_matrix, sylvester_resultant, sylvester_resultant_formal};
pub use ring::{Field, Ring};
pub use unipoly::UniPoly;
