//! Jacobian spaces, the Jacobian-space distinguisher for logarithmic tangent
//! bundles on products of projective spaces, and the split-type machinery on
//! `P1 x P1`: smoothness, singular members of pencils and normal-form
//! recovery.

mod pencil;
mod recover;
mod smooth;
mod span;

pub use pencil::{pencil_singular_members, PencilMember, PencilParameter, PencilReport};
pub use recover::{is_split_type_in_coords, recover_split_normal_form, SplitForm, SplitRecovery};
pub use smooth::{
    common_zeros_mod_p, smooth_on_p1xp1, smooth_on_p1xp1_with, SingularWitness, SmoothOptions, Smoothness,
};
pub use span::{
    distinguish, jacobian_space, restrict_and_compare, span_equal, Distinction, RestrictReport, RestrictTrial, Span,
    Verdict,
};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;

/// Degree `(a, b)` of a polynomial on `P1 x P1`.
pub(crate) fn p1xp1_degree(f: &MPoly) -> Result<(u32, u32)> {
    if f.shape().dims() != [1, 1] {
        return Err(Error::ShapeMismatch(format!("expected shape (1, 1), got {:?}", f.shape().dims())));
    }
    Ok((f.degree().get(0), f.degree().get(1)))
}
