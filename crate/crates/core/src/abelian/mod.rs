//! Finitely generated abelian groups in canonical form.
//!
//! A group is stored as `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | … | d_k` and
//! every `d_i ≥ 2`. Coordinates always list the free part first, then the
//! torsion part, and torsion coordinates are kept in `[0, d_i)`.

mod finite;
mod group;
mod hom;
mod matrix;
mod snf;

pub use finite::decompose_finite;
pub use group::{
    canonicalize, canonicalize_full, direct_sum, direct_sum_with_maps, DirectSum, FgAbelianGroup,
    GroupElement, Presentation,
};
pub use hom::{
    image, membership, quotient, quotient_full, scale_subgroup, GroupHom, MembershipResult,
    Quotient, Subgroup,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
