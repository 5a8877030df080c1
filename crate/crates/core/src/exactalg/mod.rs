//! Exact linear algebra over `Z` and `F_p` and finitely generated abelian groups.

pub mod group;
pub mod hom;
pub mod linalg;
pub mod matrix;
pub mod ring;
pub mod snf;

pub use group::{group_from_presentation, FgAbGroup, Presented};
pub use hom::{
    cokernel, hom_group, hom_group_data, image, image_data, inverse, is_injective, is_isomorphism,
    is_surjective, kernel, lift_through, preimage, same_subgroup, solve_hom_constraints,
    subquotient, GroupHom, HomConstraint, HomGroup, ImageData, SubQuotient,
};
pub use matrix::IntMatrix;
pub use ring::RingTag;
pub use snf::{snf, SnfResult};
