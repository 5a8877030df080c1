//! Homotopy theory of towers of complexes: weak equivalences detected on
//! pro-homology, Postnikov replacement, fibrancy and hom groups.

pub mod homs;
pub mod postnikov;
pub mod whitehead;

pub use homs::{heart_hom, hom_from_constant, hom_to_constant, tower_hom, HomFromConstant};
pub use postnikov::{is_hstar_fibrant, postnikov_replacement, surjectivize, PostnikovReplacement, Surjectivized};
pub use whitehead::{
    degree_support, homology_pro_map, homology_support, homology_tower, is_hstar_weak_equivalence,
    is_levelwise_cofibration, HStarVerdict, Verdict,
};
