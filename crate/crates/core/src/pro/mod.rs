//! Towers, pro-maps, pro-isomorphisms, `lim`/`lim¹` and colimits.

pub mod groups;
pub mod tower;

pub use groups::{
    colim, direct_system_at, is_pro_isomorphism, lim_colim, lim_lim1, postcompose_map, precompose_map,
    pro_hom, stabilization_bound, stable_image_index, Colim, Filler, Lim1Status, LimLim1, ProHom,
    ProIsoResult, BiSystem, TailShape,
};
pub use tower::{
    compose, germ_eq, reindex_cofinal, reindex_level_map, DirectSystem, Morphism, ProMap,
    TailPolicy, Tower,
};
