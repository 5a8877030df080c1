//! Bounded complexes of free modules, chain maps, cones, homology and the Hom-complex.

pub mod complex;
pub mod homcomplex;
pub mod homology;
pub mod map;
pub mod random;

pub use complex::{shift, ChainComplex};
pub use homcomplex::{
    class_to_map, derived_hom, hom_complex, homotopic, induced_hom_complex_map,
    induced_map_on_derived_hom, map_to_class, Block, HomComplex,
};
pub use homology::{
    homology, homology_all, induced_homology_map, induced_map_between, is_acyclic,
    is_quasi_isomorphism, Homology,
};
pub use map::{cone, cone_map, disk_cover, shift_map, ChainMap, Cone};
pub use random::{random_chain_map, random_complex, random_complex_seeded, rng_from_seed};
