//! The standard t-structure: truncations, the n-equivalence calculus,
//! factorizations and lifts.

pub mod classify;
pub mod coeff;
pub mod factor;
pub mod truncate;

pub use classify::{classify_map, is_co_n_equivalence, is_n_equivalence, Extended, MapClassification};
pub use coeff::{cohomology_with_coefficients, free_resolution};
pub use factor::{
    cokernel_complex, factor_n, find_lift, is_co_n_fibration, is_n_cofibration, kernel_complex,
    pushout_product_check, CokernelComplex, Factorization, KernelComplex,
};
pub use truncate::{
    above_step, heart_homology, induced_below_map, layer_triangle_check, truncate_above, truncate_above_data,
    truncate_below_data, truncate_below_free, truncation_tower, AboveTruncation, BelowTruncation,
    TruncationTower,
};
