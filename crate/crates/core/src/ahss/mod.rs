//! Spectral sequence from the truncation tower of the target: exact couple,
//! pages, abutment filtration and convergence checks, and the version for
//! towers of sources.

pub mod convergence;
pub mod couple;
pub mod pages;
pub mod pro;

pub use convergence::{
    abutment_filtration, convergence_check, e2_identification_check, ConvergenceReport, Filtration, GradedSlot,
};
pub use couple::{build_exact_couple, build_exact_couple_in, CoupleParts, ExactCouple, Window};
pub use pages::{derive, page, run_to_stable, Page, SpectralSequence};
pub use pro::{pro_ahss, ProAhssReport};
