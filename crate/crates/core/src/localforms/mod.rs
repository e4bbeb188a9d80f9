//! Local structure at a point: jet maps, formal inversion, constant-rank
//! detection and normal forms, the kernel certificate for
//! standardizability, local sections and graded pieces of the pullback.

mod certificate;
mod graded;
mod invert;
mod jetmap;
mod normal_form;
mod section;
mod standardize;

pub use certificate::{
    kernel_surjectivity_certificate, kernel_surjectivity_certificate_with_cap,
    truncated_pullback_matrix, truncated_pullback_surjective, KernelCertificate, KernelVector,
    Lift, Verdict, DEFAULT_MATRIX_CAP,
};
pub use graded::graded_component_map;
pub use invert::jet_invert;
pub use jetmap::{morphism_to_jetmap, JetMap};
pub use normal_form::{constant_rank_check, rank_normal_form, ConstantRankReport, NormalForm};
pub use section::local_section;
pub use standardize::{standard_form, standardize, StandardizationResult};
