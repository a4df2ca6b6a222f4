//! Direct-sum structure of grid modules: hom spaces, hook recognition,
//! hook decomposition with certificates, and an idempotent-splitting oracle.

mod hom;
mod hooks;
mod morphism;
mod oracle;

pub use hom::hom_basis;
pub use hooks::{hook_decompose, hook_pairings, hook_profile, HookCertificate};
pub use morphism::{cyclic_submodule, image_submodule, kernel_submodule, submodule, GridMorphism};
pub use oracle::{decompose_oracle, endomorphism_dimension, DEFAULT_ENDOMORPHISM_THRESHOLD};
