//! Exact computations with finitely presented biparameter persistence modules
//! over small prime fields: minimal presentations, graded Betti numbers and
//! minimal free resolutions, hook decompositions with certificates, and the
//! classification into free / hook-decomposable / projective dimension ≤ 1.

pub mod bigraded;
pub mod classify;
pub mod decomposition;
pub mod error;
pub mod exactlinalg;
pub mod generators;
pub mod resolution;

pub use bigraded::{Bar, Bigrade, GridBox, GridModule, Hook, Presentation, INF};
pub use classify::{check_implications, classify, verify_certificate, ClassificationReport};
pub use decomposition::{decompose_oracle, hom_basis, hook_decompose, hook_profile, GridMorphism, HookCertificate};
pub use error::{Error, Result};
pub use exactlinalg::{Matrix, PrimeField};
pub use resolution::{betti_table, minimal_free_resolution, projective_dimension, BettiTable, Resolution};
