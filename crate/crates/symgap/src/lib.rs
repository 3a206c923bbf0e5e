//! Exact computations in the group algebra of the symmetric group: operator
//! inequalities between `α_A` elements, interchange-process spectral gaps and
//! symbolic positivity certificates in a parameter `k`.

pub mod gamma_symbolic;
pub mod group_algebra;
pub mod inequality_lab;
pub mod process_spectra;
pub mod repr_engine;
pub mod symmetric_core;
