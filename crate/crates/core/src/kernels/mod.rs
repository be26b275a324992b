//! Kernels `Z_N` generated by the Ξ-functions and Nyström discretization of
//! the partial relaxation operators they define.

mod assembly;
mod domain;
mod field;
mod spectrum;

pub use assembly::{assemble_operator, z_eval, KernelMatrix};
pub use domain::{Convention, KernelDomain};
pub use field::RadialField;
pub use spectrum::{selfadjointness_check, spectral_drift, spectrum, SYMMETRY_LIMIT};
