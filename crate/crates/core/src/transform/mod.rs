//! Exact and approximate 16-point transforms.

mod kernel;
mod orthonormal;
mod registry;

pub use kernel::{proposed_kernel, scaling_diagonal, DiagonalScaling, IntegerKernel, ORDER};
pub use orthonormal::{
    exact_dct_matrix, hadamard_matrix_16, orthogonalize, sign_changes, wht_matrix, wht_matrix_16, OrthonormalTransform,
    Provenance, WhtOrdering, ORTHONORMAL_TOLERANCE,
};
pub use registry::{TransformRegistry, TransformRegistryEntry, DCT, PROPOSED, WHT};
