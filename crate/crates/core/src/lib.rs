//! A multiplierless 16-point DCT approximation.
//!
//! The crate is organised around four layers:
//!
//! * [`transform`] holds the exact orthonormal DCT-II, the 16×16 integer
//!   kernel with entries in {−1, 0, +1}, its orthogonalizing diagonal, the
//!   Walsh–Hadamard baselines and a registry for plugging in other
//!   approximations.
//! * [`fast`] evaluates the integer kernel through a six-stage sparse
//!   factorization that needs 44 additions and no multiplications or shifts.
//! * [`metrics`] scores any orthonormal transform against the exact DCT under
//!   a first-order Markov model (DCT distortion, total error energy, MSE,
//!   coding gain, transform efficiency) and renders the complexity table.
//! * [`codec`] runs the fixed-rate block compression experiment: 16×16 tiling,
//!   separable 2-D transform, zig-zag coefficient retention, inverse transform
//!   and PSNR/SSIM scoring, including corpus sweeps.
//!
//! [`io`] provides binary PGM reading/writing and CSV report emission, and
//! [`cli`] is the engine behind the `dct16` binary.
//!
//! ```
//! use dct16::fast::build_proposed_factorization;
//! use dct16::transform::proposed_kernel;
//!
//! let fast = build_proposed_factorization().unwrap();
//! assert_eq!(fast.count_ops().additions, 44);
//!
//! let x: Vec<i64> = (0..16).collect();
//! assert_eq!(fast.apply(&x).unwrap(), proposed_kernel().mul_vec(&x).unwrap());
//! ```

pub mod cli;
pub mod codec;
mod error;
pub mod fast;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod transform;

pub use error::{Error, Result};
