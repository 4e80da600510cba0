//! Sparse image representation with mixed discrete cosine / B-spline
//! dictionaries.
//!
//! Images are split into square blocks. Each block is approximated by
//! Orthogonal Matching Pursuit over the tensor product of a 1D dictionary
//! that joins a redundancy-two cosine family with translated, discretized
//! B-splines of several supports. The number of atoms needed to reach a PSNR
//! target measures sparsity, and is compared against magnitude thresholding
//! of block DCT and CDF 9/7 wavelet coefficients.
//!
//! Module map:
//!
//! - [`dictionary`]: B-spline prototypes, cosine atoms, 1D dictionaries and
//!   the separable 2D dictionary.
//! - [`pursuit`]: OMP with re-orthogonalized Gram-Schmidt and recursive
//!   biorthogonalization.
//! - [`codec`]: block encoding to a PSNR target, the `.sic` container, PGM
//!   I/O and sparsity reports.
//! - [`baselines`]: block DCT and CDF 9/7 thresholding.
//! - [`cli`]: the library side of the `sparsedict` command.

pub mod baselines;
pub mod cli;
pub mod codec;
pub mod dictionary;
pub mod error;
pub mod pursuit;

pub use error::{Error, Result};
