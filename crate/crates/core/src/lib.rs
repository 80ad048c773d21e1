//! Wavelet filter construction from seed functions.
//!
//! A seed function `h ∈ L²(R)` is lifted to a lattice of magnetic translates with
//! cell area `a² = 4π`. The lattice overlap decides whether the seed yields filter
//! coefficients satisfying the orthonormality requirement of a multi-resolution
//! analysis; when it does not, the Gram symbol of the lattice is used to
//! orthonormalize it. The crate covers:
//!
//! * [`seedfn`]: closed-form seed functions, their Fourier transforms and presets,
//! * [`overlap`]: the lattice overlap and the (mild) orthonormality conditions,
//! * [`ortho`]: the Gram-symbol orthonormalization,
//! * [`filter`]: coefficient extraction and the four relevance conditions,
//! * [`cascade`]: scaling function and mother wavelet reconstruction,
//! * [`qmcheck`]: two-dimensional overlaps of translated wavefunctions for three
//!   explicit kernels, used to cross-validate [`overlap`].

// Negated float comparisons are how NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cascade;
pub mod error;
pub mod exec;
pub mod filter;
pub mod ortho;
pub mod overlap;
pub mod qmcheck;
pub mod quad;
pub mod report;
pub mod seedfn;

pub use error::{Error, Result};
pub use exec::Exec;

use num_complex::Complex64;

/// Lattice spacing `a = 2√π`, so that `a² = 4π`.
pub const LATTICE_A: f64 = 3.544_907_701_811_032;

/// `a / 2 = √π`.
pub const HALF_A: f64 = 1.772_453_850_905_516;

pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);
