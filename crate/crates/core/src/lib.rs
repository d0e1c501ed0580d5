//! Exact Fourier analysis of Boolean functions over GF(2)^n.
//!
//! The crate computes spectra with dyadic-rational coefficients, GF(2)
//! degree and polynomial rank, builds parity decision trees and parity
//! certificates, and simulates the XOR-function protocols those trees give.
//!
//! Coordinates: an input `x` is an integer whose bit `i` is x_{i+1}. Masks
//! print as bitstrings x₁x₂…xₙ, so `Mask(0b01)` in two variables is `"10"`.
//!
//! Numerators are generic over [`scalar::Numerator`]; the aliases below fix
//! the common choices.

pub mod anf;
pub mod comm;
pub mod error;
pub mod families;
pub mod function;
pub mod gf2;
pub mod noise;
pub mod pdt;
pub mod restrict;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use anf::{anf_of, deg2, Anf};
pub use error::{Error, Result};
pub use function::{BooleanFunction, N_MAX};
pub use gf2::{apply_linear, complete_basis, gf2_rank, span_dim, Gf2Matrix, LinearMap, Mask};
pub use restrict::{derivative, fold, restrict_affine, spectrum_split, AffineConstraint};
pub use spectrum::{inverse_wht, pm_spectrum, pointwise_product, to_pm_spectrum, wht, SpectralStats, Spectrum};

/// Spectrum with arbitrary-precision numerators.
pub type ExactSpectrum = spectrum::Spectrum<num_bigint::BigInt>;
/// Spectrum with machine numerators; exact for every n up to [`N_MAX`].
pub type Spectrum64 = spectrum::Spectrum<i64>;
/// Integer matrix with arbitrary-precision entries.
pub type ExactMatrix = comm::IntMatrix<num_bigint::BigInt>;
/// Integer matrix with machine entries.
pub type Matrix64 = comm::IntMatrix<i64>;
