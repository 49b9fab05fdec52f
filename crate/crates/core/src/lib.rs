//! Bit retrieval: recovering a binary sequence from its cyclic
//! autocorrelation, and the signature and watermarking scheme that rests on
//! how hard that is.
//!
//! * [`cyclotomic`] : arithmetic in ℝ[x]/⟨x^N−1⟩, ℤ[x]/⟨x^N−1⟩ and ℤ[ζ],
//!   Fourier maps, norms.
//! * [`instances`] : π-sequences, Legendre (Hadamard) keys, random keys and
//!   structural diagnostics.
//! * [`solver`] : the difference-map iteration for bit retrieval.
//! * [`lattice`] : exact HNF and LLL, and the lattice attack experiments.
//! * [`signature`] : quantizers, signing and verification.
//! * [`watermark`] : block-wise fragile image watermarking on PGM images.

pub mod cyclotomic;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod seeds;
pub mod signature;
pub mod solver;
pub mod watermark;

pub use error::{Error, Result};
