//! Spectral instability analysis for binary time-series ("clickstream") data.
//!
//! Repeated experiments that record one bit per trial produce, for each
//! configuration ("circuit"), an ordered bit sequence. If the underlying
//! outcome probability drifts over the acquisition, the drift shows up as
//! excess power in the frequency domain. This crate implements the full
//! analysis chain:
//!
//! 1. [`spectral`] -- orthogonal type-II DCT power spectra of standardized
//!    clickstreams, spectrum averaging, multi-outcome coarse-graining, and
//!    the per-mode variance diagnostics behind the chi-squared null model.
//! 2. [`testing`] -- Bonferroni-corrected chi-squared thresholds, per-circuit
//!    and averaged-spectrum hypothesis tests, and the `lambda_p` evidence
//!    statistic.
//! 3. [`trajectory`] -- regularized estimation of each circuit's outcome
//!    probability trajectory (Fourier filter and constrained MLE) plus AIC
//!    model comparison.
//! 4. [`timeresolved`] -- time-resolved randomized-benchmarking error rates,
//!    time-resolved Ramsey detuning fits, and model-violation diagnostics.
//! 5. [`synth`] -- seeded synthetic trajectory and clickstream generators
//!    used as ground-truth oracles.
//!
//! The crate is `no_std` (with `alloc`) so the numerical core can be embedded
//! anywhere; all IO, file formats and the CLI live in the companion
//! `driftscope` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chi2;
pub mod dct;
pub mod optim;
pub mod spectral;
pub mod synth;
pub mod testing;
pub mod timeresolved;
pub mod trajectory;

mod error;

pub use error::Error;

/// Convenience alias used by fallible operations throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
