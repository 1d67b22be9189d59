#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Angular resolution limit (ARL) for one far-field and one near-field source
//! impinging on a uniform linear array.
//!
//! The resolution limit is the separation `δ = ω2 − ω1` that solves
//! `CRB(δ) = δ²`. The crate builds that quantity in layers:
//!
//! - [`array`]: geometry, known source signals, steering vectors and their
//!   derivatives, physical ↔ electrical parameter mapping.
//! - [`fim`]: the exact 3×3 Fisher information matrix and its numeric
//!   inverse, used as ground truth.
//! - [`crb`]: closed-form CRBs on `(ω1, ω2)` and the combined `CRB(δ)`.
//! - [`linearization`]: small-separation Taylor coefficients and the monic
//!   quartic `R(x)`.
//! - [`solver`]: quartic roots, the reduced biquadratic, the closed-form and
//!   low-noise ARL, and a bisection solver of the exact equation.
//! - [`experiment`]: configuration, the `1/σ²` sweep, CSV output and the
//!   oracle validation suite.
//!
//! With the default `parallel` feature, sweep points and randomized checks are
//! evaluated with rayon; without it everything runs on the calling thread and
//! produces bit-identical results.

pub mod array;
pub mod crb;
mod error;
pub mod experiment;
pub mod fim;
pub mod linearization;
pub mod par;
pub mod solver;

pub use array::{
    ArrayGeometry, ElectricalParams, PhysicalParams, Scenario, SourceSignals, SPEED_OF_LIGHT,
};
pub use crb::{crb_closed_form, crb_delta, spectral_sums, CrbModel, CrbSet, SpectralSums};
pub use error::{ArlError, Result};
pub use fim::{crb_numeric, fim_gram, fim_slepian_bangs, CrbNumeric, FisherMatrix};
pub use linearization::{linear_coeffs, phi_sums, LinearCoeffs, PhiSums};
pub use par::ExecutionMode;
pub use solver::{
    arl_closed_form, arl_low_noise, select_arl_root, smith_numeric, solve_arl, solve_biquadratic,
    solve_quartic, ArlResult, Biquadratic, QuarticRoots, SmithOptions,
};

/// Complex sample type used throughout.
pub type C64 = num_complex::Complex64;
