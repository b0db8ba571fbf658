//! Quantized skew translations on the two-torus.
//!
//! The classical map `(p, q) -> (p + α, q + 2p) mod 1` is quantized on an
//! `N`-dimensional Hilbert space through a rational approximant `a_N / N`
//! of `α`. Its eigenphases are known in closed form, so every spectral
//! statistic here can be computed three ways and checked against each
//! other:
//!
//! - exactly, from the rational eigenphase spectrum ([`spectrum`],
//!   [`statistics::number_variance_direct`]);
//! - through the trace / Gauss-sum Fourier series
//!   ([`propagator`], [`statistics::number_variance_fourier`]);
//! - from closed forms for small `D = gcd(a_N, N)`
//!   ([`statistics::number_variance_closed`]).
//!
//! The [`cli`] module wires everything into the `skew-torus` binary.

pub mod classical;
pub mod cli;
pub mod diophantine;
mod error;
pub mod exact;
pub mod propagator;
pub mod spectrum;
pub mod statistics;

pub use diophantine::{Approximant, Convergent, IrrationalAlpha};
pub use error::{Error, Result};
pub use propagator::Propagator;
pub use spectrum::{Eigenphase, ReducedSpectrum, Spectrum};
