//! Coupled harmonic oscillators, the entanglement entropy left by tracing
//! out one of them, and the Lorentz-squeezed covariant oscillator whose
//! time-separation variable plays the same unobserved role.
//!
//! Modules, bottom up:
//!
//! - [`numerics`]: Hermite functions, quadrature rules, series truncation.
//! - [`oscillator`]: the coupled pair, normal coordinates, squeeze parameter.
//! - [`entanglement`]: Schmidt spectrum, purity, entropy, temperature map.
//! - [`lorentz`]: light-cone boosts and squeezed wave functions.
//! - [`parton`]: decoherence metrics at a given beam energy.
//! - [`verify`]: the self-check suite run by `covosc verify`.
//! - [`cli`]: command-line front end.

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod lorentz;
pub mod numerics;
pub mod oscillator;
pub mod parton;
pub mod verify;

pub use error::{Error, Result};
