//! Spectral laboratory for nonselfadjoint perturbations of semiclassical
//! harmonic oscillators.
//!
//! The crate provides:
//!
//! * exact arithmetic on frequency vectors and their resonance modules
//!   ([`frequencies`]),
//! * an exact symbol calculus on Wick polynomials and plane-wave sums,
//!   including Poisson brackets, Moyal products, flow pullbacks, averaging
//!   and analytic norms ([`symbols`]),
//! * cohomological-equation solvers used to build averaging normal forms
//!   ([`cohomology`]),
//! * Weyl quantization onto truncated Fock bases ([`quantize`]),
//! * dense nonselfadjoint spectra, resolvent scans and Husimi densities
//!   ([`spectral`]),
//! * conjugation/Egorov machinery for normal-form residuals ([`normalform`]),
//! * numerical checks of geometric control conditions ([`control`]),
//! * scenario configuration and experiment orchestration ([`lab`]).

pub mod cohomology;
pub mod control;
pub mod exact;
pub mod frequencies;
pub mod lab;
pub mod linalg;
pub mod normalform;
pub mod quantize;
pub mod spectral;
pub mod symbols;

pub use frequencies::{DiophantineEstimate, FrequencyVector, ResonanceModule};
pub use symbols::{PhasePoint, PlaneWaveSymbol, WickSymbol};
