//! Numerical machinery for the polynomial family `P_α(z) = e^{2πiα} z (1+z)^m`.
//!
//! The crate is split along the natural seams of the problem: the family
//! itself and its static constants ([`family`]), continued fractions and
//! Brjuno sums ([`contfrac`]), Fatou coordinates / horn maps / return maps
//! ([`fatou`]), parabolic explosion of cycles ([`explosion`]), escape-time
//! rendering and area estimates ([`julia`]), and a deterministic ledger of
//! numeric inequality checks ([`ledger`]).

pub mod contfrac;
pub mod explosion;
pub mod family;
pub mod fatou;
pub mod julia;
pub mod ledger;

use thiserror::Error;

/// Complex scalar used throughout.
pub type C = num_complex::Complex64;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iteration failed to converge within its budget.
    #[error("no convergence: {0}")]
    NoConverge(String),
    /// A value exceeds the representable f64 range and is only available in log scale.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) const TAU: f64 = std::f64::consts::TAU;

/// Deterministic splitmix64 stream, used for reproducible sampling in
/// sweeps and tests. Not a crypto RNG.
#[derive(Clone, Debug)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
