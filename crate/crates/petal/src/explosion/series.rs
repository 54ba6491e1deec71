//! Truncated power series over ℂ, exact up to a fixed order.
//!
//! Just enough arithmetic for iterating the family's series and reading off
//! low-order coefficients; composition requires the inner series to vanish
//! at 0 so truncation stays exact.

use crate::{Error, Result, C};

/// Coefficients `c₀..c_K` of a power series truncated at order `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<C>,
}

pub const DEFAULT_ORDER: usize = 64;

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![C::new(0.0, 0.0); order + 1],
        }
    }

    /// Build from coefficients, truncating or zero-padding to `order`.
    pub fn from_coeffs(order: usize, coeffs: &[C]) -> Self {
        let mut c = coeffs.to_vec();
        c.resize(order + 1, C::new(0.0, 0.0));
        c.truncate(order + 1);
        Self { coeffs: c }
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| C::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| c * x).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![C::new(0.0, 0.0); order + 1];
        for i in 0..=order {
            let a = self.coeff(i);
            if a == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..=order - i {
                coeffs[i + j] += a * rhs.coeff(j);
            }
        }
        Self { coeffs }
    }

    /// Composition `self ∘ inner`; `inner` must vanish at 0 so that each
    /// coefficient of the result depends on finitely many inputs.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeff(0) != C::new(0.0, 0.0) {
            return Err(Error::Domain(
                "series composition requires the inner series to vanish at 0".into(),
            ));
        }
        let order = self.order().min(inner.order());
        // Horner: a₀ + g·(a₁ + g·(a₂ + …))
        let mut acc = TruncatedSeries::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += self.coeff(k);
        }
        Ok(acc)
    }

    /// Evaluate at a point by Horner's rule (for spot checks).
    pub fn eval(&self, z: C) -> C {
        let mut acc = C::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}
