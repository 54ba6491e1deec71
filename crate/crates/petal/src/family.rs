//! The family `P_α(z) = e^{2πiα} z (1+z)^m`, the Joukowski-side map
//! `Q = ψ₀⁻¹ ∘ P ∘ ψ₁`, critical data, sector geometry, and the explicit
//! expansion/remainder bounds that the other modules lean on.

use crate::{Error, Result, C, TAU};

/// Binary exponentiation of `(1+z)^n`.
///
/// Cheaper and slightly more stable than repeated multiplication for the
/// moderate exponents (`n ≤ ~120`) this crate uses in inner loops.
#[inline]
pub fn pow1p(z: C, n: u32) -> C {
    cpow(C::new(1.0, 0.0) + z, n)
}

/// Binary exponentiation of a complex base with a non-negative integer exponent.
#[inline]
pub fn cpow(base: C, mut n: u32) -> C {
    let mut acc = C::new(1.0, 0.0);
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= b;
        }
        b *= b;
        n >>= 1;
    }
    acc
}

/// Degree parameter `m ≥ 2` and rotation number `α` (complex allowed).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub m: u32,
    pub alpha: C,
}

impl FamilyParams {
    pub fn new(m: u32, alpha: C) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("degree parameter m={m} must be ≥ 2")));
        }
        Ok(Self { m, alpha })
    }

    pub fn real(m: u32, alpha: f64) -> Result<Self> {
        Self::new(m, C::new(alpha, 0.0))
    }

    /// The multiplier `e^{2πiα}` at the fixed point 0.
    pub fn rotation(&self) -> C {
        (C::i() * TAU * self.alpha).exp()
    }

    pub fn eval(&self, z: C) -> C {
        eval_p_alpha(self, z)
    }
}

/// `P(z) = z (1+z)^m`.
pub fn eval_p(m: u32, z: C) -> C {
    z * pow1p(z, m)
}

/// `P_α(z) = e^{2πiα} z (1+z)^m`.
pub fn eval_p_alpha(params: &FamilyParams, z: C) -> C {
    params.rotation() * eval_p(params.m, z)
}

/// `Q(z) = (1+z)^{2+2m} / (z (1−z)^{2m})`, the conjugate of `P` by ψ₀, ψ₁.
///
/// Poles at `z = 0` and `z = 1` are rejected.
pub fn eval_q(m: u32, z: C) -> Result<C> {
    let one = C::new(1.0, 0.0);
    if z == C::new(0.0, 0.0) || z == one {
        return Err(Error::Domain(format!("Q has a pole at z={z}")));
    }
    Ok(pow1p(z, 2 + 2 * m) / (z * cpow(one - z, 2 * m)))
}

/// Closed form of `Q'(z)`:
/// `(1 − cp_Q1/z)(1 − cp_Q2/z)((1+1/z)/(1−1/z))^{2m+1}`.
pub fn q_derivative(m: u32, z: C) -> Result<C> {
    let one = C::new(1.0, 0.0);
    if z == C::new(0.0, 0.0) || z == one {
        return Err(Error::Domain(format!("Q' has a pole at z={z}")));
    }
    let cd = critical_data(m)?;
    let inv = one / z;
    let ratio = (one + inv) / (one - inv);
    Ok((one - cd.cp_q1 * inv) * (one - cd.cp_q2 * inv) * cpow(ratio, 2 * m + 1))
}

/// Critical points/values of `P` and `Q` for a given `m`.
#[derive(Clone, Copy, Debug)]
pub struct CriticalData {
    /// Free critical point of `P`: `−1/(m+1)`.
    pub cp_p: C,
    /// Its critical value `−m^m/(m+1)^{m+1}`.
    pub cv_p: C,
    /// Larger critical point of `Q`: `(√(m+1)+√m)²`.
    pub cp_q1: f64,
    /// Smaller critical point of `Q`, `(√(m+1)−√m)² = 1/cp_q1`.
    pub cp_q2: f64,
    /// Shared critical value `Q(cp_q1) = Q(cp_q2) = 4(m+1)^{m+1}/m^m`.
    pub cv_q: f64,
}

/// `cv_P = −m^m/(m+1)^{m+1}` with the integer-ratio path taken whenever both
/// powers are exact in f64, so small-`m` values are correctly rounded.
pub fn cv_p(m: u32) -> f64 {
    let mf = m as f64;
    if m <= 12 {
        let num = (m as u64).pow(m);
        let den = (m as u64 + 1).pow(m + 1);
        -(num as f64) / (den as f64)
    } else {
        // -(1/(m+1)) (m/(m+1))^m, no overflow for any m
        -(mf / (mf + 1.0)).powi(m as i32) / (mf + 1.0)
    }
}

/// `cv_Q = 4(m+1)^{m+1}/m^m = 4(m+1)·((m+1)/m)^m`, monotone to `4e(m+1)`.
pub fn cv_q(m: u32) -> f64 {
    let mf = m as f64;
    4.0 * (mf + 1.0) * ((mf + 1.0) / mf).powi(m as i32)
}

pub fn critical_data(m: u32) -> Result<CriticalData> {
    if m < 2 {
        return Err(Error::Domain(format!("m={m} must be ≥ 2")));
    }
    let mf = m as f64;
    let cp_q1 = (mf + 1.0).sqrt().powi(2) + 2.0 * (mf * (mf + 1.0)).sqrt() + mf;
    Ok(CriticalData {
        cp_p: C::new(-1.0 / (mf + 1.0), 0.0),
        cv_p: C::new(cv_p(m), 0.0),
        cp_q1,
        // conjugate surd: exact product 1, and immune to the cancellation
        // that hits (2m+1) − 2√(m²+m) at large m
        cp_q2: 1.0 / cp_q1,
        cv_q: cv_q(m),
    })
}

/// `Q₂(z) = Q(z) − z − (4m+2) − (8m(m+1)+1)/z`, the tail of the expansion of
/// `Q` at infinity. Requires `|z| > 1`.
pub fn q_remainder(m: u32, z: C) -> Result<C> {
    if z.norm() <= 1.0 {
        return Err(Error::Domain(format!(
            "Q₂ is only evaluated for |z| > 1, got |z|={}",
            z.norm()
        )));
    }
    let mf = m as f64;
    let q = eval_q(m, z)?;
    Ok(q - z - (4.0 * mf + 2.0) - (8.0 * mf * (mf + 1.0) + 1.0) / z)
}

/// The four addends of the closed-form bound `Q_{2,max}(r)` on `|Q₂|` for
/// `|z| ≥ r > 1`, in the order they are assembled:
/// `8C³_{2m}/(r(r−1))`, `16m/(r(r−1))`, the quartic-factor term, and the
/// quadratic-factor term.
pub fn q2_max_terms(m: u32, r: f64) -> Result<[f64; 4]> {
    if r <= 1.0 {
        return Err(Error::Domain(format!("Q_2,max needs r > 1, got r={r}")));
    }
    let mf = m as f64;
    let tm = 2.0 * mf;
    let c3 = tm * (tm - 1.0) * (tm - 2.0) / 6.0; // C(2m, 3)
    let ratio = (r + 1.0) / (r - 1.0);
    Ok([
        8.0 * c3 / (r * (r - 1.0)),
        16.0 * mf / (r * (r - 1.0)),
        2.0 * tm * (tm - 1.0) * (tm - 2.0) * (tm - 3.0) / (3.0 * r * (r - 1.0).powi(2))
            * ratio.powi(2 * m as i32 - 4),
        8.0 * tm * (tm - 1.0) / (r - 1.0).powi(2) * ratio.powi(2 * m as i32 - 2),
    ])
}

/// `Q_{2,max}(r)`: sum of [`q2_max_terms`].
pub fn q2_max(m: u32, r: f64) -> Result<f64> {
    Ok(q2_max_terms(m, r)?.iter().sum())
}

/// Which of the ψ coordinate maps to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiMap {
    /// `ψ₀(z) = −4/z` (an involution).
    Psi0,
    /// `ψ₁(z) = −4z/(1+z)²`.
    Psi1,
    /// Branch of `ψ₁⁻¹` mapping `ℂ∖(−∞,−1]` into `ℂ∖𝔻̄`.
    Psi1InvPlus,
    /// Branch of `ψ₁⁻¹` mapping `ℂ∖(−∞,−1]` into `𝔻`.
    Psi1InvMinus,
}

/// Apply one of the coordinate maps, rejecting its singular set
/// (`{0}` for ψ₀, `{−1}` for ψ₁, the slit `(−∞,−1]` for the inverse branches).
pub fn psi_map(which: PsiMap, z: C) -> Result<C> {
    let one = C::new(1.0, 0.0);
    match which {
        PsiMap::Psi0 => {
            if z == C::new(0.0, 0.0) {
                return Err(Error::Domain("ψ₀ is singular at 0".into()));
            }
            Ok(C::new(-4.0, 0.0) / z)
        }
        PsiMap::Psi1 => {
            if z == -one {
                return Err(Error::Domain("ψ₁ is singular at −1".into()));
            }
            Ok(C::new(-4.0, 0.0) * z / cpow(one + z, 2))
        }
        PsiMap::Psi1InvPlus | PsiMap::Psi1InvMinus => {
            if z.im == 0.0 && z.re <= -1.0 {
                return Err(Error::Domain(format!(
                    "ψ₁⁻¹ branches are cut along (−∞,−1], got z={z}"
                )));
            }
            // ψ₁ = ψ₁₂ ∘ ψ₁₁ with ψ₁₁(z)=(z−1)/(z+1), ψ₁₂(w)=w²−1; invert with the
            // principal square root (Re ≥ 0 picks the exterior branch).
            let w = (z + one).sqrt();
            let w = if which == PsiMap::Psi1InvPlus { w } else { -w };
            Ok((one + w) / (one - w))
        }
    }
}

/// Joukowski-type ellipse data: `ζ(w) = e₁w + e₀ + e₋₁/w` maps `|w| = r`
/// onto the boundary of the ellipse `E_r`.
#[derive(Clone, Copy, Debug)]
pub struct EllipseSpec {
    pub e1: f64,
    pub e0: f64,
    pub em1: f64,
    pub r: f64,
}

/// The fixed constants `(e₁, e₀, e₋₁) = (0.84, −0.18, 0.6)` used throughout
/// the estimate ledger.
pub const LEDGER_ELLIPSE: (f64, f64, f64) = (0.84, -0.18, 0.6);

impl EllipseSpec {
    pub fn ledger(r: f64) -> Result<Self> {
        let (e1, e0, em1) = LEDGER_ELLIPSE;
        Self::new(e1, e0, em1, r)
    }

    pub fn new(e1: f64, e0: f64, em1: f64, r: f64) -> Result<Self> {
        if r < 1.0 {
            return Err(Error::Domain(format!("ring parameter r={r} must be ≥ 1")));
        }
        let s = Self { e1, e0, em1, r };
        if s.a_axis() == 0.0 || s.b_axis() == 0.0 {
            return Err(Error::Domain(
                "degenerate ellipse: a_E(r) or b_E(r) is zero".into(),
            ));
        }
        Ok(s)
    }

    /// `ζ(w) = e₁ w + e₀ + e₋₁/w`.
    pub fn zeta(&self, w: C) -> C {
        C::new(self.e1, 0.0) * w + C::new(self.e0, 0.0) + C::new(self.em1, 0.0) / w
    }

    /// Semi-axis `a_E(r) = e₁ r + e₋₁/r`.
    pub fn a_axis(&self) -> f64 {
        self.e1 * self.r + self.em1 / self.r
    }

    /// Semi-axis `b_E(r) = e₁ r − e₋₁/r`.
    pub fn b_axis(&self) -> f64 {
        self.e1 * self.r - self.em1 / self.r
    }

    /// Boundary point at angle θ: `e₀ + a_E cos θ + i b_E sin θ`.
    pub fn boundary(&self, theta: f64) -> C {
        C::new(
            self.e0 + self.a_axis() * theta.cos(),
            self.b_axis() * theta.sin(),
        )
    }

    /// Ellipse membership `((x−e₀)/a_E)² + (y/b_E)² ≤ 1`.
    pub fn contains(&self, z: C) -> bool {
        let x = (z.re - self.e0) / self.a_axis();
        let y = z.im / self.b_axis();
        x * x + y * y <= 1.0
    }
}

/// Open sector `𝕍(z₀, θ) = { z ≠ z₀ : |arg(z−z₀)| < θ }` with principal arg.
#[derive(Clone, Copy, Debug)]
pub struct Sector {
    pub vertex: C,
    pub half_angle: f64,
}

impl Sector {
    pub fn new(vertex: C, half_angle: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle < std::f64::consts::PI) {
            return Err(Error::Domain(format!(
                "half angle {half_angle} must lie in (0, π)"
            )));
        }
        Ok(Self { vertex, half_angle })
    }

    pub fn contains(&self, z: C) -> bool {
        sector_contains(self, z)
    }
}

/// Membership test for `𝕍(z₀, θ)`; the vertex itself is excluded.
pub fn sector_contains(s: &Sector, z: C) -> bool {
    let d = z - s.vertex;
    if d == C::new(0.0, 0.0) {
        return false;
    }
    d.arg().abs() < s.half_angle
}

/// A quantity `v = e^{ln_value}` that may overflow f64; `value` is `None`
/// exactly when it does. Comparisons at large `m` go through `ln_value`.
#[derive(Clone, Copy, Debug)]
pub struct LogScaled {
    pub value: Option<f64>,
    pub ln_value: f64,
}

impl LogScaled {
    fn from_ln(ln_value: f64) -> Self {
        let v = ln_value.exp();
        Self {
            value: if v.is_finite() { Some(v) } else { None },
            ln_value,
        }
    }

    /// The plain value, or an overflow error naming the quantity.
    pub fn get(&self, what: &str) -> Result<f64> {
        self.value.ok_or_else(|| {
            Error::Overflow(format!("{what} exceeds f64 range (ln = {})", self.ln_value))
        })
    }
}

/// The constants `η`, `R`, `ρ`, `R₁` attached to the Riemann-surface and
/// Fatou-coordinate estimates: `η = (log(12(m+1)·30^{2+2m}) + 1)/(2π)`,
/// `R = 2.66×10^m`, `ρ = 0.07`, `R₁ = 2.39×10^m`.
#[derive(Clone, Copy, Debug)]
pub struct StructuralConstants {
    pub eta: f64,
    pub r_covering: LogScaled,
    pub rho: f64,
    pub r1_attracting: LogScaled,
}

pub fn structural_constants(m: u32) -> Result<StructuralConstants> {
    if m < 2 {
        return Err(Error::Domain(format!("m={m} must be ≥ 2")));
    }
    let mf = m as f64;
    let ln10 = std::f64::consts::LN_10;
    let eta = ((12.0 * (mf + 1.0)).ln() + (2.0 + 2.0 * mf) * 30.0f64.ln() + 1.0) / TAU;
    Ok(StructuralConstants {
        eta,
        r_covering: LogScaled::from_ln(2.66f64.ln() + mf * ln10),
        rho: 0.07,
        r1_attracting: LogScaled::from_ln(2.39f64.ln() + mf * ln10),
    })
}
