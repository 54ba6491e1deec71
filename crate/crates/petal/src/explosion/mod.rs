//! Parabolic explosion: the leading coefficient `A(p/q)` of
//! `P^{∘q}_{p/q}(z) − z`, the cycle function `χ` by Newton continuation in
//! `δ` (with `α = p/q + δ^q`), and the perturbed-Siegel-set geometry
//! `X_n(ρ)`, `π_n`.

pub mod series;

pub use series::TruncatedSeries;

use crate::family::{self, FamilyParams};
use crate::{Error, Result, C, TAU};

/// Coefficient of `z^{j}` in `z(1+z)^m`, i.e. `C(m, j−1)`.
fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Truncated series of `P_{p/q}` itself.
fn family_series(m: u32, p: i64, q: u32, order: usize) -> TruncatedSeries {
    let rot = (C::i() * TAU * p as f64 / q as f64).exp();
    let mut coeffs = vec![C::new(0.0, 0.0); order + 1];
    for j in 1..=order.min(m as usize + 1) {
        coeffs[j] = rot * binomial(m, j as u32 - 1);
    }
    TruncatedSeries::from_coeffs(order, &coeffs)
}

/// Series of the q-fold composite `P^{∘q}_{p/q}` to order `K`.
///
/// The coefficients of `z²..z^q` must vanish (the parabolic multiplicity is
/// exactly `q+1`); a residue above `1e−10` is an arithmetic failure.
pub fn series_iterate(m: u32, p: i64, q: u32, order: usize) -> Result<TruncatedSeries> {
    if q == 0 || num_gcd(p.unsigned_abs(), q as u64) != 1 {
        return Err(Error::Domain(format!(
            "p/q = {p}/{q} must be in lowest terms, q ≥ 1"
        )));
    }
    if order < q as usize + 2 {
        return Err(Error::Domain(format!(
            "order {order} must be ≥ q+2 = {}",
            q + 2
        )));
    }
    let base = family_series(m, p, q, order);
    let mut iter = base.clone();
    for _ in 1..q {
        iter = base.compose(&iter)?;
    }
    debug_assert!((iter.coeff(1) - C::new(1.0, 0.0)).norm() < 1e-12);
    for k in 2..=q as usize {
        let c = iter.coeff(k).norm();
        if c > 1e-10 {
            return Err(Error::NoConverge(format!(
                "coefficient of z^{k} in P^{{∘{q}}} should vanish, got {c:e}"
            )));
        }
    }
    Ok(iter)
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// `A(p/q)`: the coefficient of `z^{q+1}` in `P^{∘q}_{p/q}(z) − z`.
pub fn coefficient_a(m: u32, p: i64, q: u32) -> Result<C> {
    let order = (q as usize + 2).max(8);
    let s = series_iterate(m, p, q, order)?;
    let a = s.coeff(q as usize + 1);
    if a.norm() < 1e-12 {
        return Err(Error::NoConverge(format!(
            "A({p}/{q}) computed as {a}, but it must be nonzero"
        )));
    }
    Ok(a)
}

/// Principal q-th root of `−2πiq/A(p/q)`, the derivative `χ'(0)`.
/// Other admissible branches are the rotations by `e^{2πik/q}`.
pub fn chi_prime0(m: u32, p: i64, q: u32) -> Result<C> {
    let a = coefficient_a(m, p, q)?;
    let w = C::new(0.0, -TAU * q as f64) / a;
    Ok(C::from_polar(
        w.norm().powf(1.0 / q as f64),
        w.arg() / q as f64,
    ))
}

/// Newton solve of `P_α^{∘q}(z) = z` with the chain-rule derivative
/// accumulated along the orbit. Returns the refined point.
fn newton_cycle_point(params: &FamilyParams, q: u32, seed: C) -> Result<C> {
    let m = params.m;
    let rot = params.rotation();
    let fprime = |z: C| {
        // P_α'(z) = e^{2πiα}(1+z)^{m−1}(1+(m+1)z)
        rot * family::pow1p(z, m - 1) * (C::new(1.0, 0.0) + (m as f64 + 1.0) * z)
    };
    let mut z = seed;
    let mut best = (seed, f64::INFINITY);
    for _ in 0..80 {
        let mut w = z;
        let mut deriv = C::new(1.0, 0.0);
        for _ in 0..q {
            deriv *= fprime(w);
            w = params.eval(w);
        }
        let g = w - z;
        let res = g.norm();
        if res < best.1 {
            best = (z, res);
        }
        if res < 1e-13 * z.norm().max(1e-3) {
            return Ok(z);
        }
        let gp = deriv - C::new(1.0, 0.0);
        if gp.norm() < 1e-300 {
            break;
        }
        let step = g / gp;
        z -= step;
        if !z.is_finite() || z.norm() > 50.0 {
            return Err(Error::NoConverge("Newton iterate escaped".into()));
        }
        if step.norm() < 1e-16 * z.norm() {
            break;
        }
    }
    if best.1 < 1e-11 {
        Ok(best.0)
    } else {
        Err(Error::NoConverge(format!(
            "Newton stalled at residual {:e}",
            best.1
        )))
    }
}

fn cycle_residual(params: &FamilyParams, q: u32, z: C) -> f64 {
    let mut w = z;
    for _ in 0..q {
        w = params.eval(w);
    }
    (w - z).norm()
}

/// Path-follow the explosion function from near 0 out to `delta` along the
/// radial segment and return the full period-`q` cycle of `P_{p/q+δ^q}`.
///
/// The guaranteed disk is `|δ| < 1/q^{3/q}`; callers should stay inside
/// `0.9·q^{−3/q}`. `step_growth` is the geometric step factor (1.25 unless
/// overridden); failed Newton steps are halved, at most 40 times.
pub fn chi_continuation(m: u32, p: i64, q: u32, delta: C, step_growth: f64) -> Result<Vec<C>> {
    if delta == C::new(0.0, 0.0) {
        return Err(Error::Domain("δ must be nonzero".into()));
    }
    let growth = if step_growth > 1.0 && step_growth <= 2.0 {
        step_growth
    } else {
        1.25
    };
    let slope = chi_prime0(m, p, q)?;
    let dir = delta / delta.norm();
    let target = delta.norm();

    let mut r_good = target * 1e-3;
    let mut z = slope * dir * r_good;
    let alpha_of = |r: f64| -> FamilyParams {
        let d = dir * r;
        FamilyParams::new(m, C::new(p as f64 / q as f64, 0.0) + family::cpow(d, q))
            .expect("m validated upstream")
    };
    z = newton_cycle_point(&alpha_of(r_good), q, z)?;

    let mut halvings = 0u32;
    let mut r_try = (r_good * growth).min(target);
    loop {
        let seed = z * (r_try / r_good);
        match newton_cycle_point(&alpha_of(r_try), q, seed) {
            Ok(next) => {
                // reject jumps onto a different branch
                if (next - seed).norm() > 0.5 * next.norm().max(1e-12) && r_try - r_good > 1e-12 {
                    halvings += 1;
                    if halvings > 40 {
                        return Err(Error::NoConverge(format!(
                            "continuation failed (branch jump); last good |δ| = {r_good}"
                        )));
                    }
                    r_try = r_good + (r_try - r_good) / 2.0;
                    continue;
                }
                z = next;
                r_good = r_try;
                halvings = 0;
                if (r_good - target).abs() < 1e-15 * target {
                    break;
                }
                r_try = (r_good * growth).min(target);
            }
            Err(_) => {
                halvings += 1;
                if halvings > 40 {
                    return Err(Error::NoConverge(format!(
                        "continuation failed; last good |δ| = {r_good}"
                    )));
                }
                r_try = r_good + (r_try - r_good) / 2.0;
            }
        }
    }

    let params = alpha_of(target);
    let mut cycle = Vec::with_capacity(q as usize);
    let mut w = z;
    for _ in 0..q {
        cycle.push(w);
        w = params.eval(w);
    }
    let res = cycle_residual(&params, q, cycle[0]);
    if res > 1e-10 {
        return Err(Error::NoConverge(format!(
            "cycle residual {res:e} exceeds 1e-10"
        )));
    }
    Ok(cycle)
}

/// Multiplier `(P_α^{∘q})'(z₀)` along a cycle.
pub fn cycle_multiplier(params: &FamilyParams, q: u32, z0: C) -> C {
    let rot = params.rotation();
    let m = params.m;
    let mut deriv = C::new(1.0, 0.0);
    let mut w = z0;
    for _ in 0..q {
        deriv *= rot * family::pow1p(w, m - 1) * (C::new(1.0, 0.0) + (m as f64 + 1.0) * w);
        w = params.eval(w);
    }
    deriv
}

/// The explosion function χ at `p/q`, sampled: the coefficient `A(p/q)`,
/// the chosen branch of `χ'(0)`, and full cycles at the requested `δ`.
#[derive(Clone, Debug)]
pub struct CycleFunction {
    pub p: i64,
    pub q: u32,
    pub m: u32,
    pub a: C,
    pub chi_prime0: C,
    /// `(δ, cycle of P_{p/q+δ^q})` pairs.
    pub samples: Vec<(C, Vec<C>)>,
}

impl CycleFunction {
    /// Continue χ out to each `δ`, verifying the cycle residual and the
    /// rotation equivariance `χ(ζδ) = P_α(χ(δ))` as the samples are built.
    pub fn sample(m: u32, p: i64, q: u32, deltas: &[C]) -> Result<Self> {
        let a = coefficient_a(m, p, q)?;
        let slope = chi_prime0(m, p, q)?;
        let zeta = (C::i() * TAU * p as f64 / q as f64).exp();
        let mut samples = Vec::with_capacity(deltas.len());
        for &delta in deltas {
            let cycle = chi_continuation(m, p, q, delta, 1.25)?;
            let params =
                FamilyParams::new(m, C::new(p as f64 / q as f64, 0.0) + family::cpow(delta, q))?;
            let rotated = chi_continuation(m, p, q, zeta * delta, 1.25)?;
            let equiv = (rotated[0] - params.eval(cycle[0])).norm();
            if equiv > 1e-9 {
                return Err(Error::NoConverge(format!(
                    "equivariance residual {equiv:e} at δ={delta}"
                )));
            }
            samples.push((delta, cycle));
        }
        Ok(Self {
            p,
            q,
            m,
            a,
            chi_prime0: slope,
            samples,
        })
    }
}

/// The sublevel set `X_n(ρ) = { z : z^{q_n}/(z^{q_n} − ε_n) ∈ 𝔻(0, s_n) }`
/// with `s_n = ρ^{q_n}/(ρ^{q_n} + |ε_n|)`.
#[derive(Clone, Copy, Debug)]
pub struct PerturbedSiegelSet {
    pub q_n: u32,
    pub eps_n: f64,
    pub rho: f64,
}

impl PerturbedSiegelSet {
    pub fn new(q_n: u32, eps_n: f64, rho: f64) -> Result<Self> {
        if q_n == 0 || eps_n == 0.0 || !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Domain("need q_n ≥ 1, ε_n ≠ 0 and ρ ∈ (0,1)".into()));
        }
        Ok(Self { q_n, eps_n, rho })
    }

    pub fn s_n(&self) -> f64 {
        let rq = self.rho.powi(self.q_n as i32);
        rq / (rq + self.eps_n.abs())
    }
}

/// Outcome of a single `X_n(ρ)` membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XnMembership {
    pub inside: bool,
    /// Set when `z^{q_n} = ε_n` (pole of the rational invariant).
    pub pole: bool,
}

pub fn xn_membership(set: &PerturbedSiegelSet, z: C) -> XnMembership {
    let zq = family::cpow(z, set.q_n);
    let den = zq - C::new(set.eps_n, 0.0);
    if den == C::new(0.0, 0.0) {
        return XnMembership {
            inside: false,
            pole: true,
        };
    }
    XnMembership {
        inside: (zq / den).norm() < set.s_n(),
        pole: false,
    }
}

/// Height above which `π_n` maps into the ring `|invariant| < r^{q_n}`-side:
/// `τ_n(r) = log(1 + ε_n/r^{q_n}) / (2π q_n² ε_n)`.
pub fn tau_n(set: &PerturbedSiegelSet, r: f64) -> f64 {
    (1.0 + set.eps_n / r.powi(set.q_n as i32)).ln() / (TAU * (set.q_n as f64).powi(2) * set.eps_n)
}

/// The straightening covering `π_n(Z) = ψ_n⁻¹(e^{2πi q_n ε_n Z})`, branch
/// `k ∈ [0, q_n)` of the q_n-th root. Periodic with period `1/(q_n ε_n)`.
pub fn pi_n(set: &PerturbedSiegelSet, z_cov: C, branch: u32) -> Result<C> {
    if branch >= set.q_n {
        return Err(Error::Domain(format!(
            "branch {branch} must be < q_n = {}",
            set.q_n
        )));
    }
    let qn = set.q_n as f64;
    let w = (C::i() * TAU * qn * set.eps_n * z_cov).exp();
    let wq = family::cpow(w, set.q_n);
    let den = wq - C::new(1.0, 0.0);
    if den == C::new(0.0, 0.0) {
        return Err(Error::Domain("π_n pole: w^{q_n} = 1".into()));
    }
    let zq = C::new(set.eps_n, 0.0) * wq / den;
    let root = C::from_polar(zq.norm().powf(1.0 / qn), zq.arg() / qn);
    Ok(root * (C::i() * TAU * branch as f64 / qn).exp())
}

/// The vector field `ξ_n(z) = 2πi q_n z (ε_n − z^{q_n})` that `π_n`
/// straightens to `d/dZ`.
pub fn xi_n(set: &PerturbedSiegelSet, z: C) -> C {
    C::i() * TAU * set.q_n as f64 * z * (C::new(set.eps_n, 0.0) - family::cpow(z, set.q_n))
}

/// Empirical continuation radius: the largest swept `|δ|` for which
/// [`chi_continuation`] succeeds in all 16 directions, reported next to the
/// theoretical floor `q^{−3/q}`.
#[derive(Clone, Copy, Debug)]
pub struct ProbeReport {
    pub max_ok: f64,
    pub theory_floor: f64,
}

pub fn explosion_radius_probe(m: u32, p: i64, q: u32) -> Result<ProbeReport> {
    if q > 8 {
        return Err(Error::Domain(format!(
            "probe is desk-scale only (q ≤ 8), got q={q}"
        )));
    }
    let theory_floor = (q as f64).powf(-3.0 / q as f64);
    let mut r = 0.05 * theory_floor;
    let mut max_ok = 0.0;
    while r <= 1.05 * theory_floor {
        let mut all_ok = true;
        for k in 0..16 {
            let delta = C::from_polar(r, TAU * k as f64 / 16.0);
            if chi_continuation(m, p, q, delta, 1.25).is_err() {
                all_ok = false;
                break;
            }
        }
        if !all_ok {
            break;
        }
        max_ok = r;
        r *= 1.12;
    }
    Ok(ProbeReport {
        max_ok,
        theory_floor,
    })
}
