//! Continued-fraction expansion, convergents, Brjuno sums, bounded-type
//! classification, and the perturbed sequences `α_n`, `ε_n`.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Expansion terminates (rational detected) once a tail drops below this.
pub const RATIONAL_EPS: f64 = 1e-14;

/// Entries `a_k`, convergents `p_k/q_k`, tails `α_k` and products `β_k` of a
/// continued-fraction expansion.
///
/// Convergents are exact big integers; `q_k p_{k−1} − p_k q_{k−1} = (−1)^k`
/// holds exactly. `β_{−1} = 1` is not stored; `betas[k]` is `β_k = α₀⋯α_k`.
#[derive(Clone, Debug)]
pub struct ContinuedFractionData {
    pub entries: Vec<i64>,
    pub convergents: Vec<(BigInt, BigInt)>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    /// True when the expansion stopped early on a rational tail.
    pub terminated: bool,
}

impl ContinuedFractionData {
    /// Depth actually reached (number of entries beyond `a₀`).
    pub fn depth(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }
}

/// Expand `alpha` to (at most) `depth` entries past `a₀` by the Gauss map:
/// `a_{k+1} = ⌊1/α_k⌋`, `α_{k+1} = {1/α_k}`.
pub fn expand(alpha: f64, depth: usize) -> Result<ContinuedFractionData> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha={alpha} must be finite")));
    }
    if depth < 1 {
        return Err(Error::Domain("depth must be ≥ 1".into()));
    }
    // A fractional part within RATIONAL_EPS of 1 is rounding noise from a
    // rational just below the next integer; carry and terminate.
    let split = |x: f64| -> (f64, f64) {
        let mut a = x.floor();
        let mut t = x - a;
        if t > 1.0 - RATIONAL_EPS {
            a += 1.0;
            t = 0.0;
        }
        (a, t)
    };
    let (a0, mut tail) = split(alpha);
    let mut entries = vec![a0 as i64];
    let mut alphas = vec![tail];
    let mut terminated = tail < RATIONAL_EPS;
    if !terminated {
        for _ in 0..depth {
            let (a, t) = split(1.0 / tail);
            tail = t;
            entries.push(a as i64);
            alphas.push(tail);
            if tail < RATIONAL_EPS {
                terminated = true;
                break;
            }
        }
    }
    let convergents = convergents(&entries)?;
    let mut betas = Vec::with_capacity(alphas.len());
    let mut prod = 1.0;
    for &a in &alphas {
        prod *= a;
        betas.push(prod);
    }
    Ok(ContinuedFractionData {
        entries,
        convergents,
        alphas,
        betas,
        terminated,
    })
}

/// Exact convergents `p_k/q_k` from the recurrences
/// `p_k = a_k p_{k−1} + p_{k−2}`, `q_k = a_k q_{k−1} + q_{k−2}`.
pub fn convergents(entries: &[i64]) -> Result<Vec<(BigInt, BigInt)>> {
    if entries.is_empty() {
        return Err(Error::Domain("entries must be nonempty".into()));
    }
    if entries.iter().skip(1).any(|&a| a < 1) {
        return Err(Error::Domain("entries a_k for k ≥ 1 must be ≥ 1".into()));
    }
    let mut out = Vec::with_capacity(entries.len());
    let (mut p_prev, mut q_prev) = (BigInt::from(1), BigInt::from(0));
    let (mut p, mut q) = (BigInt::from(entries[0]), BigInt::from(1));
    out.push((p.clone(), q.clone()));
    for &a in &entries[1..] {
        let p_next = BigInt::from(a) * &p + &p_prev;
        let q_next = BigInt::from(a) * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    Ok(out)
}

/// Partial Brjuno sum `Σ_{k=0}^{depth} β_{k−1} log(1/α_k)` with `β_{−1} = 1`.
///
/// The products `β_k` are carried in log space so deep expansions do not
/// underflow. A rational `alpha` is rejected ("infinite Brjuno sum").
pub fn brjuno_sum(alpha: f64, depth: usize) -> Result<f64> {
    let cf = expand(alpha, depth.max(1))?;
    if cf.terminated {
        return Err(Error::Domain(format!(
            "alpha={alpha} is rational to working precision: infinite Brjuno sum"
        )));
    }
    let mut sum = 0.0;
    let mut ln_beta_prev = 0.0f64; // ln β_{−1}
    for &a in cf.alphas.iter().take(depth + 1) {
        sum += ln_beta_prev.exp() * -a.ln();
        ln_beta_prev += a.ln();
    }
    Ok(sum)
}

/// Result of the bounded-type check against `𝒮_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnReport {
    pub member: bool,
    /// Number of entries past `a₀` that were inspected.
    pub depth_checked: usize,
}

/// True iff every available `a_k` (`k ≥ 1`) satisfies `N ≤ a_k ≤ bound`
/// (with `bound = ∞` when `None`). Finite data only: membership in `𝒮_N`
/// proper is a statement about the full expansion.
pub fn is_in_sn(entries: &[i64], n: i64, bound: Option<i64>) -> SnReport {
    let depth_checked = entries.len().saturating_sub(1);
    let member = entries
        .iter()
        .skip(1)
        .all(|&a| a >= n && bound.is_none_or(|b| a <= b));
    SnReport {
        member,
        depth_checked,
    }
}

/// The perturbed rotation number `α_n = [a₀, …, a_n, A_n, N, N, …]`.
#[derive(Clone, Debug)]
pub struct PerturbedSequenceSpec {
    pub base_entries: Vec<i64>,
    /// The inserted large entry `A_n ≥ 1`.
    pub a_n: i64,
    /// Constant tail entry `N ≥ 1`.
    pub tail: i64,
    /// Index after which `A_n` is inserted.
    pub n: usize,
}

impl PerturbedSequenceSpec {
    pub fn new(base_entries: Vec<i64>, a_n: i64, tail: i64, n: usize) -> Result<Self> {
        if a_n < 1 || tail < 1 {
            return Err(Error::Domain("A_n and the tail value N must be ≥ 1".into()));
        }
        if n + 1 >= base_entries.len() {
            return Err(Error::Domain(format!(
                "need base entries up to index n={n}, got {}",
                base_entries.len()
            )));
        }
        if base_entries.iter().skip(1).any(|&a| a < 1) {
            return Err(Error::Domain("base entries a_k (k ≥ 1) must be ≥ 1".into()));
        }
        Ok(Self {
            base_entries,
            a_n,
            tail,
            n,
        })
    }

    /// Value of the periodic tail `θ = [0; N, N, N, …] = (√(N²+4) − N)/2`.
    pub fn tail_theta(&self) -> f64 {
        let n = self.tail as f64;
        ((n * n + 4.0).sqrt() - n) / 2.0
    }

    /// Numeric value of `α_n`, with `θ` the value of the tail after `A_n`:
    /// `α_n = (p_n (A_n + θ) + p_{n−1}) / (q_n (A_n + θ) + q_{n−1})`.
    pub fn alpha_value(&self, theta_tail: f64) -> Result<f64> {
        let conv = convergents(&self.base_entries[..=self.n])?;
        let (p_n, q_n) = &conv[self.n];
        let (p_nm1, q_nm1) = if self.n == 0 {
            (BigInt::from(1), BigInt::from(0))
        } else {
            conv[self.n - 1].clone()
        };
        let x = self.a_n as f64 + theta_tail;
        let (p_n, q_n) = (p_n.to_f64().unwrap(), q_n.to_f64().unwrap());
        let (p_nm1, q_nm1) = (p_nm1.to_f64().unwrap(), q_nm1.to_f64().unwrap());
        Ok((p_n * x + p_nm1) / (q_n * x + q_nm1))
    }
}

/// Closed form `ε_n = α_n − p_n/q_n = (−1)^n / (q_n²(A_n+θ) + q_n q_{n−1})`.
pub fn epsilon_n(spec: &PerturbedSequenceSpec, theta_tail: f64) -> Result<f64> {
    let conv = convergents(&spec.base_entries[..=spec.n])?;
    let q_n = conv[spec.n].1.to_f64().unwrap();
    let q_nm1 = if spec.n == 0 {
        0.0
    } else {
        conv[spec.n - 1].1.to_f64().unwrap()
    };
    let sign = if spec.n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / (q_n * q_n * (spec.a_n as f64 + theta_tail) + q_n * q_nm1))
}

/// `(√5−1)/2`, the golden rotation number `[0; 1, 1, 1, …]`.
pub fn golden_mean() -> f64 {
    (5.0f64.sqrt() - 1.0) / 2.0
}

/// Numeric value of the finite continued fraction `[a₀, a₁, …]`.
pub fn rational_value(entries: &[i64]) -> Result<f64> {
    let conv = convergents(entries)?;
    let (p, q) = conv.last().expect("convergents is nonempty");
    Ok(p.to_f64().unwrap() / q.to_f64().unwrap())
}

/// Exact-arithmetic check of `q_k p_{k−1} − p_k q_{k−1} = (−1)^k`.
pub fn determinant_identity_holds(conv: &[(BigInt, BigInt)]) -> bool {
    let (mut p_prev, mut q_prev) = (BigInt::from(1), BigInt::from(0));
    for (k, (p, q)) in conv.iter().enumerate() {
        let det = q * &p_prev - p * &q_prev;
        let expected = if k.is_multiple_of(2) {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        };
        if det != expected {
            return false;
        }
        p_prev = p.clone();
        q_prev = q.clone();
    }
    true
}

/// gcd of the absolute values, for the coprimality invariant.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}
