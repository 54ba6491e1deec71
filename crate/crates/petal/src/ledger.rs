//! Deterministic re-derivation of the printed constants and inequalities
//! that the construction's estimates rest on, as named pass/fail checks.
//!
//! Every check is pure arithmetic (plus fixed-density boundary sampling),
//! compares computed values against the printed decimals at the stated
//! relative tolerance, and asserts each inequality with a strictly positive
//! margin.

use crate::family::{self, EllipseSpec, Sector};
use crate::{C, TAU};
use std::f64::consts::{E, PI};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub m: Option<u32>,
    /// Values computed here, in the same order as `printed`.
    pub computed: Vec<f64>,
    /// The reference decimals being reproduced.
    pub printed: Vec<f64>,
    pub rel_tol: f64,
    /// Inequality margins; all must be strictly positive.
    pub margins: Vec<f64>,
    pub pass: bool,
    pub note: Option<&'static str>,
}

impl CheckResult {
    fn finish(mut self) -> Self {
        let values_ok = self
            .computed
            .iter()
            .zip(&self.printed)
            .all(|(c, p)| (c - p).abs() <= self.rel_tol * p.abs().max(1.0))
            && self.computed.len() == self.printed.len();
        // NaN-safe: a NaN margin must fail
        let margins_ok = self.margins.iter().all(|&m| m > 0.0);
        self.pass = values_ok && margins_ok;
        self
    }

    /// Worst relative deviation from the printed values.
    pub fn worst_rel(&self) -> f64 {
        self.computed
            .iter()
            .zip(&self.printed)
            .map(|(c, p)| (c - p).abs() / p.abs().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Minimum of `(a t + b)² + c²(1 − t²) + d` over `t ∈ [−1, 1]`
/// (the ellipse-containment boundary functional).
fn quad_min(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let lead = a * a - c * c;
    let g = |t: f64| (a * t + b).powi(2) + c * c * (1.0 - t * t) + d;
    let mut best = g(-1.0).min(g(1.0));
    if lead > 0.0 {
        let t = -a * b / lead;
        if (-1.0..=1.0).contains(&t) {
            best = best.min(g(t));
        }
    }
    best
}

/// The piecewise case table exactly as the reference derivation tabulates it.
/// For `lead > 0` with `ab/lead` beyond ±1 it reads off the endpoint of the
/// same sign as `ab/lead`, which for h₂ at r = 1.7 is the top of the range
/// rather than the minimum; the printed decimal is reproduced from this
/// table, while positivity is asserted on [`quad_min`] as well.
fn paper_piecewise_min(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let lead = a * a - c * c;
    let rest = b * b + c * c + d;
    let crit = a * b / lead;
    if lead == 0.0 {
        return if a * b > 0.0 {
            rest - 2.0 * a * b
        } else {
            rest + 2.0 * a * b
        };
    }
    if lead > 0.0 {
        if (-1.0..=1.0).contains(&crit) {
            rest - (a * b) * (a * b) / lead
        } else if crit < -1.0 {
            lead - 2.0 * a * b + rest
        } else {
            lead + 2.0 * a * b + rest
        }
    } else if (-1.0..=1.0).contains(&crit) {
        (lead - 2.0 * a * b).min(lead + 2.0 * a * b) + rest
    } else if crit < -1.0 {
        lead - 2.0 * a * b + rest
    } else {
        lead + 2.0 * a * b + rest
    }
}

/// Ellipse containment minima for `(e₁,e₀,e₋₁) = (0.84, −0.18, 0.6)`:
/// the unit disk and the ±1 disks inside `E_{1.7}`, and the small disks
/// inside `E₁`.
pub fn check_ellipse_minima() -> CheckResult {
    let (e1, e0, em1) = family::LEDGER_ELLIPSE;
    let e17 = EllipseSpec::new(e1, e0, em1, 1.7).unwrap();
    let e10 = EllipseSpec::new(e1, e0, em1, 1.0).unwrap();
    let (a17, b17) = (e17.a_axis(), e17.b_axis());
    let (a1, b1) = (e10.a_axis(), e10.b_axis());

    let cases: [(f64, f64, f64, f64); 6] = [
        (a17, e0, b17, -1.0),
        (a17, e0 - 1.0, b17, -0.01),
        (a17, e0 + 1.0, b17, -0.01),
        (a1, e0, b1, -0.04),
        (a1, e0 - 1.0, b1, -0.01),
        (a1, e0 + 1.0, b1, -0.01),
    ];
    let tabulated: Vec<f64> = cases
        .iter()
        .map(|&(a, b, c, d)| paper_piecewise_min(a, b, c, d))
        .collect();
    // positivity of the genuine minima (the containment claim itself)
    let margins: Vec<f64> = cases
        .iter()
        .map(|&(a, b, c, d)| quad_min(a, b, c, d))
        .chain(tabulated.iter().copied())
        .collect();

    let mut computed = tabulated;
    computed.extend([a17, b17, a1, b1]);
    CheckResult {
        name: "ellipse_minima",
        m: None,
        computed,
        printed: vec![
            0.137177, 8.75717, 0.760272, 0.0166743, 0.00781714, 0.0283886, 1.78094, 1.07506,
            1.44, 0.24,
        ],
        rel_tol: 1e-4,
        margins,
        pass: false,
        note: Some("8.75717 reproduces the reference case table, which reads the t=−1 endpoint; the true minimum of that functional is 0.3511 (also positive)"),
    }
    .finish()
}

/// Covering constants `ρ = 0.07`, `R = 2.66×10^m`, and the four-disk cover
/// of `E_{1.4}` with its printed sub-values.
pub fn check_covering_constants(m: u32, dense: bool) -> CheckResult {
    let (e1, e0, em1) = family::LEDGER_ELLIPSE;
    let e14 = EllipseSpec::new(e1, e0, em1, 1.4).unwrap();
    let (a14, b14) = (e14.a_axis(), e14.b_axis());

    let mut margins = Vec::new();

    // (4/(3√2))(4/15)^k ≤ 0.07 for all k ≥ 2, monotone decreasing in k
    let rho_val = |k: u32| 4.0 / (3.0 * 2.0f64.sqrt()) * (4.0f64 / 15.0).powi(k as i32);
    for k in 2..=200 {
        margins.push(0.07 - rho_val(k));
    }

    // 5^{1+m}/2 ≤ (4+ε₃²)^{1+m}/((1+ε₃)ε₃^{2m}) ≤ (8/3)·10^m over ε₃ ∈ [2/3, 1);
    // the upper bound is attained at ε₃ = 2/3 (that equality is the value
    // check below), so the margin sweep uses the open interior
    let mf = m as f64;
    let ln_h = |eps3: f64| {
        (1.0 + mf) * (4.0 + eps3 * eps3).ln() - (1.0 + eps3).ln() - 2.0 * mf * eps3.ln()
    };
    let ln_low = (1.0 + mf) * 5.0f64.ln() - 2.0f64.ln();
    let ln_high = (8.0f64 / 3.0).ln() + mf * 10.0f64.ln();
    for k in 0..=100 {
        let eps3 = 2.0 / 3.0 + (1.0 / 3.0) * ((k as f64 + 0.5) / 101.5);
        margins.push(ln_h(eps3) - ln_low);
        margins.push(ln_high - ln_h(eps3));
    }
    let endpoint_gap = ln_h(2.0 / 3.0) - ln_high;

    // boundary-arc sub-values at x₁ = −0.5, x₂ = 0.8
    let y = |x: f64| b14 * (1.0 - ((x - e0) / a14).powi(2)).sqrt();
    let (y1, y2) = (y(-0.5), y(0.8));
    let g1 = (-0.5f64 + 1.0).powi(2) + y1 * y1;
    let g2 = 0.8f64.powi(2) + y2 * y2;
    let g3 = (0.8f64 - 1.0).powi(2) + y2 * y2;
    margins.extend([
        2.0 - (a14 - e0),
        1.0 - g1,
        1.0 - (0.25 + y1 * y1),
        1.0 - g2,
        5.0 / 3.0 - (a14 + e0),
        4.0 / 9.0 - g3,
    ]);

    // four-disk cover of ∂E_{1.4}, sampled
    let alpha = mf * PI / (2.0 * (mf + 1.0));
    let (cot_a, inv_sin) = (alpha.cos() / alpha.sin(), 1.0 / alpha.sin());
    let samples = if dense { 7210 } else { 721 };
    let mut covered = true;
    for k in 0..samples {
        let z = e14.boundary(TAU * k as f64 / samples as f64);
        let in_disks = (z - C::new(0.0, cot_a)).norm() <= inv_sin
            || (z - C::new(0.0, -cot_a)).norm() <= inv_sin
            || (z - C::new(1.0, 0.0)).norm() <= 2.0 / 3.0
            || (z - C::new(-1.0, 0.0)).norm() <= 1.0;
        covered &= in_disks;
    }
    margins.push(if covered { 1.0 } else { -1.0 });

    CheckResult {
        name: "covering_constants",
        m: Some(m),
        computed: vec![rho_val(2), a14, b14, y1, y2, g1, g2, g3, endpoint_gap],
        printed: vec![
            0.0670442, 1.60457, 0.747429, 0.732415, 0.591829, 0.786432, 0.990262, 0.390262, 0.0,
        ],
        rel_tol: 1e-5,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

fn quartic1(m: f64) -> f64 {
    1034.91 + 4872.17 * m + 6385.74 * m * m + 1274.23 * m.powi(3) - 478.305 * m.powi(4)
}

fn quartic2(m: f64) -> f64 {
    17871.7 + 36651.0 * m + 28649.2 * m * m + 6001.32 * m.powi(3) - 336.64 * m.powi(4)
}

/// The two quartic negativity claims behind the Fatou-coordinate sector
/// bounds, plus the Cauchy root bound that seals them for large `m`.
pub fn check_sector_polynomials() -> CheckResult {
    let mut margins = Vec::new();
    for m in 6..=10_000u32 {
        margins.push(-quartic1(m as f64));
    }
    for m in 22..=10_000u32 {
        margins.push(-quartic2(m as f64));
    }
    // sharpness witnesses
    margins.push(quartic1(5.0));
    margins.push(quartic2(21.0));
    let root_bound = 1.0
        + [1034.91f64, 4872.17, 6385.74, 1274.23]
            .iter()
            .map(|a| a / 478.305)
            .fold(0.0, f64::max);
    CheckResult {
        name: "sector_polynomials",
        m: None,
        computed: vec![quartic1(6.0), root_bound],
        printed: vec![-84495.0, 14.3508],
        rel_tol: 1e-4,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// The `arg Φ'_att` / `|Φ'_att|` bound chain for `m ≥ 22`:
/// seven addends, the 0.753053 / −0.624918 sums, and the derivative
/// constants 0.0613686 and 0.800739.
pub fn check_phi_att_bounds(m: u32) -> CheckResult {
    let (a, b) = (8.35286f64, 6.25286f64);
    let e0 = -0.18f64;
    let theta: f64 = PI / 5.0;
    let r4 = 0.48f64;

    let part_i = [
        theta.sin() / (a + theta.cos()),
        4.0 * theta.sin() / (4.0 * b + a * (2.0 + e0) + 4.0 * theta.cos()),
        theta.sin() / (2.0 * (2.0 + e0) * b + theta.cos()),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    let part_iii = [4.0 / (a * a), 2.0 / (a * b), 1.0 / (2.0 * b * b)]
        .into_iter()
        .fold(0.0f64, f64::max);
    let part_iv = [
        32.0 / (3.0 * a.powi(3)),
        48.0 / (9.0 * a * a * b),
        16.0 / (9.0 * a * b * b),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    let part_v = (256.0 / (a.powi(3) * (a - 4.0)) * (10.0f64 / 9.5).powi(4)
        + (4.0 / (a * 81.0)).powi(4))
        / 8.0;
    let part_vi = 2.0 / (5.0 * a * (a * 9.0 + b).powi(3) * (a * 9.0 + b + 1.0));
    let part_vii = -0.5 * (1.0 - (1.44 / (a * 9.0 + b - 0.18)).powi(2)).ln();
    let part_viii = -0.5 * (1.0 - r4 * r4).ln();

    // the chain takes 10⁻⁸ as the (valid) bound for part (vi)
    let tail = part_iii + part_iv + part_v + 1e-8 + part_vii;
    let upper = part_i.atan() + 0.45f64.asin() + tail + part_viii;
    let lower = part_i.atan() - 0.45f64.asin() - tail - part_viii;
    let dmax = tail.exp() / ((0.55 + 2.2 * 9.0) * (1.0 - r4 * r4).sqrt());
    let dmin_coeff = (1.0 - r4 * r4).sqrt() / tail.exp();

    let mut margins = vec![
        PI / 4.0 - upper,
        lower - (-PI / 5.0),
        1e-8 - part_vi,
        (m as f64) - 21.5,
    ];
    // linear envelopes for u₄ and u₅ over the working range; at k = 9 the
    // lower u₄ envelope is tight by construction ((1+√5)·10⁹/9⁹ prints as
    // 8.35286), so that one is a value comparison rather than a margin
    let mut u4_at_9 = 0.0;
    for k in 9..=1000u32 {
        let kf = k as f64;
        let growth = (1.0 + 5.0f64.sqrt()) * (kf + 1.0) * ((kf + 1.0) / kf).powi(k as i32);
        let u4 = growth - 2.1;
        let cp = family::critical_data(k).unwrap().cp_q1;
        let u5 = growth - cp - 2.1;
        if k == 9 {
            u4_at_9 = u4;
        } else {
            margins.push(u4 - (8.35286 * kf + 6.25286));
        }
        margins.push(8.8021 * kf + 10.7021 - u4);
        margins.push(u5 - (4.35286 * kf + 2.25286));
        margins.push(4.8021 * kf + 6.7021 - u5);
    }

    CheckResult {
        name: "phi_att_bounds",
        m: Some(m),
        computed: vec![
            part_i, part_iii, part_iv, part_v, part_vii, part_viii, upper, lower, dmax, dmin_coeff,
            u4_at_9,
        ],
        printed: vec![
            0.0641555,
            0.057331,
            0.018303,
            0.0154873,
            0.000157084,
            0.130942,
            0.753053,
            -0.624918,
            0.0613686,
            0.800739,
            8.35286 * 9.0 + 6.25286,
        ],
        rel_tol: 1e-5,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// `Re F(cv_Q) > cv_Q` for `m ≥ 22`: the printed coefficient chain plus a
/// direct sampling of `Re Q` on the worst-case disk boundary.
pub fn check_w1_connected(m: u32, dense: bool) -> CheckResult {
    let ratio = (23.0f64 / 22.0).powi(22);
    let coeff = ratio + 0.49 / 2.72 - 32.0 / 729.0;
    let constant = -5.0 - 1.96 / 2.71 + 128.0 / 729.0 - 16.0 / (22.0 * 81.0) - 32.0 / 27.0;
    let margin_at_22 = (coeff - 2.72) * 4.0 * 23.0;

    let mut margins = vec![margin_at_22 + constant, (m as f64) - 21.5];
    for k in 22..=10_000u32 {
        margins.push((coeff - 2.72) * 4.0 * (k as f64 + 1.0) + constant);
    }

    // direct check at m: min Re Q over |z − cv_Q| = 3 exceeds cv_Q
    // (the surrogate for φ⁻¹(cv_Q), which lies within 3 of cv_Q)
    let cv = family::cv_q(m);
    let samples = if dense { 7200 } else { 720 };
    let mut min_re = f64::INFINITY;
    for k in 0..samples {
        let z = C::new(cv, 0.0) + C::from_polar(3.0, TAU * k as f64 / samples as f64);
        min_re = min_re.min(family::eval_q(m, z).unwrap().re);
    }
    margins.push(min_re - cv);

    CheckResult {
        name: "w1_connected",
        m: Some(m),
        computed: vec![ratio, coeff, constant, margin_at_22],
        printed: vec![2.65897, 2.79522, -6.74183, 6.92024],
        // 6.92024 is printed from the already-rounded 2.79522, so the
        // unrounded chain lands 1.6e−5 away
        rel_tol: 1e-4,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// Sector mapping `Q(𝕍̄((4e−1)m, π/5)) ⊂ 𝕍(4e(m+1), π/5)` for `m ≥ 5`:
/// boundary sampling plus the printed threshold arithmetic.
pub fn check_sector_mapping(m: u32, dense: bool) -> CheckResult {
    let mf = m as f64;
    let pi5 = PI / 5.0;
    let vertex = (4.0 * E - 1.0) * mf;
    let inner_target = 4.0 * E * (mf + 1.0);
    let cv = family::cv_q(m);

    let samples = if dense { 10_000 } else { 1_000 };
    let target = Sector::new(C::new(inner_target, 0.0), pi5).unwrap();
    let wide = Sector::new(C::new(cv, 0.0), pi5).unwrap();
    let mut all_inside = true;
    for k in 0..samples / 2 {
        let r = 1e-3 + (1e4 * mf - vertex) * (k as f64 + 0.5) / (samples / 2) as f64;
        for sgn in [-1.0f64, 1.0] {
            let z = C::new(vertex, 0.0) + C::from_polar(r, sgn * pi5);
            let q = family::eval_q(m, z).unwrap();
            all_inside &= target.contains(q) && wide.contains(q);
        }
    }

    // |Q₂| ≤ (2⁷/3⁶)m + (2⁴/3⁴)/m + 2⁵/3³ on |ζ| ≥ 9m+1
    let q2_bound = 128.0 / 729.0 * mf + 16.0 / (81.0 * mf) + 32.0 / 27.0;
    let mut worst_q2: f64 = 0.0;
    for k in 0..360 {
        let z = C::from_polar(9.0 * mf + 1.0 + 1e-9, TAU * k as f64 / 360.0);
        if (z - C::new(1.0, 0.0)).norm() > 1e-6 {
            worst_q2 = worst_q2.max(family::q_remainder(m, z).unwrap().norm());
        }
    }

    let threshold = |k: f64| -6.46577 + 1.58752 * k;
    let mut margins = vec![
        if all_inside { 1.0 } else { -1.0 },
        q2_bound - worst_q2,
        inner_target - cv,
        pi5 - 0.5877f64.asin(),
        mf - 4.5,
    ];
    for k in 5..=10_000u32 {
        margins.push(threshold(k as f64));
    }
    // the threshold inequality is the printed form of
    // ((2⁷/3⁶)m + (2⁴/3⁴)/3 + 2⁵/3³) < 0.5877 (3m + 2 − 4e)
    let lhs = 128.0 / 729.0 * mf + 16.0 / 243.0 + 32.0 / 27.0;
    let rhs = 0.5877 * (3.0 * mf + 2.0 - 4.0 * E);
    margins.push(rhs - lhs);

    CheckResult {
        name: "sector_mapping",
        m: Some(m),
        computed: vec![4.0 * 7776.0 / 3125.0, 4.0 * E - 1.0, q2_bound],
        printed: vec![
            9.95328,
            9.87313,
            128.0 / 729.0 * 5.0 + 16.0 / 405.0 + 32.0 / 27.0,
        ],
        rel_tol: 1e-5,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// The `β_max < |α(r,θ)|` comparison at `r = cp_Q1` for the printed cases
/// `m ∈ {3, 4}` and the general linear bound for `m ≥ 5`.
pub fn check_beta_max() -> CheckResult {
    let phi1_max = phi1_max_const();
    let beta_addends = |m: u32| -> (Vec<f64>, f64) {
        let r = family::critical_data(m).unwrap().cp_q1;
        let mf = m as f64;
        let first = (8.0 * mf * (mf + 1.0) + 1.0) / r;
        let q2 = family::q2_max_terms(m, r).unwrap();
        let total = 1.68 + first / 2.0 + q2.iter().sum::<f64>() + phi1_max;
        (vec![first, q2[0], q2[1], q2[2], q2[3], total], total)
    };
    let (add4, beta4) = beta_addends(4);
    let (add3, beta3) = beta_addends(3);

    let mut computed = vec![phi1_max];
    computed.extend(add4);
    computed.extend(add3);
    let mut printed = vec![0.214541];
    printed.extend([8.97222, 1.47343, 0.21049, 0.339677, 3.04763, 11.4519]);
    printed.extend([6.96429, 0.88856, 0.266568, 0.137461, 2.55277, 9.22205]);

    let mut margins = vec![17.82 - beta4, 13.82 - beta3];
    // general m: β_max(cp_Q1) ≤ (37/15)m + 8 + 1/m ≤ (4m+2) + e₀
    for m in 5..=200u32 {
        let mf = m as f64;
        let linear = 37.0 / 15.0 * mf + 8.0 + 1.0 / mf;
        margins.push(linear - beta_addends(m).1);
        margins.push((4.0 * mf + 2.0) - 0.18 - linear);
    }
    for m in 201..=10_000u32 {
        let mf = m as f64;
        margins.push((4.0 * mf + 2.0) - 0.18 - (37.0 / 15.0 * mf + 8.0 + 1.0 / mf));
    }

    CheckResult {
        name: "beta_max",
        m: None,
        computed,
        printed,
        rel_tol: 1e-4,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// `φ_{1,max}(r)` at `r = 5 + 2√6` with the ledger ellipse constants.
fn phi1_max_const() -> f64 {
    let a_e = 1.44f64;
    let r = 5.0 + 2.0 * 6.0f64.sqrt();
    a_e * (-(1.0 - (a_e / (r - 0.18)).powi(2)).ln()).sqrt()
}

/// The univalent-image ring margin: `|arg φ(ζ)/ζ| < π` on the exterior of
/// `E_{1.4}` via `log(2.4/0.4)` and the arcsin bound.
pub fn check_univalent_arg_margin() -> CheckResult {
    let log_ring = (2.4f64 / 0.4).ln();
    let as_pi = log_ring / PI;
    let second = 0.18 / (0.84 * 1.4) + 0.6 / (0.84 * 1.4 * 1.4);
    let second_pi = second / 3.0;
    CheckResult {
        name: "univalent_arg_margin",
        m: None,
        computed: vec![log_ring, as_pi, second, second_pi],
        printed: vec![1.79176, 0.570335, 0.517493, 0.172498],
        rel_tol: 1e-4,
        // the honest margin uses arcsin directly; the reference π/3·x shortcut
        // is applied a hair past its x ≤ 1/2 hypothesis (0.5175), where it
        // understates arcsin by 0.0023, without endangering the conclusion
        margins: vec![PI - (log_ring + second.asin())],
        pass: false,
        note: Some("printed 0.570335π is log(2.4/0.4)/π = 1.79176/π; 0.172498π uses the π/3·x bound at x = 0.5175 > 1/2, direct arcsin gives 0.17323π and the sum still clears π"),
    }
    .finish()
}

/// Constants of the attracting-coordinate proposition: the η floor at
/// `m = 22`, `tan(2π/5)`, and the `D₁ ⊂ 𝔻(cv_Q, R₁)` radius chain.
pub fn check_attracting_constants(m: u32) -> CheckResult {
    let eta_floor = (12.0f64.ln() + 23.0f64.ln() + 46.0 * 30.0f64.ln() + 1.0) / 8.0;
    let eta22 = family::structural_constants(22).unwrap().eta;
    let tan_2pi5 = (2.0 * PI / 5.0).tan();
    let r1_coeff = 2.39 * 0.800739;

    let mut margins = vec![
        eta22 - eta_floor,
        eta_floor - tan_2pi5,
        (m as f64) - 21.5,
        1000.0 - 211.0,
    ];
    // (1.5k+3.5)(4.35+7.25k) < 16+32k+11k² < 10^k, then the radius chain
    for k in 3..=300u32 {
        let kf = k as f64;
        let quad = 16.0 + 32.0 * kf + 11.0 * kf * kf;
        margins.push(quad - (1.5 * kf + 3.5) * (4.35 + 7.25 * kf));
        margins.push(10.0f64.powi(k as i32) - quad);
    }
    for k in 22..=250u32 {
        let kf = k as f64;
        let eta = family::structural_constants(k).unwrap().eta;
        let radius = (1.0 + eta * eta).sqrt() * (4.35 + 7.25 * kf) / 0.800739;
        margins.push(2.39 * 10.0f64.powi(k as i32) - radius);
        margins.push((1.5 * kf + 3.5) - (1.0 + eta * eta).sqrt());
    }
    // log-space continuation of 11k²+32k+16 < 10^k
    for k in 301..=10_000u32 {
        let kf = k as f64;
        margins.push(kf * 10.0f64.ln() - (11.0 * kf * kf + 32.0 * kf + 16.0).ln());
    }

    CheckResult {
        name: "attracting_constants",
        m: Some(m),
        computed: vec![eta_floor, tan_2pi5, r1_coeff, 16.0 + 96.0 + 99.0],
        printed: vec![20.38, 3.07768, 1.91377, 211.0],
        rel_tol: 1e-3,
        margins,
        pass: false,
        note: None,
    }
    .finish()
}

/// Run the whole ledger, sorted by name. `dense` multiplies the sampling
/// densities by 10.
pub fn run_all(dense: bool) -> Vec<CheckResult> {
    let mut out = vec![
        check_ellipse_minima(),
        check_covering_constants(3, dense),
        check_sector_polynomials(),
        check_phi_att_bounds(22),
        check_w1_connected(22, dense),
        check_sector_mapping(5, dense),
        check_beta_max(),
        check_univalent_arg_margin(),
        check_attracting_constants(22),
    ];
    out.sort_by_key(|c| c.name);
    out
}
