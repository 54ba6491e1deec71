//! Escape-time membership, filled-Julia masks, area and density estimation,
//! and the K(δ) / perturbed-Siegel-density experiments.
//!
//! The bailout radius `2 + 2^{1/m}` carries a doubling certificate: once
//! `|z|` exceeds it, `|P_α(z)| ≥ 2|z|` (for `|e^{2πiα}| ≥ 1`), so "bounded
//! for max_iter steps" is the only uncertain class.

use crate::family::FamilyParams;
use crate::{Error, Result, C};
use rayon::prelude::*;

/// Certified escape radius for degree parameter `m`.
pub fn default_bailout(m: u32) -> f64 {
    2.0 + 2.0f64.powf(1.0 / m as f64)
}

/// Square render window: pixel centers, top row first.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub center: C,
    pub half_width: f64,
    pub resolution: u32,
    pub max_iter: u32,
    pub bailout: f64,
}

impl GridSpec {
    pub fn new(center: C, half_width: f64, resolution: u32, max_iter: u32, m: u32) -> Result<Self> {
        let spec = Self {
            center,
            half_width,
            resolution,
            max_iter,
            bailout: default_bailout(m),
        };
        spec.validate(m)?;
        Ok(spec)
    }

    pub fn validate(&self, m: u32) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::Domain("resolution must be ≥ 2".into()));
        }
        if self.bailout < default_bailout(m) {
            return Err(Error::Domain(format!(
                "bailout {} is below the escape certificate {}",
                self.bailout,
                default_bailout(m)
            )));
        }
        Ok(())
    }

    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    pub fn pixel_area(&self) -> f64 {
        self.pixel_size() * self.pixel_size()
    }

    /// Center of pixel (col, row). Written so the grid is exactly symmetric
    /// under negation when `center` sits on the relevant axis: offsets are
    /// `(2k + 1 − res)·step/2` with integer numerators.
    pub fn pixel_center(&self, col: u32, row: u32) -> C {
        let n = self.resolution as i64;
        let s = self.pixel_size() / 2.0;
        let x = self.center.re + (2 * col as i64 + 1 - n) as f64 * s;
        let y = self.center.im - (2 * row as i64 + 1 - n) as f64 * s;
        C::new(x, y)
    }
}

/// Result of the escape-time iteration at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Escape {
    /// First iterate index with `|z| > bailout`.
    Escapes(u32),
    /// Still below bailout after `max_iter` steps.
    Bounded,
}

/// Iterate `P_α` until certified escape or the iteration budget runs out.
pub fn escape_time(params: &FamilyParams, z0: C, spec: &GridSpec) -> Escape {
    let rot = params.rotation();
    let m = params.m;
    let b2 = spec.bailout * spec.bailout;
    let mut z = z0;
    for n in 0..spec.max_iter {
        if z.norm_sqr() > b2 {
            return Escape::Escapes(n);
        }
        z = rot * z * crate::family::pow1p(z, m);
        if !z.is_finite() {
            return Escape::Escapes(n + 1);
        }
    }
    if z.norm_sqr() > b2 {
        return Escape::Escapes(spec.max_iter);
    }
    Escape::Bounded
}

/// A boolean raster: `true` = bounded (filled-Julia proxy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    pub resolution: u32,
    pub bits: Vec<bool>,
}

impl Mask {
    pub fn get(&self, col: u32, row: u32) -> bool {
        self.bits[(row * self.resolution + col) as usize]
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|&b| b as u64).sum()
    }
}

/// Per-pixel escape test at pixel centers; rows render in parallel but the
/// output is position-indexed, so the result is deterministic.
pub fn filled_julia_mask(params: &FamilyParams, spec: &GridSpec) -> Result<Mask> {
    spec.validate(params.m)?;
    let res = spec.resolution;
    let bits: Vec<bool> = (0..res)
        .into_par_iter()
        .flat_map_iter(|row| {
            (0..res).map(move |col| {
                escape_time(params, spec.pixel_center(col, row), spec) == Escape::Bounded
            })
        })
        .collect();
    Ok(Mask {
        resolution: res,
        bits,
    })
}

/// Pixel-counting area estimate of the bounded set.
#[derive(Clone, Copy, Debug)]
pub struct AreaEstimate {
    pub value: f64,
    pub resolution: u32,
    pub max_iter: u32,
    pub inner_count: u64,
    pub outer_count: u64,
}

pub fn area_estimate(params: &FamilyParams, spec: &GridSpec) -> Result<AreaEstimate> {
    let mask = filled_julia_mask(params, spec)?;
    let inner = mask.count();
    let total = (spec.resolution as u64) * (spec.resolution as u64);
    Ok(AreaEstimate {
        value: inner as f64 * spec.pixel_area(),
        resolution: spec.resolution,
        max_iter: spec.max_iter,
        inner_count: inner,
        outer_count: total - inner,
    })
}

/// `dens_U(X) = area(U ∩ X)/area(U)` by pixel counting over a sub-rectangle
/// of the mask's grid.
pub fn dens(mask: &Mask, col0: u32, row0: u32, width: u32, height: u32) -> Result<f64> {
    if width == 0 || height == 0 {
        return Err(Error::Domain(
            "density window must contain at least one pixel".into(),
        ));
    }
    if col0 + width > mask.resolution || row0 + height > mask.resolution {
        return Err(Error::Domain("density window exceeds the grid".into()));
    }
    let mut hit = 0u64;
    for row in row0..row0 + height {
        for col in col0..col0 + width {
            hit += mask.get(col, row) as u64;
        }
    }
    Ok(hit as f64 / (width as u64 * height as u64) as f64)
}

/// Exact Euclidean distance transform (squared pixel distances), two-pass
/// Felzenszwalb–Huttenlocher. `true` cells have distance 0.
pub fn distance_transform(mask: &Mask) -> Vec<f64> {
    let n = mask.resolution as usize;
    const INF: f64 = 1e20;
    let mut dist: Vec<f64> = mask
        .bits
        .iter()
        .map(|&b| if b { 0.0 } else { INF })
        .collect();

    fn dt_1d(f: &[f64], d: &mut [f64]) {
        let n = f.len();
        let mut v = vec![0usize; n];
        let mut zpts = vec![0.0f64; n + 1];
        let mut k = 0usize;
        v[0] = 0;
        zpts[0] = -INF;
        zpts[1] = INF;
        for q in 1..n {
            let mut s;
            loop {
                let p = v[k];
                s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q - p) as f64);
                if s <= zpts[k] {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                } else {
                    break;
                }
            }
            k += 1;
            v[k] = q;
            zpts[k] = s;
            zpts[k + 1] = INF;
        }
        k = 0;
        for q in 0..n {
            while zpts[k + 1] < q as f64 {
                k += 1;
            }
            let p = v[k];
            let dq = q as f64 - p as f64;
            d[q] = dq * dq + f[p];
        }
    }

    // columns, then rows
    let mut tmp = vec![0.0f64; n];
    let mut lane = vec![0.0f64; n];
    for col in 0..n {
        for row in 0..n {
            lane[row] = dist[row * n + col];
        }
        dt_1d(&lane, &mut tmp);
        for row in 0..n {
            dist[row * n + col] = tmp[row];
        }
    }
    for row in 0..n {
        lane.copy_from_slice(&dist[row * n..(row + 1) * n]);
        dt_1d(&lane, &mut tmp);
        dist[row * n..(row + 1) * n].copy_from_slice(&tmp);
    }
    dist
}

/// Reference set for the K(δ) experiments: the connected bounded component
/// of the mask containing 0, minus pixels whose orbit ever leaves the
/// `0.95·bailout` ring within `max_iter` steps. A documented proxy for the
/// Siegel disk, which is not available exactly.
pub fn siegel_reference_mask(params: &FamilyParams, spec: &GridSpec) -> Result<Mask> {
    let mask = filled_julia_mask(params, spec)?;
    let res = spec.resolution as usize;

    // flood fill from the pixel containing 0
    let origin_col = ((0.0 - (spec.center.re - spec.half_width)) / spec.pixel_size()) as usize;
    let origin_row = (((spec.center.im + spec.half_width) - 0.0) / spec.pixel_size()) as usize;
    let origin = origin_row.min(res - 1) * res + origin_col.min(res - 1);
    let mut component = vec![false; res * res];
    if mask.bits[origin] {
        let mut stack = vec![origin];
        component[origin] = true;
        while let Some(idx) = stack.pop() {
            let (row, col) = (idx / res, idx % res);
            let mut push = |r: usize, c: usize, stack: &mut Vec<usize>| {
                let j = r * res + c;
                if mask.bits[j] && !component[j] {
                    component[j] = true;
                    stack.push(j);
                }
            };
            if row > 0 {
                push(row - 1, col, &mut stack);
            }
            if row + 1 < res {
                push(row + 1, col, &mut stack);
            }
            if col > 0 {
                push(row, col - 1, &mut stack);
            }
            if col + 1 < res {
                push(row, col + 1, &mut stack);
            }
        }
    }

    let ring = 0.95 * spec.bailout;
    let ring2 = ring * ring;
    let rot = params.rotation();
    let bits: Vec<bool> = (0..res)
        .into_par_iter()
        .flat_map_iter(|row| {
            let component = &component;
            (0..res).map(move |col| {
                if !component[row * res + col] {
                    return false;
                }
                let mut z = spec.pixel_center(col as u32, row as u32);
                for _ in 0..spec.max_iter {
                    if z.norm_sqr() > ring2 {
                        return false;
                    }
                    z = rot * z * crate::family::pow1p(z, params.m);
                }
                z.norm_sqr() <= ring2
            })
        })
        .collect();
    Ok(Mask {
        resolution: spec.resolution,
        bits,
    })
}

/// Membership in K(δ): every orbit point stays within `δ` (world units) of
/// the reference set for `max_iter` steps. Budget exhaustion counts as
/// membership (conservative); leaving the reference grid does not.
pub fn k_delta_membership(
    params: &FamilyParams,
    z0: C,
    delta: f64,
    ref_spec: &GridSpec,
    ref_dist: &[f64],
    max_iter: u32,
) -> bool {
    let res = ref_spec.resolution as i64;
    let step = ref_spec.pixel_size();
    let delta_px2 = (delta / step) * (delta / step);
    let rot = params.rotation();
    let mut z = z0;
    for _ in 0..max_iter {
        let col = ((z.re - (ref_spec.center.re - ref_spec.half_width)) / step).floor() as i64;
        let row = (((ref_spec.center.im + ref_spec.half_width) - z.im) / step).floor() as i64;
        if col < 0 || col >= res || row < 0 || row >= res {
            return false;
        }
        if ref_dist[(row * res + col) as usize] > delta_px2 {
            return false;
        }
        z = rot * z * crate::family::pow1p(z, params.m);
    }
    true
}

/// Density of K(δ) inside the square of half-width `radius` centered at
/// `center`, sampled on an `n × n` point grid.
pub fn k_delta_density(
    params: &FamilyParams,
    center: C,
    radius: f64,
    n: u32,
    delta: f64,
    ref_spec: &GridSpec,
    ref_dist: &[f64],
    max_iter: u32,
) -> f64 {
    let hits: u64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut h = 0u64;
            for j in 0..n {
                let x = center.re + (2 * i as i64 + 1 - n as i64) as f64 * radius / n as f64;
                let y = center.im + (2 * j as i64 + 1 - n as i64) as f64 * radius / n as f64;
                if k_delta_membership(params, C::new(x, y), delta, ref_spec, ref_dist, max_iter) {
                    h += 1;
                }
            }
            h
        })
        .sum();
    hits as f64 / (n as u64 * n as u64) as f64
}

/// One perturbed-Siegel density measurement.
#[derive(Clone, Copy, Debug)]
pub struct PerturbedDensityReport {
    pub n: usize,
    pub a_n: i64,
    pub alpha_base: f64,
    pub alpha_n: f64,
    pub q_n: i64,
    pub eps_n: f64,
    /// dens over the central window of the grid for the perturbed mask.
    pub dens: f64,
}

/// Render the bounded-orbit mask for `α_n = [a₀,…,a_n, A_n, N, N, …]` and
/// report its density over a central window (a user-chosen `U` inside the
/// base Siegel approximation).
pub fn perturbed_density_experiment(
    base_entries: &[i64],
    n: usize,
    a_n: i64,
    tail: i64,
    m: u32,
    spec: &GridSpec,
    window_frac: f64,
) -> Result<PerturbedDensityReport> {
    let pspec = crate::contfrac::PerturbedSequenceSpec::new(base_entries.to_vec(), a_n, tail, n)?;
    let conv = crate::contfrac::convergents(&base_entries[..=n])?;
    let q_n = num_traits::ToPrimitive::to_i64(&conv[n].1)
        .ok_or_else(|| Error::Domain("q_n exceeds i64 at desk scale".into()))?;
    if q_n > 30 {
        return Err(Error::Domain(format!(
            "q_n = {q_n} > 30: cycle period too long for a desk-scale mask render"
        )));
    }
    let theta = pspec.tail_theta();
    let alpha_n = pspec.alpha_value(theta)?;
    let eps_n = crate::contfrac::epsilon_n(&pspec, theta)?;
    let base_conv = crate::contfrac::convergents(base_entries)?;
    let k = base_entries.len() - 1;
    let alpha_base = num_traits::ToPrimitive::to_f64(&base_conv[k].0).unwrap()
        / num_traits::ToPrimitive::to_f64(&base_conv[k].1).unwrap();

    let params_n = FamilyParams::real(m, alpha_n)?;
    let mask_n = filled_julia_mask(&params_n, spec)?;

    let res = spec.resolution;
    let w = ((res as f64 * window_frac) as u32).max(2).min(res);
    let c0 = (res - w) / 2;
    let dens = dens(&mask_n, c0, c0, w, w)?;
    Ok(PerturbedDensityReport {
        n,
        a_n,
        alpha_base,
        alpha_n,
        q_n,
        eps_n,
        dens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::golden_mean;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn grid(m: u32, res: u32, max_iter: u32) -> GridSpec {
        GridSpec::new(c(0.0, 0.0), 2.0, res, max_iter, m).unwrap()
    }

    #[test]
    fn escape_time_basics() {
        let p = FamilyParams::real(2, 0.0).unwrap();
        let spec = grid(2, 64, 100);
        assert_eq!(escape_time(&p, c(10.0, 0.0), &spec), Escape::Escapes(0));
        // −1 ↦ 0 ↦ 0: bounded for any α
        let pg = FamilyParams::real(2, golden_mean()).unwrap();
        assert_eq!(escape_time(&pg, c(-1.0, 0.0), &spec), Escape::Bounded);
        assert_eq!(escape_time(&p, c(0.0, 0.0), &spec), Escape::Bounded);
    }

    #[test]
    fn escape_certificate_doubling() {
        // |P_α(z)| ≥ 2|z| on |z| = bailout, sampled densely
        for &m in &[2u32, 3, 22] {
            let b = default_bailout(m);
            for &alpha in &[0.0, 0.5, golden_mean()] {
                let p = FamilyParams::real(m, alpha).unwrap();
                for k in 0..10_000 {
                    let z = C::from_polar(b, crate::TAU * k as f64 / 10_000.0);
                    let fz = p.eval(z);
                    assert!(fz.norm() >= 2.0 * z.norm(), "m={m} α={alpha} k={k}");
                }
            }
        }
    }

    #[test]
    fn mask_corners_unset_center_set() {
        let p = FamilyParams::real(2, 0.0).unwrap();
        let spec = GridSpec::new(c(0.0, 0.0), 4.0, 64, 200, 2).unwrap();
        let mask = filled_julia_mask(&p, &spec).unwrap();
        for &(col, row) in &[(0, 0), (63, 0), (0, 63), (63, 63)] {
            assert!(!mask.get(col, row));
        }
        // a pixel adjacent to 0 is bounded
        assert!(mask.get(31, 31) || mask.get(32, 32) || mask.get(31, 32) || mask.get(32, 31));
    }

    #[test]
    fn mask_conjugation_symmetry() {
        // α ∈ {0, 1/2} have real coefficients: exact row-mirror symmetry
        for &alpha in &[0.0, 0.5] {
            let p = FamilyParams::real(2, alpha).unwrap();
            let spec = grid(2, 128, 300);
            let mask = filled_julia_mask(&p, &spec).unwrap();
            for row in 0..128 {
                for col in 0..128 {
                    assert_eq!(
                        mask.get(col, row),
                        mask.get(col, 127 - row),
                        "α={alpha} pixel ({col},{row})"
                    );
                }
            }
        }
    }

    #[test]
    fn area_monotone_in_max_iter_and_refines() {
        let p = FamilyParams::real(2, golden_mean()).unwrap();
        let a1 = area_estimate(&p, &grid(2, 128, 200)).unwrap();
        let a2 = area_estimate(&p, &grid(2, 128, 400)).unwrap();
        assert!(a2.value <= a1.value, "more iterations cannot add pixels");
        // refinement stability
        let lo = area_estimate(&p, &grid(2, 128, 400)).unwrap();
        let hi = area_estimate(&p, &grid(2, 256, 400)).unwrap();
        assert!((lo.value - hi.value).abs() < 0.05 * hi.value);
        // a window fully outside the bailout sees zero area
        let far = GridSpec::new(c(40.0, 40.0), 2.0, 32, 50, 2).unwrap();
        assert_eq!(area_estimate(&p, &far).unwrap().inner_count, 0);
    }

    #[test]
    fn area_matches_scalar_oracle() {
        // independent single-threaded per-pixel loop on a 64×64 grid
        let p = FamilyParams::real(2, golden_mean()).unwrap();
        let spec = grid(2, 64, 150);
        let est = area_estimate(&p, &spec).unwrap();
        let mut count = 0u64;
        for row in 0..64 {
            for col in 0..64 {
                let mut z = spec.pixel_center(col, row);
                let mut bounded = true;
                for _ in 0..spec.max_iter {
                    if z.norm() > spec.bailout {
                        bounded = false;
                        break;
                    }
                    z = p.eval(z);
                }
                if bounded && z.norm() > spec.bailout {
                    bounded = false;
                }
                count += bounded as u64;
            }
        }
        assert_eq!(est.inner_count, count);
    }

    #[test]
    fn dens_trivial_cases() {
        let ones = Mask {
            resolution: 16,
            bits: vec![true; 256],
        };
        assert_eq!(dens(&ones, 2, 3, 5, 7).unwrap(), 1.0);
        let zeros = Mask {
            resolution: 16,
            bits: vec![false; 256],
        };
        assert_eq!(dens(&zeros, 2, 3, 5, 7).unwrap(), 0.0);
        // left half set
        let mut bits = vec![false; 256];
        for row in 0..16 {
            for col in 0..8 {
                bits[row * 16 + col] = true;
            }
        }
        let half = Mask {
            resolution: 16,
            bits,
        };
        assert_eq!(dens(&half, 0, 0, 16, 16).unwrap(), 0.5);
        assert!(dens(&ones, 0, 0, 0, 4).is_err());
        assert!(dens(&ones, 12, 12, 8, 8).is_err());
    }

    #[test]
    fn dens_stable_under_refinement() {
        // simultaneous 2x refinement of U and X moves the density by at
        // most ~2/resolution (boundary pixels)
        let p = FamilyParams::real(2, golden_mean()).unwrap();
        let coarse = filled_julia_mask(&p, &grid(2, 128, 300)).unwrap();
        let fine = filled_julia_mask(&p, &grid(2, 256, 300)).unwrap();
        let d1 = dens(&coarse, 32, 32, 64, 64).unwrap();
        let d2 = dens(&fine, 64, 64, 128, 128).unwrap();
        assert!((d1 - d2).abs() <= 2.0 / 128.0, "{d1} vs {d2}");
    }

    #[test]
    fn distance_transform_exact_on_small_case() {
        // single set pixel at (1,1) on a 4×4 grid
        let mut bits = vec![false; 16];
        bits[4 + 1] = true;
        let mask = Mask {
            resolution: 4,
            bits,
        };
        let d = distance_transform(&mask);
        assert_eq!(d[4 + 1], 0.0);
        assert_eq!(d[4 + 2], 1.0);
        assert_eq!(d[2 * 4 + 2], 2.0);
        assert_eq!(d[3 * 4 + 3], 8.0);
    }

    #[test]
    fn k_delta_membership_cases() {
        let p = FamilyParams::real(2, golden_mean()).unwrap();
        let spec = GridSpec::new(c(0.0, 0.0), 1.0, 128, 400, 2).unwrap();
        let refmask = siegel_reference_mask(&p, &spec).unwrap();
        assert!(
            refmask.count() > 100,
            "Siegel approximation should be nonempty"
        );
        let dist = distance_transform(&refmask);
        // a reference point stays (invariance)
        assert!(k_delta_membership(&p, c(0.01, 0.0), 0.1, &spec, &dist, 400));
        // an escaping point with a far excursion does not
        assert!(!k_delta_membership(&p, c(1.8, 0.0), 0.1, &spec, &dist, 400));
    }

    #[test]
    fn perturbed_alpha_construction() {
        let entries: Vec<i64> = std::iter::once(0)
            .chain(std::iter::repeat(1).take(8))
            .collect();
        let spec = GridSpec::new(c(0.0, 0.0), 1.0, 32, 50, 2).unwrap();
        let rep = perturbed_density_experiment(&entries, 3, 50, 5, 2, &spec, 0.2).unwrap();
        assert!(rep.dens >= 0.0 && rep.dens <= 1.0);
        assert!(rep.alpha_n > 0.0 && rep.alpha_n < 1.0);
        assert_eq!(rep.q_n, 3); // Fibonacci q₃
                                // α_n sits at distance ε_n from the base convergent p₃/q₃ = 2/3
        assert!((rep.alpha_n - 2.0 / 3.0 - rep.eps_n).abs() < 1e-12);
        // tail N ≥ 1 keeps α_n irrational; the inserted entry is recovered
        assert_eq!(
            crate::contfrac::expand(rep.alpha_n, 12).unwrap().entries[4],
            50
        );
        // desk-scale refusal for long cycles
        let long: Vec<i64> = std::iter::once(0)
            .chain(std::iter::repeat(1).take(16))
            .collect();
        assert!(perturbed_density_experiment(&long, 12, 50, 5, 2, &spec, 0.2).is_err());
    }

    #[test]
    fn perturbed_density_across_a_n() {
        // The density is NOT monotone in A_n at fixed small n (α_n(A→∞)
        // approaches the parabolic 2/3); what is stable is the recovery
        // from the mid-range trough as ε_n shrinks.
        let entries: Vec<i64> = std::iter::once(0)
            .chain(std::iter::repeat(1).take(8))
            .collect();
        let spec = GridSpec::new(c(0.0, 0.0), 1.0, 128, 400, 2).unwrap();
        let d: Vec<f64> = [10i64, 50, 200]
            .iter()
            .map(|&a| {
                perturbed_density_experiment(&entries, 3, a, 5, 2, &spec, 0.2)
                    .unwrap()
                    .dens
            })
            .collect();
        assert!(d.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!(d[2] > d[1], "large-A_n recovery: {d:?}");
        assert!(d.iter().all(|&x| x > 0.5), "persistently dense core: {d:?}");
    }
}
