//! Scaling function and mother wavelet by fixed-point iteration of the
//! two-scale relation `φ(x) = √2 Σ h_n φ(2x − n)`.
//!
//! Filters are shifted to start at index 0 before iterating, so `φ` lives on
//! `[0, N]`; the shift is reported. Integrals over the dyadic grid are plain
//! sums times the step, which is exact for dyadic step functions.

use std::f64::consts::SQRT_2;

use num_traits::Zero;
use serde::Serialize;

use crate::filter::{Check, FilterSequence, Provenance};
use crate::{Error, Exec, Result, C64};

/// Sup-norm beyond which the iteration is declared divergent.
pub const DIVERGENCE_SUP: f64 = 1e6;
pub const DEFAULT_ITERATIONS: usize = 12;
pub const DEFAULT_LEVEL: u32 = 10;

/// Samples at `x_min + i·2^{-level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub x_min: f64,
    pub level: u32,
    pub values: Vec<C64>,
}

impl SampledFunction {
    pub fn step(&self) -> f64 {
        1.0 / (1u64 << self.level) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.step()
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.values.len().saturating_sub(1))
    }

    /// Grid index of `x_min` on the global dyadic lattice.
    fn origin(&self) -> i64 {
        (self.x_min / self.step()).round() as i64
    }

    /// Value at global dyadic index `k` (i.e. at `x = k·2^{-level}`).
    fn at_global(&self, k: i64) -> C64 {
        let i = k - self.origin();
        if i < 0 || i >= self.values.len() as i64 {
            C64::zero()
        } else {
            self.values[i as usize]
        }
    }

    pub fn integral(&self) -> C64 {
        self.values.iter().sum::<C64>() * self.step()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.step()
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `∫ self(x)·conj(other(x − k)) dx`.
    pub fn inner_shifted(&self, other: &SampledFunction, k: i64) -> C64 {
        assert_eq!(self.level, other.level, "functions on different dyadic levels");
        let per_unit = 1i64 << self.level;
        let o = self.origin();
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * other.at_global(o + i as i64 - k * per_unit).conj())
            .sum::<C64>()
            * self.step()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.x(i), v.re, v.im));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cascade {
    pub phi: SampledFunction,
    /// Filter with trimmed edges, re-indexed to start at 0.
    pub filter: FilterSequence,
    /// Original index of the first kept coefficient.
    pub shift: i64,
    /// `sup |φ_k − φ_{k−1}|` of the final step.
    pub last_diff: f64,
    pub iterations: usize,
}

fn normalized(f: &FilterSequence) -> Result<(FilterSequence, i64)> {
    if f.provenance != Provenance::Manual && f.tail_truncated() {
        return Err(Error::InvalidArgument("filter window carries a truncated tail".into()));
    }
    let t = f.trimmed(1e-14);
    let shift = t.n_min;
    Ok((FilterSequence { n_min: 0, ..t }, shift))
}

fn refine(g: &FilterSequence, phi: &SampledFunction, exec: Exec) -> SampledFunction {
    let per_unit = 1i64 << phi.level;
    let values = exec.map(phi.values.len(), |k| {
        let k = k as i64;
        g.iter().map(|(n, c)| c * phi.at_global(2 * k - n * per_unit)).sum::<C64>() * SQRT_2
    });
    SampledFunction { x_min: 0.0, level: phi.level, values }
}

pub fn cascade_scaling(f: &FilterSequence, iterations: usize, level: u32) -> Result<Cascade> {
    cascade_scaling_with(f, iterations, level, Exec::default())
}

pub fn cascade_scaling_with(f: &FilterSequence, iterations: usize, level: u32, exec: Exec) -> Result<Cascade> {
    if iterations == 0 {
        return Err(Error::InvalidArgument("at least one cascade iteration is required".into()));
    }
    if level == 0 || level > 24 {
        return Err(Error::InvalidArgument(format!("dyadic level {level} outside 1..=24")));
    }
    let (g, shift) = normalized(f)?;
    let per_unit = 1usize << level;
    let n = g.n_max().max(1) as usize;
    let mut phi = SampledFunction {
        x_min: 0.0,
        level,
        values: (0..=n * per_unit).map(|k| if k < per_unit { C64::new(1.0, 0.0) } else { C64::zero() }).collect(),
    };
    let mut last_diff = f64::INFINITY;
    for it in 1..=iterations {
        let next = refine(&g, &phi, exec);
        last_diff = next.values.iter().zip(&phi.values).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        let sup = next.sup();
        if !(sup <= DIVERGENCE_SUP) {
            return Err(Error::Diverged { iteration: it, sup });
        }
        phi = next;
    }
    Ok(Cascade { phi, filter: g, shift, last_diff, iterations })
}

/// `sup |φ − √2 Σ g_n φ(2· − n)|` on the grid.
pub fn refinement_residual(c: &Cascade) -> f64 {
    let next = refine(&c.filter, &c.phi, Exec::Sequential);
    next.values.iter().zip(&c.phi.values).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

/// `ψ(x) = √2 Σ_n (−1)^{n−1} conj(g_{−n−1}) φ(2x − n)` with `g` the
/// shift-normalised filter of the cascade. For real filters the conjugation is
/// immaterial.
pub fn mother_wavelet(c: &Cascade) -> SampledFunction {
    let phi = &c.phi;
    let level = phi.level;
    let per_unit = 1i64 << level;
    let big_n = c.filter.n_max();
    // support: 2x − n ∈ [0, N] for n ∈ [−N−1, −1]
    let lo = -(big_n + 1) * per_unit / 2;
    let hi = (big_n.max(1) - 1) * per_unit / 2 + per_unit / 2;
    let count = (hi - lo + 1).max(1) as usize;
    let values = Exec::default().map(count, |i| {
        let k = lo + i as i64;
        let mut acc = C64::zero();
        for n in -(big_n + 1)..=-1 {
            let g = c.filter.get(-n - 1).conj();
            let sign = if (n - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            acc += g * sign * phi.at_global(2 * k - n * per_unit);
        }
        acc * SQRT_2
    });
    SampledFunction { x_min: lo as f64 / per_unit as f64, level, values }
}

/// `max_{|k|≤k_max} |∫ g(x)·conj(g(x − k)) dx − δ_{k,0}|`.
pub fn check_translate_orthonormality(g: &SampledFunction, k_max: usize, tol: f64) -> Check {
    let residual = (-(k_max as i64)..=k_max as i64)
        .map(|k| (g.inner_shifted(g, k) - if k == 0 { 1.0 } else { 0.0 }).norm())
        .fold(0.0, f64::max);
    Check { pass: residual <= tol, value: residual }
}

/// `max_{|k|≤k_max} |∫ ψ(x)·conj(φ(x − k)) dx|`.
pub fn check_cross_orthogonality(psi: &SampledFunction, phi: &SampledFunction, k_max: usize, tol: f64) -> Check {
    let worst = (-(k_max as i64)..=k_max as i64).map(|k| psi.inner_shifted(phi, k).norm()).fold(0.0, f64::max);
    Check { pass: worst <= tol, value: worst }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadeReport {
    pub shift: i64,
    pub iterations: usize,
    pub level: u32,
    pub last_diff: f64,
    pub refinement_residual: f64,
    pub phi_integral_re: f64,
    pub phi_integral_im: f64,
    pub phi_l2: f64,
    pub psi_l2: f64,
    pub phi_translates: Check,
    pub psi_translates: Check,
    pub psi_phi_cross: Check,
    pub k_max: usize,
    pub tol: f64,
}

pub fn cascade_report(c: &Cascade, psi: &SampledFunction, k_max: usize, tol: f64) -> CascadeReport {
    let int = c.phi.integral();
    CascadeReport {
        shift: c.shift,
        iterations: c.iterations,
        level: c.phi.level,
        last_diff: c.last_diff,
        refinement_residual: refinement_residual(c),
        phi_integral_re: int.re,
        phi_integral_im: int.im,
        phi_l2: c.phi.l2_norm_sq(),
        psi_l2: psi.l2_norm_sq(),
        phi_translates: check_translate_orthonormality(&c.phi, k_max, tol),
        psi_translates: check_translate_orthonormality(psi, k_max, tol),
        psi_phi_cross: check_cross_orthogonality(psi, &c.phi, k_max, tol),
        k_max,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_indicator_is_fixed_point() {
        let c = cascade_scaling(&FilterSequence::haar(), 1, 6).unwrap();
        assert_eq!(c.shift, -1);
        assert!(c.last_diff <= 1e-12);
        assert!(refinement_residual(&c) <= 1e-12);
        for (i, v) in c.phi.values.iter().enumerate() {
            let want = if c.phi.x(i) < 1.0 { 1.0 } else { 0.0 };
            assert!((v - want).norm() <= 1e-15);
        }
    }

    #[test]
    fn haar_wavelet_two_steps() {
        let c = cascade_scaling(&FilterSequence::haar(), 3, 5).unwrap();
        let psi = mother_wavelet(&c);
        for (i, v) in psi.values.iter().enumerate() {
            let x = psi.x(i);
            let want = if (-0.5..0.0).contains(&x) {
                1.0
            } else if (-1.0..-0.5).contains(&x) {
                -1.0
            } else {
                0.0
            };
            assert!((v.re - want).abs() <= 1e-12, "x={x}: {v}");
        }
        assert!((psi.l2_norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_filter_gives_zero_wavelet() {
        let c = cascade_scaling(&FilterSequence::manual(0, &[0.0, 0.0]), 2, 4).unwrap();
        assert!(mother_wavelet(&c).values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn delta_filter_decays() {
        let c = cascade_scaling(&FilterSequence::manual(0, &[1.0]), 6, 10).unwrap();
        assert!((c.phi.integral().re - 0.5f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn growing_filter_diverges() {
        let f = FilterSequence::manual(0, &[3.0, 3.0]);
        assert!(matches!(cascade_scaling(&f, 40, 4), Err(Error::Diverged { .. })));
    }

    #[test]
    fn sampled_gaussian_is_not_orthonormal() {
        let level = 6;
        let step = 1.0 / 64.0;
        let values = (0..=1280)
            .map(|i| {
                let x = -10.0 + i as f64 * step;
                C64::new(std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
            })
            .collect();
        let g = SampledFunction { x_min: -10.0, level, values };
        let c = check_translate_orthonormality(&g, 1, 1e-3);
        assert!(!c.pass);
        assert!((c.value - (-0.25f64).exp()).abs() < 1e-10);
    }
}
