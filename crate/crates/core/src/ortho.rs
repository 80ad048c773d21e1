//! Orthonormalization through the Gram symbol `S(p) = Σ_l S_l e^{ip·l}`.
//!
//! When the symbol is bounded away from zero, `f = 𝓕⁻¹[S^{-1/2}]` gives a new
//! seed `H(s) = Σ f_n e^{isa·n1} h(s + a·n2)` whose lattice is orthonormal; its
//! coefficients follow from `h` and the slice `S(p, 0)` alone.

use std::f64::consts::PI;

use num_traits::Zero;
use serde_json::json;

use crate::filter::{FilterSequence, Provenance};
use crate::overlap::{Lattice2, OverlapLattice};
use crate::quad::composite_gl;
use crate::seedfn::{rat, Domain, SeedFunction, SeedKind};
use crate::{Error, Exec, Result, C64, LATTICE_A};

/// Relative floor under which a symbol sample counts as zero.
pub const SINGULAR_REL: f64 = 1e-8;
/// Largest tolerated imaginary part of a symbol sample, relative to its maximum.
pub const IMAG_REL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 256;

/// `S(p)` on `p_j = 2π·j/n`, row-major with `p1` outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGrid {
    pub n1: usize,
    pub n2: usize,
    pub values: Vec<C64>,
    /// Series coefficients of the slice `S(p, 0) = Σ_l1 (Σ_l2 S_{l1,l2}) e^{ip·l1}`,
    /// indexed by `l1 + L`.
    pub slice_coeffs: Vec<C64>,
    pub min: f64,
    pub max: f64,
    pub imag_residue: f64,
}

impl SymbolGrid {
    pub fn at(&self, j1: usize, j2: usize) -> C64 {
        self.values[j1 * self.n2 + j2]
    }

    /// Samples of `S(p, 0)` at `p = 2π·j/n1`.
    pub fn slice(&self) -> Vec<f64> {
        (0..self.n1).map(|j| self.at(j, 0).re).collect()
    }

    /// `S(p, 0)` at arbitrary `p` by direct summation of the slice series.
    pub fn slice_at(&self, p: f64) -> f64 {
        let r = (self.slice_coeffs.len() / 2) as i64;
        self.slice_coeffs.iter().enumerate().map(|(k, c)| c * C64::cis(p * (k as i64 - r) as f64)).sum::<C64>().re
    }

    pub fn singular_eps(&self) -> f64 {
        SINGULAR_REL * self.max
    }

    fn ensure_regular(&self) -> Result<()> {
        let floor = self.singular_eps();
        if !(self.min > floor) || self.imag_residue > IMAG_REL * self.max {
            return Err(Error::SingularSymbol { min: self.min, floor, imag: self.imag_residue });
        }
        Ok(())
    }
}

/// `e^{2πi·num/den}` with the argument reduced exactly.
fn unit_root(num: i64, den: usize) -> C64 {
    let k = num.rem_euclid(den as i64);
    C64::cis(2.0 * PI * k as f64 / den as f64)
}

pub fn symbol(lat: &OverlapLattice, n1: usize, n2: usize) -> Result<SymbolGrid> {
    symbol_with(lat, n1, n2, Exec::default())
}

pub fn symbol_with(lat: &OverlapLattice, n1: usize, n2: usize, exec: Exec) -> Result<SymbolGrid> {
    let r = lat.radius();
    let side = (2 * r + 1) as usize;
    if n1 < side || n2 < side {
        return Err(Error::InvalidArgument(format!("symbol grid {n1}×{n2} is smaller than {side}×{side}")));
    }
    // Stage one: T[l1][j2] = Σ_l2 S_{l1,l2} e^{i·p2·l2}.
    let partial = exec.map(side * n2, |k| {
        let l1 = (k / n2) as i64 - r;
        let j2 = (k % n2) as i64;
        (-r..=r).map(|l2| lat.get(l1, l2) * unit_root(j2 * l2, n2)).sum::<C64>()
    });
    let values = exec.map(n1 * n2, |k| {
        let j1 = (k / n2) as i64;
        let j2 = k % n2;
        (0..side).map(|i| partial[i * n2 + j2] * unit_root(j1 * (i as i64 - r), n1)).sum::<C64>()
    });
    let slice_coeffs = (-r..=r).map(|l1| (-r..=r).map(|l2| lat.get(l1, l2)).sum()).collect();
    let min = values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let max = values.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max);
    let imag_residue = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    Ok(SymbolGrid { n1, n2, values, slice_coeffs, min, max, imag_residue })
}

/// Fourier coefficients of `S^{-1/2}` on the truncated lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FCoefficients {
    pub values: Lattice2,
    pub n1: usize,
    pub n2: usize,
    pub singular_eps: f64,
    pub symbol_min: f64,
    pub symbol_max: f64,
    pub imag_residue: f64,
}

impl FCoefficients {
    pub fn get(&self, n1: i64, n2: i64) -> C64 {
        self.values.get(n1, n2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<_> =
            self.values.iter().map(|(n1, n2, v)| json!({ "n1": n1, "n2": n2, "re": v.re, "im": v.im })).collect();
        json!({
            "grid": { "n1": self.n1, "n2": self.n2 },
            "radius": self.values.radius(),
            "singular_eps": self.singular_eps,
            "symbol_min": self.symbol_min,
            "symbol_max": self.symbol_max,
            "imag_residue": self.imag_residue,
            "coefficients": coeffs,
        })
    }
}

/// `f_s = (n1·n2)^{-1} Σ_j e^{-ip_j·s} S(p_j)^{-1/2}` for `|s| ≤ radius`,
/// positive square root.
pub fn f_coefficients(sym: &SymbolGrid, radius: usize) -> Result<FCoefficients> {
    f_coefficients_with(sym, radius, Exec::default())
}

pub fn f_coefficients_with(sym: &SymbolGrid, radius: usize, exec: Exec) -> Result<FCoefficients> {
    sym.ensure_regular()?;
    let (n1, n2) = (sym.n1, sym.n2);
    let inv: Vec<f64> = sym.values.iter().map(|v| 1.0 / v.re.sqrt()).collect();
    let r = radius as i64;
    let side = 2 * radius + 1;
    // Stage one: U[j1][s2] = Σ_j2 e^{-i·p2·s2} inv[j1][j2].
    let partial = exec.map(n1 * side, |k| {
        let j1 = k / side;
        let s2 = (k % side) as i64 - r;
        (0..n2).map(|j2| unit_root(-(j2 as i64) * s2, n2) * inv[j1 * n2 + j2]).sum::<C64>()
    });
    let scale = 1.0 / (n1 * n2) as f64;
    let values = Lattice2::from_fn(radius, exec, |s1, s2| {
        let col = (s2 + r) as usize;
        (0..n1).map(|j1| unit_root(-(j1 as i64) * s1, n1) * partial[j1 * side + col]).sum::<C64>() * scale
    });
    Ok(FCoefficients {
        values,
        n1,
        n2,
        singular_eps: sym.singular_eps(),
        symbol_min: sym.min,
        symbol_max: sym.max,
        imag_residue: sym.imag_residue,
    })
}

/// Coefficients `w_m` of `S(p, 0)^{-1/2} = Σ_m w_m e^{ipm}` from the grid slice,
/// for `|m| < n1/2`.
pub fn slice_inverse_sqrt_coeffs(sym: &SymbolGrid) -> Result<Vec<(i64, C64)>> {
    sym.ensure_regular()?;
    let n = sym.n1;
    let inv: Vec<f64> = sym.slice().iter().map(|s| 1.0 / s.sqrt()).collect();
    let m_max = (n as i64 - 1) / 2;
    Ok((-m_max..=m_max)
        .map(|m| {
            let w: C64 = inv.iter().enumerate().map(|(j, v)| unit_root(-(j as i64) * m, n) * v).sum();
            (m, w / n as f64)
        })
        .collect())
}

/// `H_n = a^{-1/2} ∫ h(s) e^{isna/2} S(as, 0)^{-1/2} ds` for `|n| ≤ n_range`.
///
/// Piecewise position seeds are integrated by composite Gauss–Legendre with
/// the slice summed exactly at every node; sampled seeds use the trapezoid rule
/// with the slice interpolated linearly from the grid. Other seeds expand
/// `S(as, 0)^{-1/2}` in its Fourier series, which turns the integral into
/// `Σ_m w_m ĥ(−a(n/2 + m))`.
pub fn ont_filter(
    seed: &SeedFunction,
    _lat: &OverlapLattice,
    sym: &SymbolGrid,
    n_range: usize,
) -> Result<FilterSequence> {
    ont_filter_with(seed, sym, n_range, Exec::default())
}

pub fn ont_filter_with(seed: &SeedFunction, sym: &SymbolGrid, n_range: usize, exec: Exec) -> Result<FilterSequence> {
    sym.ensure_regular()?;
    if n_range == 0 {
        return Err(Error::InvalidArgument("n_range must be at least 1".into()));
    }
    let r = n_range as i64;
    let count = 2 * n_range + 1;
    let sqrt_a = LATTICE_A.sqrt();
    let coeffs = match (seed.domain(), seed.kind()) {
        (Domain::Position, SeedKind::Piecewise(segs)) => {
            let top = r as f64 * LATTICE_A / 2.0
                + segs.iter().flat_map(|s| &s.terms).map(|t| t.omega().abs()).fold(0.0, f64::max)
                + 1.0;
            let panel = (2.0 * PI / top).min(LATTICE_A / 8.0);
            let mut nodes = Vec::new();
            for seg in segs {
                let lo = crate::seedfn::analytic::to_f64(seg.start) * LATTICE_A;
                let hi = crate::seedfn::analytic::to_f64(seg.end) * LATTICE_A;
                for (x, w) in composite_gl(lo, hi, panel) {
                    let v = seed.eval(x) * w / sym.slice_at(LATTICE_A * x).sqrt();
                    nodes.push((x, v));
                }
            }
            exec.map(count, |k| {
                let freq = (k as i64 - r) as f64 * LATTICE_A / 2.0;
                nodes.iter().map(|&(x, v)| v * C64::cis(freq * x)).sum::<C64>() / sqrt_a
            })
        }
        (Domain::Position, SeedKind::Sampled(s)) => {
            let slice = sym.slice();
            let n = slice.len();
            let interp = |p: f64| {
                let t = (p / (2.0 * PI)).rem_euclid(1.0) * n as f64;
                let i = (t.floor() as usize).min(n - 1);
                let frac = t - i as f64;
                slice[i] * (1.0 - frac) + slice[(i + 1) % n] * frac
            };
            let last = s.values.len() - 1;
            let nodes: Vec<(f64, C64)> = (0..=last)
                .map(|i| {
                    let x = s.x(i);
                    let w = if i == 0 || i == last { 0.5 * s.dx } else { s.dx };
                    (x, s.values[i] * w / interp(LATTICE_A * x).sqrt())
                })
                .collect();
            exec.map(count, |k| {
                let freq = (k as i64 - r) as f64 * LATTICE_A / 2.0;
                nodes.iter().map(|&(x, v)| v * C64::cis(freq * x)).sum::<C64>() / sqrt_a
            })
        }
        _ => {
            let spectrum = match seed.domain() {
                Domain::Frequency => seed.clone(),
                Domain::Position => seed.fourier()?,
            };
            let w = slice_inverse_sqrt_coeffs(sym)?;
            let norm = (2.0 * PI / LATTICE_A).sqrt();
            exec.map(count, |k| {
                let n = k as i64 - r;
                w.iter().map(|&(m, wm)| wm * spectrum.eval_lattice(rat(-n - 2 * m, 2))).sum::<C64>() * norm
            })
        }
    };
    FilterSequence::new(-r, coeffs, Provenance::Ont)
}

/// Uniform grid `x0 + i·dx`, `i < count`, for assembling `H(s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleGrid {
    pub x0: f64,
    pub dx: f64,
    pub count: usize,
}

impl SampleGrid {
    /// Symmetric grid on `[-radius, radius]` with step `a/per_cell`.
    pub fn lattice_aligned(radius: f64, per_cell: usize) -> Self {
        let dx = LATTICE_A / per_cell as f64;
        let half = (radius / dx).ceil() as usize;
        Self { x0: -(half as f64) * dx, dx, count: 2 * half + 1 }
    }
}

/// `H(s) = Σ_n f_n e^{isa·n1} h(s + a·n2)` sampled on `grid`.
pub fn ont_seed(seed: &SeedFunction, f: &Lattice2, grid: SampleGrid) -> Result<SeedFunction> {
    if seed.domain() != Domain::Position {
        return Err(Error::Unsupported("ont_seed expects a position-domain seed".into()));
    }
    let terms: Vec<(i64, i64, C64)> = f.iter().filter(|(_, _, v)| !v.is_zero()).collect();
    let values = Exec::default().map(grid.count, |i| {
        let s = grid.x0 + i as f64 * grid.dx;
        terms
            .iter()
            .map(|&(n1, n2, c)| c * C64::cis(s * LATTICE_A * n1 as f64) * seed.eval(s + LATTICE_A * n2 as f64))
            .sum::<C64>()
    });
    SeedFunction::sampled(Domain::Position, grid.x0, grid.dx, values)
}
