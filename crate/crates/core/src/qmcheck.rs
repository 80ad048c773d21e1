//! Two-dimensional cross-check of the lattice overlap.
//!
//! For a kernel `K(x, y; s, t)` the state `Ψ(x, y) = ∫∫ K φ(s) h(t) ds dt`
//! is translated by the model's magnetic translations and the overlap
//! `⟨Ψ_l, Ψ_0⟩ = ∫∫ conj(Ψ_l) Ψ_0` is compared with `S_l` of the seed.
//! With `a² = 4π` the translations act as
//!
//! * model 1: `e^{i(a/2)(l1·y − l2·x)} f(x + a·l1, y + a·l2)`
//! * model 2: `e^{ia·l2(x − y)} f(x, y + a·l1)`
//! * model 3: `e^{−ia·l2·y} f(x, y + a·(l1 + l2))`

use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use crate::overlap::{overlap_entry, Lattice2};
use crate::quad::trapezoid_nodes;
use crate::seedfn::{presets, Domain, SeedFunction};
use crate::{Error, Exec, Result, C64, HALF_A, LATTICE_A};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelVariant {
    Example1,
    Example2,
    Example3,
}

impl KernelVariant {
    pub const ALL: [KernelVariant; 3] = [KernelVariant::Example1, KernelVariant::Example2, KernelVariant::Example3];

    pub fn name(self) -> &'static str {
        match self {
            KernelVariant::Example1 => "example1",
            KernelVariant::Example2 => "example2",
            KernelVariant::Example3 => "example3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelModel {
    pub variant: KernelVariant,
    pub phi0: SeedFunction,
    phi0_hat: SeedFunction,
}

impl KernelModel {
    pub fn new(variant: KernelVariant, phi0: SeedFunction) -> Result<Self> {
        if phi0.domain() != Domain::Position {
            return Err(Error::InvalidArgument("phi0 must be given in the position domain".into()));
        }
        let norm = phi0.l2_norm_sq();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("phi0 has squared norm {norm}, expected 1")));
        }
        let phi0_hat = phi0.fourier()?;
        Ok(Self { variant, phi0, phi0_hat })
    }

    /// Ground state `π^{-1/4} e^{-s²/2}` as auxiliary function.
    pub fn ground(variant: KernelVariant) -> Self {
        Self::new(variant, presets::gaussian()).expect("normalised Gaussian")
    }
}

pub fn kernel(model: &KernelModel, x: f64, y: f64, s: f64, t: f64) -> C64 {
    let phase = match model.variant {
        KernelVariant::Example1 => x * t + y * s - s * t - 0.5 * x * y,
        KernelVariant::Example2 => x * (s - t) + y * t,
        KernelVariant::Example3 => 0.5 * (x * x + 2.0 * (y * t - x * s) + s * s - t * t),
    };
    C64::cis(phase) / (2.0 * PI)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadSettings {
    /// Truncation of the inner `s`, `t` integrals.
    pub inner_radius: f64,
    pub inner_nodes: usize,
    /// Requested half-width of the outer `(x, y)` box; the step is snapped to
    /// `a/k` so that lattice translations are index shifts.
    pub outer_radius: f64,
    pub outer_nodes: usize,
    /// Largest tolerated `|Ψ_0|` on the box boundary, relative to its maximum.
    pub tail_tol: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self { inner_radius: 10.0, inner_nodes: 201, outer_radius: 8.0, outer_nodes: 257, tail_tol: 1e-4 }
    }
}

impl QuadSettings {
    /// Outer grid: step `a/k` and `half` nodes on each side of the origin.
    pub fn outer_grid(&self) -> Result<(f64, usize)> {
        if self.outer_nodes < 3 || !(self.outer_radius > 0.0) || self.inner_nodes < 2 || !(self.inner_radius > 0.0) {
            return Err(Error::InvalidArgument("quadrature needs positive radii and at least 3 nodes".into()));
        }
        let half = (self.outer_nodes - 1) / 2;
        let per_cell = (LATTICE_A * half as f64 / self.outer_radius).round().max(1.0) as usize;
        Ok((LATTICE_A / per_cell as f64, half))
    }

    fn per_cell(&self) -> Result<i64> {
        let (dx, _) = self.outer_grid()?;
        Ok((LATTICE_A / dx).round() as i64)
    }
}

/// Magnetic translation `T1^{l1} T2^{l2}` of a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Translation {
    pub variant: KernelVariant,
    pub l1: i64,
    pub l2: i64,
}

impl Translation {
    /// `(phase, dx, dy)` with `(T f)(x, y) = phase·f(x + dx, y + dy)`.
    pub fn action(&self, x: f64, y: f64) -> (C64, f64, f64) {
        let (l1, l2) = (self.l1 as f64, self.l2 as f64);
        match self.variant {
            KernelVariant::Example1 => (C64::cis(HALF_A * (l1 * y - l2 * x)), LATTICE_A * l1, LATTICE_A * l2),
            KernelVariant::Example2 => (C64::cis(LATTICE_A * l2 * (x - y)), 0.0, LATTICE_A * l1),
            KernelVariant::Example3 => (C64::cis(-LATTICE_A * l2 * y), 0.0, LATTICE_A * (l1 + l2)),
        }
    }

    /// Shift in grid cells of `a/per_cell`.
    fn index_shift(&self, per_cell: i64) -> (i64, i64) {
        let (l1, l2) = (self.l1, self.l2);
        match self.variant {
            KernelVariant::Example1 => (per_cell * l1, per_cell * l2),
            KernelVariant::Example2 => (0, per_cell * l1),
            KernelVariant::Example3 => (0, per_cell * (l1 + l2)),
        }
    }

    pub fn apply<F: Fn(f64, f64) -> C64>(&self, f: &F, x: f64, y: f64) -> C64 {
        let (phase, dx, dy) = self.action(x, y);
        phase * f(x + dx, y + dy)
    }
}

/// Evaluator of the translated state.
pub fn translate_wavefunction<'a, F>(model: &KernelModel, psi: &'a F, l1: i64, l2: i64) -> impl Fn(f64, f64) -> C64 + 'a
where
    F: Fn(f64, f64) -> C64 + 'a,
{
    let t = Translation { variant: model.variant, l1, l2 };
    move |x, y| t.apply(psi, x, y)
}

/// Factored inner integrals for one `(model, seed)` pair.
struct Integrals<'a> {
    model: &'a KernelModel,
    seed: &'a SeedFunction,
    nodes: Vec<(f64, f64)>,
}

impl<'a> Integrals<'a> {
    fn new(model: &'a KernelModel, seed: &'a SeedFunction, quad: &QuadSettings) -> Result<Self> {
        if seed.domain() != Domain::Position {
            return Err(Error::InvalidArgument("cross-check seeds must be in the position domain".into()));
        }
        Ok(Self { model, seed, nodes: trapezoid_nodes(quad.inner_radius, quad.inner_nodes) })
    }

    /// `∫ e^{i(k·u + c·u²)} g(u) du`.
    fn chirp(&self, g: &SeedFunction, k: f64, c: f64) -> C64 {
        self.nodes.iter().map(|&(u, w)| g.eval(u) * C64::cis(k * u + c * u * u) * w).sum()
    }

    /// `φ̂(t_k − y)` for every inner node `t_k`.
    fn phi_hat_column(&self, y: f64) -> Vec<C64> {
        self.nodes.iter().map(|&(t, _)| self.model.phi0_hat.eval(t - y)).collect()
    }

    /// `Ψ(x, y_j)` for model 1 given the precomputed columns of `y_j`.
    fn model1_row(&self, x: f64, ys: &[f64], columns: &[Vec<C64>]) -> Vec<C64> {
        let h: Vec<C64> = self.nodes.iter().map(|&(t, w)| self.seed.eval(t) * C64::cis(x * t) * w).collect();
        ys.iter()
            .zip(columns)
            .map(|(&y, col)| {
                let inner: C64 = h.iter().zip(col).map(|(hv, p)| hv * p).sum();
                inner * C64::cis(-0.5 * x * y) / (2.0 * PI).sqrt()
            })
            .collect()
    }

    fn factors(&self, x: f64, y: f64) -> C64 {
        let phi = &self.model.phi0;
        match self.model.variant {
            KernelVariant::Example1 => self.model1_row(x, &[y], &[self.phi_hat_column(y)])[0],
            KernelVariant::Example2 => self.chirp(phi, x, 0.0) * self.chirp(self.seed, y - x, 0.0) / (2.0 * PI),
            KernelVariant::Example3 => {
                C64::cis(0.5 * x * x) * self.chirp(phi, -x, 0.5) * self.chirp(self.seed, y, -0.5) / (2.0 * PI)
            }
        }
    }
}

/// `Ψ(x, y)` for a position-domain seed.
pub fn wavefunction(model: &KernelModel, seed: &SeedFunction, x: f64, y: f64, quad: &QuadSettings) -> Result<C64> {
    Ok(Integrals::new(model, seed, quad)?.factors(x, y))
}

/// `Ψ_0` on a uniform square-cell grid wide enough for every translation up to
/// `l_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct WavefunctionTable {
    pub dx: f64,
    /// Grid index offset of the origin along `x` and `y`.
    pub ox: i64,
    pub oy: i64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<C64>,
    /// Half-width, in nodes, of the integration box.
    pub half: i64,
    pub per_cell: i64,
}

impl WavefunctionTable {
    pub fn at(&self, i: i64, j: i64) -> C64 {
        let (ix, jy) = (i + self.ox, j + self.oy);
        if ix < 0 || jy < 0 || ix >= self.nx as i64 || jy >= self.ny as i64 {
            return C64::zero();
        }
        self.values[ix as usize * self.ny + jy as usize]
    }

    pub fn coord(&self, i: i64) -> f64 {
        i as f64 * self.dx
    }

    /// `max |Ψ_0|` on the boundary of the integration box over the interior maximum.
    pub fn boundary_ratio(&self) -> f64 {
        let h = self.half;
        let mut edge = 0.0f64;
        let mut max = 0.0f64;
        for i in -h..=h {
            for j in -h..=h {
                let v = self.at(i, j).norm();
                max = max.max(v);
                if i.abs() == h || j.abs() == h {
                    edge = edge.max(v);
                }
            }
        }
        if max == 0.0 {
            0.0
        } else {
            edge / max
        }
    }
}

pub fn tabulate(
    model: &KernelModel,
    seed: &SeedFunction,
    l_max: usize,
    quad: &QuadSettings,
    exec: Exec,
) -> Result<WavefunctionTable> {
    let ints = Integrals::new(model, seed, quad)?;
    let (dx, half) = quad.outer_grid()?;
    let per_cell = quad.per_cell()?;
    let half = half as i64;
    let l = l_max as i64;
    let (ex, ey) = match model.variant {
        KernelVariant::Example1 => (l * per_cell, l * per_cell),
        KernelVariant::Example2 => (0, l * per_cell),
        KernelVariant::Example3 => (0, 2 * l * per_cell),
    };
    let (ox, oy) = (half + ex, half + ey);
    let (nx, ny) = ((2 * ox + 1) as usize, (2 * oy + 1) as usize);
    let xs: Vec<f64> = (0..nx).map(|i| (i as i64 - ox) as f64 * dx).collect();
    let ys: Vec<f64> = (0..ny).map(|j| (j as i64 - oy) as f64 * dx).collect();
    let values: Vec<C64> = match model.variant {
        KernelVariant::Example1 => {
            let columns = exec.map(ny, |j| ints.phi_hat_column(ys[j]));
            exec.map(nx, |i| ints.model1_row(xs[i], &ys, &columns)).into_iter().flatten().collect()
        }
        KernelVariant::Example2 => {
            // Ψ = φ̌(x)·ȟ(y − x); both differences lie on the grid.
            let phi: Vec<C64> = exec.map(nx, |i| ints.chirp(&model.phi0, xs[i], 0.0));
            let span = nx as i64 + ny as i64;
            let diffs: Vec<C64> = exec.map(span as usize, |k| {
                let d = (k as i64 - (ox + oy)) as f64 * dx;
                ints.chirp(seed, d, 0.0)
            });
            let mut out = Vec::with_capacity(nx * ny);
            for (i, p) in phi.iter().enumerate() {
                for j in 0..ny {
                    let k = (j as i64 - oy) - (i as i64 - ox) + ox + oy;
                    out.push(p * diffs[k as usize] / (2.0 * PI));
                }
            }
            out
        }
        KernelVariant::Example3 => {
            let a: Vec<C64> = exec.map(nx, |i| C64::cis(0.5 * xs[i] * xs[i]) * ints.chirp(&model.phi0, -xs[i], 0.5));
            let b: Vec<C64> = exec.map(ny, |j| ints.chirp(seed, ys[j], -0.5));
            let mut out = Vec::with_capacity(nx * ny);
            for p in &a {
                for q in &b {
                    out.push(p * q / (2.0 * PI));
                }
            }
            out
        }
    };
    Ok(WavefunctionTable { dx, ox, oy, nx, ny, values, half, per_cell })
}

/// `∫∫ conj(Ψ_l) Ψ_0` over the integration box of the table.
pub fn overlap_from_table(table: &WavefunctionTable, variant: KernelVariant, l1: i64, l2: i64) -> C64 {
    let t = Translation { variant, l1, l2 };
    let (si, sj) = t.index_shift(table.per_cell);
    let h = table.half;
    let mut acc = C64::zero();
    for i in -h..=h {
        let x = table.coord(i);
        let mut row = C64::zero();
        for j in -h..=h {
            let y = table.coord(j);
            let (phase, _, _) = t.action(x, y);
            let shifted = phase * table.at(i + si, j + sj);
            row += shifted.conj() * table.at(i, j);
        }
        acc += row;
    }
    acc * table.dx * table.dx
}

fn checked_table(
    model: &KernelModel,
    seed: &SeedFunction,
    l_max: usize,
    quad: &QuadSettings,
    exec: Exec,
) -> Result<WavefunctionTable> {
    let table = tabulate(model, seed, l_max, quad, exec)?;
    let ratio = table.boundary_ratio();
    if !(ratio <= quad.tail_tol) {
        return Err(Error::QuadratureDivergence(format!(
            "|Ψ| on the boundary of the {:.3}-box is {ratio:e} of its maximum (limit {:e})",
            table.half as f64 * table.dx,
            quad.tail_tol
        )));
    }
    Ok(table)
}

pub fn overlap2d(model: &KernelModel, seed: &SeedFunction, l1: i64, l2: i64, quad: &QuadSettings) -> Result<C64> {
    let l_max = l1.unsigned_abs().max(l2.unsigned_abs()) as usize;
    let table = checked_table(model, seed, l_max, quad, Exec::default())?;
    Ok(overlap_from_table(&table, model.variant, l1, l2))
}

/// `⟨Ψ_l, Ψ_0⟩` for all `|l1|, |l2| ≤ l_max` from a single tabulation.
pub fn overlap2d_table(
    model: &KernelModel,
    seed: &SeedFunction,
    l_max: usize,
    quad: &QuadSettings,
    exec: Exec,
) -> Result<Lattice2> {
    let table = checked_table(model, seed, l_max, quad, exec)?;
    Ok(Lattice2::from_fn(l_max, exec, |l1, l2| overlap_from_table(&table, model.variant, l1, l2)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossEntry {
    pub l1: i64,
    pub l2: i64,
    pub re: f64,
    pub im: f64,
    pub oracle_re: f64,
    pub oracle_im: f64,
    /// `||value| − |oracle||`.
    pub abs_error: f64,
    /// `|value − oracle|`, phase included.
    pub complex_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelReport {
    pub model: &'static str,
    pub entries: Vec<CrossEntry>,
    pub max_abs_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub l_max: usize,
    pub tol: f64,
    pub quad: QuadSettings,
    pub grid_step: f64,
    pub models: Vec<ModelReport>,
}

impl CrossCheckReport {
    pub fn max_abs_error(&self) -> f64 {
        self.models.iter().map(|m| m.max_abs_error).fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.max_abs_error() <= self.tol
    }
}

/// Compares the 2D overlaps of every model with `S_l` of the seed.
pub fn crosscheck(
    models: &[KernelModel],
    seed: &SeedFunction,
    l_max: usize,
    quad: &QuadSettings,
    tol: f64,
    exec: Exec,
) -> Result<CrossCheckReport> {
    let mut reports = Vec::with_capacity(models.len());
    for model in models {
        let values = overlap2d_table(model, seed, l_max, quad, exec)?;
        let mut entries = Vec::new();
        for (l1, l2, v) in values.iter() {
            let oracle = overlap_entry(seed, l1, l2)?;
            entries.push(CrossEntry {
                l1,
                l2,
                re: v.re,
                im: v.im,
                oracle_re: oracle.re,
                oracle_im: oracle.im,
                abs_error: (v.norm() - oracle.norm()).abs(),
                complex_error: (v - oracle).norm(),
            });
        }
        let max_abs_error = entries.iter().map(|e| e.abs_error).fold(0.0, f64::max);
        reports.push(ModelReport { model: model.variant.name(), entries, max_abs_error });
    }
    Ok(CrossCheckReport { l_max, tol, quad: *quad, grid_step: quad.outer_grid()?.0, models: reports })
}
