//! Seed functions: closed-form representations of `h(s)` or `ĥ(p)`.
//!
//! The Fourier convention throughout is `ĥ(p) = (2π)^{-1/2} ∫ e^{-ipx} h(x) dx`.
//! Piecewise seeds store interval endpoints as rationals in units of the
//! lattice spacing `a`, so translating by `a·l` maps breakpoints onto
//! breakpoints exactly.

pub mod analytic;
pub mod presets;
pub mod spec;

use std::f64::consts::PI;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use analytic::Rational;
use analytic::{exp_integral, exp_integral_real, lattice_phase, pole_pair_integral, to_f64};

use crate::{Error, Result, C64, HALF_A, I, LATTICE_A};

/// Truncation of the lattice: indices `|l| ≤ radius`, spacing fixed at `a = 2√π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeParams {
    pub radius: usize,
}

impl LatticeParams {
    pub const DEFAULT_RADIUS: usize = 8;

    pub fn new(radius: usize) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidArgument("lattice radius must be at least 1".into()));
        }
        Ok(Self { radius })
    }

    pub fn a(&self) -> f64 {
        LATTICE_A
    }
}

impl Default for LatticeParams {
    fn default() -> Self {
        Self { radius: Self::DEFAULT_RADIUS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Position,
    Frequency,
}

impl Domain {
    pub fn dual(self) -> Self {
        match self {
            Domain::Position => Domain::Frequency,
            Domain::Frequency => Domain::Position,
        }
    }
}

/// One modulated term `c·exp(iωx)` with `ω = mu_half_a·(a/2) + mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub amplitude: C64,
    pub mu_half_a: Rational,
    pub mu: f64,
}

impl Term {
    pub fn constant(amplitude: C64) -> Self {
        Self { amplitude, mu_half_a: Rational::zero(), mu: 0.0 }
    }

    pub fn omega(&self) -> f64 {
        to_f64(self.mu_half_a) * HALF_A + self.mu
    }
}

/// Half-open interval `[start·a, end·a)` carrying a sum of modulated terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub start: Rational,
    pub end: Rational,
    pub terms: Vec<Term>,
}

impl Segment {
    pub fn constant(start: Rational, end: Rational, amplitude: C64) -> Self {
        Self { start, end, terms: vec![Term::constant(amplitude)] }
    }

    /// `c·exp(iμx)` with a free real modulation `μ`.
    pub fn modulated(start: Rational, end: Rational, amplitude: C64, mu: f64) -> Self {
        Self { start, end, terms: vec![Term { amplitude, mu_half_a: Rational::zero(), mu }] }
    }

    /// `c·exp(i·m·(a/2)·x)` with a lattice-commensurate modulation.
    pub fn lattice_modulated(start: Rational, end: Rational, amplitude: C64, m: Rational) -> Self {
        Self { start, end, terms: vec![Term { amplitude, mu_half_a: m, mu: 0.0 }] }
    }

    fn contains(&self, r: Rational) -> bool {
        self.start <= r && r < self.end
    }

    fn contains_f64(&self, t: f64) -> bool {
        to_f64(self.start) <= t && t < to_f64(self.end)
    }

    fn value_at_lattice(&self, r: Rational) -> C64 {
        self.terms.iter().map(|t| t.amplitude * lattice_phase(t.mu_half_a, t.mu, r)).sum()
    }

    fn value_at(&self, x: f64) -> C64 {
        self.terms
            .iter()
            .map(|t| {
                let w = t.omega();
                if w == 0.0 {
                    t.amplitude
                } else {
                    t.amplitude * C64::cis(w * x)
                }
            })
            .sum()
    }
}

/// `A·exp(iμx)·σ^{-1/2}·ψ_n((x − c)/σ)` with `ψ_n` the normalised Hermite
/// function of order `n ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gaussian {
    pub amplitude: C64,
    pub center: f64,
    pub width: f64,
    pub mu: f64,
    pub order: u8,
}

impl Gaussian {
    pub fn standard() -> Self {
        Self { amplitude: C64::new(1.0, 0.0), center: 0.0, width: 1.0, mu: 0.0, order: 0 }
    }

    pub fn value_at(&self, x: f64) -> C64 {
        let u = (x - self.center) / self.width;
        let mut base = PI.powf(-0.25) * (-0.5 * u * u).exp() / self.width.sqrt();
        if self.order == 1 {
            base *= std::f64::consts::SQRT_2 * u;
        }
        let v = self.amplitude * base;
        if self.mu == 0.0 {
            v
        } else {
            v * C64::cis(self.mu * x)
        }
    }

    /// Transform with kernel `exp(i·dir·x·u)/√(2π)`, `dir = −1` forward.
    fn transformed(&self, dir: f64) -> Self {
        let rot = if self.order == 1 { I * dir } else { C64::new(1.0, 0.0) };
        Self {
            amplitude: self.amplitude * rot * C64::cis(self.mu * self.center),
            center: -dir * self.mu,
            width: 1.0 / self.width,
            mu: dir * self.center,
            order: self.order,
        }
    }

    /// `∫ g(x)·conj(g(x + b))·exp(−ikx) dx`, `b = shift·a`, `k = freq·a`.
    fn cross(&self, shift: i64, freq: i64) -> C64 {
        let b = shift as f64 * LATTICE_A;
        let k = freq as f64 * LATTICE_A;
        let beta2 = b * b / (4.0 * self.width * self.width);
        let kappa2 = k * k * self.width * self.width;
        let poly = if self.order == 1 { 1.0 - 0.5 * kappa2 - 2.0 * beta2 } else { 1.0 };
        // The cross term k·b/2 = 2π·shift·freq is a whole number of turns.
        let phase = -self.mu * b - k * self.center;
        self.amplitude.norm_sqr() * (-beta2 - 0.25 * kappa2).exp() * poly * C64::cis(phase)
    }
}

/// Uniform grid `x0 + i·dx` with complex samples; linear between samples and
/// zero outside the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampled {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<C64>,
}

impl Sampled {
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn x_last(&self) -> f64 {
        self.x(self.values.len() - 1)
    }

    pub fn value_at(&self, x: f64) -> C64 {
        let t = (x - self.x0) / self.dx;
        let n = self.values.len();
        if !(t >= 0.0) || t > (n - 1) as f64 {
            return C64::zero();
        }
        let i = (t.floor() as usize).min(n - 2);
        let frac = t - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.values.len() {
            0.5 * self.dx
        } else {
            self.dx
        }
    }

    fn check_coverage(&self) -> Result<()> {
        let max = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let first = self.values[0].norm();
        let last = self.values[self.values.len() - 1].norm();
        if max > 0.0 && first.max(last) > 1e-6 * max {
            return Err(Error::QuadratureDivergence(format!(
                "sampled grid [{}, {}] does not cover the support (edge samples {first:e}, {last:e})",
                self.x0,
                self.x_last()
            )));
        }
        Ok(())
    }

    fn cross(&self, shift: i64, freq: i64) -> Result<C64> {
        self.check_coverage()?;
        let b = shift as f64 * LATTICE_A;
        let k = freq as f64 * LATTICE_A;
        let offset = b / self.dx;
        let n = self.values.len();
        if (offset - offset.round()).abs() < 1e-9 {
            let m = offset.round() as i64;
            let mut acc = C64::zero();
            for i in 0..n {
                let j = i as i64 + m;
                if j < 0 || j >= n as i64 {
                    continue;
                }
                let x = self.x(i);
                acc += self.values[i] * self.values[j as usize].conj() * C64::cis(-k * x) * self.trapezoid_weight(i);
            }
            return Ok(acc);
        }
        // Union of the grid and the shifted grid; both factors are linear in between.
        let lo = self.x0;
        let hi = self.x_last();
        let mut nodes: Vec<f64> = (0..n).map(|i| self.x(i)).collect();
        nodes.extend((0..n).map(|i| self.x(i) - b).filter(|&x| x > lo && x < hi));
        nodes.sort_by(|p, q| p.partial_cmp(q).unwrap());
        nodes.dedup_by(|p, q| (*p - *q).abs() < 1e-14 * self.dx);
        let f = |x: f64| self.value_at(x) * self.value_at(x + b).conj() * C64::cis(-k * x);
        let mut acc = C64::zero();
        let mut prev = (nodes[0], f(nodes[0]));
        for &x in &nodes[1..] {
            let cur = (x, f(x));
            acc += (cur.1 + prev.1) * (0.5 * (cur.0 - prev.0));
            prev = cur;
        }
        Ok(acc)
    }
}

/// Fourier image of a piecewise seed, evaluated lazily:
/// `g(x) = (2π)^{-1/2} Σ c·∫_{start·a}^{end·a} exp(iωu)·exp(i·sign·x·u) du`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub segments: Vec<Segment>,
    /// `−1` for the forward transform, `+1` for the inverse.
    pub sign: i8,
}

impl Spectrum {
    fn value_at(&self, x: f64) -> C64 {
        let s = self.sign as f64;
        let mut acc = C64::zero();
        for seg in &self.segments {
            let lo = to_f64(seg.start) * LATTICE_A;
            let hi = to_f64(seg.end) * LATTICE_A;
            for t in &seg.terms {
                acc += t.amplitude * exp_integral_real(t.omega() + s * x, lo, hi);
            }
        }
        acc / (2.0 * PI).sqrt()
    }

    fn value_at_lattice(&self, r: Rational) -> C64 {
        let shift = r * Rational::from_integer(2 * self.sign as i64);
        let mut acc = C64::zero();
        for seg in &self.segments {
            for t in &seg.terms {
                acc += t.amplitude * exp_integral(t.mu_half_a + shift, t.mu, seg.start, seg.end);
            }
        }
        acc / (2.0 * PI).sqrt()
    }

    /// Closed form of `∫ g(x)·conj(g(x + b))·exp(−ikx) dx` by partial fractions
    /// and principal values of `exp(−ixD)/(x − A)`.
    fn cross(&self, shift: i64, freq: i64) -> C64 {
        let s = self.sign as f64;
        let b = shift as f64 * LATTICE_A;
        let k = freq as f64 * LATTICE_A;
        struct Comp {
            c: C64,
            w: f64,
            ends: [(f64, f64); 2],
        }
        let comps: Vec<Comp> = self
            .segments
            .iter()
            .flat_map(|seg| {
                let lo = to_f64(seg.start) * LATTICE_A;
                let hi = to_f64(seg.end) * LATTICE_A;
                seg.terms.iter().map(move |t| Comp { c: t.amplitude, w: t.omega(), ends: [(hi, 1.0), (lo, -1.0)] })
            })
            .collect();
        let mut acc = C64::zero();
        for p in &comps {
            let pole = -s * p.w;
            for q in &comps {
                let pole2 = -s * q.w - b;
                let pref = p.c * q.c.conj();
                let mut inner = C64::zero();
                for &(e, se) in &p.ends {
                    for &(e2, se2) in &q.ends {
                        let d = s * (e2 - e) + k;
                        let phase = p.w * e - q.w * e2 - s * b * e2;
                        inner += se * se2 * C64::cis(phase) * pole_pair_integral(d, pole, pole2);
                    }
                }
                acc += pref * inner;
            }
        }
        acc / (2.0 * PI)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeedKind {
    /// Piecewise constant or modulated; the JSON kinds `piecewise_constant` and
    /// `piecewise_modulated` both map here.
    Piecewise(Vec<Segment>),
    Gaussian(Gaussian),
    Sampled(Sampled),
    /// Analytic closure produced by [`SeedFunction::fourier`] of a piecewise seed.
    Spectrum(Spectrum),
}

/// `h(s)` (position domain) or `ĥ(p)` (frequency domain).
#[derive(Clone, Debug, PartialEq)]
pub struct SeedFunction {
    domain: Domain,
    kind: SeedKind,
}

impl SeedFunction {
    pub fn new(domain: Domain, kind: SeedKind) -> Result<Self> {
        let kind = match kind {
            SeedKind::Piecewise(mut segs) => {
                if segs.is_empty() {
                    return Err(Error::InvalidSeed("piecewise seed without segments".into()));
                }
                segs.sort_by_key(|s| s.start);
                for s in &segs {
                    if s.start >= s.end {
                        return Err(Error::InvalidSeed(format!("segment [{}, {}) is empty", s.start, s.end)));
                    }
                    if s.terms
                        .iter()
                        .any(|t| !(t.amplitude.re.is_finite() && t.amplitude.im.is_finite() && t.mu.is_finite()))
                    {
                        return Err(Error::InvalidSeed("non-finite segment amplitude or modulation".into()));
                    }
                }
                for w in segs.windows(2) {
                    if w[1].start < w[0].end {
                        return Err(Error::InvalidSeed(format!(
                            "segments [{}, {}) and [{}, {}) overlap",
                            w[0].start, w[0].end, w[1].start, w[1].end
                        )));
                    }
                }
                SeedKind::Piecewise(segs)
            }
            SeedKind::Gaussian(g) => {
                if !(g.width > 0.0 && g.width.is_finite()) || g.order > 1 || !g.center.is_finite() || !g.mu.is_finite()
                {
                    return Err(Error::InvalidSeed("gaussian needs width > 0, order 0 or 1, finite parameters".into()));
                }
                SeedKind::Gaussian(g)
            }
            SeedKind::Sampled(s) => {
                if s.values.len() < 2 || !(s.dx > 0.0) || !s.x0.is_finite() {
                    return Err(Error::InvalidSeed("sampled seed needs at least two samples and dx > 0".into()));
                }
                if s.values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
                    return Err(Error::InvalidSeed("non-finite sample".into()));
                }
                SeedKind::Sampled(s)
            }
            SeedKind::Spectrum(sp) => {
                let expected = if domain == Domain::Frequency { -1 } else { 1 };
                if sp.sign != expected {
                    return Err(Error::InvalidSeed("spectrum sign does not match its domain".into()));
                }
                SeedKind::Spectrum(sp)
            }
        };
        Ok(Self { domain, kind })
    }

    pub fn piecewise(domain: Domain, segments: Vec<Segment>) -> Result<Self> {
        Self::new(domain, SeedKind::Piecewise(segments))
    }

    pub fn gaussian(domain: Domain, g: Gaussian) -> Result<Self> {
        Self::new(domain, SeedKind::Gaussian(g))
    }

    pub fn sampled(domain: Domain, x0: f64, dx: f64, values: Vec<C64>) -> Result<Self> {
        Self::new(domain, SeedKind::Sampled(Sampled { x0, dx, values }))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn kind(&self) -> &SeedKind {
        &self.kind
    }

    pub fn is_symbolic(&self) -> bool {
        !matches!(self.kind, SeedKind::Sampled(_))
    }

    /// Value of the represented function at `x`; segments are half-open.
    pub fn eval(&self, x: f64) -> C64 {
        match &self.kind {
            SeedKind::Piecewise(segs) => {
                let t = x / LATTICE_A;
                segs.iter().find(|s| s.contains_f64(t)).map_or(C64::zero(), |s| s.value_at(x))
            }
            SeedKind::Gaussian(g) => g.value_at(x),
            SeedKind::Sampled(s) => s.value_at(x),
            SeedKind::Spectrum(sp) => sp.value_at(x),
        }
    }

    /// Value at `x = r·a`, with exact breakpoint handling and exact lattice
    /// phases for the piecewise and spectrum kinds.
    pub fn eval_lattice(&self, r: Rational) -> C64 {
        match &self.kind {
            SeedKind::Piecewise(segs) => {
                segs.iter().find(|s| s.contains(r)).map_or(C64::zero(), |s| s.value_at_lattice(r))
            }
            SeedKind::Spectrum(sp) => sp.value_at_lattice(r),
            _ => self.eval(to_f64(r) * LATTICE_A),
        }
    }

    /// The same function represented in the other domain.
    pub fn fourier(&self) -> Result<SeedFunction> {
        let dual = self.domain.dual();
        let kind = match &self.kind {
            SeedKind::Piecewise(segs) => {
                let sign = if self.domain == Domain::Position { -1 } else { 1 };
                SeedKind::Spectrum(Spectrum { segments: segs.clone(), sign })
            }
            SeedKind::Spectrum(sp) => SeedKind::Piecewise(sp.segments.clone()),
            SeedKind::Gaussian(g) => {
                let dir = if self.domain == Domain::Position { -1.0 } else { 1.0 };
                SeedKind::Gaussian(g.transformed(dir))
            }
            SeedKind::Sampled(_) => {
                return Err(Error::Unsupported("Fourier transform of a sampled seed".into()));
            }
        };
        Ok(SeedFunction { domain: dual, kind })
    }

    /// `∫ |g|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        match &self.kind {
            SeedKind::Piecewise(segs) => {
                let mut acc = C64::zero();
                for seg in segs {
                    for t in &seg.terms {
                        for u in &seg.terms {
                            acc += t.amplitude
                                * u.amplitude.conj()
                                * exp_integral(t.mu_half_a - u.mu_half_a, t.mu - u.mu, seg.start, seg.end);
                        }
                    }
                }
                acc.re
            }
            SeedKind::Gaussian(g) => g.amplitude.norm_sqr(),
            SeedKind::Sampled(s) => (0..s.values.len()).map(|i| s.values[i].norm_sqr() * s.trapezoid_weight(i)).sum(),
            SeedKind::Spectrum(sp) => sp.cross(0, 0).re,
        }
    }

    /// `∫ g`.
    pub fn integral(&self) -> Result<C64> {
        Ok(match &self.kind {
            SeedKind::Piecewise(segs) => segs
                .iter()
                .flat_map(|seg| {
                    seg.terms.iter().map(move |t| t.amplitude * exp_integral(t.mu_half_a, t.mu, seg.start, seg.end))
                })
                .sum(),
            SeedKind::Gaussian(_) | SeedKind::Spectrum(_) => {
                self.fourier()?.eval_lattice(Rational::zero()) * (2.0 * PI).sqrt()
            }
            SeedKind::Sampled(s) => (0..s.values.len()).map(|i| s.values[i] * s.trapezoid_weight(i)).sum(),
        })
    }

    /// `∫ g(x)·conj(g(x + shift·a))·exp(−i·x·freq·a) dx` in this seed's own domain.
    pub fn cross(&self, shift: i64, freq: i64) -> Result<C64> {
        Ok(match &self.kind {
            SeedKind::Piecewise(segs) => piecewise_cross(segs, shift, freq),
            SeedKind::Gaussian(g) => g.cross(shift, freq),
            SeedKind::Sampled(s) => s.cross(shift, freq)?,
            SeedKind::Spectrum(sp) => sp.cross(shift, freq),
        })
    }

    /// `c·g`.
    pub fn scaled(&self, c: C64) -> SeedFunction {
        let kind = match &self.kind {
            SeedKind::Piecewise(segs) => SeedKind::Piecewise(scale_segments(segs, c)),
            SeedKind::Gaussian(g) => SeedKind::Gaussian(Gaussian { amplitude: g.amplitude * c, ..g.clone() }),
            SeedKind::Sampled(s) => {
                SeedKind::Sampled(Sampled { values: s.values.iter().map(|v| v * c).collect(), ..s.clone() })
            }
            SeedKind::Spectrum(sp) => {
                SeedKind::Spectrum(Spectrum { segments: scale_segments(&sp.segments, c), sign: sp.sign })
            }
        };
        SeedFunction { domain: self.domain, kind }
    }

    /// Extent of a compact support in units of `a`, if the representation has one.
    pub fn support_a(&self) -> Option<(f64, f64)> {
        match &self.kind {
            SeedKind::Piecewise(segs) => Some((to_f64(segs[0].start), to_f64(segs[segs.len() - 1].end))),
            SeedKind::Sampled(s) => Some((s.x0 / LATTICE_A, s.x_last() / LATTICE_A)),
            _ => None,
        }
    }

    /// Interval in units of `a` outside which the function is negligible
    /// (below ~e^{-200} for Gaussians); `None` for slowly decaying kinds.
    pub fn effective_extent_a(&self) -> Option<(f64, f64)> {
        match &self.kind {
            SeedKind::Gaussian(g) => {
                let r = 21.0 * g.width;
                Some(((g.center - r) / LATTICE_A, (g.center + r) / LATTICE_A))
            }
            SeedKind::Spectrum(_) => None,
            _ => self.support_a(),
        }
    }
}

fn scale_segments(segs: &[Segment], c: C64) -> Vec<Segment> {
    segs.iter()
        .map(|s| Segment {
            start: s.start,
            end: s.end,
            terms: s.terms.iter().map(|t| Term { amplitude: t.amplitude * c, ..t.clone() }).collect(),
        })
        .collect()
}

fn piecewise_cross(segs: &[Segment], shift: i64, freq: i64) -> C64 {
    let shift_r = Rational::from_integer(shift);
    // F = freq·a = (2·freq)·(a/2)
    let freq_half = Rational::from_integer(2 * freq);
    let mut acc = C64::zero();
    for sj in segs {
        for sk in segs {
            let lo = sj.start.max(sk.start - shift_r);
            let hi = sj.end.min(sk.end - shift_r);
            if lo >= hi {
                continue;
            }
            for t in &sj.terms {
                for u in &sk.terms {
                    // conj(u(x + b)) contributes exp(−iω_u b), with ω_u b = 2π·q_u·shift + f_u·shift·a
                    let pref = t.amplitude * u.amplitude.conj() * lattice_phase(-u.mu_half_a, -u.mu, shift_r);
                    acc += pref * exp_integral(t.mu_half_a - u.mu_half_a - freq_half, t.mu - u.mu, lo, hi);
                }
            }
        }
    }
    acc
}

/// Shorthand for `Rational::new`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seedfn::presets;

    #[test]
    fn row1_value_at_half_cell() {
        let h = presets::row1();
        let v = h.eval(LATTICE_A / 2.0);
        assert!((v.re - 1.0 / LATTICE_A.sqrt()).abs() < 1e-15);
        assert!((v.re - 0.531_125_97).abs() < 1e-8);
        assert_eq!(h.eval(-0.1), C64::zero());
        assert_eq!(h.eval(LATTICE_A * 1.01), C64::zero());
        assert_eq!(h.eval_lattice(rat(1, 1)), C64::zero());
        assert!((h.eval_lattice(rat(0, 1)).re - 1.0 / LATTICE_A.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gaussian_amplitude() {
        let g = presets::gaussian();
        assert!((g.eval(0.0).re - 0.751_125_5).abs() < 1e-7);
        let f = g.fourier().unwrap();
        assert_eq!(f.domain(), Domain::Frequency);
        for p in [-2.0, -0.3, 0.0, 1.7] {
            assert!((f.eval(p) - g.eval(p)).norm() < 1e-15, "self-dual at {p}");
        }
    }

    #[test]
    fn row1_transform_closed_form() {
        let h = presets::row1();
        let f = h.fourier().unwrap();
        let a = LATTICE_A;
        for p in [-3.1, -0.2, 0.7, 5.0] {
            let want = (1.0 - C64::cis(-p * a)) / (I * p) / (2.0 * PI * a).sqrt();
            assert!((f.eval(p) - want).norm() < 1e-14);
        }
        assert!((f.eval(0.0).re - (a / (2.0 * PI)).sqrt()).abs() < 1e-15);
        assert!((f.eval_lattice(rat(0, 1)).re - (a / (2.0 * PI)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_seed_transforms_to_zero() {
        let z = presets::zero();
        let f = z.fourier().unwrap();
        for p in [-1.0, 0.0, 2.5] {
            assert_eq!(f.eval(p), C64::zero());
        }
        assert_eq!(f.l2_norm_sq(), 0.0);
    }

    #[test]
    fn norms() {
        assert!((presets::row1().l2_norm_sq() - 1.0).abs() < 1e-15);
        assert!((presets::row7().l2_norm_sq() - 1.0).abs() < 1e-15);
        assert!((presets::gaussian().l2_norm_sq() - 1.0).abs() < 1e-15);
        assert!((presets::haar_position().l2_norm_sq() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sampled_transform_unsupported() {
        let s = SeedFunction::sampled(Domain::Position, 0.0, 0.1, vec![C64::zero(); 4]).unwrap();
        assert!(matches!(s.fourier(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rejects_overlapping_segments() {
        let segs = vec![
            Segment::constant(rat(0, 1), rat(1, 1), C64::new(1.0, 0.0)),
            Segment::constant(rat(1, 2), rat(2, 1), C64::new(1.0, 0.0)),
        ];
        assert!(matches!(SeedFunction::piecewise(Domain::Position, segs), Err(Error::InvalidSeed(_))));
        let bad = vec![Segment::constant(rat(1, 1), rat(1, 1), C64::new(1.0, 0.0))];
        assert!(SeedFunction::piecewise(Domain::Position, bad).is_err());
    }

    #[test]
    fn fourier_round_trip_is_identity() {
        for seed in [presets::row3(), presets::row7(), presets::gaussian(), presets::hermite1()] {
            let back = seed.fourier().unwrap().fourier().unwrap();
            assert_eq!(back.domain(), seed.domain());
            for x in [-1.3, 0.2, 0.9, 2.4, 6.0] {
                assert!((back.eval(x) - seed.eval(x)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn hermite1_spectrum_is_rotated() {
        let h = presets::hermite1();
        let f = h.fourier().unwrap();
        for p in [-1.1, 0.4, 2.0] {
            assert!((f.eval(p) - (-I) * h.eval(p)).norm() < 1e-15);
        }
    }
}
