//! Filter coefficients `h_n = a^{-1/2} ∫ h(s) e^{isna/2} ds` and the relevance
//! conditions (r1)–(r4), plus the seed-level identities that precede them.

use std::f64::consts::{PI, SQRT_2};

use num_traits::Zero;
use serde::Serialize;

use crate::seedfn::analytic::exp_integral;
use crate::seedfn::{rat, Domain, Rational, SeedFunction, SeedKind};
use crate::{Error, Exec, Result, C64, LATTICE_A};

/// Coefficients whose magnitude marks a window edge as a truncated tail.
pub const TAIL_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Extracted,
    Ont,
    Manual,
}

/// `h_n` for `n = n_min, …, n_min + len − 1`; zero outside.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterSequence {
    pub n_min: i64,
    pub coeffs: Vec<C64>,
    pub provenance: Provenance,
}

impl FilterSequence {
    pub fn new(n_min: i64, coeffs: Vec<C64>, provenance: Provenance) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("filter window is empty".into()));
        }
        Ok(Self { n_min, coeffs, provenance })
    }

    pub fn manual(n_min: i64, coeffs: &[f64]) -> Self {
        Self::new(n_min, coeffs.iter().map(|&c| C64::new(c, 0.0)).collect(), Provenance::Manual)
            .expect("nonempty coefficients")
    }

    pub fn haar() -> Self {
        Self::manual(-1, &[std::f64::consts::FRAC_1_SQRT_2; 2])
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> C64 {
        let k = n - self.n_min;
        if k < 0 || k >= self.coeffs.len() as i64 {
            C64::zero()
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(k, &c)| (self.n_min + k as i64, c))
    }

    /// True when either end of the window still carries coefficients above
    /// [`TAIL_FLOOR`]; the two outermost entries are inspected on each side so
    /// that sequences vanishing on every other index are not missed.
    pub fn tail_truncated(&self) -> bool {
        let n = self.coeffs.len();
        let edge = n.min(2);
        self.coeffs[..edge].iter().chain(&self.coeffs[n - edge..]).any(|c| c.norm() > TAIL_FLOOR)
    }

    /// The window with exact or near-zero edges removed (`|h| ≤ floor·max`).
    pub fn trimmed(&self, floor: f64) -> FilterSequence {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let keep = |c: &C64| c.norm() > floor * max;
        match (self.coeffs.iter().position(keep), self.coeffs.iter().rposition(keep)) {
            (Some(lo), Some(hi)) => FilterSequence {
                n_min: self.n_min + lo as i64,
                coeffs: self.coeffs[lo..=hi].to_vec(),
                provenance: self.provenance,
            },
            _ => FilterSequence { n_min: 0, coeffs: vec![C64::zero()], provenance: self.provenance },
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for (n, c) in self.iter() {
            out.push_str(&format!("{n},{},{}\n", c.re, c.im));
        }
        out
    }

    /// Parses the `n,re,im` CSV written by [`FilterSequence::to_csv`]; indices
    /// must be consecutive.
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("filter CSV: {msg}"));
        let mut n_min = None;
        let mut coeffs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with('n')) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(bad(format!("line {} has {} fields", i + 1, fields.len())));
            }
            let n: i64 = fields[0].parse().map_err(|_| bad(format!("bad index on line {}", i + 1)))?;
            let re: f64 = fields[1].parse().map_err(|_| bad(format!("bad value on line {}", i + 1)))?;
            let im: f64 = fields[2].parse().map_err(|_| bad(format!("bad value on line {}", i + 1)))?;
            let start = *n_min.get_or_insert(n);
            if n != start + coeffs.len() as i64 {
                return Err(bad(format!("index {n} is not consecutive")));
            }
            coeffs.push(C64::new(re, im));
        }
        Self::new(n_min.unwrap_or(0), coeffs, Provenance::Manual)
    }
}

/// `h_n` for `|n| ≤ n_range`.
pub fn extract_filter(seed: &SeedFunction, n_range: usize) -> Result<FilterSequence> {
    extract_filter_with(seed, n_range, Exec::default())
}

pub fn extract_filter_with(seed: &SeedFunction, n_range: usize, exec: Exec) -> Result<FilterSequence> {
    if n_range == 0 {
        return Err(Error::InvalidArgument("n_range must be at least 1".into()));
    }
    let r = n_range as i64;
    let norm = (2.0 * PI / LATTICE_A).sqrt();
    let coeffs = match (seed.domain(), seed.kind()) {
        (Domain::Frequency, _) => exec.map(2 * n_range + 1, |k| norm * seed.eval_lattice(rat(r - k as i64, 2))),
        (Domain::Position, SeedKind::Piecewise(segs)) => exec.map(2 * n_range + 1, |k| {
            let n = Rational::from_integer(k as i64 - r);
            let mut acc = C64::zero();
            for seg in segs {
                for t in &seg.terms {
                    acc += t.amplitude * exp_integral(t.mu_half_a + n, t.mu, seg.start, seg.end);
                }
            }
            acc / LATTICE_A.sqrt()
        }),
        (Domain::Position, SeedKind::Sampled(s)) => exec.map(2 * n_range + 1, |k| {
            let w = (k as i64 - r) as f64 * LATTICE_A / 2.0;
            let last = s.values.len() - 1;
            let acc: C64 = s
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let weight = if i == 0 || i == last { 0.5 * s.dx } else { s.dx };
                    v * C64::cis(w * s.x(i)) * weight
                })
                .sum();
            acc / LATTICE_A.sqrt()
        }),
        (Domain::Position, _) => {
            let spectrum = seed.fourier()?;
            exec.map(2 * n_range + 1, |k| norm * spectrum.eval_lattice(rat(r - k as i64, 2)))
        }
    };
    FilterSequence::new(-r, coeffs, Provenance::Extracted)
}

/// `h̃_n = h_{-n}`.
pub fn reflect(f: &FilterSequence) -> FilterSequence {
    FilterSequence { n_min: -f.n_max(), coeffs: f.coeffs.iter().rev().copied().collect(), provenance: f.provenance }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub value: f64,
}

/// `max_{|l|≤l_max} |Σ_n h_n·conj(h_{n+2l}) − δ_{l,0}|`.
///
/// Each sum is accumulated from both ends of the window inwards, which makes
/// the residual bit-identical under [`reflect`].
pub fn check_r1(f: &FilterSequence, l_max: usize, tol: f64) -> Check {
    let residual = (-(l_max as i64)..=l_max as i64)
        .map(|l| {
            let terms: Vec<C64> = f.iter().map(|(n, c)| c * f.get(n + 2 * l).conj()).collect();
            (outside_in_sum(&terms) - if l == 0 { 1.0 } else { 0.0 }).norm()
        })
        .fold(0.0, f64::max);
    Check { pass: residual <= tol, value: residual }
}

fn outside_in_sum(terms: &[C64]) -> C64 {
    let n = terms.len();
    let mut acc = C64::zero();
    for k in 0..n / 2 {
        acc += terms[k] + terms[n - 1 - k];
    }
    if n % 2 == 1 {
        acc += terms[n / 2];
    }
    acc
}

/// `sup_n |h_n|(1 + n²)`; passes when the weighted magnitudes in the outer
/// quarter of the window stay within 5% of those in the inner half.
pub fn check_r2(f: &FilterSequence) -> Check {
    let weighted = |n: i64, c: C64| c.norm() * (1.0 + (n * n) as f64);
    let sup = f.iter().map(|(n, c)| weighted(n, c)).fold(0.0, f64::max);
    let radius = f.n_min.abs().max(f.n_max().abs()).max(8) as f64;
    let inner =
        f.iter().filter(|&(n, _)| n.abs() as f64 <= radius / 2.0).map(|(n, c)| weighted(n, c)).fold(0.0, f64::max);
    let outer =
        f.iter().filter(|&(n, _)| n.abs() as f64 > 0.75 * radius).map(|(n, c)| weighted(n, c)).fold(0.0, f64::max);
    Check { pass: outer <= 1.05 * inner, value: sup }
}

/// `|Σ h_n − √2|` over the window, with `n` and `−n` paired.
pub fn check_r3(f: &FilterSequence, tol: f64) -> Check {
    let sum: C64 = symmetric_sum(f);
    let deviation = (sum - SQRT_2).norm();
    Check { pass: deviation <= tol, value: deviation }
}

/// Partial sum `Σ_{|n|≤N}` pairing `n` with `−n` so that conditionally
/// convergent odd tails cancel before they accumulate.
fn symmetric_sum(f: &FilterSequence) -> C64 {
    let big = f.n_min.abs().max(f.n_max().abs());
    let mut sum = f.get(0);
    for n in 1..=big {
        sum += f.get(n) + f.get(-n);
    }
    sum
}

/// `H(ω) = 2^{-1/2} Σ h_n e^{-iωn}`.
pub fn transfer(f: &FilterSequence, omega: f64) -> C64 {
    let step = C64::cis(-omega);
    let mut acc = C64::zero();
    let mut phase = C64::cis(-omega * f.n_min as f64);
    for (k, &c) in f.coeffs.iter().enumerate() {
        if k % 64 == 0 {
            phase = C64::cis(-omega * (f.n_min + k as i64) as f64);
        }
        acc += c * phase;
        phase *= step;
    }
    acc / SQRT_2
}

/// `min |H(ω)|` over `ω_k = −π/2 + kπ/grid`, `k = 0..=grid`.
pub fn check_r4(f: &FilterSequence, grid: usize, delta: f64) -> Check {
    check_r4_with(f, grid, delta, Exec::default())
}

pub fn check_r4_with(f: &FilterSequence, grid: usize, delta: f64, exec: Exec) -> Check {
    let grid = grid.max(2);
    let values = exec.map(grid + 1, |k| transfer(f, -PI / 2.0 + k as f64 * PI / grid as f64).norm());
    let min = values.into_iter().fold(f64::INFINITY, f64::min);
    Check { pass: min > delta, value: min }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Identity {
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs: f64,
}

impl Identity {
    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs_re, self.lhs_im)
    }

    pub fn gap(&self) -> f64 {
        (self.lhs() - self.rhs).norm()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedConditions {
    /// `Σ_n h(na)` against `(Σ_l h(a·l1/2)·conj(h(a·l1/2 + a·l2)))^{1/2}`.
    pub vi1: Identity,
    /// `Σ_n ĥ(an/2)` against `(2 Σ_l ĥ(a·l2/2)·conj(ĥ(a·l2/2 + a·l1)))^{1/2}`;
    /// absent when no transform is available.
    pub vi2: Option<Identity>,
    /// `min_ω |Σ_n h(a(n + ω/2π))|` over `ω ∈ [−π/2, π/2]`.
    pub vi3_min: f64,
    /// `√(2/a)`, the value `Σ_n h(na)` needs for (r3) to hold.
    pub r3_target: f64,
}

/// Index range, in units of `l·a/2` with `l` in the range, that covers the
/// function's support; slowly decaying representations fall back to `±fallback`.
fn half_cell_range(g: &SeedFunction, fallback: i64) -> (i64, i64) {
    match g.effective_extent_a() {
        Some((lo, hi)) => ((2.0 * lo).floor() as i64 - 1, (2.0 * hi).ceil() as i64 + 1),
        None => (-fallback, fallback),
    }
}

fn lattice_sum(g: &SeedFunction, step_half: i64, fallback: i64) -> C64 {
    let (lo, hi) = half_cell_range(g, fallback);
    let (lo, hi) = (lo.div_euclid(step_half), hi.div_euclid(step_half) + 1);
    (lo..=hi).map(|n| g.eval_lattice(Rational::new(n * step_half, 2))).sum()
}

/// `Re Σ_{l1,l2} g(a·l1/2)·conj(g(a·l1/2 + a·l2))`.
fn pair_sum(g: &SeedFunction, fallback: i64) -> f64 {
    let (lo, hi) = half_cell_range(g, fallback);
    let values: Vec<C64> = (lo..=hi).map(|k| g.eval_lattice(Rational::new(k, 2))).collect();
    let mut acc = C64::zero();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut j = i % 2;
        while j < values.len() {
            acc += v * values[j].conj();
            j += 2;
        }
    }
    acc.re
}

/// Default truncation (in half cells) for representations with `1/x` tails.
pub const SLOW_TAIL_RADIUS: i64 = 256;

pub fn seed_conditions(seed: &SeedFunction, omega_grid: usize) -> Result<SeedConditions> {
    let (h, hhat) = match seed.domain() {
        Domain::Position => (seed.clone(), seed.fourier().ok()),
        Domain::Frequency => (seed.fourier()?, Some(seed.clone())),
    };
    let fb = SLOW_TAIL_RADIUS;
    let vi1_lhs = lattice_sum(&h, 2, fb);
    let vi1 = Identity { lhs_re: vi1_lhs.re, lhs_im: vi1_lhs.im, rhs: pair_sum(&h, fb).max(0.0).sqrt() };
    let vi2 = hhat.map(|g| {
        let lhs = lattice_sum(&g, 1, fb);
        Identity { lhs_re: lhs.re, lhs_im: lhs.im, rhs: (2.0 * pair_sum(&g, fb)).max(0.0).sqrt() }
    });
    let (lo, hi) = half_cell_range(&h, fb);
    let (n_lo, n_hi) = (lo.div_euclid(2) - 1, hi.div_euclid(2) + 1);
    let grid = omega_grid.max(2);
    let vi3_min = Exec::default()
        .map(grid + 1, |k| {
            let w = -PI / 2.0 + k as f64 * PI / grid as f64;
            let frac = w / (2.0 * PI);
            (n_lo..=n_hi).map(|n| h.eval(LATTICE_A * (n as f64 + frac))).sum::<C64>().norm()
        })
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(SeedConditions { vi1, vi2, vi3_min, r3_target: (2.0 / LATTICE_A).sqrt() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelevanceTols {
    pub r1_tol: f64,
    pub l_max: usize,
    pub r3_tol: f64,
    pub r4_grid: usize,
    pub r4_delta: f64,
    pub omega_grid: usize,
}

impl Default for RelevanceTols {
    fn default() -> Self {
        Self { r1_tol: 1e-10, l_max: 8, r3_tol: 1e-10, r4_grid: 4096, r4_delta: 1e-6, omega_grid: 512 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelevanceReport {
    pub r1: Check,
    pub r2: Check,
    pub r3: Check,
    pub r4: Check,
    pub seed: Option<SeedConditions>,
    pub n_min: i64,
    pub n_max: i64,
    pub tail_truncated: bool,
    pub tolerances: RelevanceTols,
}

impl RelevanceReport {
    pub fn all_pass(&self) -> bool {
        self.r1.pass && self.r2.pass && self.r3.pass && self.r4.pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let mut v = json!({
            "r1": { "residual": self.r1.value, "pass": self.r1.pass },
            "r2": { "sup": self.r2.value, "pass": self.r2.pass },
            "r3": { "deviation": self.r3.value, "pass": self.r3.pass },
            "r4": { "min": self.r4.value, "pass": self.r4.pass },
            "window": { "n_min": self.n_min, "n_max": self.n_max, "tail_truncated": self.tail_truncated },
            "tolerances": self.tolerances,
        });
        if let Some(s) = &self.seed {
            fn id(i: &Identity) -> serde_json::Value {
                json!({ "lhs": i.lhs_re, "lhs_im": i.lhs_im, "rhs": i.rhs })
            }
            v["vi1"] = id(&s.vi1);
            v["vi2"] = s.vi2.as_ref().map_or(serde_json::Value::Null, id);
            v["vi3"] = json!({ "min": s.vi3_min });
            v["r3_necessary"] = json!({ "target": s.r3_target, "gap": (s.vi1.lhs() - s.r3_target).norm() });
        }
        v
    }
}

pub fn relevance_report(
    f: &FilterSequence,
    seed: Option<&SeedFunction>,
    tols: &RelevanceTols,
) -> Result<RelevanceReport> {
    let seed = match seed {
        Some(s) => Some(seed_conditions(s, tols.omega_grid)?),
        None => None,
    };
    Ok(RelevanceReport {
        r1: check_r1(f, tols.l_max, tols.r1_tol),
        r2: check_r2(f),
        r3: check_r3(f, tols.r3_tol),
        r4: check_r4(f, tols.r4_grid, tols.r4_delta),
        seed,
        n_min: f.n_min,
        n_max: f.n_max(),
        tail_truncated: f.tail_truncated(),
        tolerances: *tols,
    })
}
