//! Lattice overlap `S_{l1,l2} = ∫ h(s)·conj(h(s + a·l2))·e^{-isa·l1} ds` and
//! the orthonormality tests built on it.

use num_traits::Zero;
use serde::Serialize;

use crate::seedfn::{Domain, LatticeParams, SeedFunction};
use crate::{Error, Exec, Result, C64};

/// Dense complex array on `[-L, L]²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice2 {
    radius: usize,
    values: Vec<C64>,
}

impl Lattice2 {
    pub fn zeros(radius: usize) -> Self {
        let side = 2 * radius + 1;
        Self { radius, values: vec![C64::zero(); side * side] }
    }

    pub fn from_fn(radius: usize, exec: Exec, f: impl Fn(i64, i64) -> C64 + Sync + Send) -> Self {
        let side = 2 * radius + 1;
        let r = radius as i64;
        let values = exec.map(side * side, |k| f((k / side) as i64 - r, (k % side) as i64 - r));
        Self { radius, values }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn index(&self, l1: i64, l2: i64) -> Option<usize> {
        let r = self.radius as i64;
        if l1.abs() > r || l2.abs() > r {
            return None;
        }
        Some(((l1 + r) * (2 * r + 1) + (l2 + r)) as usize)
    }

    /// Value at `(l1, l2)`; zero outside the truncation.
    pub fn get(&self, l1: i64, l2: i64) -> C64 {
        self.index(l1, l2).map_or(C64::zero(), |k| self.values[k])
    }

    pub fn set(&mut self, l1: i64, l2: i64, v: C64) {
        let k = self.index(l1, l2).expect("index inside the lattice");
        self.values[k] = v;
    }

    /// `(l1, l2, value)` in row-major order, `l1` outermost.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, C64)> + '_ {
        let side = 2 * self.radius + 1;
        let r = self.radius as i64;
        self.values.iter().enumerate().map(move |(k, &v)| ((k / side) as i64 - r, (k % side) as i64 - r, v))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverlapLattice {
    pub params: LatticeParams,
    pub values: Lattice2,
}

impl OverlapLattice {
    pub fn get(&self, l1: i64, l2: i64) -> C64 {
        self.values.get(l1, l2)
    }

    pub fn radius(&self) -> i64 {
        self.params.radius as i64
    }

    /// `(l1, l2, re, im, abs)` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l1,l2,re,im,abs\n");
        for (l1, l2, v) in self.values.iter() {
            out.push_str(&format!("{l1},{l2},{},{},{}\n", v.re, v.im, v.norm()));
        }
        out
    }
}

/// `S_{l1,l2}` from whichever domain the seed is stored in.
///
/// In the frequency domain the same quantity reads
/// `∫ ĥ(p)·conj(ĥ(p − a·l1))·e^{-ipa·l2} dp`.
pub fn overlap_entry(seed: &SeedFunction, l1: i64, l2: i64) -> Result<C64> {
    match seed.domain() {
        Domain::Position => seed.cross(l2, l1),
        Domain::Frequency => seed.cross(-l1, l2),
    }
}

pub fn overlap_lattice(seed: &SeedFunction, params: LatticeParams) -> Result<OverlapLattice> {
    overlap_lattice_with(seed, params, Exec::default())
}

pub fn overlap_lattice_with(seed: &SeedFunction, params: LatticeParams, exec: Exec) -> Result<OverlapLattice> {
    let side = 2 * params.radius + 1;
    let r = params.radius as i64;
    let cells = exec.map(side * side, |k| overlap_entry(seed, (k / side) as i64 - r, (k % side) as i64 - r));
    let mut values = Lattice2::zeros(params.radius);
    for (k, v) in cells.into_iter().enumerate() {
        values.set((k / side) as i64 - r, (k % side) as i64 - r, v?);
    }
    Ok(OverlapLattice { params, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OncCheck {
    pub pass: bool,
    pub residual: f64,
}

/// `max_{|l|≤L} |S_l − δ_{l,0}|` against `tol`.
pub fn check_onc(lat: &OverlapLattice, tol: f64) -> OncCheck {
    let residual = lat
        .values
        .iter()
        .map(|(l1, l2, v)| {
            let target = if l1 == 0 && l2 == 0 { 1.0 } else { 0.0 };
            (v - target).norm()
        })
        .fold(0.0, f64::max);
    OncCheck { pass: residual <= tol, residual }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MoncCheck {
    pub pass: bool,
    /// `Re Σ_{l2} S_{0,l2}`.
    pub sigma: f64,
    /// `max_{l1≠0} |S_{l1,l2}|`.
    pub off_axis: f64,
    pub sigma_imag: f64,
}

/// Mild condition `S_{l1,l2} = δ_{l1,0}·s_{l2}`; `sigma = Σ s_{l2}`.
pub fn check_monc(lat: &OverlapLattice, tol: f64) -> Result<MoncCheck> {
    let r = lat.radius();
    let tail = lat.get(0, r).norm().max(lat.get(0, -r).norm());
    if tail > tol {
        return Err(Error::NonSummable { tail, tol });
    }
    let off_axis = lat.values.iter().filter(|&(l1, _, _)| l1 != 0).map(|(_, _, v)| v.norm()).fold(0.0, f64::max);
    let sum: C64 = (-r..=r).map(|l2| lat.get(0, l2)).sum();
    Ok(MoncCheck { pass: off_axis <= tol && sum.im.abs() <= tol, sigma: sum.re, off_axis, sigma_imag: sum.im })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seedfn::presets;
    use std::f64::consts::PI;

    fn lat(seed: &SeedFunction) -> OverlapLattice {
        overlap_lattice(seed, LatticeParams::default()).unwrap()
    }

    #[test]
    fn row1_is_orthonormal() {
        let c = check_onc(&lat(&presets::row1()), 1e-10);
        assert!(c.pass && c.residual <= 1e-14, "{c:?}");
    }

    #[test]
    fn haar_frequency_is_orthonormal() {
        let c = check_onc(&lat(&presets::row5()), 1e-10);
        assert!(c.pass && c.residual <= 1e-14, "{c:?}");
    }

    #[test]
    fn gaussian_overlap_closed_form() {
        let l = lat(&presets::gaussian());
        for (l1, l2, v) in l.values.iter() {
            let want = (-PI * (l1 * l1 + l2 * l2) as f64).exp();
            assert!((v - want).norm() < 1e-15, "({l1},{l2}) {v} vs {want}");
        }
        let c = check_onc(&l, 1e-10);
        assert!(!c.pass);
        assert!((c.residual - (-PI).exp()).abs() < 1e-15);
        assert!((c.residual - 0.043_213_9).abs() < 1e-7);
    }

    #[test]
    fn zero_seed_overlap_vanishes() {
        assert!(lat(&presets::zero()).values.iter().all(|(_, _, v)| v == C64::zero()));
    }

    #[test]
    fn monc_scaled_row1() {
        let seed = presets::row1().scaled(C64::new(2.0, 0.0));
        let m = check_monc(&lat(&seed), 1e-10).unwrap();
        assert!(m.pass);
        assert!((m.sigma - 4.0).abs() < 1e-14);
    }

    #[test]
    fn monc_two_cell_sigma() {
        let l = lat(&presets::monc_two_cell());
        let m = check_monc(&l, 1e-10).unwrap();
        assert!(m.pass);
        assert!((m.sigma - 2.0).abs() < 1e-14);
        assert!((l.get(0, 1).re - 0.5).abs() < 1e-14);
        assert!(!check_onc(&l, 1e-10).pass);
    }

    #[test]
    fn monc_rejects_gaussian() {
        assert!(!check_monc(&lat(&presets::gaussian()), 1e-10).unwrap().pass);
    }

    #[test]
    fn monc_non_summable() {
        let seed = presets::row1();
        let mut l = lat(&seed);
        l.values.set(0, 8, C64::new(0.5, 0.0));
        assert!(matches!(check_monc(&l, 1e-10), Err(Error::NonSummable { .. })));
    }

    #[test]
    fn csv_header_and_rows() {
        let params = LatticeParams::new(1).unwrap();
        let csv = overlap_lattice(&presets::row1(), params).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "l1,l2,re,im,abs");
        assert_eq!(lines.len(), 10);
        assert!(lines[5].starts_with("0,0,"));
        assert_eq!(lines[1], "-1,-1,0,0,0");
    }
}
