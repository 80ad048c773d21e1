//! Orthonormalization trick: symbol, f-coefficients, H_n and the assembled seed.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use seedwave::filter::{check_r1, extract_filter};
use seedwave::ortho::{f_coefficients, ont_filter, ont_seed, symbol, SampleGrid, DEFAULT_GRID};
use seedwave::overlap::{check_onc, overlap_lattice, Lattice2, OverlapLattice};
use seedwave::quad::composite_gl;
use seedwave::seedfn::{presets, rat, Domain, LatticeParams, SeedFunction, Segment};
use seedwave::{Error, LATTICE_A};

fn lattice(seed: &SeedFunction) -> OverlapLattice {
    overlap_lattice(seed, LatticeParams::default()).unwrap()
}

fn ont(seed: &SeedFunction, n_range: usize) -> seedwave::filter::FilterSequence {
    let lat = lattice(seed);
    let sym = symbol(&lat, DEFAULT_GRID, DEFAULT_GRID).unwrap();
    ont_filter(seed, &lat, &sym, n_range).unwrap()
}

/// `(2π)^{-1} ∫ θ(p)^{-1/2} e^{-ipn} dp` with `θ(p) = Σ_{|l|≤8} e^{-πl²} e^{ipl}`.
fn theta_coeff(n: i64) -> f64 {
    let theta = |p: f64| (-8..=8).map(|l: i64| (-PI * (l * l) as f64).exp() * (p * l as f64).cos()).sum::<f64>();
    composite_gl(0.0, 2.0 * PI, 0.1).into_iter().map(|(p, w)| (p * n as f64).cos() / theta(p).sqrt() * w).sum::<f64>()
        / (2.0 * PI)
}

#[test]
fn gaussian_f_coefficients_are_separable() {
    let sym = symbol(&lattice(&presets::gaussian()), DEFAULT_GRID, DEFAULT_GRID).unwrap();
    assert!(sym.imag_residue < 1e-12);
    let f = f_coefficients(&sym, 8).unwrap();
    let g: Vec<f64> = (-8..=8).map(theta_coeff).collect();
    for (n1, n2, v) in f.values.iter() {
        let want = g[(n1 + 8) as usize] * g[(n2 + 8) as usize];
        assert!((v - want).norm() < 1e-13, "({n1},{n2}): {v} vs {want}");
    }
    let f00 = f.get(0, 0);
    assert!(f00.re > 0.0 && f00.im.abs() < 1e-15);
}

#[test]
fn onc_seeds_are_unchanged() {
    for name in ["row1", "row3", "row5", "row7", "row8", "haar_position", "he1"] {
        let seed = presets::by_name(name).unwrap();
        let h = extract_filter(&seed, 32).unwrap();
        let big_h = ont(&seed, 32);
        let err = h.iter().map(|(n, c)| (c - big_h.get(n)).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-10, "{name}: {err:e}");
    }
}

#[test]
fn monc_seed_is_rescaled() {
    let seed = presets::row3().scaled(C64::new(2.0, 0.0));
    let h = extract_filter(&seed, 64).unwrap();
    let big_h = ont(&seed, 64);
    let err = h.iter().map(|(n, c)| (c / 2.0 - big_h.get(n)).norm()).fold(0.0, f64::max);
    assert!(err <= 1e-8, "{err:e}");
}

#[test]
fn gaussian_output_satisfies_r1() {
    let h = ont(&presets::gaussian(), 48);
    let raw = check_r1(&extract_filter(&presets::gaussian(), 48).unwrap(), 4, 1e-6);
    let r1 = check_r1(&h, 4, 1e-6);
    assert!(!raw.pass);
    assert!(r1.pass, "{:e}", r1.value);
    assert!(!h.tail_truncated());
}

#[test]
fn odd_seed_symbol_vanishes_at_origin() {
    // Every lattice sum of an odd function vanishes at p = 0.
    let lat = lattice(&presets::hermite1());
    let sym = symbol(&lat, DEFAULT_GRID, DEFAULT_GRID).unwrap();
    assert!(sym.at(0, 0).norm() < 1e-14);
    assert!(matches!(f_coefficients(&sym, 8), Err(Error::SingularSymbol { .. })));
    assert!(matches!(ont_filter(&presets::hermite1(), &lat, &sym, 8), Err(Error::SingularSymbol { .. })));
}

#[test]
fn scaling_leaves_output_unchanged() {
    let base = ont(&presets::gaussian(), 24);
    let scaled = ont(&presets::gaussian().scaled(C64::new(3.0, 0.0)), 24);
    for (n, c) in base.iter() {
        assert!((c - scaled.get(n)).norm() < 1e-12, "n={n}");
    }
}

#[test]
fn piecewise_routes_agree_on_non_onc_seed() {
    // Support of 3/2 periods of the slice: S(p, 0) alternates between 1 and 2
    // times a constant, so the symbol stays away from zero.
    let seg = Segment::modulated(rat(0, 1), rat(3, 4), C64::new(1.0, 0.0), 0.3);
    let seed = SeedFunction::piecewise(Domain::Position, vec![seg]).unwrap();
    let lat = lattice(&seed);
    assert!(!check_onc(&lat, 1e-6).pass);
    let sym = symbol(&lat, DEFAULT_GRID, DEFAULT_GRID).unwrap();
    let direct = ont_filter(&seed, &lat, &sym, 16).unwrap();
    let series = ont_filter(&seed.fourier().unwrap(), &lat, &sym, 16).unwrap();
    let err = direct.iter().map(|(n, c)| (c - series.get(n)).norm()).fold(0.0, f64::max);
    assert!(err < 1e-9, "{err:e}");
}

#[test]
fn zero_seed_is_singular() {
    let lat = lattice(&presets::zero());
    let sym = symbol(&lat, 64, 64).unwrap();
    assert!(matches!(ont_filter(&presets::zero(), &lat, &sym, 8), Err(Error::SingularSymbol { .. })));
}

#[test]
fn trivial_f_maps_reproduce_the_seed() {
    let seed = presets::gaussian();
    let grid = SampleGrid::lattice_aligned(8.0, 32);
    for (c, scale) in [(1.0, 1.0), (0.5, 0.5)] {
        let mut f = Lattice2::zeros(0);
        f.set(0, 0, C64::new(c, 0.0));
        let h = ont_seed(&seed, &f, grid).unwrap();
        for i in 0..grid.count {
            let x = grid.x0 + i as f64 * grid.dx;
            assert!((h.eval(x) - seed.eval(x) * scale).norm() < 1e-15);
        }
    }
}

#[test]
fn assembled_gaussian_seed_is_orthonormal() {
    let seed = presets::gaussian();
    let sym = symbol(&lattice(&seed), DEFAULT_GRID, DEFAULT_GRID).unwrap();
    let f = f_coefficients(&sym, 8).unwrap();
    let grid = SampleGrid::lattice_aligned(8.0 * LATTICE_A + 16.0, 64);
    let h = ont_seed(&seed, &f.values, grid).unwrap();
    let c = check_onc(&overlap_lattice(&h, LatticeParams::new(2).unwrap()).unwrap(), 1e-4);
    assert!(c.pass, "{:e}", c.residual);
}
