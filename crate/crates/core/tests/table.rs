//! Cell-aligned ONC solutions: coefficients, orthonormality and (r1).

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64 as C64;
use seedwave::filter::{check_r1, extract_filter, FilterSequence};
use seedwave::overlap::{check_onc, overlap_lattice};
use seedwave::seedfn::{presets, LatticeParams, SeedFunction};
use seedwave::LATTICE_A;

const I: C64 = C64::new(0.0, 1.0);

fn half_cell_row(n: i64, odd: impl Fn(f64) -> C64) -> C64 {
    if n == 0 {
        C64::new(FRAC_1_SQRT_2, 0.0)
    } else if n % 2 == 0 {
        C64::new(0.0, 0.0)
    } else {
        odd(n as f64)
    }
}

fn sparse(pairs: &[(i64, f64)]) -> impl Fn(i64) -> C64 {
    let pairs = pairs.to_vec();
    move |n| C64::new(pairs.iter().filter(|p| p.0 == n).map(|p| p.1).sum(), 0.0)
}

fn row3_formula(n: i64) -> C64 {
    half_cell_row(n, |n| I * SQRT_2 / (PI * n))
}

fn row4_formula(n: i64) -> C64 {
    half_cell_row(n, |n| C64::new(SQRT_2, 0.0) / (I * PI * n))
}

fn row2_formula(n: i64) -> C64 {
    let a = LATTICE_A;
    I * (1.0 - C64::cis(-a)) / (2.0 * PI * n as f64 - a)
}

fn max_error(seed: &SeedFunction, n_range: usize, oracle: impl Fn(i64) -> C64) -> f64 {
    extract_filter(seed, n_range).unwrap().iter().map(|(n, c)| (c - oracle(n)).norm()).fold(0.0, f64::max)
}

type Row = (&'static str, SeedFunction, Box<dyn Fn(i64) -> C64>);

fn table() -> Vec<Row> {
    let h = 0.5;
    vec![
        ("row1", presets::row1(), Box::new(sparse(&[(0, 1.0)]))),
        ("row2_corrected", presets::row2_corrected(), Box::new(row2_formula)),
        ("row3", presets::row3(), Box::new(row3_formula)),
        ("row4", presets::row4(), Box::new(row4_formula)),
        ("row5", presets::row5(), Box::new(sparse(&[(0, FRAC_1_SQRT_2), (-1, FRAC_1_SQRT_2)]))),
        ("row6_corrected", presets::row6_corrected(), Box::new(sparse(&[(0, 1.0)]))),
        ("row7", presets::row7(), Box::new(sparse(&[(0, h), (-4, h), (-5, h), (-1, -h)]))),
        ("row8", presets::row8(), Box::new(sparse(&[(0, h), (-2, h), (-3, h), (-1, -h)]))),
        ("he1", presets::he1(), Box::new(row3_formula)),
        ("he2", presets::he2(), Box::new(row3_formula)),
        ("haar_position", presets::haar_position(), Box::new(sparse(&[(0, FRAC_1_SQRT_2), (1, FRAC_1_SQRT_2)]))),
    ]
}

#[test]
fn coefficients_match_closed_forms() {
    for (name, seed, oracle) in table() {
        let err = max_error(&seed, 64, oracle);
        assert!(err <= 1e-12, "{name}: max error {err:e}");
    }
}

#[test]
fn literal_presets_differ_from_printed_coefficients() {
    let lit2 = max_error(&presets::row2_literal(), 64, row2_formula);
    assert!(lit2 > 0.1, "row2_literal unexpectedly matches: {lit2}");
    let phase = C64::cis(-LATTICE_A);
    assert!(max_error(&presets::row2_literal(), 64, |n| if n == 0 { phase } else { C64::new(0.0, 0.0) }) <= 1e-12);

    let lit6 = extract_filter(&presets::row6_literal(), 64).unwrap();
    assert!(max_error(&presets::row6_literal(), 64, sparse(&[(0, 1.0), (-1, 1.0)])) <= 1e-12);
    let r1 = check_r1(&lit6, 8, 1e-10);
    assert!(!r1.pass && (r1.value - 1.0).abs() < 1e-12);
}

#[test]
fn every_row_is_orthonormal() {
    let params = LatticeParams::default();
    for (name, seed, _) in table() {
        let c = check_onc(&overlap_lattice(&seed, params).unwrap(), 1e-12);
        assert!(c.pass, "{name}: residual {:e}", c.residual);
    }
    let lit6 = check_onc(&overlap_lattice(&presets::row6_literal(), params).unwrap(), 1e-12);
    assert!(!lit6.pass);
}

#[test]
fn finite_rows_satisfy_r1() {
    for name in ["row1", "row5", "row6_corrected", "row7", "row8", "haar_position"] {
        let f = extract_filter(&presets::by_name(name).unwrap(), 64).unwrap();
        let r1 = check_r1(&f, 8, 1e-14);
        assert!(r1.pass, "{name}: {:e}", r1.value);
    }
}

#[test]
fn tail_rows_satisfy_r1_on_a_wide_window() {
    for seed in [presets::row2_corrected(), presets::row3(), presets::row4()] {
        let f = extract_filter(&seed, 10_000).unwrap();
        let r1 = check_r1(&f, 8, 2e-4);
        assert!(r1.pass, "residual {:e}", r1.value);
    }
}

#[test]
fn row3_r1_tail_matches_direct_sum() {
    // Σ|h_n|² on |n| ≤ N misses 2·Σ_{odd m > N} 2/(π²m²).
    let n = 10_000i64;
    let f = extract_filter(&presets::row3(), n as usize).unwrap();
    let direct: f64 = (-n..=n).map(|k| row3_formula(k).norm_sqr()).sum();
    let extracted: f64 = f.coeffs.iter().map(|c| c.norm_sqr()).sum();
    assert!((direct - extracted).abs() < 1e-12);
    let r1 = check_r1(&f, 0, 1.0);
    assert!((r1.value - (1.0 - direct)).abs() < 1e-12);
}

#[test]
fn cell_seed_round_trip() {
    let c: Vec<C64> = [0.3, -0.1, 0.7, 0.2].iter().zip([0.1, 0.0, -0.4, 0.5]).map(|(&r, i)| C64::new(r, i)).collect();
    let seed = presets::cell_seed(-2, &c).unwrap();
    let f = extract_filter(&seed, 16).unwrap();
    for (n, v) in f.iter() {
        let want = if (-2..=1).contains(&n) { c[(n + 2) as usize] } else { C64::new(0.0, 0.0) };
        assert!((v - want).norm() < 1e-15, "n={n}");
    }
    let haar = FilterSequence::haar();
    assert!(check_r1(&haar, 8, 1e-15).pass);
}
