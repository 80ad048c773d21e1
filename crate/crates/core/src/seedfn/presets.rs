//! Named seeds: the cell-aligned ONC solutions, a few ONT test cases and the
//! Gaussian ground state.

use super::{rat, Domain, Gaussian, Rational, SeedFunction, Segment, Term};
use crate::{Error, Result, C64, LATTICE_A};

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn inv_sqrt_a() -> f64 {
    1.0 / LATTICE_A.sqrt()
}

fn constant(domain: Domain, pieces: &[(Rational, Rational, f64)]) -> SeedFunction {
    let segs = pieces.iter().map(|&(s, e, v)| Segment::constant(s, e, real(v))).collect();
    SeedFunction::piecewise(domain, segs).expect("preset segments are valid")
}

/// `1/√a` on `[0, a)`.
pub fn row1() -> SeedFunction {
    constant(Domain::Position, &[(rat(0, 1), rat(1, 1), inv_sqrt_a())])
}

/// `e^{-ia}/√a` on `[0, a)`: a constant phase, as the formula is printed.
pub fn row2_literal() -> SeedFunction {
    let seg = Segment::constant(rat(0, 1), rat(1, 1), C64::cis(-LATTICE_A) * inv_sqrt_a());
    SeedFunction::piecewise(Domain::Position, vec![seg]).expect("valid")
}

/// `e^{-is}/√a` on `[0, a)`, the modulated form that yields
/// `h_n = i(1 − e^{-ia})/(2πn − a)`.
pub fn row2_corrected() -> SeedFunction {
    let seg = Segment::modulated(rat(0, 1), rat(1, 1), real(inv_sqrt_a()), -1.0);
    SeedFunction::piecewise(Domain::Position, vec![seg]).expect("valid")
}

/// `√(2/a)` on `[0, a/2)`.
pub fn row3() -> SeedFunction {
    constant(Domain::Position, &[(rat(0, 1), rat(1, 2), (2.0 / LATTICE_A).sqrt())])
}

/// `√(2/a)` on `[a/2, a)`.
pub fn row4() -> SeedFunction {
    constant(Domain::Position, &[(rat(1, 2), rat(1, 1), (2.0 / LATTICE_A).sqrt())])
}

/// `ĥ = 1/√a` on `[0, a)`; generates the Haar filter.
pub fn row5() -> SeedFunction {
    constant(Domain::Frequency, &[(rat(0, 1), rat(1, 1), inv_sqrt_a())])
}

/// `ĥ = √(2/a)` on `[0, a)` as printed; norm 2, not an ONC solution.
pub fn row6_literal() -> SeedFunction {
    constant(Domain::Frequency, &[(rat(0, 1), rat(1, 1), (2.0 / LATTICE_A).sqrt())])
}

/// `ĥ = √(2/a)` on `[0, a/2)`, which yields `h_n = δ_{n,0}`.
pub fn row6_corrected() -> SeedFunction {
    constant(Domain::Frequency, &[(rat(0, 1), rat(1, 2), (2.0 / LATTICE_A).sqrt())])
}

fn three_piece(domain: Domain, far: (Rational, Rational)) -> SeedFunction {
    let v = 1.0 / (2.0 * LATTICE_A).sqrt();
    constant(domain, &[(rat(0, 1), rat(1, 2), v), (rat(1, 2), rat(1, 1), -v), (far.0, far.1, v)])
}

/// `ĥ = ±1/√(2a)`: `+` on `[0, a/2) ∪ [2a, 3a)`, `−` on `[a/2, a)`.
pub fn row7() -> SeedFunction {
    three_piece(Domain::Frequency, (rat(2, 1), rat(3, 1)))
}

/// `ĥ = ±1/√(2a)`: `+` on `[0, a/2) ∪ [a, 2a)`, `−` on `[a/2, a)`.
pub fn row8() -> SeedFunction {
    three_piece(Domain::Frequency, (rat(1, 1), rat(2, 1)))
}

/// Position-domain counterpart of [`row7`].
pub fn he1() -> SeedFunction {
    three_piece(Domain::Position, (rat(2, 1), rat(3, 1)))
}

/// Position-domain counterpart of [`row8`].
pub fn he2() -> SeedFunction {
    three_piece(Domain::Position, (rat(1, 1), rat(2, 1)))
}

/// `h(s) = a^{-1/2} Σ c_n e^{-isna/2}` on `[0, a)` for a finite sequence
/// `c_n`, `n = n_min, n_min+1, …`. Extraction returns `c` exactly.
pub fn cell_seed(n_min: i64, coeffs: &[C64]) -> Result<SeedFunction> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient sequence".into()));
    }
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| Term {
            amplitude: c * inv_sqrt_a(),
            mu_half_a: Rational::from_integer(-(n_min + k as i64)),
            mu: 0.0,
        })
        .collect();
    SeedFunction::piecewise(Domain::Position, vec![Segment { start: rat(0, 1), end: rat(1, 1), terms }])
}

/// `(2a)^{-1/2}(1 + e^{-isa/2})` on `[0, a)`; extracts to `(δ_{n,0} + δ_{n,1})/√2`.
pub fn haar_position() -> SeedFunction {
    let c = real(std::f64::consts::FRAC_1_SQRT_2);
    cell_seed(0, &[c, c]).expect("valid")
}

/// `π^{-1/4} e^{-s²/2}`.
pub fn gaussian() -> SeedFunction {
    SeedFunction::gaussian(Domain::Position, Gaussian::standard()).expect("valid")
}

/// First normalised Hermite function `π^{-1/4} √2 s e^{-s²/2}`.
pub fn hermite1() -> SeedFunction {
    SeedFunction::gaussian(Domain::Position, Gaussian { order: 1, ..Gaussian::standard() }).expect("valid")
}

/// Identically zero, supported on `[0, a)`.
pub fn zero() -> SeedFunction {
    constant(Domain::Position, &[(rat(0, 1), rat(1, 1), 0.0)])
}

/// `(2a)^{-1/2}` on `[0, 2a)`: overlap `δ_{l1,0}·s_{l2}` with `Σ s_{l2} = 2`.
pub fn monc_two_cell() -> SeedFunction {
    constant(Domain::Position, &[(rat(0, 1), rat(2, 1), 1.0 / (2.0 * LATTICE_A).sqrt())])
}

pub const NAMES: &[&str] = &[
    "row1",
    "row2_literal",
    "row2_corrected",
    "row3",
    "row4",
    "row5",
    "row6_literal",
    "row6_corrected",
    "row7",
    "row8",
    "haar",
    "he1",
    "he2",
    "haar_position",
    "gaussian",
    "hermite1",
    "zero",
    "monc_two_cell",
];

pub fn by_name(name: &str) -> Result<SeedFunction> {
    Ok(match name {
        "row1" => row1(),
        "row2_literal" => row2_literal(),
        "row2_corrected" => row2_corrected(),
        "row3" => row3(),
        "row4" => row4(),
        "row5" | "haar" => row5(),
        "row6_literal" => row6_literal(),
        "row6_corrected" => row6_corrected(),
        "row7" => row7(),
        "row8" => row8(),
        "he1" => he1(),
        "he2" => he2(),
        "haar_position" => haar_position(),
        "gaussian" => gaussian(),
        "hermite1" => hermite1(),
        "zero" => zero(),
        "monc_two_cell" => monc_two_cell(),
        other => return Err(Error::InvalidSeed(format!("unknown preset '{other}'"))),
    })
}
