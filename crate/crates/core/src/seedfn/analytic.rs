//! Exact-phase exponential integrals on lattice-aligned intervals.
//!
//! Interval endpoints are rationals in units of `a` and frequencies are split
//! into a rational multiple of `a/2` plus a free real part. With `a² = 4π`, the
//! lattice part of every phase is a rational number of full turns, which is
//! reduced exactly before any floating-point trigonometry happens.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::{C64, HALF_A, I, LATTICE_A};

pub type Rational = Ratio<i64>;

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `exp(2πi·t)`, exact when `t` is a multiple of a quarter turn.
pub fn cis_turns(t: Rational) -> C64 {
    let den = *t.denom() as i128;
    let num = (*t.numer() as i128).rem_euclid(den);
    if (4 * num) % den == 0 {
        return match (4 * num / den) % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::cis(2.0 * PI * (num as f64 / den as f64))
}

/// `exp(i·ω·r·a)` for `ω = q·a/2 + f`.
pub fn lattice_phase(q: Rational, f: f64, r: Rational) -> C64 {
    let free = f * to_f64(r) * LATTICE_A;
    let base = cis_turns(q * r);
    if free == 0.0 {
        base
    } else {
        base * C64::cis(free)
    }
}

/// `(e^z − 1) / z`, continuous at zero.
pub fn expm1_over(z: C64) -> C64 {
    if z.norm() < 0.5 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..24 {
            term = term * z / k as f64;
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `∫_{lo·a}^{hi·a} exp(i(q·a/2 + f)x) dx`.
pub fn exp_integral(q: Rational, f: f64, lo: Rational, hi: Rational) -> C64 {
    let len = to_f64(hi - lo) * LATTICE_A;
    if q.is_zero() && f == 0.0 {
        return C64::new(len, 0.0);
    }
    let kappa = to_f64(q) * HALF_A + f;
    let start = lattice_phase(q, f, lo);
    if (kappa * len).abs() < 1e-2 {
        return start * len * expm1_over(I * kappa * len);
    }
    (lattice_phase(q, f, hi) - start) / (I * kappa)
}

/// `∫_lo^hi exp(iκx) dx` for real endpoints.
pub fn exp_integral_real(kappa: f64, lo: f64, hi: f64) -> C64 {
    let len = hi - lo;
    if kappa == 0.0 {
        return C64::new(len, 0.0);
    }
    let start = C64::cis(kappa * lo);
    if (kappa * len).abs() < 1e-2 {
        return start * len * expm1_over(I * kappa * len);
    }
    (C64::cis(kappa * hi) - start) / (I * kappa)
}

/// Principal-value integral `∫ exp(−ixD) / ((x − A)(x − A')) dx` over the real
/// line, continued to the double pole `A = A'`.
pub fn pole_pair_integral(d: f64, pole: f64, pole2: f64) -> C64 {
    if d == 0.0 {
        return C64::new(0.0, 0.0);
    }
    -PI * d.abs() * C64::cis(-pole2 * d) * expm1_over(-I * (pole - pole2) * d)
}
