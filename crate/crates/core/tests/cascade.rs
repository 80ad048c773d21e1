//! Cascade reconstruction of φ and ψ.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use seedwave::cascade::{
    cascade_report, cascade_scaling, check_cross_orthogonality, check_translate_orthonormality, mother_wavelet,
    refinement_residual,
};
use seedwave::filter::{extract_filter, FilterSequence};
use seedwave::seedfn::presets;
use seedwave::Error;

fn daubechies4() -> FilterSequence {
    let s3 = 3f64.sqrt();
    let d = 4.0 * SQRT_2;
    FilterSequence::manual(0, &[(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d])
}

#[test]
fn haar_meets_all_criteria() {
    let c = cascade_scaling(&FilterSequence::haar(), 12, 10).unwrap();
    let psi = mother_wavelet(&c);
    let rep = cascade_report(&c, &psi, 4, 1e-10);
    assert!(rep.refinement_residual <= 1e-12);
    assert!(rep.phi_translates.pass && rep.phi_translates.value <= 1e-10);
    assert!((rep.phi_integral_re - 1.0).abs() <= 1e-10 && rep.phi_integral_im == 0.0);
    assert!(rep.psi_phi_cross.pass && rep.psi_translates.pass);
    for (i, v) in psi.values.iter().enumerate() {
        let x = psi.x(i);
        let want = if (-0.5..0.0).contains(&x) {
            1.0
        } else if (-1.0..-0.5).contains(&x) {
            -1.0
        } else {
            0.0
        };
        assert!((v.re - want).abs() <= 1e-12 && v.im == 0.0, "x={x}");
    }
}

#[test]
fn extracted_haar_filter_matches_manual() {
    let f = extract_filter(&presets::row5(), 8).unwrap().trimmed(1e-14);
    let c = cascade_scaling(&FilterSequence { provenance: seedwave::filter::Provenance::Manual, ..f }, 4, 8).unwrap();
    let h = cascade_scaling(&FilterSequence::haar(), 4, 8).unwrap();
    assert_eq!(c.shift, h.shift);
    for (a, b) in c.phi.values.iter().zip(&h.phi.values) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn daubechies4_integer_values() {
    // The transient at x = 0 only decays like ((1 + √3)/4)^k.
    let c = cascade_scaling(&daubechies4(), 120, 6).unwrap();
    let s3 = 3f64.sqrt();
    let per = 1usize << 6;
    assert!((c.phi.values[per].re - (1.0 + s3) / 2.0).abs() < 1e-10);
    assert!((c.phi.values[2 * per].re - (1.0 - s3) / 2.0).abs() < 1e-10);
    assert!(c.phi.values[0].norm() < 1e-10 && c.phi.values[3 * per].norm() < 1e-10);
    assert!((c.phi.integral().re - 1.0).abs() < 1e-12);
    assert!(refinement_residual(&c) < 1e-10);
    let psi = mother_wavelet(&c);
    assert!(psi.integral().norm() < 1e-10);
    // Riemann sums of products are only accurate to the grid step.
    assert!(check_translate_orthonormality(&c.phi, 3, 1e-2).pass);
    assert!(check_cross_orthogonality(&psi, &c.phi, 3, 1e-2).pass);
}

#[test]
fn row7_filter_loses_mass_geometrically() {
    // Σ h_n = 1, so each step multiplies ∫φ by 1/√2 while the iterates are
    // still resolved by the grid.
    let f = extract_filter(&presets::row7(), 16).unwrap();
    for it in [1, 4, 9] {
        let c = cascade_scaling(&f, it, 10).unwrap();
        assert_eq!(c.shift, -5);
        let want = FRAC_1_SQRT_2.powi(it as i32);
        assert!((c.phi.integral().re - want).abs() < 1e-12, "iteration {it}");
    }
}

#[test]
fn shifted_filter_gives_same_phi() {
    let base = cascade_scaling(&daubechies4(), 10, 5).unwrap();
    let mut moved = daubechies4();
    moved.n_min = 7;
    let c = cascade_scaling(&moved, 10, 5).unwrap();
    assert_eq!(c.shift, 7);
    assert_eq!(c.phi, base.phi);
}

#[test]
fn truncated_extracted_filter_rejected() {
    let f = extract_filter(&presets::row3(), 16).unwrap();
    assert!(matches!(cascade_scaling(&f, 4, 6), Err(Error::InvalidArgument(_))));
}

#[test]
fn excess_mass_diverges() {
    let f = FilterSequence::manual(0, &[1.5, 1.5]);
    match cascade_scaling(&f, 80, 4) {
        Err(Error::Diverged { iteration, sup }) => assert!(iteration > 1 && sup > 1e6),
        other => panic!("expected divergence, got {other:?}"),
    }
}
