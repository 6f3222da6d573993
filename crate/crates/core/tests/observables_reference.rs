use num_complex::Complex64;
use qcollapse_core::observables::momentum::{momentum_asymptote, MomentumOptions};
use qcollapse_core::observables::{
    kinetic_integral_above, kinetic_log_coefficient, momentum_amplitude, momentum_moments, observable_report,
    radial_moment_integrals, ObservableOptions,
};
use qcollapse_core::params::CollapseParams;
use qcollapse_core::profile::SelfSimilarProfile;
use qcollapse_core::specfun::EvalAccuracy;

fn profile(gamma: f64) -> SelfSimilarProfile {
    SelfSimilarProfile::new(CollapseParams::from_gamma(gamma).unwrap(), EvalAccuracy::default()).unwrap()
}

// (gamma, I0, I1, J) from mpmath quad at 30 digits over the same closed form
const REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
    (0.5, 0.1375128848317100867, 0.1244970324431554288, -0.20626932724751899, -0.31453362414518691),
    (1.0, 0.12832856102916723755, 0.13826463108430917402, -0.19249284154368473, -0.38039615555416006),
    (2.0, 0.057168697407172973183, 0.075251581432557312817, -0.085753046110704273, -0.23410540614923687),
];

#[test]
fn moments_match_reference() {
    for &(gamma, i0, i1, jr, ji) in REFERENCE {
        let m = radial_moment_integrals(&profile(gamma), 40.0, 1e-11).unwrap();
        assert!((m.i0 / i0 - 1.0).abs() < 1e-9, "gamma={gamma} I0 {} vs {i0}", m.i0);
        assert!((m.i1 / i1 - 1.0).abs() < 1e-9, "gamma={gamma} I1 {} vs {i1}", m.i1);
        let j = Complex64::new(jr, ji);
        assert!((m.j - j).norm() < 1e-9 * j.norm(), "gamma={gamma} J {} vs {j}", m.j);
        assert!(m.errors[0] <= 1e-8 * m.i0 && m.errors[1] <= 1e-8 * m.i1);
    }
}

#[test]
fn norm_loss_identity() {
    // Re J = ½∫ξ³ d|R|² = -(3/2) I0 for any profile decaying faster than ξ^{-3/2}
    for gamma in [0.3, 0.5, 1.0, 2.0, 5.0] {
        let m = radial_moment_integrals(&profile(gamma), 30.0, 1e-11).unwrap();
        assert!((m.j.re / m.i0 + 1.5).abs() < 1e-9, "gamma={gamma}: {}", m.j.re / m.i0);
    }
}

#[test]
fn tail_correction_makes_cutoff_irrelevant() {
    for gamma in [0.5, 1.0, 2.0] {
        let p = profile(gamma);
        let a = radial_moment_integrals(&p, 30.0, 1e-11).unwrap();
        let b = radial_moment_integrals(&p, 60.0, 1e-11).unwrap();
        assert!((a.i0 / b.i0 - 1.0).abs() < 1e-8);
        assert!(((a.i1 / a.i0) / (b.i1 / b.i0) - 1.0).abs() < 1e-7);
    }
}

#[test]
fn rescaling_profile_leaves_ratios_unchanged() {
    let p = profile(1.0);
    let q = p.clone().scaled(Complex64::new(-2.5, 0.7));
    let a = radial_moment_integrals(&p, 30.0, 1e-11).unwrap();
    let b = radial_moment_integrals(&q, 30.0, 1e-11).unwrap();
    assert!(((a.i1 / a.i0) / (b.i1 / b.i0) - 1.0).abs() < 1e-12);
    assert!((a.j.norm() / a.i0 - b.j.norm() / b.i0).abs() < 1e-12);
    assert!((b.i0 / a.i0 - Complex64::new(-2.5, 0.7).norm_sqr()).abs() < 1e-9 * b.i0 / a.i0);
}

#[test]
fn kinetic_integral_diverges_logarithmically() {
    let p = profile(1.0);
    let k = kinetic_log_coefficient(&p);
    let (a, b) = p.near_origin_amplitudes();
    assert!((k - 1.0 * (a.norm_sqr() + b.norm_sqr())).abs() < 1e-12 * k);
    let (hi, _) = kinetic_integral_above(&p, 1e-3, 30.0, 1e-11).unwrap();
    let (lo, _) = kinetic_integral_above(&p, 1e-5, 30.0, 1e-11).unwrap();
    // cross term of the near-origin form: 2 Re(conj(μ₁A) μ₂B ∫ ξ^{-1+iα})
    let (m1, m2) = p.near_origin_exponents();
    let alpha = p.params().alpha;
    let c = (m1 * a).conj() * (m2 * b);
    let i = Complex64::i();
    let prim = |x: f64| ((i * alpha) * x.ln()).exp() / (i * alpha);
    let cross = 2.0 * (c * (prim(1e-3) - prim(1e-5))).re;
    let want = k * 100f64.ln() + cross;
    assert!(((lo - hi) / want - 1.0).abs() < 1e-4, "{} vs {want}", lo - hi);
}

#[test]
fn momentum_transform_parseval_and_asymptote() {
    for gamma in [0.5, 1.0, 2.0] {
        let p = profile(gamma);
        let m = radial_moment_integrals(&p, 40.0, 1e-11).unwrap();
        let mm = momentum_moments(&p, &MomentumOptions::default()).unwrap();
        assert!((mm.norm / m.i0 - 1.0).abs() < 1e-6, "gamma={gamma}: {}", mm.norm / m.i0);
    }
    // the large-q form is asymptotic with O(q^-2) relative corrections
    let p = profile(1.0);
    let gap = |q: f64| {
        let num = momentum_amplitude(&p, q, &MomentumOptions::default()).unwrap();
        (num - momentum_asymptote(&p, q).unwrap()).norm() / num.norm()
    };
    let (g20, g35) = (gap(20.0), gap(35.0));
    assert!(g20 < 1e-3 && g35 < 3e-4, "{g20:.2e} {g35:.2e}");
    assert!(g35 < g20 * (20.0f64 / 35.0).powi(2) * 1.5, "{g20:.2e} {g35:.2e}");
}

#[test]
fn momentum_scale_converges_in_cutoffs() {
    let p = profile(1.0);
    let a = momentum_moments(&p, &MomentumOptions { q_max: 30.0, xi_cut: 50.0 }).unwrap();
    let b = momentum_moments(&p, &MomentumOptions { q_max: 40.0, xi_cut: 70.0 }).unwrap();
    assert!((a.abs_moment / b.abs_moment - 1.0).abs() < 1e-7, "{} {}", a.abs_moment, b.abs_moment);
}

#[test]
fn report_constants_order_unity() {
    for gamma in [0.5, 1.0, 2.0] {
        let r = observable_report(&profile(gamma), &ObservableOptions::default()).unwrap();
        eprintln!("{r}\n");
        assert!(r.c_r > 0.01 && r.c_r < 100.0);
        assert!(r.c_p > 0.01 && r.c_p < 100.0);
        assert!(r.kinetic_i2.is_infinite());
    }
}

#[test]
fn momentum_scale_regression() {
    // converged values from q_max = 80, xi_cut = 120 (Parseval holds to 2e-11 there)
    for (gamma, want) in [(0.5, 2.857531706), (1.0, 2.606829161), (2.0, 2.784324204)] {
        let r = observable_report(&profile(gamma), &ObservableOptions::default()).unwrap();
        assert!((r.c_p / want - 1.0).abs() < 1e-7, "gamma={gamma}: {}", r.c_p);
        assert!(r.c_p_error < 1e-5 * r.c_p);
    }
}
