use num_complex::Complex64;
use qcollapse_core::params::CollapseParams;
use qcollapse_core::profile::{large_xi_tail_fit, SelfSimilarProfile};
use qcollapse_core::specfun::EvalAccuracy;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn profile(gamma: f64) -> SelfSimilarProfile {
    SelfSimilarProfile::new(CollapseParams::from_gamma(gamma).unwrap(), EvalAccuracy::default()).unwrap()
}

// mpmath at 40 digits: hyp1f1 and gamma on the closed form, quad on nothing
const REFERENCE: &[(f64, f64, Complex64)] = &[
    (1.0, 0.1, Complex64::new(-1.023950103241487065948307433442377, 1.463982827241001931375389002433854)),
    (1.0, 1.0, Complex64::new(0.2271551778041552440366103772159950, 0.1112939713856508061426656626806486)),
    (1.0, 2.0, Complex64::new(0.003139133471230066021879813249945110, -0.06418177831204278350363193076973899)),
    (1.0, 5.0, Complex64::new(0.005389347728905747124808382921122096, 0.0005912982670578326741402251556148764)),
    (0.5, 0.1, Complex64::new(-0.005024146631842670113715972033613335, 3.054100288203000014738924383320133)),
    (0.5, 1.0, Complex64::new(0.2332335278128691314945439307760875, 0.05777879124471576350225822140437867)),
    (0.5, 2.0, Complex64::new(-0.006928861648505658551558889839932276, -0.05776262631797094625644767574635779)),
    (0.5, 5.0, Complex64::new(0.004818302615828380396316884264015648, -0.0001312304059453740093459650463196460)),
    (2.0, 0.1, Complex64::new(-0.5296676593564023538778842697321504, -0.4873551294027827188810204479552764)),
    (2.0, 1.0, Complex64::new(0.1272540467609949978115951717323801, 0.1286293899860916347263540606679491)),
    (2.0, 2.0, Complex64::new(0.01443309415947306496144340533210596, -0.04832930770999783899385069130598961)),
    (2.0, 5.0, Complex64::new(0.004229702165734745405727726024983600, 0.001247965223995612561547355084527453)),
];

#[test]
fn values_match_high_precision_reference() {
    for &(gamma, xi, want) in REFERENCE {
        let got = profile(gamma).value(xi).unwrap();
        let err = (got - want).norm() / want.norm();
        assert!(err < 1e-12, "gamma={gamma} xi={xi}: {got} vs {want} ({err:.2e})");
    }
}

#[test]
fn c_infinity_matches_reference() {
    let cases = [
        (0.5, c(0.5979959264969801800043734436264092, -0.1333545268635042846682089145297409)),
        (1.0, c(0.6870755486055229852176440107060910, -0.06377625392186046251112872157005793)),
        (2.0, c(0.5614697077540924607696211670735857, 0.03698384235259740656643925890519033)),
    ];
    for (gamma, want) in cases {
        let got = profile(gamma).c_infinity();
        assert!((got - want).norm() < 1e-13, "gamma={gamma}");
    }
}

#[test]
fn branches_join_at_switch_point() {
    for gamma in [0.3, 1.0, 2.0, 6.0] {
        let p = profile(gamma);
        let xs = 80f64.sqrt();
        let h = 1e-6;
        let below = p.derivatives(xs - h).unwrap();
        let above = p.derivatives(xs + h).unwrap();
        let step = below.value + below.first * (2.0 * h) + below.second * (2.0 * h * h);
        let dstep = below.first + below.second * (2.0 * h);
        let ev = (step - above.value).norm() / above.value.norm();
        let ed = (dstep - above.first).norm() / above.first.norm();
        assert!(ev < 1e-10 && ed < 1e-8, "gamma={gamma}: {ev:.2e} {ed:.2e}");
    }
}

#[test]
fn ode_residual_small_over_working_range() {
    for gamma in [0.3, 0.5, 1.0, 2.0, 5.0] {
        let p = profile(gamma);
        let mut xi = 0.01;
        while xi < 60.0 {
            let res = p.ode_residual(xi).unwrap();
            assert!(res < 1e-10, "gamma={gamma} xi={xi}: {res:.2e}");
            xi *= 1.07;
        }
    }
}

#[test]
fn fd_derivative_agrees_with_analytic() {
    let p = profile(1.0);
    for xi in [0.3, 1.0, 3.0, 7.0] {
        let h = 1e-5 * xi;
        let fd = (p.value(xi + h).unwrap() - p.value(xi - h).unwrap()) / (2.0 * h);
        let an = p.derivatives(xi).unwrap().first;
        assert!((fd - an).norm() < 1e-8 * an.norm().max(1.0), "xi={xi}");
    }
}

#[test]
fn small_xi_form_is_leading_behaviour() {
    let p = profile(1.0);
    for xi in [1e-3, 1e-4, 1e-6] {
        let r = p.value(xi).unwrap();
        let s = p.small_xi(xi).unwrap();
        assert!((r - s).norm() < 2.0 * xi * xi * r.norm(), "xi={xi}");
        assert!(r.norm_sqr() <= p.c_zero() / xi * (1.0 + 1e-6));
    }
}

#[test]
fn tail_fit_recovers_closed_form() {
    for gamma in [0.5, 1.0, 2.0] {
        let p = profile(gamma);
        let fit = large_xi_tail_fit(&p, 20.0, 40.0).unwrap();
        let rel = (fit.c_infinity - p.c_infinity()).norm() / p.c_infinity().norm();
        assert!(rel < 1e-10, "gamma={gamma}: {rel:.2e}");
        assert!(fit.modulus_spread < 0.01);
    }
}
