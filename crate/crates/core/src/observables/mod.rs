//! Moments of the self-similar profile and the derived scaling constants.
//!
//! All radial integrals are split into three pieces:
//! the analytic near-origin form on `(0, ξ_min)`, adaptive G7K15 quadrature
//! on `[ξ_min, ξ_max]`, and the large-ξ series `R = e^{-iξ²/2} Σ d_n ξ^{-3-2n}`
//! integrated term by term beyond `ξ_max`.
//!
//! `∫|R'|²ξ² dξ` diverges logarithmically at the origin
//! (`|R'|²ξ² ~ β̃(|A|²+|B|²)/ξ`), so `⟨p²⟩` is infinite and the momentum
//! scale `C_p` is taken as `⟨|p|⟩` from the momentum-space density, see
//! [`momentum`].

pub mod momentum;

use crate::params::CollapseParams;
use crate::profile::{ProfileError, SelfSimilarProfile};
use crate::quad::{adaptive, QuadError};
use crate::specfun::EvalAccuracy;
use num_complex::Complex64;
use std::fmt;
use std::io::Write;
use thiserror::Error;

pub use momentum::{momentum_amplitude, momentum_moments, MomentumMoments, MomentumOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObservablesError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

impl From<QuadError<ProfileError>> for ObservablesError {
    fn from(e: QuadError<ProfileError>) -> Self {
        match e {
            QuadError::Integrand(p) => ObservablesError::Profile(p),
            other => ObservablesError::Quadrature(other.to_string()),
        }
    }
}

/// Lower quadrature endpoint; the piece below uses the near-origin form.
pub const XI_MIN: f64 = 1e-6;
const TAIL_TERMS: usize = 12;
const MAX_PANELS: usize = 20_000;

/// `I0 = ∫|R|²ξ²`, `I1 = ∫|R|²ξ³` and `J = ∫R̄ R' ξ³` over `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentIntegrals {
    pub i0: f64,
    pub i1: f64,
    pub j: Complex64,
    /// Absolute error estimates for `I0`, `I1`, `|J|`.
    pub errors: [f64; 3],
    pub xi_max: f64,
    pub panels: usize,
}

fn check_window(xi_max: f64, tol: f64) -> Result<(), ObservablesError> {
    if !(xi_max >= 30.0) || !xi_max.is_finite() {
        return Err(ObservablesError::Domain(format!("xi_max must be >= 30, got {xi_max}")));
    }
    if !(tol > 0.0) {
        return Err(ObservablesError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Log-graded breakpoints from `lo` up to 1, then uniform steps of 1/2.
fn breakpoints(lo: f64, hi: f64) -> Vec<f64> {
    let mut b = vec![lo];
    let mut x = lo;
    while x < 0.5 {
        x = (2.0 * x).min(1.0);
        b.push(x);
    }
    while x + 0.5 < hi {
        x += 0.5;
        b.push(x);
    }
    b.push(hi);
    b
}

/// `∫_X^∞ Σ_{m,n} ū_m v_n ξ^{p - 2(m+n)} dξ` for `p < -1`.
fn tail_pair(u: &[Complex64], v: &[Complex64], p: f64, x: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for (m, um) in u.iter().enumerate() {
        for (n, vn) in v.iter().enumerate() {
            let e = p + 1.0 - 2.0 * (m + n) as f64;
            sum += um.conj() * vn * x.powf(e) / -e;
        }
    }
    sum
}

/// Coefficients `d_n` of the tail series of `R`.
fn tail_d(profile: &SelfSimilarProfile) -> Vec<Complex64> {
    (0..TAIL_TERMS).map(|n| profile.tail_coefficient(n)).collect()
}

/// Coefficients `f_n` of `R' = e^{-iξ²/2} Σ f_n ξ^{-2-2n}`.
fn tail_f(d: &[Complex64]) -> Vec<Complex64> {
    let i = Complex64::i();
    (0..d.len())
        .map(|n| {
            let mut f = -i * d[n];
            if n > 0 {
                f += d[n - 1] * (-3.0 - 2.0 * (n - 1) as f64);
            }
            f
        })
        .collect()
}

/// `Σ_{j,k} ā_j a_k w_k ε^{e+s}/(e+s)` with `s = μ̄_j + μ_k`: the near-origin
/// form integrated on `(0, ε)` against `ξ^{e-1}`.
fn origin_piece(profile: &SelfSimilarProfile, eps: f64, e: f64, weight_mu: bool) -> Complex64 {
    let (a, b) = profile.near_origin_amplitudes();
    let (m1, m2) = profile.near_origin_exponents();
    let amps = [(a, m1), (b, m2)];
    let mut sum = Complex64::new(0.0, 0.0);
    for (cj, mj) in amps {
        for (ck, mk) in amps {
            let s = mj.conj() + mk;
            let w = if weight_mu { mk } else { Complex64::new(1.0, 0.0) };
            sum += cj.conj() * ck * w * ((e + s) * eps.ln()).exp() / (e + s);
        }
    }
    sum
}

pub fn radial_moment_integrals(
    profile: &SelfSimilarProfile,
    xi_max: f64,
    tol: f64,
) -> Result<MomentIntegrals, ObservablesError> {
    check_window(xi_max, tol)?;
    let f = |xi: f64| -> Result<[f64; 4], ProfileError> {
        let (r, dr) = profile.value_and_first(xi)?;
        let a2 = r.norm_sqr() * xi * xi;
        let j = r.conj() * dr * xi.powi(3);
        Ok([a2, a2 * xi, j.re, j.im])
    };
    let q = adaptive(&f, &breakpoints(XI_MIN, xi_max), tol, 1e-300, MAX_PANELS)?;

    let i = Complex64::i();
    let d = tail_d(profile);
    let dp: Vec<Complex64> = d.iter().enumerate().map(|(n, dn)| dn * (-3.0 - 2.0 * n as f64)).collect();
    let tail_i0 = tail_pair(&d, &d, -4.0, xi_max).re;
    let tail_i1 = tail_pair(&d, &d, -3.0, xi_max).re;
    let tail_j = tail_pair(&d, &dp, -4.0, xi_max) - i * tail_pair(&d, &d, -2.0, xi_max);

    let head_i0 = origin_piece(profile, XI_MIN, 3.0, false).re;
    let head_i1 = origin_piece(profile, XI_MIN, 4.0, false).re;
    let head_j = origin_piece(profile, XI_MIN, 3.0, true);

    Ok(MomentIntegrals {
        i0: head_i0 + q.value[0] + tail_i0,
        i1: head_i1 + q.value[1] + tail_i1,
        j: head_j + Complex64::new(q.value[2], q.value[3]) + tail_j,
        errors: [q.error[0], q.error[1], q.error[2].hypot(q.error[3])],
        xi_max,
        panels: q.panels,
    })
}

/// Coefficient `K` of the logarithmic divergence
/// `∫_ε [|R'|²ξ² + ℓ(ℓ+1)|R|²] dξ ≈ K ln(1/ε)` as `ε → 0`.
pub fn kinetic_log_coefficient(profile: &SelfSimilarProfile) -> f64 {
    let (a, b) = profile.near_origin_amplitudes();
    let (m1, m2) = profile.near_origin_exponents();
    let l2 = profile.params().centrifugal();
    (m1 * a).norm_sqr() + (m2 * b).norm_sqr() + l2 * (a.norm_sqr() + b.norm_sqr())
}

/// `∫_ε^∞ [|R'|²ξ² + ℓ(ℓ+1)|R|²] dξ`, finite for every cutoff `ε > 0`.
pub fn kinetic_integral_above(
    profile: &SelfSimilarProfile,
    cutoff: f64,
    xi_max: f64,
    tol: f64,
) -> Result<(f64, f64), ObservablesError> {
    check_window(xi_max, tol)?;
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return Err(ObservablesError::Domain(format!("kinetic cutoff must lie in (0, 1), got {cutoff}")));
    }
    let l2 = profile.params().centrifugal();
    let f = |xi: f64| -> Result<[f64; 1], ProfileError> {
        let (r, dr) = profile.value_and_first(xi)?;
        Ok([dr.norm_sqr() * xi * xi + l2 * r.norm_sqr()])
    };
    let q = adaptive(&f, &breakpoints(cutoff, xi_max), tol, 1e-300, MAX_PANELS)?;
    let d = tail_d(profile);
    let fc = tail_f(&d);
    let tail = tail_pair(&fc, &fc, -2.0, xi_max).re + l2 * tail_pair(&d, &d, -6.0, xi_max).re;
    Ok((q.value[0] + tail, q.error[0]))
}

/// Settings for [`observable_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableOptions {
    pub xi_max: f64,
    pub tol: f64,
    pub momentum: MomentumOptions,
}

impl Default for ObservableOptions {
    fn default() -> Self {
        ObservableOptions { xi_max: 40.0, tol: 1e-11, momentum: MomentumOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableReport {
    pub params: CollapseParams,
    pub norm_i0: f64,
    pub moment_i1: f64,
    /// `+∞`: the kinetic integral diverges logarithmically at the origin.
    pub kinetic_i2: f64,
    pub kinetic_log_coefficient: f64,
    pub c_r: f64,
    /// `⟨|p|⟩ √(-χt) / ħ`.
    pub c_p: f64,
    pub j: Complex64,
    pub energy_dimless: f64,
    /// `∫|φ̃|²q² dq / I0`, one for an exact transform.
    pub momentum_norm_ratio: f64,
    /// Largest absolute error estimate over `I0`, `I1`, `J`.
    pub quad_error: f64,
    pub c_p_error: f64,
}

pub fn observable_report(
    profile: &SelfSimilarProfile,
    opts: &ObservableOptions,
) -> Result<ObservableReport, ObservablesError> {
    let m = radial_moment_integrals(profile, opts.xi_max, opts.tol)?;
    let p = momentum_moments(profile, &opts.momentum)?;
    Ok(ObservableReport {
        params: *profile.params(),
        norm_i0: m.i0,
        moment_i1: m.i1,
        kinetic_i2: f64::INFINITY,
        kinetic_log_coefficient: kinetic_log_coefficient(profile),
        c_r: m.i1 / m.i0,
        c_p: p.abs_moment / m.i0,
        j: m.j,
        energy_dimless: m.j.norm() / m.i0,
        momentum_norm_ratio: p.norm / m.i0,
        quad_error: m.errors.iter().cloned().fold(0.0, f64::max),
        c_p_error: p.abs_moment_error / m.i0,
    })
}

pub fn scaling_constants(report: &ObservableReport) -> (f64, f64) {
    (report.c_r, report.c_p)
}

/// `E = iħ⟨Ψ|∂_tΨ⟩/⟨Ψ|Ψ⟩ = (-iħ/(2t)) J/I0` and `|J|/I0`.
pub fn mean_energy_from(
    params: &CollapseParams,
    m: &MomentIntegrals,
    t: f64,
) -> Result<(Complex64, f64), ObservablesError> {
    if !(t < 0.0) {
        return Err(ObservablesError::Domain(format!("mean energy needs t < 0, got {t}")));
    }
    let prefactor = Complex64::new(0.0, -params.hbar / (2.0 * t));
    Ok((prefactor * m.j / m.i0, m.j.norm() / m.i0))
}

pub fn mean_energy(params: &CollapseParams, t: f64, xi_max: f64) -> Result<(Complex64, f64), ObservablesError> {
    if !(t < 0.0) {
        return Err(ObservablesError::Domain(format!("mean energy needs t < 0, got {t}")));
    }
    let profile = SelfSimilarProfile::new(*params, EvalAccuracy::default())?;
    let m = radial_moment_integrals(&profile, xi_max, 1e-11)?;
    mean_energy_from(params, &m, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub r_mean: f64,
    pub p_mean: f64,
    pub uncertainty_product: f64,
}

pub fn expectations_at_time(report: &ObservableReport, t: f64) -> Result<Expectations, ObservablesError> {
    if !(t < 0.0) {
        return Err(ObservablesError::Domain(format!("expectations need t < 0, got {t}")));
    }
    let scale = report.params.length_scale(t);
    Ok(Expectations {
        r_mean: report.c_r * scale,
        p_mean: report.params.hbar * report.c_p / scale,
        uncertainty_product: report.params.hbar * report.c_r * report.c_p,
    })
}

impl ObservableReport {
    pub const CSV_HEADER: [&'static str; 8] = ["gamma", "I0", "I1", "I2", "C_r", "C_p", "E_dimless", "quad_error"];

    pub fn csv_record(&self) -> [String; 8] {
        use crate::io::fmt17;
        [
            fmt17(self.params.gamma),
            fmt17(self.norm_i0),
            fmt17(self.moment_i1),
            fmt17(self.kinetic_i2),
            fmt17(self.c_r),
            fmt17(self.c_p),
            fmt17(self.energy_dimless),
            fmt17(self.quad_error),
        ]
    }

    pub fn write_csv<W: Write>(reports: &[ObservableReport], out: W) -> Result<(), ObservablesError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| ObservablesError::Domain(format!("csv: {e}"));
        w.write_record(Self::CSV_HEADER).map_err(io)?;
        for r in reports {
            w.write_record(r.csv_record()).map_err(io)?;
        }
        w.flush().map_err(|e| ObservablesError::Domain(format!("csv: {e}")))
    }
}

impl fmt::Display for ObservableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "gamma           {:.10}  (beta_tilde {}, l {}, alpha {:.10})",
            p.gamma, p.beta_tilde, p.ell, p.alpha
        )?;
        writeln!(f, "I0              {:.15e}", self.norm_i0)?;
        writeln!(f, "I1              {:.15e}", self.moment_i1)?;
        writeln!(f, "I2              diverges, {:.12e} * ln(1/xi) at the origin", self.kinetic_log_coefficient)?;
        writeln!(f, "C_r = I1/I0     {:.12}", self.c_r)?;
        writeln!(f, "C_p = <|p|>     {:.10}  (+/- {:.1e})", self.c_p, self.c_p_error)?;
        writeln!(f, "C_r * C_p       {:.10}", self.c_r * self.c_p)?;
        writeln!(f, "J               {:.12e} {:+.12e}i", self.j.re, self.j.im)?;
        writeln!(f, "|J|/I0          {:.12}", self.energy_dimless)?;
        writeln!(f, "Re J / I0       {:.12}", self.j.re / self.norm_i0)?;
        writeln!(f, "momentum norm   {:.10}", self.momentum_norm_ratio)?;
        write!(f, "quad_error      {:.3e}", self.quad_error)
    }
}
