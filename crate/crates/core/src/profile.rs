//! The exact self-similar radial profile `R(ξ)`.
//!
//! `R` is the solution of `R'' + (2/ξ + iξ) R' + γ R/ξ² = 0` that vanishes
//! as `ξ → ∞`:
//!
//! ```text
//! R(ξ) = ξ^{-1/2} [ ξ^{-iα/2} 2^{iα/2} Γ(1+iα/2) Γ((5-iα)/4) ₁F₁(-(1+iα)/4; (2-iα)/2; -iξ²/2)
//!                 - ξ^{iα/2} e^{-πα/4} Γ(1-iα/2) Γ((5+iα)/4) ₁F₁(-(1-iα)/4; (2+iα)/2; -iξ²/2) ]
//! ```
//!
//! with the overall constant fixed to one and the `n = 0` branch of the
//! imaginary powers. The algebraic large-|z| sectors of the two Kummer
//! functions cancel exactly, leaving the recessive tail
//! `R ~ e^{-iξ²/2} Σ d_n ξ^{-3-2n}`. Beyond `|z| = ξ²/2` above the
//! asymptotic threshold that series is summed directly; `d_0 = C∞` is known
//! in closed form from the Γ-ratios of the exponential sector.

use crate::params::CollapseParams;
use crate::specfun::{complex_gamma, kummer_1f1, recip_gamma, EvalAccuracy, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tail fit rejected: relative spread {spread:.3e} over [{xi_lo}, {xi_hi}] exceeds 10%")]
    Fit { spread: f64, xi_lo: f64, xi_hi: f64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("i/o: {0}")]
    Io(String),
}

const MAX_TAIL_TERMS: usize = 400;

/// Value and first two ξ-derivatives of the profile at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub value: Complex64,
    pub first: Complex64,
    pub second: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct KummerTerm {
    /// Prefactor multiplying `ξ^{power} ₁F₁(a; b; -iξ²/2)`.
    prefactor: Complex64,
    power: Complex64,
    a: Complex64,
    b: Complex64,
}

/// Precomputed closed form for one parameter set.
#[derive(Debug, Clone)]
pub struct SelfSimilarProfile {
    params: CollapseParams,
    acc: EvalAccuracy,
    terms: [KummerTerm; 2],
    c_infinity: Complex64,
}

impl SelfSimilarProfile {
    pub fn new(params: CollapseParams, acc: EvalAccuracy) -> Result<Self, ProfileError> {
        acc.validate()?;
        let i = Complex64::i();
        let alpha = params.alpha;
        let half = 0.5 * alpha * i;
        let two_pow = (half * 2f64.ln()).exp();
        let p1 = two_pow * complex_gamma(1.0 + half)? * complex_gamma((5.0 - alpha * i) / 4.0)?;
        let p2 = (-PI * alpha / 4.0).exp() * complex_gamma(1.0 - half)? * complex_gamma((5.0 + alpha * i) / 4.0)?;
        let t1 =
            KummerTerm { prefactor: p1, power: -0.5 - half, a: -(1.0 + alpha * i) / 4.0, b: (2.0 - alpha * i) / 2.0 };
        let t2 =
            KummerTerm { prefactor: -p2, power: -0.5 + half, a: -(1.0 - alpha * i) / 4.0, b: (2.0 + alpha * i) / 2.0 };
        let mut c_infinity = Complex64::new(0.0, 0.0);
        for t in [&t1, &t2] {
            // Γ(b)/Γ(a) · (1/2)^{a-b} · e^{-iπ(a-b)/2}
            let amb = t.a - t.b;
            c_infinity += t.prefactor
                * complex_gamma(t.b)?
                * recip_gamma(t.a)?
                * (-amb * 2f64.ln()).exp()
                * (-0.5 * PI * i * amb).exp();
        }
        Ok(SelfSimilarProfile { params, acc, terms: [t1, t2], c_infinity })
    }

    /// The same profile multiplied by an arbitrary complex constant.
    pub fn scaled(mut self, c: Complex64) -> Self {
        for t in &mut self.terms {
            t.prefactor *= c;
        }
        self.c_infinity *= c;
        self
    }

    pub fn params(&self) -> &CollapseParams {
        &self.params
    }

    pub fn accuracy(&self) -> &EvalAccuracy {
        &self.acc
    }

    /// Leading coefficient of `R ~ C∞ e^{-iξ²/2} / ξ³`.
    pub fn c_infinity(&self) -> Complex64 {
        self.c_infinity
    }

    /// Amplitudes `(A, B)` of `R ≈ ξ^{-1/2} (A ξ^{-iα/2} + B ξ^{iα/2})` near the origin.
    pub fn near_origin_amplitudes(&self) -> (Complex64, Complex64) {
        (self.terms[0].prefactor, self.terms[1].prefactor)
    }

    /// Exponents `(μ₁, μ₂) = (-1/2 - iα/2, -1/2 + iα/2)` paired with the amplitudes.
    pub fn near_origin_exponents(&self) -> (Complex64, Complex64) {
        (self.terms[0].power, self.terms[1].power)
    }

    /// Coefficients `c_{jk}` of the convergent near-origin expansion
    /// `R = Σ_j Σ_k c_{jk} ξ^{μ_j + 2k}`, `k < orders`.
    pub fn near_origin_series(&self, orders: usize) -> [Vec<Complex64>; 2] {
        let h = Complex64::new(0.0, -0.5);
        self.terms.map(|t| {
            let mut c = t.prefactor;
            let mut out = Vec::with_capacity(orders);
            for k in 0..orders {
                out.push(c);
                let kf = k as f64;
                c = c * (t.a + kf) / ((t.b + kf) * (kf + 1.0)) * h;
            }
            out
        })
    }

    /// Majorization constant: `|R|² ≤ C₀/ξ` for the near-origin form.
    pub fn c_zero(&self) -> f64 {
        let (a, b) = self.near_origin_amplitudes();
        (a.norm() + b.norm()).powi(2)
    }

    /// Whether `|R|²` decays monotonically as `ξ → 0⁺`.
    ///
    /// `ξ|R|² = |A|² + |B|² + 2 Re(A B̄ ξ^{-iα})` is monotone in ξ exactly when
    /// `|A|² + |B|² > 2 |A B| sqrt(1 + α²)`.
    pub fn near_origin_monotone(&self) -> bool {
        let (a, b) = self.near_origin_amplitudes();
        a.norm_sqr() + b.norm_sqr() > 2.0 * a.norm() * b.norm() * (1.0 + self.params.alpha.powi(2)).sqrt()
    }

    fn uses_tail_series(&self, xi: f64) -> bool {
        0.5 * xi * xi > self.acc.asymptotic_threshold
    }

    /// Coefficients `d_n` of `R = e^{-iξ²/2} Σ d_n ξ^{-3-2n}`.
    pub fn tail_coefficient(&self, n: usize) -> Complex64 {
        let mut d = self.c_infinity;
        for k in 1..=n {
            d = d * tail_ratio(self.params.gamma, k);
        }
        d
    }

    pub fn value(&self, xi: f64) -> Result<Complex64, ProfileError> {
        check_xi(xi)?;
        if self.uses_tail_series(xi) {
            return Ok(self.tail_series(xi)?.value);
        }
        let z = Complex64::new(0.0, -0.5 * xi * xi);
        let mut sum = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            sum += t.prefactor * xi_pow(xi, t.power) * kummer_1f1(t.a, t.b, z, &self.acc)?;
        }
        Ok(sum)
    }

    /// `R`, `R'`, `R''` by differentiating the closed form analytically.
    pub fn derivatives(&self, xi: f64) -> Result<ProfilePoint, ProfileError> {
        self.eval_point(xi, true)
    }

    /// `R` and `R'` only; skips the third Kummer evaluation per term.
    pub fn value_and_first(&self, xi: f64) -> Result<(Complex64, Complex64), ProfileError> {
        let p = self.eval_point(xi, false)?;
        Ok((p.value, p.first))
    }

    fn eval_point(&self, xi: f64, second: bool) -> Result<ProfilePoint, ProfileError> {
        check_xi(xi)?;
        if self.uses_tail_series(xi) {
            return self.tail_series(xi);
        }
        let i = Complex64::i();
        let z = -0.5 * i * xi * xi;
        let dz = -i * xi;
        let d2z = -i;
        let zero = Complex64::new(0.0, 0.0);
        let mut out = ProfilePoint { value: zero, first: zero, second: zero };
        for t in &self.terms {
            let (a, b) = (t.a, t.b);
            let f0 = kummer_1f1(a, b, z, &self.acc)?;
            let f1 = a / b * kummer_1f1(a + 1.0, b + 1.0, z, &self.acc)?;
            let g = t.prefactor * xi_pow(xi, t.power);
            let g1 = g * t.power / xi;
            out.value += g * f0;
            out.first += g1 * f0 + g * f1 * dz;
            if second {
                let f2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, z, &self.acc)?;
                let g2 = g * t.power * (t.power - 1.0) / (xi * xi);
                out.second += g2 * f0 + 2.0 * g1 * f1 * dz + g * (f2 * dz * dz + f1 * d2z);
            }
        }
        Ok(out)
    }

    fn tail_series(&self, xi: f64) -> Result<ProfilePoint, ProfileError> {
        let i = Complex64::i();
        let inv2 = 1.0 / (xi * xi);
        let mut d = self.c_infinity;
        let mut scale = xi.powi(-3);
        let mut w = Complex64::new(0.0, 0.0);
        let mut w1 = Complex64::new(0.0, 0.0);
        let mut w2 = Complex64::new(0.0, 0.0);
        let mut last = f64::INFINITY;
        for n in 0..MAX_TAIL_TERMS {
            let p = -3.0 - 2.0 * n as f64;
            let term = d * scale;
            let mag = term.norm();
            if mag > last {
                break;
            }
            w += term;
            w1 += term * p / xi;
            w2 += term * p * (p - 1.0) * inv2;
            if mag <= 1e-17 * w.norm() {
                break;
            }
            last = mag;
            d = d * tail_ratio(self.params.gamma, n + 1);
            scale *= inv2;
        }
        let phase = (-0.5 * i * xi * xi).exp();
        Ok(ProfilePoint {
            value: phase * w,
            first: phase * (w1 - i * xi * w),
            second: phase * (w2 - 2.0 * i * xi * w1 - i * w - xi * xi * w),
        })
    }

    /// Two-term near-origin form (both Kummer factors replaced by one).
    pub fn small_xi(&self, xi: f64) -> Result<Complex64, ProfileError> {
        check_xi(xi)?;
        Ok(self.terms.iter().map(|t| t.prefactor * xi_pow(xi, t.power)).sum())
    }

    /// Normalized residual of the similarity ODE at `ξ`.
    pub fn ode_residual(&self, xi: f64) -> Result<f64, ProfileError> {
        let p = self.derivatives(xi)?;
        let drift = (2.0 / xi + Complex64::i() * xi) * p.first;
        let coupling = self.params.gamma * p.value / (xi * xi);
        let den = p.second.norm() + drift.norm() + coupling.norm();
        Ok((p.second + drift + coupling).norm() / den)
    }
}

fn tail_ratio(gamma: f64, n: usize) -> Complex64 {
    let nf = n as f64;
    Complex64::new(0.0, (2.0 * nf * (2.0 * nf + 1.0) + gamma) / (2.0 * nf))
}

fn xi_pow(xi: f64, power: Complex64) -> Complex64 {
    (power * xi.ln()).exp()
}

fn check_xi(xi: f64) -> Result<(), ProfileError> {
    if xi > 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(ProfileError::Domain(format!("xi must be positive and finite, got {xi}")))
    }
}

/// `z^{iα/2}` on branch `n`: `e^{-παn} e^{i(α/2) ln z}`. A negative `alpha`
/// gives the conjugate exponent `z^{-i|α|/2}` with modulus `e^{π|α|n}`.
pub fn imaginary_power(z: f64, alpha: f64, n: i64) -> Result<Complex64, ProfileError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(ProfileError::Domain(format!("imaginary power needs z > 0, got {z}")));
    }
    let modulus = (-PI * alpha * n as f64).exp();
    Ok(Complex64::from_polar(modulus, 0.5 * alpha * z.ln()))
}

pub fn evaluate_r(params: &CollapseParams, xi: f64, acc: &EvalAccuracy) -> Result<Complex64, ProfileError> {
    SelfSimilarProfile::new(*params, *acc)?.value(xi)
}

pub fn evaluate_r_derivatives(
    params: &CollapseParams,
    xi: f64,
    acc: &EvalAccuracy,
) -> Result<ProfilePoint, ProfileError> {
    SelfSimilarProfile::new(*params, *acc)?.derivatives(xi)
}

pub fn ode_residual(params: &CollapseParams, xi: f64) -> Result<f64, ProfileError> {
    SelfSimilarProfile::new(*params, EvalAccuracy::default())?.ode_residual(xi)
}

pub fn small_xi_asymptote(params: &CollapseParams, xi: f64) -> Result<Complex64, ProfileError> {
    SelfSimilarProfile::new(*params, EvalAccuracy::default())?.small_xi(xi)
}

/// Radial factor of Ψ at `(r, t)`, `t < 0`.
pub fn psi_value(params: &CollapseParams, r: f64, t: f64) -> Result<Complex64, ProfileError> {
    if !(t < 0.0) {
        return Err(ProfileError::Domain(format!("collapse time must be negative, got {t}")));
    }
    if !(r > 0.0) {
        return Err(ProfileError::Domain(format!("radius must be positive, got {r}")));
    }
    evaluate_r(params, r / params.length_scale(t), &EvalAccuracy::default())
}

/// Result of fitting the `ξ⁻³` tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub c_infinity: Complex64,
    /// `max_k |s_k - s̄| / |s̄|` for the raw samples `s_k = R ξ³ e^{iξ²/2}`.
    pub spread: f64,
    /// `(max |s_k| - min |s_k|) / mean |s_k|`.
    pub modulus_spread: f64,
    /// Largest relative deviation of the samples from the fitted model.
    pub residual: f64,
}

const TAIL_FIT_SAMPLES: usize = 201;

/// Least-squares estimate of `C∞` from samples of `R ξ³ e^{iξ²/2}` over a
/// window, with the known relative corrections `d_n/d_0 ξ^{-2n}` folded
/// into the model so the constant is unbiased.
pub fn large_xi_tail_fit(profile: &SelfSimilarProfile, xi_lo: f64, xi_hi: f64) -> Result<TailFit, ProfileError> {
    if !(xi_lo >= 15.0) || !(xi_hi > xi_lo) || !xi_hi.is_finite() {
        return Err(ProfileError::Domain(format!("tail fit window [{xi_lo}, {xi_hi}] needs 15 <= xi_lo < xi_hi")));
    }
    let gamma = profile.params.gamma;
    let mut samples = Vec::with_capacity(TAIL_FIT_SAMPLES);
    let mut models = Vec::with_capacity(TAIL_FIT_SAMPLES);
    for k in 0..TAIL_FIT_SAMPLES {
        let xi = xi_lo + (xi_hi - xi_lo) * k as f64 / (TAIL_FIT_SAMPLES - 1) as f64;
        let r = profile.value(xi)?;
        samples.push(r * xi.powi(3) * Complex64::new(0.0, 0.5 * xi * xi).exp());
        let mut ratio = Complex64::new(1.0, 0.0);
        let mut model = ratio;
        let inv2 = 1.0 / (xi * xi);
        let mut last = f64::INFINITY;
        for n in 1..MAX_TAIL_TERMS {
            ratio = ratio * tail_ratio(gamma, n) * inv2;
            let mag = ratio.norm();
            if mag > last || mag < 1e-18 {
                break;
            }
            model += ratio;
            last = mag;
        }
        models.push(model);
    }
    let num: Complex64 = samples.iter().zip(&models).map(|(s, m)| m.conj() * s).sum();
    let den: f64 = models.iter().map(|m| m.norm_sqr()).sum();
    let c_infinity = num / den;

    let n = samples.len() as f64;
    let mean: Complex64 = samples.iter().sum::<Complex64>() / n;
    let spread = samples.iter().map(|s| (s - mean).norm()).fold(0.0, f64::max) / mean.norm();
    let mods: Vec<f64> = samples.iter().map(|s| s.norm()).collect();
    let mmax = mods.iter().cloned().fold(f64::MIN, f64::max);
    let mmin = mods.iter().cloned().fold(f64::MAX, f64::min);
    let modulus_spread = (mmax - mmin) / (mods.iter().sum::<f64>() / n);
    let residual =
        samples.iter().zip(&models).map(|(s, m)| (s - c_infinity * m).norm()).fold(0.0, f64::max) / c_infinity.norm();
    if spread > 0.1 {
        return Err(ProfileError::Fit { spread, xi_lo, xi_hi });
    }
    Ok(TailFit { c_infinity, spread, modulus_spread, residual })
}

/// Sampled profile on an ascending ξ grid.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    pub params: CollapseParams,
    pub xi: Vec<f64>,
    pub r: Vec<Complex64>,
    pub dr: Vec<Complex64>,
    pub d2r: Vec<Complex64>,
    pub abs2: Vec<f64>,
    /// Overall constant of the closed form (fixed to one).
    pub c_normalization: f64,
    pub c_infinity: Complex64,
    pub c_zero: f64,
}

impl ProfileTable {
    pub fn build(profile: &SelfSimilarProfile, xi: Vec<f64>) -> Result<Self, ProfileError> {
        if xi.is_empty() {
            return Err(ProfileError::Domain("empty xi grid".into()));
        }
        if xi.windows(2).any(|w| !(w[1] > w[0])) || !(xi[0] > 0.0) {
            return Err(ProfileError::Domain("xi grid must be positive and strictly increasing".into()));
        }
        let mut r = Vec::with_capacity(xi.len());
        let mut dr = Vec::with_capacity(xi.len());
        let mut d2r = Vec::with_capacity(xi.len());
        for &x in &xi {
            let p = profile.derivatives(x)?;
            r.push(p.value);
            dr.push(p.first);
            d2r.push(p.second);
        }
        let abs2 = r.iter().map(|v| v.re * v.re + v.im * v.im).collect();
        Ok(ProfileTable {
            params: *profile.params(),
            xi,
            r,
            dr,
            d2r,
            abs2,
            c_normalization: 1.0,
            c_infinity: profile.c_infinity(),
            c_zero: profile.c_zero(),
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), ProfileError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| ProfileError::Io(e.to_string());
        w.write_record(["xi", "re_R", "im_R", "abs2_R", "re_dR", "im_dR"]).map_err(io)?;
        for k in 0..self.xi.len() {
            w.write_record([
                crate::io::fmt17(self.xi[k]),
                crate::io::fmt17(self.r[k].re),
                crate::io::fmt17(self.r[k].im),
                crate::io::fmt17(self.abs2[k]),
                crate::io::fmt17(self.dr[k].re),
                crate::io::fmt17(self.dr[k].im),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| ProfileError::Io(e.to_string()))
    }
}

/// Log-spaced grid of `n` points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn profile(gamma: f64) -> SelfSimilarProfile {
        SelfSimilarProfile::new(CollapseParams::from_gamma(gamma).unwrap(), EvalAccuracy::default()).unwrap()
    }

    #[test]
    fn imaginary_power_branches() {
        assert_eq!(imaginary_power(1.0, 0.7, 0).unwrap(), c(1.0, 0.0));
        let e = std::f64::consts::E;
        let v = imaginary_power(e, 2.0, 0).unwrap();
        assert!((v - c(1f64.cos(), 1f64.sin())).norm() < 1e-15);
        let w = imaginary_power(e, 2.0, 1).unwrap();
        assert!((w.norm() - (-2.0 * PI).exp()).abs() < 1e-18);
        assert!((w.arg() - v.arg()).abs() < 1e-14);
        assert!(imaginary_power(0.0, 1.0, 0).is_err());
        assert!(imaginary_power(-1.0, 1.0, 0).is_err());
    }

    #[test]
    fn closed_form_c_infinity() {
        // 40-digit reference from the same Γ-ratio formula evaluated with mpmath
        let want = c(0.687_075_548_605_522_985_2, -0.063_776_253_921_860_462_51);
        assert!((profile(1.0).c_infinity() - want).norm() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        let p = profile(1.0);
        assert!(matches!(p.value(0.0), Err(ProfileError::Domain(_))));
        assert!(matches!(p.value(-1.0), Err(ProfileError::Domain(_))));
        assert!(matches!(p.small_xi(0.0), Err(ProfileError::Domain(_))));
        let params = CollapseParams::from_gamma(1.0).unwrap();
        assert!(psi_value(&params, 1.0, 0.0).is_err());
        assert!(psi_value(&params, 0.0, -1.0).is_err());
    }

    #[test]
    fn psi_is_profile_of_similarity_variable() {
        let params = CollapseParams::from_gamma(1.0).unwrap();
        let r1 = evaluate_r(&params, 1.0, &EvalAccuracy::default()).unwrap();
        assert_eq!(psi_value(&params, 1.0, -1.0).unwrap(), r1);
        assert_eq!(psi_value(&params, 2.0, -4.0).unwrap(), r1);
        for k in [0.3, 2.0, 7.5] {
            let a = psi_value(&params, 0.8, -0.6).unwrap();
            let b = psi_value(&params, 0.8 * k, -0.6 * k * k).unwrap();
            assert!((a - b).norm() <= 1e-13 * a.norm());
        }
    }

    #[test]
    fn derivative_value_matches_value() {
        let p = profile(2.0);
        for xi in [0.07, 1.0, 8.9, 9.0, 25.0] {
            assert!((p.derivatives(xi).unwrap().value - p.value(xi).unwrap()).norm() == 0.0);
        }
    }

    #[test]
    fn gamma_perturbation_is_smooth() {
        let a = profile(1.0).value(1.3).unwrap();
        let b = profile(1.0 + 1e-8).value(1.3).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm());
    }

    #[test]
    fn near_origin_monotonicity_predicate() {
        assert!(!profile(0.5).near_origin_monotone());
        assert!(profile(1.0).near_origin_monotone());
        assert!(profile(2.0).near_origin_monotone());
        let (a, b) = profile(1.0).near_origin_amplitudes();
        assert!((b.norm() / a.norm() - (-PI * 3f64.sqrt() / 4.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn tail_fit_window_checks() {
        let p = profile(1.0);
        assert!(large_xi_tail_fit(&p, 10.0, 20.0).is_err());
        assert!(large_xi_tail_fit(&p, 20.0, 20.0).is_err());
        let fit = large_xi_tail_fit(&p, 20.0, 30.0).unwrap();
        assert!((fit.c_infinity - p.c_infinity()).norm() < 1e-10 * p.c_infinity().norm());
    }

    #[test]
    fn table_csv_layout() {
        let p = profile(1.0);
        let table = ProfileTable::build(&p, vec![0.5, 1.0, 2.0]).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "xi,re_R,im_R,abs2_R,re_dR,im_dR");
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(row[0], 0.5);
        assert_eq!(row[3], table.abs2[0]);
        assert_eq!(row[1], table.r[0].re);
        assert!(ProfileTable::build(&p, vec![1.0, 1.0]).is_err());
        assert!(ProfileTable::build(&p, vec![0.0, 1.0]).is_err());
    }
}
