//! Momentum-space density of the profile and `⟨|p|⟩`.
//!
//! `φ̃(q) = sqrt(2/π) ∫ j_ℓ(qξ) R(ξ) ξ² dξ` is evaluated by a fixed
//! Kronrod rule on panels that resolve both `e^{-iξ²/2}` and `j_ℓ(qξ)` up to
//! `ξ_cut`, plus one integration-by-parts term beyond it. For `q > q_max` the
//! density is replaced by its large-q form: the near-origin singularity
//! contributes `sqrt(2/π) Σ a_k M_ℓ(μ_k) q^{-3-μ_k}` with the Mellin factor
//! `M_ℓ(μ) = 2^{μ+1} sqrt(π) Γ((ℓ+μ+3)/2) / Γ((ℓ-μ)/2)`, and the stationary
//! point `ξ = q` of the tail contributes `-i C∞ q^{-3} e^{i(q²/2 - π/4 - ℓπ/2)}`.

use super::{ObservablesError, XI_MIN};
use crate::profile::SelfSimilarProfile;
use crate::quad::kronrod_nodes;
use crate::specfun::{complex_gamma, recip_gamma, spherical_bessel_j};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumOptions {
    /// Upper end of the numerical q integration.
    pub q_max: f64,
    /// Upper end of the numerical ξ integration for each φ̃(q).
    pub xi_cut: f64,
}

impl Default for MomentumOptions {
    fn default() -> Self {
        MomentumOptions { q_max: 40.0, xi_cut: 60.0 }
    }
}

impl MomentumOptions {
    fn validate(&self) -> Result<(), ObservablesError> {
        if !(self.q_max >= 10.0) || !(self.xi_cut >= self.q_max + 10.0) || !self.xi_cut.is_finite() {
            return Err(ObservablesError::Domain(format!(
                "momentum options need q_max >= 10 and xi_cut >= q_max + 10, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Unnormalized moments of `|φ̃|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumMoments {
    /// `∫|φ̃|²q² dq`, equal to `I0` by Parseval.
    pub norm: f64,
    /// `∫|φ̃|²q³ dq`.
    pub abs_moment: f64,
    /// Kronrod minus Gauss on the q panels plus the size of the last
    /// retained large-q order.
    pub abs_moment_error: f64,
    /// Share of `abs_moment` supplied by the analytic `q > q_max` tail.
    pub tail_fraction: f64,
}

/// ξ nodes with weights `w R ξ²`, prepared once for all q.
struct XiRule {
    xi: Vec<f64>,
    weight: Vec<Complex64>,
    cut: f64,
    r_cut: Complex64,
}

fn xi_rule(profile: &SelfSimilarProfile, opts: &MomentumOptions) -> Result<XiRule, ObservablesError> {
    let width = |x: f64| 0.1f64.min(8.0 / (x + opts.q_max));
    let mut edges = vec![XI_MIN];
    let mut x = XI_MIN;
    while x < opts.xi_cut {
        x = (2.0 * x).min(x + width(x)).min(opts.xi_cut);
        edges.push(x);
    }
    let nodes: Vec<(f64, f64)> =
        edges.windows(2).flat_map(|w| kronrod_nodes(w[0], w[1]).map(|n| (n.x, n.wk))).collect();
    let weight =
        nodes.par_iter().map(|&(x, w)| profile.value(x).map(|r| r * (w * x * x))).collect::<Result<Vec<_>, _>>()?;
    Ok(XiRule { xi: nodes.iter().map(|n| n.0).collect(), weight, cut: opts.xi_cut, r_cut: profile.value(opts.xi_cut)? })
}

fn transform(rule: &XiRule, ell: u32, q: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    if ell == 0 {
        for (x, w) in rule.xi.iter().zip(&rule.weight) {
            let arg = q * x;
            let j = if arg < 1e-8 { 1.0 } else { arg.sin() / arg };
            sum += w * j;
        }
    } else {
        for (x, w) in rule.xi.iter().zip(&rule.weight) {
            sum += w * spherical_bessel_j(ell, q * x);
        }
    }
    sum += ibp_tail(rule, ell, q);
    (2.0 / PI).sqrt() * sum
}

/// Leading integration-by-parts estimate of `∫_{ξ_cut}^∞ j_ℓ(qξ) R ξ² dξ`,
/// using `R' ≈ -iξR` and, once `qξ` is large, the two exponentials of `j_ℓ`.
fn ibp_tail(rule: &XiRule, ell: u32, q: f64) -> Complex64 {
    let x = rule.cut;
    let i = Complex64::i();
    if q * x < 50.0 {
        return -i * rule.r_cut * x * spherical_bessel_j(ell, q * x);
    }
    let shift = f64::from(ell) * FRAC_PI_2;
    let mut sum = Complex64::new(0.0, 0.0);
    for sign in [1.0, -1.0] {
        // j_ℓ(x) ≈ Σ± ±e^{±i(x - ℓπ/2)}/(2ix)
        let piece = rule.r_cut * x * x * sign * Complex64::new(0.0, sign * (q * x - shift)).exp() / (2.0 * i * q * x);
        let dphase = -x + sign * q;
        sum += i * piece / dphase;
    }
    sum
}

/// `φ̃(q)` for a single momentum (rebuilds the ξ rule; use for spot checks).
pub fn momentum_amplitude(
    profile: &SelfSimilarProfile,
    q: f64,
    opts: &MomentumOptions,
) -> Result<Complex64, ObservablesError> {
    opts.validate()?;
    if !(q >= 0.0) {
        return Err(ObservablesError::Domain(format!("q must be non-negative, got {q}")));
    }
    let rule = xi_rule(profile, opts)?;
    Ok(transform(&rule, profile.params().ell, q))
}

/// Mellin factor `∫_0^∞ j_ℓ(x) x^{2+μ} dx` continued analytically in μ.
pub fn mellin_factor(ell: u32, mu: Complex64) -> Result<Complex64, ObservablesError> {
    let l = f64::from(ell);
    let g = complex_gamma((l + mu + 3.0) / 2.0).map_err(crate::profile::ProfileError::from)?;
    let rg = recip_gamma((l - mu) / 2.0).map_err(crate::profile::ProfileError::from)?;
    Ok(((mu + 1.0) * 2f64.ln()).exp() * PI.sqrt() * g * rg)
}

const MELLIN_ORDERS: usize = 4;

/// Large-q form `φ̃ ≈ sqrt(2/π) Σ g_i q^{e_i} + s q^{-3} e^{iθ(q)}` with
/// `θ = q²/2 - π/4 - ℓπ/2`.
struct LargeQ {
    mellin: Vec<(Complex64, Complex64)>,
    stationary: Complex64,
    ell: u32,
}

fn large_q(profile: &SelfSimilarProfile, orders: usize) -> Result<LargeQ, ObservablesError> {
    let ell = profile.params().ell;
    let (m1, m2) = profile.near_origin_exponents();
    let series = profile.near_origin_series(orders);
    let mut mellin = Vec::with_capacity(2 * orders);
    for (mu, coeffs) in [(m1, &series[0]), (m2, &series[1])] {
        for (k, c) in coeffs.iter().enumerate() {
            let m = mu + 2.0 * k as f64;
            mellin.push((c * mellin_factor(ell, m)?, -3.0 - m));
        }
    }
    Ok(LargeQ { mellin, stationary: -Complex64::i() * profile.c_infinity(), ell })
}

impl LargeQ {
    fn theta(&self, q: f64) -> f64 {
        0.5 * q * q - FRAC_PI_4 - f64::from(self.ell) * FRAC_PI_2
    }

    fn mellin_part(&self, q: f64) -> Complex64 {
        let lq = q.ln();
        (2.0 / PI).sqrt() * self.mellin.iter().map(|(g, e)| g * (e * lq).exp()).sum::<Complex64>()
    }

    fn amplitude(&self, q: f64) -> Complex64 {
        self.mellin_part(q) + self.stationary * q.powi(-3) * Complex64::new(0.0, self.theta(q)).exp()
    }

    /// `(∫_Q^∞ |φ̃|² q^k dq, cross-term share)`; the oscillatory cross term is
    /// integrated by one integration by parts.
    fn tail(&self, q: f64, k: f64) -> (f64, f64) {
        let lq = q.ln();
        let mut diag = Complex64::new(0.0, 0.0);
        for (g, e) in &self.mellin {
            for (h, f) in &self.mellin {
                let p = e + f.conj() + k + 1.0;
                diag -= g * h.conj() * (p * lq).exp() / p;
            }
        }
        let diag = (2.0 / PI) * diag.re + self.stationary.norm_sqr() * q.powf(k - 5.0) / (5.0 - k);
        let h = self.mellin_part(q) * self.stationary.conj() * q.powf(k - 3.0);
        let cross = 2.0 * (-Complex64::i() * h * Complex64::new(0.0, -self.theta(q)).exp() / q).re;
        (diag + cross, cross)
    }
}

/// Large-q form of `φ̃`: Mellin part plus the stationary-phase part.
pub fn momentum_asymptote(profile: &SelfSimilarProfile, q: f64) -> Result<Complex64, ObservablesError> {
    Ok(large_q(profile, MELLIN_ORDERS)?.amplitude(q))
}

pub fn momentum_moments(
    profile: &SelfSimilarProfile,
    opts: &MomentumOptions,
) -> Result<MomentumMoments, ObservablesError> {
    opts.validate()?;
    let rule = xi_rule(profile, opts)?;
    let ell = profile.params().ell;
    let mut edges = vec![0.0];
    let mut q = 0.0;
    while q < opts.q_max {
        q = (q + 0.25f64.min(6.0 / q.max(1e-3))).min(opts.q_max);
        edges.push(q);
    }
    let nodes: Vec<_> = edges.windows(2).flat_map(|w| kronrod_nodes(w[0], w[1])).collect();
    let sums = nodes
        .par_iter()
        .map(|n| {
            let d = transform(&rule, ell, n.x).norm_sqr() * n.x * n.x;
            [n.wk * d, n.wk * d * n.x, n.wg * d * n.x]
        })
        .reduce(|| [0.0; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
    let model = large_q(profile, MELLIN_ORDERS)?;
    let (t2, _) = model.tail(opts.q_max, 2.0);
    let (t3, _) = model.tail(opts.q_max, 3.0);
    let (t3_low, _) = large_q(profile, MELLIN_ORDERS - 1)?.tail(opts.q_max, 3.0);
    let abs_moment = sums[1] + t3;
    Ok(MomentumMoments {
        norm: sums[0] + t2,
        abs_moment,
        abs_moment_error: (sums[1] - sums[2]).abs() + (t3 - t3_low).abs(),
        tail_fraction: t3 / abs_moment,
    })
}
