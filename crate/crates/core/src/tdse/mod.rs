//! Radial time-dependent Schrödinger solver for the reduced wave function
//! `u = r R_radial` at fixed ℓ.
//!
//! Two treatments of the singular core are available. [`InnerBoundary::Capped`]
//! is the usual regularization `V = const` for `r < r_core` and is what
//! generic packets use. The exact collapse state, however, leaks norm into
//! the origin as `(-t)^{3/2}` with a time-dependent mix of in- and outgoing
//! near-origin waves, which no fixed core can reproduce. Runs started from
//! the exact profile therefore default to [`InnerBoundary::SelfSimilar`]:
//! the domain starts at `r_core`, and the node just inside obeys a ghost
//! condition that is transparent for the inflowing wave
//! `r^{1/2 - iα/2}` and driven by the exact profile.

mod cn;
mod fit;

pub use cn::{step_crank_nicolson, thomas_solve};
pub use fit::{fit_power_law, PowerLawFit};

use crate::params::CollapseParams;
use crate::profile::{ProfileError, SelfSimilarProfile};
use crate::specfun::EvalAccuracy;
use num_complex::Complex64;
use rayon::prelude::*;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TdseError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tridiagonal system is numerically singular at row {row}")]
    Solver { row: usize },
    #[error("<r> = {r_mean:.4e} fell below 5 r_core at t = {t}; similarity regime ended")]
    HaltedAtCore { t: f64, r_mean: f64, record: Box<EvolutionRecord> },
    #[error("fit: {0}")]
    Fit(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("i/o: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n_points: usize,
    pub dr: f64,
    pub r_core: f64,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_points: usize, r_core: f64) -> Result<Self, TdseError> {
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(TdseError::Domain(format!("r_max must be positive, got {r_max}")));
        }
        if n_points < 256 {
            return Err(TdseError::Domain(format!("n_points must be >= 256, got {n_points}")));
        }
        if !(r_core > 0.0 && r_core < r_max / 100.0) {
            return Err(TdseError::Domain(format!("r_core must lie in (0, r_max/100), got {r_core}")));
        }
        Ok(RadialGrid { r_max, n_points, dr: r_max / n_points as f64, r_core })
    }

    /// `r_max = 40`, 8192 points, `r_core = r_max/2048`.
    pub fn standard() -> Self {
        RadialGrid::new(40.0, 8192, 40.0 / 2048.0).expect("standard grid is valid")
    }

    /// Radius of interior node `j` (`1 ≤ j < n_points`).
    pub fn r(&self, j: usize) -> f64 {
        j as f64 * self.dr
    }

    /// Interior radii; `u` is stored on these nodes only.
    pub fn radii(&self) -> Vec<f64> {
        (1..self.n_points).map(|j| self.r(j)).collect()
    }

    /// Node index closest to `r_core`, at least 2.
    pub fn core_node(&self) -> usize {
        ((self.r_core / self.dr).round() as usize).max(2)
    }
}

/// `V_j = -(ħ²/2m) β̃ / max(r_j, r_core)² + (ħ²/2m) ℓ(ℓ+1)/r_j²` on interior nodes.
pub fn effective_potential(grid: &RadialGrid, params: &CollapseParams) -> Vec<f64> {
    let k = params.kinetic_prefactor();
    grid.radii()
        .into_iter()
        .map(|r| -k * params.beta_tilde / r.max(grid.r_core).powi(2) + k * params.centrifugal() / (r * r))
        .collect()
}

/// Exact solution used for fidelities and for driving the self-similar core.
#[derive(Debug, Clone)]
pub struct ExactReference {
    pub profile: SelfSimilarProfile,
    /// Time-reversed, conjugated branch defined for `t > 0`.
    pub escape: bool,
}

impl ExactReference {
    /// `u(r, t) = r R(r/sqrt(χ|t|))`, conjugated on the escape branch.
    pub fn u(&self, r: f64, t: f64) -> Result<Complex64, ProfileError> {
        let v = r * self.profile.value(r / self.profile.params().length_scale(t))?;
        Ok(if self.escape { v.conj() } else { v })
    }

    fn check_time(&self, t: f64) -> Result<(), TdseError> {
        let ok = if self.escape { t > 0.0 } else { t < 0.0 };
        if ok {
            Ok(())
        } else {
            Err(TdseError::Domain(format!(
                "{} reference needs t {} 0, got {t}",
                if self.escape { "escape" } else { "collapse" },
                if self.escape { ">" } else { "<" }
            )))
        }
    }
}

#[derive(Debug, Clone)]
pub enum InnerBoundary {
    Capped,
    /// Domain `j ≥ node`; ghost `u_{node-1} = ρ u_node + a [u_ex(r_{node-1}) - ρ u_ex(r_node)]`.
    SelfSimilar {
        node: usize,
        rho: Complex64,
        amplitude: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryChoice {
    Capped,
    SelfSimilar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    SelfSimilar { t0: f64 },
    Gaussian { r0: f64, width: f64 },
    ConjugatedSelfSimilar { t0: f64 },
}

#[derive(Debug, Clone)]
pub struct WavePacketState {
    pub grid: RadialGrid,
    pub params: CollapseParams,
    /// Values on interior nodes `j = 1..n_points-1`.
    pub u: Vec<Complex64>,
    pub t: f64,
    pub potential: Vec<f64>,
    pub boundary: InnerBoundary,
    pub reference: Option<ExactReference>,
}

pub fn init_state(
    grid: &RadialGrid,
    params: &CollapseParams,
    kind: InitialState,
) -> Result<WavePacketState, TdseError> {
    let choice = match kind {
        InitialState::Gaussian { .. } => BoundaryChoice::Capped,
        _ => BoundaryChoice::SelfSimilar,
    };
    init_state_with_boundary(grid, params, kind, choice)
}

pub fn init_state_with_boundary(
    grid: &RadialGrid,
    params: &CollapseParams,
    kind: InitialState,
    choice: BoundaryChoice,
) -> Result<WavePacketState, TdseError> {
    let radii = grid.radii();
    let (mut u, t, reference) = match kind {
        InitialState::Gaussian { r0, width } => {
            if !(width > 0.0) || !(r0 >= 0.0) || r0 + 4.0 * width > grid.r_max {
                return Err(TdseError::Domain(format!(
                    "gaussian (r0 = {r0}, width = {width}) must be positive and fit the box"
                )));
            }
            let u = radii
                .iter()
                .map(|&r| Complex64::new(r * (-(r - r0).powi(2) / (2.0 * width * width)).exp(), 0.0))
                .collect();
            (u, 0.0, None)
        }
        InitialState::SelfSimilar { t0 } | InitialState::ConjugatedSelfSimilar { t0 } => {
            let escape = matches!(kind, InitialState::ConjugatedSelfSimilar { .. });
            let reference =
                ExactReference { profile: SelfSimilarProfile::new(*params, EvalAccuracy::default())?, escape };
            reference.check_time(t0)?;
            if params.length_scale(t0) > grid.r_max / 8.0 {
                return Err(TdseError::Domain(format!(
                    "packet scale sqrt(chi |t0|) = {} exceeds r_max/8",
                    params.length_scale(t0)
                )));
            }
            let u = radii.par_iter().map(|&r| reference.u(r, t0)).collect::<Result<Vec<_>, _>>()?;
            (u, t0, Some(reference))
        }
    };
    let boundary = match choice {
        BoundaryChoice::Capped => InnerBoundary::Capped,
        BoundaryChoice::SelfSimilar => {
            if reference.is_none() {
                return Err(TdseError::Domain("self-similar core needs an exact reference state".into()));
            }
            let node = grid.core_node();
            for v in u.iter_mut().take(node - 1) {
                *v = Complex64::new(0.0, 0.0);
            }
            let ratio = (node - 1) as f64 / node as f64;
            let rho = (Complex64::new(0.5, -0.5 * params.alpha) * ratio.ln()).exp();
            InnerBoundary::SelfSimilar { node, rho, amplitude: 1.0 }
        }
    };
    let norm = discrete_norm(grid, &u);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(TdseError::Domain("initial state has zero or non-finite norm".into()));
    }
    let scale = 1.0 / norm.sqrt();
    for v in &mut u {
        *v *= scale;
    }
    let boundary = match boundary {
        InnerBoundary::SelfSimilar { node, rho, .. } => InnerBoundary::SelfSimilar { node, rho, amplitude: scale },
        b => b,
    };
    Ok(WavePacketState {
        grid: *grid,
        params: *params,
        u,
        t,
        potential: effective_potential(grid, params),
        boundary,
        reference,
    })
}

pub fn discrete_norm(grid: &RadialGrid, u: &[Complex64]) -> f64 {
    u.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid.dr
}

impl WavePacketState {
    /// Index into `u` of the first evolved node.
    pub fn first_active(&self) -> usize {
        match self.boundary {
            InnerBoundary::Capped => 0,
            InnerBoundary::SelfSimilar { node, .. } => node - 1,
        }
    }

    pub fn norm(&self) -> f64 {
        discrete_norm(&self.grid, &self.u)
    }

    pub fn r_mean(&self) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for (k, v) in self.u.iter().enumerate() {
            let w = v.norm_sqr();
            num += self.grid.r(k + 1) * w;
            den += w;
        }
        num / den
    }

    /// `|⟨u_ex|u⟩|² / (⟨u_ex|u_ex⟩⟨u|u⟩)` over the evolved nodes.
    pub fn fidelity(&self) -> Result<Option<f64>, TdseError> {
        let Some(reference) = &self.reference else { return Ok(None) };
        let k0 = self.first_active();
        let exact = (k0..self.u.len())
            .into_par_iter()
            .map(|k| reference.u(self.grid.r(k + 1), self.t))
            .collect::<Result<Vec<_>, _>>()?;
        let mut overlap = Complex64::new(0.0, 0.0);
        let (mut na, mut nu) = (0.0, 0.0);
        for (e, v) in exact.iter().zip(&self.u[k0..]) {
            overlap += e.conj() * v;
            na += e.norm_sqr();
            nu += v.norm_sqr();
        }
        Ok(Some(overlap.norm_sqr() / (na * nu)))
    }

    pub fn write_snapshot_csv<W: Write>(&self, out: W) -> Result<(), TdseError> {
        use crate::io::fmt17;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| TdseError::Io(e.to_string());
        w.write_record(["t", "r", "re_u", "im_u", "abs2_u"]).map_err(io)?;
        for (k, v) in self.u.iter().enumerate() {
            w.write_record([fmt17(self.t), fmt17(self.grid.r(k + 1)), fmt17(v.re), fmt17(v.im), fmt17(v.norm_sqr())])
                .map_err(io)?;
        }
        w.flush().map_err(|e| TdseError::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvolutionRecord {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub r_means: Vec<f64>,
    pub overlaps: Vec<Option<f64>>,
}

impl EvolutionRecord {
    fn push(&mut self, state: &WavePacketState) -> Result<(), TdseError> {
        self.times.push(state.t);
        self.norms.push(state.norm());
        self.r_means.push(state.r_mean());
        self.overlaps.push(state.fidelity()?);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn min_fidelity(&self) -> Option<f64> {
        self.overlaps.iter().flatten().cloned().reduce(f64::min)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), TdseError> {
        use crate::io::fmt17;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| TdseError::Io(e.to_string());
        w.write_record(["t", "norm", "r_mean", "fidelity"]).map_err(io)?;
        for k in 0..self.len() {
            let f = self.overlaps[k].map(fmt17).unwrap_or_default();
            w.write_record([fmt17(self.times[k]), fmt17(self.norms[k]), fmt17(self.r_means[k]), f]).map_err(io)?;
        }
        w.flush().map_err(|e| TdseError::Io(e.to_string()))
    }
}

/// Step from `state.t` to `t_end`, measuring every `record_every` steps and
/// at the end.
pub fn evolve_and_record(
    state: &mut WavePacketState,
    t_end: f64,
    dt: f64,
    record_every: usize,
) -> Result<EvolutionRecord, TdseError> {
    if !(dt != 0.0) || !dt.is_finite() || !((t_end - state.t) / dt > 0.0) {
        return Err(TdseError::Domain(format!(
            "need (t_end - t)/dt > 0, got t = {}, t_end = {t_end}, dt = {dt}",
            state.t
        )));
    }
    if record_every < 1 {
        return Err(TdseError::Domain("record_every must be >= 1".into()));
    }
    let steps = ((t_end - state.t) / dt).round() as usize;
    let t0 = state.t;
    let mut record = EvolutionRecord::default();
    for k in 0..=steps {
        if k % record_every == 0 || k == steps {
            record.push(state)?;
            let r_mean = *record.r_means.last().unwrap();
            if r_mean < 5.0 * state.grid.r_core {
                return Err(TdseError::HaltedAtCore { t: state.t, r_mean, record: Box::new(record) });
            }
        }
        if k == steps {
            break;
        }
        step_crank_nicolson(state, dt)?;
        // avoid drift from accumulating dt
        state.t = t0 + (k + 1) as f64 * dt;
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> CollapseParams {
        CollapseParams::from_gamma(1.0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::new(40.0, 100, 0.01).is_err());
        assert!(RadialGrid::new(40.0, 1024, 0.5).is_err());
        assert!(RadialGrid::new(40.0, 1024, 0.0).is_err());
        let g = RadialGrid::standard();
        assert_eq!(g.dr, 40.0 / 8192.0);
        assert_eq!(g.core_node(), 4);
        assert_eq!(g.radii().len(), 8191);
    }

    #[test]
    fn potential_shape() {
        let g = RadialGrid::new(40.0, 4096, 0.2).unwrap();
        let v = effective_potential(&g, &params());
        let j = 2000;
        assert!((v[j - 1] + 0.5 / g.r(j).powi(2)).abs() < 1e-15);
        assert_eq!(v[0], v[10]);
        let p1 = CollapseParams::new(2.5, 1, 1.0, 1.0).unwrap();
        let w = effective_potential(&g, &p1);
        // centrifugal part is not capped
        assert!(w[0] > w[10]);
    }

    #[test]
    fn init_checks() {
        let g = RadialGrid::standard();
        let p = params();
        assert!(init_state(&g, &p, InitialState::SelfSimilar { t0: 1.0 }).is_err());
        assert!(init_state(&g, &p, InitialState::ConjugatedSelfSimilar { t0: -1.0 }).is_err());
        assert!(init_state(&g, &p, InitialState::SelfSimilar { t0: -30.0 }).is_err());
        assert!(init_state(&g, &p, InitialState::Gaussian { r0: 5.0, width: 0.0 }).is_err());
        assert!(init_state_with_boundary(
            &g,
            &p,
            InitialState::Gaussian { r0: 5.0, width: 1.0 },
            BoundaryChoice::SelfSimilar
        )
        .is_err());
        let s = init_state(&g, &p, InitialState::Gaussian { r0: 5.0, width: 1.0 }).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-14);
        assert_eq!(s.fidelity().unwrap(), None);
    }

    #[test]
    fn conjugated_state_is_conjugate() {
        let g = RadialGrid::new(20.0, 1024, 0.1).unwrap();
        let p = params();
        let a = init_state(&g, &p, InitialState::SelfSimilar { t0: -0.5 }).unwrap();
        let b = init_state(&g, &p, InitialState::ConjugatedSelfSimilar { t0: 0.5 }).unwrap();
        for (x, y) in a.u.iter().zip(&b.u) {
            assert_eq!(*x, y.conj());
        }
        assert!((a.fidelity().unwrap().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn evolve_argument_checks() {
        let g = RadialGrid::new(20.0, 512, 0.1).unwrap();
        let mut s = init_state(&g, &params(), InitialState::Gaussian { r0: 5.0, width: 1.0 }).unwrap();
        assert!(evolve_and_record(&mut s, 1.0, -0.01, 1).is_err());
        assert!(evolve_and_record(&mut s, 1.0, 0.0, 1).is_err());
        assert!(evolve_and_record(&mut s, 1.0, 0.01, 0).is_err());
        let rec = evolve_and_record(&mut s, 0.1, 0.01, 3).unwrap();
        assert_eq!(rec.times.len(), 5);
        assert!((s.t - 0.1).abs() < 1e-15);
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,norm,r_mean,fidelity\n"));
        assert!(text.lines().nth(1).unwrap().ends_with(','));
    }

    #[test]
    fn snapshot_layout() {
        let g = RadialGrid::new(20.0, 512, 0.1).unwrap();
        let s = init_state(&g, &params(), InitialState::Gaussian { r0: 5.0, width: 1.0 }).unwrap();
        let mut buf = Vec::new();
        s.write_snapshot_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,r,re_u,im_u,abs2_u\n"));
        assert_eq!(text.lines().count(), 512);
    }
}
