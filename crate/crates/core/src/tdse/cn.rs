use super::{InnerBoundary, TdseError, WavePacketState};
use num_complex::Complex64;

/// Solve a tridiagonal system with constant off-diagonals `lower`, `upper`.
/// `rhs` is overwritten with the solution.
pub fn thomas_solve(
    lower: Complex64,
    diag: &[Complex64],
    upper: Complex64,
    rhs: &mut [Complex64],
) -> Result<(), TdseError> {
    let n = diag.len();
    assert_eq!(rhs.len(), n);
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut beta = diag[0];
    if beta.norm() < 1e-300 {
        return Err(TdseError::Solver { row: 0 });
    }
    rhs[0] /= beta;
    for k in 1..n {
        c[k - 1] = upper / beta;
        beta = diag[k] - lower * c[k - 1];
        if beta.norm() < 1e-300 || !beta.re.is_finite() {
            return Err(TdseError::Solver { row: k });
        }
        rhs[k] = (rhs[k] - lower * rhs[k - 1]) / beta;
    }
    for k in (0..n - 1).rev() {
        let next = rhs[k + 1];
        rhs[k] -= c[k] * next;
    }
    Ok(())
}

/// One Crank–Nicolson step `(1 + i dt H/2ħ) u' = (1 - i dt H/2ħ) u`.
pub fn step_crank_nicolson(state: &mut WavePacketState, dt: f64) -> Result<(), TdseError> {
    if !(dt != 0.0) || !dt.is_finite() {
        return Err(TdseError::Domain(format!("dt must be finite and non-zero, got {dt}")));
    }
    let p = &state.params;
    let kappa = p.kinetic_prefactor() / (state.grid.dr * state.grid.dr);
    let c = Complex64::new(0.0, dt / (2.0 * p.hbar));
    let off = c * -kappa;
    let k0 = state.first_active();
    let u = &state.u[k0..];
    let v = &state.potential[k0..];
    let n = u.len();

    let mut diag: Vec<Complex64> = v.iter().map(|&vj| 1.0 + c * (2.0 * kappa + vj)).collect();
    let mut rhs: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut r = (2.0 - diag[k]) * u[k];
            if k > 0 {
                r -= off * u[k - 1];
            }
            if k + 1 < n {
                r -= off * u[k + 1];
            }
            r
        })
        .collect();

    let mut ghost = None;
    if let InnerBoundary::SelfSimilar { node, rho, amplitude } = state.boundary {
        let reference =
            state.reference.as_ref().ok_or_else(|| TdseError::Domain("self-similar core without reference".into()))?;
        let (r_in, r_b) = (state.grid.r(node - 1), state.grid.r(node));
        let source = |t: f64| -> Result<Complex64, TdseError> {
            Ok(amplitude * (reference.u(r_in, t)? - rho * reference.u(r_b, t)?))
        };
        let (s_old, s_new) = (source(state.t)?, source(state.t + dt)?);
        diag[0] += off * rho;
        rhs[0] -= off * (rho * u[0] + s_old) + off * s_new;
        ghost = Some((rho, s_new));
    }

    thomas_solve(off, &diag, off, &mut rhs)?;
    state.u[k0..].copy_from_slice(&rhs);
    if let Some((rho, s_new)) = ghost {
        // keep the ghost node consistent for snapshots
        state.u[k0 - 1] = rho * state.u[k0] + s_new;
    }
    state.t += dt;
    Ok(())
}
