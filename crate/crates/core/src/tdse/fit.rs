use super::TdseError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Least squares of `ln value = ln prefactor + exponent · ln|t|`.
pub fn fit_power_law(times: &[f64], values: &[f64]) -> Result<PowerLawFit, TdseError> {
    if times.len() != values.len() {
        return Err(TdseError::Fit(format!("{} times but {} values", times.len(), values.len())));
    }
    if times.len() < 8 {
        return Err(TdseError::Fit(format!("need at least 8 samples, got {}", times.len())));
    }
    if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(TdseError::Fit("values must be positive and finite".into()));
    }
    if times.iter().any(|t| !(t.abs() > 0.0) || !t.is_finite()) {
        return Err(TdseError::Fit("times must be non-zero and finite".into()));
    }
    let x: Vec<f64> = times.iter().map(|t| t.abs().ln()).collect();
    let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx <= 1e-300 * n {
        return Err(TdseError::Fit("all |t| coincide".into()));
    }
    if syy <= 1e-28 * n * (1.0 + my * my) {
        return Err(TdseError::Fit("constant series has no power law".into()));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let resid: f64 = x.iter().zip(&y).map(|(a, b)| (b - intercept - exponent * a).powi(2)).sum();
    Ok(PowerLawFit { exponent, prefactor: intercept.exp(), r_squared: 1.0 - resid / syy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_square_root_law() {
        let t: Vec<f64> = (1..=10).map(|k| -(k as f64) / 10.0).collect();
        let v: Vec<f64> = t.iter().map(|t| 2.0 * (-t).sqrt()).collect();
        let f = fit_power_law(&t, &v).unwrap();
        assert!((f.exponent - 0.5).abs() < 1e-12);
        assert!((f.prefactor - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        let t: Vec<f64> = (1..=10).map(|k| k as f64).collect();
        assert!(fit_power_law(&t[..7], &t[..7]).is_err());
        assert!(fit_power_law(&t, &[3.0; 10]).is_err());
        assert!(fit_power_law(&[2.0; 10], &t).is_err());
        let mut bad = t.clone();
        bad[3] = -1.0;
        assert!(fit_power_law(&t, &bad).is_err());
        let mut zero = t.clone();
        zero[0] = 0.0;
        assert!(fit_power_law(&zero, &t).is_err());
    }

    proptest! {
        #[test]
        fn recovers_any_power(nu in -2.0f64..2.0, a in 0.1f64..10.0) {
            prop_assume!(nu.abs() > 1e-3);
            let t: Vec<f64> = (1..=12).map(|k| 0.05 * k as f64).collect();
            let v: Vec<f64> = t.iter().map(|t| a * t.powf(nu)).collect();
            let f = fit_power_law(&t, &v).unwrap();
            prop_assert!((f.exponent - nu).abs() < 1e-10);
            prop_assert!((f.prefactor / a - 1.0).abs() < 1e-10);
        }
    }
}
