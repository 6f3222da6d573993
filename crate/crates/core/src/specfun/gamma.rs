//! Complex Gamma and log-Gamma by the Lanczos approximation (g = 7, n = 9).

use super::SpecFunError;
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Γ(z)` for `Re z ≥ 0.5` straight from the Lanczos sum.
fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Γ(z) for complex `z`.
pub fn complex_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::Domain(format!("gamma of non-finite argument {z}")));
    }
    if is_pole(z) {
        return Err(SpecFunError::Pole(z.re));
    }
    let value = if z.re < 0.5 {
        let s = (PI * z).sin();
        let g = complex_gamma(1.0 - z)?;
        PI / (s * g)
    } else {
        lanczos_ln_gamma(z).exp()
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(SpecFunError::Overflow(format!("|Gamma({z})| exceeds f64 range")))
    }
}

/// `1/Γ(z)`, which is entire: zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if is_pole(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        let g = complex_gamma(1.0 - z)?;
        let v = (PI * z).sin() * g / PI;
        if v.re.is_finite() && v.im.is_finite() {
            return Ok(v);
        }
        return Err(SpecFunError::Overflow(format!("1/Gamma({z}) exceeds f64 range")));
    }
    Ok((-lanczos_ln_gamma(z)).exp())
}

/// Log-Gamma continuous in the right half plane, real on the positive axis.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(SpecFunError::Domain(format!("log-gamma needs Re z > 0, got {z}")));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    // ln Γ(z) = ln Γ(z+1) - ln z keeps the branch continuous for 0 < Re z < 1/2
    Ok(lanczos_ln_gamma(z + 1.0) - z.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_values() {
        assert!((complex_gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let half = complex_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14 && half.im.abs() < 1e-16);
        let g = complex_gamma(c(3.5, 0.0)).unwrap();
        assert!((g.re - 3.323_350_970_447_842_6).abs() < 1e-14);
    }

    #[test]
    fn poles_reported() {
        for n in 0..5 {
            assert_eq!(complex_gamma(c(-(n as f64), 0.0)), Err(SpecFunError::Pole(-(n as f64))));
            assert_eq!(recip_gamma(c(-(n as f64), 0.0)).unwrap(), c(0.0, 0.0));
        }
        // just off a pole is fine
        assert!(complex_gamma(c(-2.0, 1e-9)).is_ok());
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(complex_gamma(c(200.0, 0.0)), Err(SpecFunError::Overflow(_))));
        assert!(complex_log_gamma(c(200.0, 0.0)).unwrap().re > 700.0);
    }

    #[test]
    fn log_gamma_domain() {
        assert!(complex_log_gamma(c(0.0, 1.0)).is_err());
        assert!(complex_log_gamma(c(-1.5, 0.0)).is_err());
        assert!(complex_log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(complex_log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn recip_matches_gamma() {
        for z in [c(0.3, 2.0), c(-1.7, 0.4), c(4.2, -3.3)] {
            let p = complex_gamma(z).unwrap() * recip_gamma(z).unwrap();
            assert!((p - 1.0).norm() < 1e-13, "{z}: {p}");
        }
    }
}
