/// Spherical Bessel function of the first kind `j_l(x)` for `x ≥ 0`.
///
/// Ascending series for `x < l + 1`, upward recurrence from `j_0`, `j_1`
/// otherwise (stable once `x` exceeds the order).
pub fn spherical_bessel_j(l: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < f64::from(l) + 1.0 {
        return ascending_series(l, x);
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for n in 1..l {
        let next = f64::from(2 * n + 1) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn ascending_series(l: u32, x: f64) -> f64 {
    // x^l / (2l+1)!! · Σ_k (-x²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))
    let mut lead = 1.0;
    for n in 1..=l {
        lead *= x / f64::from(2 * n + 1);
    }
    let h = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = f64::from(k);
        term *= h / (kf * (2.0 * f64::from(l) + 2.0 * kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}
