//! Small formatting helpers shared by the CSV writers.

/// Shortest round-trip representation with at least 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}
