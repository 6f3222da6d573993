//! Gauss–Kronrod (7/15) panels and a globally adaptive bisection driver
//! for vector-valued integrands.

use rayon::prelude::*;
use thiserror::Error;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError<E> {
    #[error("quadrature did not reach tolerance: relative error estimate {estimate:.3e} with {panels} panels")]
    Tolerance { estimate: f64, panels: usize },
    #[error("integrand failed: {0}")]
    Integrand(E),
}

/// Node with its Kronrod and embedded Gauss weight (zero off the Gauss nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub wk: f64,
    pub wg: f64,
}

/// The 15 Kronrod nodes on `[a, b]`, already scaled by the half width.
pub fn kronrod_nodes(a: f64, b: f64) -> [Node; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [Node { x: c, wk: 0.0, wg: 0.0 }; 15];
    for j in 0..7 {
        let wg = if j % 2 == 1 { WG[j / 2] * h } else { 0.0 };
        out[2 * j] = Node { x: c - h * XGK[j], wk: WGK[j] * h, wg };
        out[2 * j + 1] = Node { x: c + h * XGK[j], wk: WGK[j] * h, wg };
    }
    out[14] = Node { x: c, wk: WGK[7] * h, wg: WG[3] * h };
    out
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
}

fn panel<const N: usize, E, F>(f: &F, a: f64, b: f64) -> Result<Panel<N>, E>
where
    F: Fn(f64) -> Result<[f64; N], E>,
{
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    for node in kronrod_nodes(a, b) {
        let y = f(node.x)?;
        for c in 0..N {
            k[c] += node.wk * y[c];
            g[c] += node.wg * y[c];
        }
    }
    let mut error = [0.0; N];
    for c in 0..N {
        error[c] = (k[c] - g[c]).abs();
    }
    Ok(Panel { a, b, value: k, error })
}

/// Integral and accumulated error estimate per component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub panels: usize,
}

/// Adaptive G7K15 over the union of `[breaks[i], breaks[i+1]]`.
///
/// Each component must satisfy `error ≤ rel_tol·|value| + abs_floor`.
/// Panels carrying the largest share of the normalized error are bisected
/// until that holds or `max_panels` is reached.
pub fn adaptive<const N: usize, E, F>(
    f: &F,
    breaks: &[f64],
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<QuadResult<N>, QuadError<E>>
where
    F: Fn(f64) -> Result<[f64; N], E> + Sync,
    E: Send,
{
    let mut panels: Vec<Panel<N>> =
        breaks.par_windows(2).map(|w| panel(f, w[0], w[1])).collect::<Result<_, _>>().map_err(QuadError::Integrand)?;
    loop {
        let mut value = [0.0; N];
        let mut error = [0.0; N];
        for p in &panels {
            for c in 0..N {
                value[c] += p.value[c];
                error[c] += p.error[c];
            }
        }
        let budget: Vec<f64> = (0..N).map(|c| rel_tol * value[c].abs() + abs_floor).collect();
        let share = |p: &Panel<N>| (0..N).map(|c| p.error[c] / budget[c]).fold(0.0, f64::max);
        let worst = (0..N).map(|c| error[c] / budget[c]).fold(0.0, f64::max);
        if worst <= 1.0 {
            return Ok(QuadResult { value, error, panels: panels.len() });
        }
        if panels.len() >= max_panels {
            let estimate = (0..N).map(|c| error[c] / value[c].abs().max(abs_floor)).fold(0.0, f64::max);
            return Err(QuadError::Tolerance { estimate, panels: panels.len() });
        }
        let mut order: Vec<usize> = (0..panels.len()).collect();
        order.sort_by(|&x, &y| share(&panels[y]).total_cmp(&share(&panels[x])));
        let nsplit = (panels.len() / 8).clamp(1, max_panels - panels.len());
        let mut split = vec![false; panels.len()];
        for &k in order.iter().take(nsplit) {
            split[k] = true;
        }
        let halves: Vec<(f64, f64)> = panels
            .iter()
            .zip(&split)
            .filter(|(_, &s)| s)
            .flat_map(|(p, _)| {
                let m = 0.5 * (p.a + p.b);
                [(p.a, m), (m, p.b)]
            })
            .collect();
        let fresh: Vec<Panel<N>> =
            halves.par_iter().map(|&(a, b)| panel(f, a, b)).collect::<Result<_, _>>().map_err(QuadError::Integrand)?;
        panels = panels.into_iter().zip(split).filter(|(_, s)| !s).map(|(p, _)| p).chain(fresh).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn weights_sum_to_length() {
        let nodes = kronrod_nodes(-1.0, 3.0);
        let k: f64 = nodes.iter().map(|n| n.wk).sum();
        let g: f64 = nodes.iter().map(|n| n.wg).sum();
        assert!((k - 4.0).abs() < 1e-14);
        assert!((g - 4.0).abs() < 1e-14);
        assert_eq!(nodes.iter().filter(|n| n.wg != 0.0).count(), 7);
    }

    #[test]
    fn polynomial_exactness() {
        let nodes = kronrod_nodes(0.0, 1.0);
        for deg in 0..=22 {
            let k: f64 = nodes.iter().map(|n| n.wk * n.x.powi(deg)).sum();
            assert!((k - 1.0 / f64::from(deg + 1)).abs() < 1e-14, "kronrod degree {deg}");
        }
        for deg in 0..=13 {
            let g: f64 = nodes.iter().map(|n| n.wg * n.x.powi(deg)).sum();
            assert!((g - 1.0 / f64::from(deg + 1)).abs() < 1e-14, "gauss degree {deg}");
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let f = |x: f64| -> Result<[f64; 2], Infallible> { Ok([x.sqrt(), 1.0 / x.sqrt()]) };
        let r = adaptive(&f, &[0.0, 1.0], 1e-10, 1e-300, 5000).unwrap();
        assert!((r.value[0] - 2.0 / 3.0).abs() < 1e-10);
        assert!((r.value[1] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn panel_cap_reported() {
        let f = |x: f64| -> Result<[f64; 1], Infallible> { Ok([(50.0 * x).sin() / x.sqrt()]) };
        assert!(matches!(adaptive(&f, &[0.0, 10.0], 1e-14, 1e-300, 4), Err(QuadError::Tolerance { .. })));
    }

    #[test]
    fn integrand_errors_propagate() {
        let f = |x: f64| -> Result<[f64; 1], &'static str> {
            if x > 0.5 {
                Err("boom")
            } else {
                Ok([x])
            }
        };
        assert_eq!(adaptive(&f, &[0.0, 1.0], 1e-8, 0.0, 10).unwrap_err(), QuadError::Integrand("boom"));
    }
}
