use crate::args::CheckArgs;
use crate::config::{explicit_instances, Config};
use crate::error::CliError;
use qcollapse_core::params::CollapseParams;
use qcollapse_core::profile::{large_xi_tail_fit, log_grid, SelfSimilarProfile};
use qcollapse_core::specfun::{complex_gamma, kummer_1f1, kummer_1f1_derivative, EvalAccuracy};
use qcollapse_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const DEFAULT_GAMMAS: [f64; 6] = [0.3, 0.5, 1.0, 2.0, 5.0, 10.0];

pub struct Row {
    pub suite: String,
    pub measured: f64,
    pub tolerance: f64,
    pub note: String,
}

impl Row {
    pub fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn profile_rows(params: CollapseParams, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let p = SelfSimilarProfile::new(params, EvalAccuracy::default())?;
    let g = params.gamma;
    let mut residual: f64 = 0.0;
    for xi in log_grid(0.05, 20.0, 200) {
        residual = residual.max(p.ode_residual(xi)?);
    }
    rows.push(Row {
        suite: format!("ode residual, gamma {g}"),
        measured: residual,
        tolerance: 1e-9,
        note: "200 xi in [0.05, 20]".into(),
    });

    match large_xi_tail_fit(&p, 20.0, 30.0) {
        Ok(fit) => {
            rows.push(Row {
                suite: format!("tail modulus spread, gamma {g}"),
                measured: fit.modulus_spread,
                tolerance: 1e-2,
                note: "|R| xi^3 on [20, 30]".into(),
            });
            let c = p.c_infinity();
            rows.push(Row {
                suite: format!("fitted C_inf, gamma {g}"),
                measured: (fit.c_infinity - c).norm() / c.norm(),
                tolerance: 1e-6,
                note: "relative to the Gamma-function value".into(),
            });
        }
        Err(e) => rows.push(Row {
            suite: format!("tail fit, gamma {g}"),
            measured: f64::INFINITY,
            tolerance: 1e-2,
            note: e.to_string(),
        }),
    }

    let r = p.value(0.01)?;
    rows.push(Row {
        suite: format!("small-xi form, gamma {g}"),
        measured: (r - p.small_xi(0.01)?).norm() / r.norm(),
        tolerance: 1e-3,
        note: "relative, xi = 0.01".into(),
    });
    Ok(())
}

fn near_pole(z: Complex64) -> bool {
    z.re <= 0.5 && z.im.abs() < 0.05 && (z.re - z.re.round()).abs() < 0.05
}

fn cplx(rng: &mut ChaCha8Rng, re: (f64, f64), im: f64) -> Complex64 {
    Complex64::new(rng.gen_range(re.0..re.1), rng.gen_range(-im..im))
}

fn identity_rows(draws: usize, seed: u64, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let acc = EvalAccuracy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut kummer, mut recurrence, mut reflection, mut derivative) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..draws {
        let a = cplx(&mut rng, (-3.0, 3.0), 3.0);
        let mut b = cplx(&mut rng, (-3.0, 3.0), 3.0);
        if near_pole(b) {
            b += 0.5;
        }
        let z = Complex64::from_polar(rng.gen_range(0.0..20.0), rng.gen_range(-PI..PI));
        let lhs = kummer_1f1(a, b, z, &acc)?;
        let rhs = z.exp() * kummer_1f1(b - a, b, -z, &acc)?;
        kummer = kummer.max((lhs - rhs).norm() / lhs.norm().max(rhs.norm()));

        let mut w = cplx(&mut rng, (-8.0, 8.0), 8.0);
        if near_pole(w) || near_pole(w + 1.0) {
            w += Complex64::new(0.0, 0.2);
        }
        let g1 = complex_gamma(w + 1.0)?;
        recurrence = recurrence.max((g1 - w * complex_gamma(w)?).norm() / g1.norm());
        let s = cplx(&mut rng, (-4.0, 1.0), 6.0);
        if !near_pole(s) && !near_pole(1.0 - s) {
            let want = PI / (PI * s).sin();
            reflection = reflection.max((complex_gamma(s)? * complex_gamma(1.0 - s)? - want).norm() / want.norm());
        }

        let a = cplx(&mut rng, (-2.0, 2.0), 2.0);
        let b = cplx(&mut rng, (0.2, 3.0), 2.0);
        let z = Complex64::from_polar(rng.gen_range(0.1..4.0), rng.gen_range(-PI..PI));
        let h = 1e-5;
        let fd = (kummer_1f1(a, b, z + h, &acc)? - kummer_1f1(a, b, z - h, &acc)?) / (2.0 * h);
        let f = kummer_1f1(a, b, z, &acc)?;
        derivative = derivative.max((fd - kummer_1f1_derivative(a, b, z, &acc)?).norm() / f.norm().max(1.0));
    }
    let note = format!("{draws} draws, seed {seed}");
    rows.push(Row { suite: "Kummer transformation".into(), measured: kummer, tolerance: 1e-10, note: note.clone() });
    rows.push(Row { suite: "Gamma recurrence".into(), measured: recurrence, tolerance: 1e-12, note: note.clone() });
    rows.push(Row { suite: "Gamma reflection".into(), measured: reflection, tolerance: 1e-12, note: note.clone() });
    rows.push(Row { suite: "1F1 derivative vs difference".into(), measured: derivative, tolerance: 1e-8, note });
    Ok(())
}

pub fn rows(a: &CheckArgs) -> Result<Vec<Row>, CliError> {
    let cfg = Config::load(a.problem.config.as_deref())?;
    let draws = cfg.get("draws", a.draws, 1000)?;
    let seed = cfg.get("seed", a.seed, 1)?;
    let params: Vec<CollapseParams> = match explicit_instances(&a.problem, &cfg)? {
        Some(list) => list.into_iter().map(|i| i.params).collect(),
        None => DEFAULT_GAMMAS.iter().map(|&g| CollapseParams::from_gamma(g)).collect::<Result<_, _>>()?,
    };
    let mut out = Vec::new();
    for p in params {
        profile_rows(p, &mut out)?;
    }
    identity_rows(draws, seed, &mut out)?;
    Ok(out)
}

pub fn table(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.suite.len()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<width$}  {:>10}  {:>9}  result  note\n", "suite", "measured", "tolerance");
    for r in rows {
        s += &format!(
            "{:<width$}  {:>10.3e}  {:>9.0e}  {:<6}  {}\n",
            r.suite,
            r.measured,
            r.tolerance,
            if r.pass() { "PASS" } else { "FAIL" },
            r.note
        );
    }
    let failed = rows.iter().filter(|r| !r.pass()).count();
    s += &format!("{} checks, {failed} failed\n", rows.len());
    s
}
