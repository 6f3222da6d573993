use crate::args::{Boundary, EvolveArgs, FitArgs, Initial, ObservablesArgs, ParamsArgs, ProfileArgs};
use crate::config::{instances, tagged_path, Config, Instance};
use crate::error::CliError;
use qcollapse_core::observables::{observable_report, MomentumOptions, ObservableOptions, ObservableReport};
use qcollapse_core::profile::{log_grid, ProfileTable, SelfSimilarProfile};
use qcollapse_core::specfun::EvalAccuracy;
use qcollapse_core::tdse::{
    evolve_and_record, fit_power_law, init_state_with_boundary, BoundaryChoice, InitialState, PowerLawFit, RadialGrid,
    TdseError,
};
use rayon::prelude::*;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

pub const THREADS_ENV: &str = "QCOLLAPSE_THREADS";

/// Run every instance, concurrently when there is more than one, and return
/// the results in input order.
pub fn run_all<T, F>(list: &[Instance], f: F) -> Result<Vec<Result<T, CliError>>, CliError>
where
    T: Send,
    F: Fn(&Instance) -> Result<T, CliError> + Sync,
{
    if list.len() == 1 {
        return Ok(vec![f(&list[0])]);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::validation(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;
    Ok(pool.install(|| list.par_iter().map(&f).collect()))
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
}

fn profile_of(inst: &Instance) -> Result<SelfSimilarProfile, CliError> {
    Ok(SelfSimilarProfile::new(inst.params, EvalAccuracy::default())?)
}

fn heading(inst: &Instance) -> String {
    match &inst.tag {
        Some(t) => format!("[{t}]\n"),
        None => String::new(),
    }
}

pub fn params(a: &ParamsArgs) -> Result<Vec<Result<String, CliError>>, CliError> {
    let cfg = Config::load(a.problem.config.as_deref())?;
    let list = instances(&a.problem, &cfg)?;
    run_all(&list, |inst| {
        let p = &inst.params;
        let prof = profile_of(inst)?;
        let (ca, cb) = prof.near_origin_amplitudes();
        let (ma, mb) = prof.near_origin_exponents();
        let c_inf = prof.c_infinity();
        Ok(format!(
            "{}beta_tilde  {}\nell         {}\nhbar        {}\nmass        {}\nchi         {}\ngamma       {}\nalpha       {}\nnu          {}\n\
             C_inf       {:.15e} {:+.15e}i  (|C_inf| = {:.15e})\n\
             A           {:.15e} {:+.15e}i  (exponent {} {:+}i)\n\
             B           {:.15e} {:+.15e}i  (exponent {} {:+}i)\n\
             C0          {:.15e}\n|R|^2 monotone near origin: {}\n",
            heading(inst),
            p.beta_tilde,
            p.ell,
            p.hbar,
            p.mass,
            p.chi,
            p.gamma,
            p.alpha,
            p.nu,
            c_inf.re,
            c_inf.im,
            c_inf.norm(),
            ca.re,
            ca.im,
            ma.re,
            ma.im,
            cb.re,
            cb.im,
            mb.re,
            mb.im,
            prof.c_zero(),
            if prof.near_origin_monotone() { "yes" } else { "no" },
        ))
    })
}

pub fn profile(a: &ProfileArgs) -> Result<Vec<Result<String, CliError>>, CliError> {
    let cfg = Config::load(a.problem.config.as_deref())?;
    let list = instances(&a.problem, &cfg)?;
    let xi_min = cfg.get("xi_min", a.xi_min, 0.05)?;
    let xi_max = cfg.get("xi_max", a.xi_max, 30.0)?;
    let points = cfg.get("points", a.points, 400)?;
    let out: Option<PathBuf> = cfg.get_opt("out", a.out.clone())?;
    if !(xi_min > 0.0 && xi_max > xi_min && xi_max.is_finite()) {
        return Err(CliError::validation(format!("need 0 < xi_min < xi_max, got [{xi_min}, {xi_max}]")));
    }
    if points < 2 {
        return Err(CliError::validation("points must be at least 2"));
    }
    if list.len() > 1 && out.is_none() {
        return Err(CliError::validation("a sweep needs --out to name its files"));
    }
    run_all(&list, |inst| {
        let table = ProfileTable::build(&profile_of(inst)?, log_grid(xi_min, xi_max, points))?;
        match &out {
            None => {
                let mut buf = Vec::new();
                table.write_csv(&mut buf)?;
                Ok(String::from_utf8(buf).expect("csv is utf-8"))
            }
            Some(p) => {
                let path = tagged_path(p, inst.tag.as_deref());
                table.write_csv(create(&path)?)?;
                Ok(format!("wrote {} ({} rows)\n", path.display(), points))
            }
        }
    })
}

pub fn observables(a: &ObservablesArgs) -> Result<Vec<Result<String, CliError>>, CliError> {
    let cfg = Config::load(a.problem.config.as_deref())?;
    let list = instances(&a.problem, &cfg)?;
    let opts = ObservableOptions {
        xi_max: cfg.get("xi_max", a.xi_max, 40.0)?,
        tol: cfg.get("tol", a.tol, 1e-11)?,
        momentum: MomentumOptions {
            q_max: cfg.get("q_max", a.q_max, 40.0)?,
            xi_cut: cfg.get("xi_cut", a.xi_cut, 60.0)?,
        },
    };
    let out: Option<PathBuf> = cfg.get_opt("out", a.out.clone())?;
    let reports = run_all(&list, |inst| Ok(observable_report(&profile_of(inst)?, &opts)?))?;
    let mut texts = Vec::new();
    let mut good = Vec::new();
    for (inst, r) in list.iter().zip(reports) {
        match r {
            Ok(rep) => {
                texts.push(Ok(format!("{}{rep}\n", heading(inst))));
                good.push(rep);
            }
            Err(e) => texts.push(Err(e)),
        }
    }
    if let Some(p) = out {
        ObservableReport::write_csv(&good, create(&p)?)?;
        texts.push(Ok(format!("wrote {} ({} rows)\n", p.display(), good.len())));
    }
    Ok(texts)
}

struct EvolveSetup {
    grid: RadialGrid,
    kind: InitialState,
    boundary: BoundaryChoice,
    t_end: f64,
    dt: f64,
    record_every: usize,
    out: PathBuf,
    snapshot: Option<PathBuf>,
}

fn evolve_setup(a: &EvolveArgs, cfg: &Config) -> Result<EvolveSetup, CliError> {
    let initial = match a.initial {
        Some(i) => i,
        None => cfg.enum_value("initial")?.unwrap_or(Initial::SelfSimilar),
    };
    let boundary = match a.boundary {
        Some(b) => Some(b),
        None => cfg.enum_value::<Boundary>("boundary")?,
    };
    let (t0_default, t_end_default) = match initial {
        Initial::SelfSimilar => (-1.0, -0.1),
        Initial::Escape => (0.1, 1.0),
        Initial::Gaussian => (0.0, 1.0),
    };
    let t0 = cfg.get("t0", a.t0, t0_default)?;
    let t_end = cfg.get("t_end", a.t_end, t_end_default)?;
    let r_max = cfg.get("r_max", a.r_max, 40.0)?;
    let points = cfg.get("points", a.points, 8192)?;
    let r_core = cfg.get("r_core", a.r_core, r_max / 2048.0)?;
    let grid = RadialGrid::new(r_max, points, r_core)?;
    let kind = match initial {
        Initial::SelfSimilar => InitialState::SelfSimilar { t0 },
        Initial::Escape => InitialState::ConjugatedSelfSimilar { t0 },
        Initial::Gaussian => {
            if t0 != 0.0 {
                return Err(CliError::validation("a gaussian packet starts at t0 = 0"));
            }
            InitialState::Gaussian { r0: cfg.get("r0", a.r0, 5.0)?, width: cfg.get("width", a.width, 1.0)? }
        }
    };
    let boundary = match (boundary, initial) {
        (Some(Boundary::Capped), _) | (None, Initial::Gaussian) => BoundaryChoice::Capped,
        _ => BoundaryChoice::SelfSimilar,
    };
    Ok(EvolveSetup {
        grid,
        kind,
        boundary,
        t_end,
        dt: cfg.get("dt", a.dt, 2.5e-4)?,
        record_every: cfg.get("record_every", a.record_every, 200)?,
        out: cfg.get("out", a.out.clone(), PathBuf::from("record.csv"))?,
        snapshot: cfg.get_opt("snapshot", a.snapshot.clone())?,
    })
}

fn describe_fit(f: &PowerLawFit) -> String {
    format!("nu = {:.6}  prefactor = {:.6}  r^2 = {:.8}\n", f.exponent, f.prefactor, f.r_squared)
}

pub fn evolve(a: &EvolveArgs) -> Result<Vec<Result<String, CliError>>, CliError> {
    let cfg = Config::load(a.problem.config.as_deref())?;
    let list = instances(&a.problem, &cfg)?;
    let s = evolve_setup(a, &cfg)?;
    run_all(&list, |inst| {
        let mut state = init_state_with_boundary(&s.grid, &inst.params, s.kind, s.boundary)?;
        let out = tagged_path(&s.out, inst.tag.as_deref());
        let record = match evolve_and_record(&mut state, s.t_end, s.dt, s.record_every) {
            Ok(r) => r,
            Err(TdseError::HaltedAtCore { t, r_mean, record }) => {
                record.write_csv(create(&out)?)?;
                return Err(CliError::Numerical(format!(
                    "<r> = {r_mean:.4e} reached 5 r_core at t = {t}; partial record in {}",
                    out.display()
                )));
            }
            Err(e) => return Err(e.into()),
        };
        record.write_csv(create(&out)?)?;
        let mut text = format!(
            "{}wrote {} ({} records, final norm {:.10}, final <r> {:.10})\n",
            heading(inst),
            out.display(),
            record.len(),
            record.norms.last().unwrap(),
            record.r_means.last().unwrap()
        );
        if let Some(f) = record.min_fidelity() {
            text += &format!("min fidelity {f:.6}\n");
        }
        if let Some(p) = &s.snapshot {
            let path = tagged_path(p, inst.tag.as_deref());
            state.write_snapshot_csv(create(&path)?)?;
            text += &format!("wrote {}\n", path.display());
        }
        if a.fit {
            text += &describe_fit(&fit_power_law(&record.times, &record.r_means)?);
        }
        Ok(text)
    })
}

/// `(t, r_mean)` columns of a record CSV.
pub fn read_record(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let bad = |m: String| CliError::validation(format!("{}: {m}", path.display()));
    let mut rd = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header = rd.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != ["t", "norm", "r_mean", "fidelity"] {
        return Err(bad("not a record CSV (t,norm,r_mean,fidelity)".into()));
    }
    let (mut t, mut r) = (Vec::new(), Vec::new());
    for row in rd.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let num = |k: usize| row[k].parse::<f64>().map_err(|_| bad(format!("bad number `{}`", &row[k])));
        t.push(num(0)?);
        r.push(num(2)?);
    }
    Ok((t, r))
}

pub fn fit(a: &FitArgs) -> Result<String, CliError> {
    let (t, r) = read_record(&a.input)?;
    let lo = a.t_min.unwrap_or(0.0);
    let hi = a.t_max.unwrap_or(f64::INFINITY);
    let (t, r): (Vec<f64>, Vec<f64>) = t.into_iter().zip(r).filter(|(t, _)| t.abs() >= lo && t.abs() <= hi).unzip();
    Ok(format!("{} samples\n{}", t.len(), describe_fit(&fit_power_law(&t, &r)?)))
}
