use crate::args::Problem;
use crate::error::CliError;
use clap::ValueEnum;
use qcollapse_core::params::CollapseParams;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

const KNOWN_KEYS: &[&str] = &[
    "gamma",
    "beta_tilde",
    "ell",
    "hbar",
    "mass",
    "sweep",
    "xi_min",
    "xi_max",
    "points",
    "out",
    "draws",
    "seed",
    "tol",
    "q_max",
    "xi_cut",
    "initial",
    "boundary",
    "t0",
    "t_end",
    "dt",
    "r_max",
    "r_core",
    "record_every",
    "r0",
    "width",
    "snapshot",
];

/// `key = value` pairs from a config file; `#` starts a comment.
#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::validation(format!("config {}: {e}", p.display())))?;
                Self::parse(&text).map_err(|e| CliError::validation(format!("config {}: {e}", p.display())))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let key = k.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{}`", n + 1, k.trim()));
            }
            if values.insert(key, v.trim().to_string()).is_some() {
                return Err(format!("line {}: duplicate key `{}`", n + 1, k.trim()));
            }
        }
        Ok(Config { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::validation(format!("config value `{v}` for {key} does not parse"))),
        }
    }

    /// Flag, then config file, then default.
    pub fn get<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.parsed(key)?.unwrap_or(default)),
        }
    }

    pub fn enum_value<T: ValueEnum>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => T::from_str(v, true)
                .map(Some)
                .map_err(|_| CliError::validation(format!("config value `{v}` for {key} is not recognised"))),
        }
    }

    pub fn get_opt<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.parsed(key),
        }
    }
}

/// How the coupling was specified.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Coupling {
    Gamma(f64),
    BetaEll(f64, u32),
}

fn coupling_from(
    gamma: Option<f64>,
    beta: Option<f64>,
    ell: Option<u32>,
    source: &str,
) -> Result<Option<Coupling>, CliError> {
    match (gamma, beta, ell) {
        (None, None, None) => Ok(None),
        (Some(g), None, None) => Ok(Some(Coupling::Gamma(g))),
        (None, Some(b), l) => Ok(Some(Coupling::BetaEll(b, l.unwrap_or(0)))),
        (None, None, Some(_)) => Err(CliError::validation(format!("{source}: ell needs beta_tilde"))),
        _ => Err(CliError::validation(format!("{source}: give either gamma or (beta_tilde, ell), not both"))),
    }
}

/// One problem instance of a (possibly swept) run.
#[derive(Debug, Clone)]
pub struct Instance {
    pub params: CollapseParams,
    /// File-name tag such as `gamma0.5`; `None` outside sweeps.
    pub tag: Option<String>,
}

/// Resolve the physical parameters, or `None` when nothing selects a coupling.
pub fn explicit_instances(problem: &Problem, cfg: &Config) -> Result<Option<Vec<Instance>>, CliError> {
    let flags = coupling_from(problem.gamma, problem.beta_tilde, problem.ell, "flags")?;
    let from_cfg = coupling_from(cfg.parsed("gamma")?, cfg.parsed("beta_tilde")?, cfg.parsed("ell")?, "config")?;
    let hbar = cfg.get("hbar", problem.hbar, 1.0)?;
    let mass = cfg.get("mass", problem.mass, 1.0)?;
    let sweep = cfg.get_opt::<String>("sweep", problem.sweep.clone())?;
    let build = |c: Coupling| -> Result<CollapseParams, CliError> {
        Ok(match c {
            Coupling::Gamma(g) => CollapseParams::new(g, 0, hbar, mass)?,
            Coupling::BetaEll(b, l) => CollapseParams::new(b, l, hbar, mass)?,
        })
    };
    let base = flags.or(from_cfg);
    let Some(spec) = sweep else {
        return Ok(match base {
            None => None,
            Some(c) => Some(vec![Instance { params: build(c)?, tag: None }]),
        });
    };
    let (key, list) = spec
        .split_once('=')
        .ok_or_else(|| CliError::validation(format!("sweep `{spec}` must look like gamma=0.5,1,2")))?;
    let key = key.trim().replace('-', "_");
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim) {
        let bad = || CliError::validation(format!("sweep value `{item}` for {key} does not parse"));
        let c = match key.as_str() {
            "gamma" => Coupling::Gamma(item.parse().map_err(|_| bad())?),
            "beta_tilde" => {
                let ell = match base {
                    Some(Coupling::BetaEll(_, l)) => l,
                    _ => 0,
                };
                Coupling::BetaEll(item.parse().map_err(|_| bad())?, ell)
            }
            "ell" => match base {
                Some(Coupling::BetaEll(b, _)) => Coupling::BetaEll(b, item.parse().map_err(|_| bad())?),
                _ => return Err(CliError::validation("an ell sweep needs --beta-tilde")),
            },
            other => return Err(CliError::validation(format!("cannot sweep `{other}`; use gamma, beta_tilde or ell"))),
        };
        out.push(Instance { params: build(c)?, tag: Some(format!("{key}{item}")) });
    }
    if out.is_empty() {
        return Err(CliError::validation("empty sweep"));
    }
    Ok(Some(out))
}

/// As [`explicit_instances`] with `gamma = 1` when nothing is given.
pub fn instances(problem: &Problem, cfg: &Config) -> Result<Vec<Instance>, CliError> {
    match explicit_instances(problem, cfg)? {
        Some(v) => Ok(v),
        None => Ok(vec![Instance {
            params: CollapseParams::new(
                1.0,
                0,
                cfg.get("hbar", problem.hbar, 1.0)?,
                cfg.get("mass", problem.mass, 1.0)?,
            )?,
            tag: None,
        }]),
    }
}

/// `dir/name.csv` with tag `gamma0.5` becomes `dir/name_gamma0.5.csv`.
pub fn tagged_path(path: &Path, tag: Option<&str>) -> std::path::PathBuf {
    let Some(tag) = tag else {
        return path.to_path_buf();
    };
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{tag}"),
    };
    path.with_file_name(name)
}
