use qcollapse_core::observables::ObservablesError;
use qcollapse_core::params::ParamsError;
use qcollapse_core::profile::ProfileError;
use qcollapse_core::specfun::SpecFunError;
use qcollapse_core::tdse::TdseError;
use std::fmt;

/// Exit 1 for bad input, 2 when the numerics give up.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    /// Already printed to stderr; carries the exit code.
    Reported(i32),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Reported(code) => *code,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Reported(code) => write!(f, "failed with exit code {code}"),
        }
    }
}

impl From<ParamsError> for CliError {
    fn from(e: ParamsError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpecFunError> for CliError {
    fn from(e: SpecFunError) -> Self {
        match e {
            SpecFunError::Domain(_) | SpecFunError::Pole(_) => CliError::Validation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::Domain(m) | ProfileError::Io(m) => CliError::Validation(m),
            ProfileError::SpecFun(s) => s.into(),
            ProfileError::Fit { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ObservablesError> for CliError {
    fn from(e: ObservablesError) -> Self {
        match e {
            ObservablesError::Domain(m) => CliError::Validation(m),
            ObservablesError::Quadrature(m) => CliError::Numerical(format!("quadrature: {m}")),
            ObservablesError::Profile(p) => p.into(),
        }
    }
}

impl From<TdseError> for CliError {
    fn from(e: TdseError) -> Self {
        match e {
            TdseError::Domain(m) | TdseError::Io(m) => CliError::Validation(m),
            TdseError::Profile(p) => p.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
