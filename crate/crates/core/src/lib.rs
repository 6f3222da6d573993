//! Exact self-similar collapse in the attractive inverse-square potential:
//! parameters, special functions, the closed-form profile, its moments and a
//! Crank–Nicolson check of the time evolution.

pub mod io;
pub mod observables;
pub mod params;
pub mod profile;
pub mod quad;
pub mod specfun;
pub mod tdse;

pub use num_complex::Complex64;
