//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radius must be positive (got {0} nm)")]
    NonpositiveRadius(f64),

    #[error("speed must be a fraction of c in [0, 1) (got {0})")]
    InvalidSpeed(f64),

    #[error("charge number must be nonnegative (got {0})")]
    NegativeCharge(i64),

    #[error("charge number must be a positive integer (got {0})")]
    NonpositiveChargeNumber(i64),

    #[error("charge number out of supported range (got {0})")]
    ChargeOutOfRange(i64),

    #[error("radial quantum number must be nonnegative (got {0})")]
    NegativeRadialNumber(i64),

    #[error("twice_j must be a positive odd integer so that j is half-odd (got {0})")]
    InvalidTwiceJ(i64),

    #[error(
        "supercritical charge: alpha*Z = {alpha_z} >= 1 for Z = {z}; \
         the effective-mass correction has no weak-field expansion here"
    )]
    SupercriticalCharge { z: i64, alpha_z: f64 },

    #[error(
        "effective mass nonpositive at this radius: r = {r_nm} nm is inside \
         the critical radius {limit_nm} nm where 1 + e\u{3c6}/mc\u{b2} reaches zero"
    )]
    NonpositiveEffectiveMass { r_nm: f64, limit_nm: f64 },

    #[error("classically forbidden configuration: implied v\u{b2} at the second radius is {v2_squared}, below zero")]
    ClassicallyForbidden { v2_squared: f64 },

    #[error("did not converge: fixed-point iteration at k = {k} still moving after {iterations} iterations")]
    NonConvergence { k: f64, iterations: usize },

    #[error("transition endpoints must share one nucleus (upper Z = {upper_z}, lower Z = {lower_z})")]
    MismatchedCharge { upper_z: u32, lower_z: u32 },

    #[error("not a downward transition: upper n = {upper_n} must exceed lower n = {lower_n}")]
    NotATransition { lower_n: u32, upper_n: u32 },

    #[error("series bound too small: need n_max > lower n = {lower_n} (got {n_max})")]
    EmptySeries { lower_n: u32, n_max: i64 },

    #[error("invalid constants: {0}")]
    InvalidConstants(String),

    #[error("invalid sweep spec: {0}")]
    InvalidSweep(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("table parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to: 2 for a malformed sweep
    /// spec, 3 for I/O failures, 1 for everything else (domain violations).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSweep(_) => 2,
            Error::Io(_) => 3,
            _ => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(Error::InvalidSweep("x".into()).exit_code(), 2);
        let io = Error::from(std::io::Error::new(std::io::ErrorKind::NotFound, "gone"));
        assert_eq!(io.exit_code(), 3);
        assert_eq!(Error::NonpositiveRadius(-1.0).exit_code(), 1);
        assert_eq!(
            Error::SupercriticalCharge { z: 140, alpha_z: 1.02 }.exit_code(),
            1
        );
    }

    #[test]
    fn messages_name_the_violated_precondition() {
        assert!(Error::NonpositiveRadius(0.0).to_string().contains("radius must be positive"));
        assert!(Error::ClassicallyForbidden { v2_squared: -0.25 }
            .to_string()
            .contains("classically forbidden"));
        assert!(Error::NonpositiveEffectiveMass { r_nm: 1e-6, limit_nm: 2.8e-6 }
            .to_string()
            .contains("effective mass nonpositive"));
        assert!(Error::SupercriticalCharge { z: 138, alpha_z: 1.007 }
            .to_string()
            .contains("supercritical charge"));
    }
}
