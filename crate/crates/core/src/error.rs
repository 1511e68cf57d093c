use thiserror::Error;

/// Which factor of a gamma expression hit a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleSite {
    Gamma,
    Numerator,
    Denominator,
    Cosecant,
}

impl std::fmt::Display for PoleSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PoleSite::Gamma => "gamma argument",
            PoleSite::Numerator => "numerator gamma",
            PoleSite::Denominator => "denominator gamma",
            PoleSite::Cosecant => "cosecant factor",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole in {site} at {re}{im:+}i")]
    Pole { site: PoleSite, re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight {weight} does not have the parity of epsilon = {epsilon}")]
    Parity { weight: i64, epsilon: u8 },

    #[error("quadrature did not converge after {doublings} doublings (last change {last_change:e})")]
    NoConvergence { doublings: u32, last_change: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
