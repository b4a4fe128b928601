use thiserror::Error;

/// A verification run found an inequality that does not hold within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub check: &'static str,
    pub detail: String,
    /// Right-hand side of the inequality (the bound).
    pub bound: f64,
    /// Left-hand side (the quantity that should stay below the bound).
    pub value: f64,
    pub margin: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} violated ({}): value {:.15e} exceeds bound {:.15e} by {:.3e} (tolerance {:.3e})",
            self.check, self.detail, self.value, self.bound, -self.margin, self.tolerance
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{op} requires a series with zero constant term, got {value}")]
    NonZeroConstant { op: &'static str, value: f64 },

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("no sign change on [{lo}, {hi}]: G(lo) = {g_lo:e}, G(hi) = {g_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0}")]
    Counterexample(Box<Counterexample>),
}

pub type Result<T> = std::result::Result<T, Error>;
