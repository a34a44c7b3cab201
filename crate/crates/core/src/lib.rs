//! Two-qubit X-state decoherence toolkit.
//!
//! Models real-valued X-shaped two-qubit density matrices, sends qubit B
//! through one of four single-qubit noise channels (amplitude damping, phase
//! damping, phase flip, bit flip), and evaluates three correlation measures
//! on the result:
//!
//! * concurrence `C` (entanglement, `C > 0`),
//! * the Bell-CHSH maximum `B` (nonlocality, `B > 2`),
//! * the entropic-uncertainty steering quantity `S` (steerability, `S > 2`).
//!
//! Every measure ships in two forms: a closed-form expression on the X-state
//! parameters (the production path) and an independent dense-matrix oracle
//! used to cross-validate it. The [`cli`] module drives parameter sweeps,
//! threshold bisection and figure-dataset emission for the `xsteer` binary.

pub mod channels;
pub mod cli;
pub mod closedforms;
mod jsonfmt;
pub mod measures;
pub mod qmath;
pub mod states;

pub use channels::{ChannelKind, NoisySetting};
pub use measures::{MeasureKind, MeasureReport};
pub use states::{BlochX, Family, XState};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Argument of an entropy term was negative beyond rounding tolerance.
    #[error("entropy argument {0} is negative beyond tolerance")]
    EntropyDomain(f64),

    /// A probability vector failed validation.
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    /// A scalar parameter fell outside its admissible interval.
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A candidate X-state violated trace, diagonal or block positivity.
    #[error("invalid X-state: {0}")]
    InvalidState(String),

    /// A spectral oracle produced an eigenvalue below -1e-10.
    #[error("negative eigenvalue {0} (input state is not positive)")]
    NegativeEigenvalue(f64),

    /// A measurement probability left [-1e-12, 1 + 1e-12].
    #[error("joint probability {0} outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange(f64),

    /// No analytic reference expression exists for this channel.
    #[error("no closed-form reference for channel '{0}'")]
    NoClosedForm(ChannelKind),

    /// Grid or scan specification rejected.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Output could not be written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON serialization failed.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
