use alloc::string::String;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested point is a pole of the function being evaluated.
    ///
    /// `residue` is filled in whenever it is known in closed form.
    #[error("pole of order {order} at s = {at}")]
    Pole {
        at: Complex64,
        order: u32,
        residue: Option<Complex64>,
    },

    /// The arguments fall outside the window where the declared precision holds.
    #[error("{what}: outside the supported precision window ({detail})")]
    OutOfWindow { what: &'static str, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} did not converge (error estimate {estimate:e})")]
    NoConvergence { what: &'static str, estimate: f64 },
}

impl Error {
    pub(crate) fn pole(at: Complex64, residue: Option<Complex64>) -> Self {
        Error::Pole { at, order: 1, residue }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn window(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfWindow {
            what,
            detail: detail.into(),
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. })
    }
}
