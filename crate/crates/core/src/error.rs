//! Error types shared across the crate.

use thiserror::Error;

use crate::regions::Region;

/// A single way in which a candidate density matrix fails validation.
///
/// Validation reports every violated property, not just the first, so a
/// matrix that is both traceless and indefinite names both problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateViolation {
    /// Maximum of `|m[i][j] - conj(m[j][i])|` exceeded the tolerance.
    NotHermitian { deviation: f64 },
    /// `|tr(m) - 1|` exceeded the tolerance.
    TraceNotOne { deviation: f64 },
    /// Smallest eigenvalue (of the Hermitian part) was below the PSD floor.
    NotPsd { min_eigenvalue: f64 },
}

impl std::fmt::Display for StateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotHermitian { deviation } => {
                write!(f, "not Hermitian (max deviation {deviation:.3e})")
            }
            Self::TraceNotOne { deviation } => {
                write!(f, "trace is not 1 (deviation {deviation:.3e})")
            }
            Self::NotPsd { min_eigenvalue } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operation requiring a Hermitian matrix received one that is not.
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// The Jacobi iteration failed to reach its off-diagonal threshold.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// A matrix that must be positive semidefinite has an eigenvalue below
    /// the clamp window.
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    /// A candidate density matrix failed validation; every violated
    /// property is listed.
    #[error("invalid density matrix: {}", format_violations(.0))]
    InvalidState(Vec<StateViolation>),

    /// E0 parameters describe an indefinite matrix: `ab >= c^2/4` or
    /// `a + b <= 1` failed beyond tolerance.
    #[error(
        "E0 parameters violate positivity: ab = {ab:.6e} vs c^2/4 = {c_sq_over_4:.6e}, a + b = {a_plus_b:.6e}"
    )]
    PositivityViolation { ab: f64, c_sq_over_4: f64, a_plus_b: f64 },

    /// A numeric argument is outside its documented domain.
    #[error("{name} = {value} is outside {domain}")]
    OutOfRange { name: &'static str, value: f64, domain: &'static str },

    /// A Bell-operator direction is too far from unit length to normalize.
    #[error("measurement direction is not a unit vector (norm {norm:.6e})")]
    NotUnit { norm: f64 },

    /// The entropy ellipse has negative squared axes: the requested entropy
    /// exceeds what the state class supports at this concurrence.
    #[error("degenerate entropy ellipse (D = {d:.6e} < 0): s exceeds s_max(c)")]
    DegenerateEllipse { d: f64 },

    /// A family angle lies outside the admissible set for the point.
    #[error("phi = {phi} is outside the admissible angle set")]
    PhiOutsideAdmissible { phi: f64 },

    /// A witness pair was requested at a point that is not in Lambda2.
    #[error("witness pairs exist only in Lambda2; point classifies as {actual}")]
    NotLambda2 { actual: Region },
}

fn format_violations(violations: &[StateViolation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
