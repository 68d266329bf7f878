//! Crate-wide error type.
//!
//! Validation problems in user data are *not* errors — they are returned as
//! [`crate::simplicial::ValidationReport`] values so callers can list every
//! violation at once.  `Error` covers precondition breaches (mismatched
//! fields, a subcomplex that is not contained in its complex, malformed
//! arguments) and propagation contradictions.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is malformed (bad field name, grade out of
    /// range, non-homogeneous generator, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Two objects that must live over the same complex/pair/field do not.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// A named subcomplex contains a simplex that its complex does not.
    #[error("`{subcomplex}` is not a subcomplex of `{complex}`: {detail}")]
    NotASubcomplex {
        complex: String,
        subcomplex: String,
        detail: String,
    },

    /// Simplicial input failed validation; the report lists the violations.
    #[error("validation failed for `{name}`:\n{report}")]
    InvalidInput { name: String, report: String },

    /// Interval propagation derived an empty interval.  The two certificate
    /// summaries identify the conflicting derivations.
    #[error("contradiction on {entity}.{slot}: lower bound {lo} exceeds upper bound {hi}")]
    Contradiction {
        entity: String,
        slot: String,
        lo: u64,
        hi: u64,
        lower_certificate: Box<crate::propagation::Certificate>,
        upper_certificate: Box<crate::propagation::Certificate>,
    },

    /// A certificate failed to replay (internal soundness check).
    #[error("certificate replay failed: {0}")]
    Replay(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
