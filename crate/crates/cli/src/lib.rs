//! Library half of the `catbound` command-line tool: scenario loading,
//! command implementations and report rendering, kept separate from the
//! argument parser so integration tests can drive them directly.

pub mod commands;
pub mod report;
pub mod scenario;

use std::fs;
use std::path::Path;

use catbound::error::Error;
use serde::de::DeserializeOwned;

/// Exit-code contract: 0 ok, 1 validation failure, 2 contradiction,
/// 3 I/O or argument error.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::InvalidInput { .. } | Error::NotASubcomplex { .. } | Error::Replay(_) => 1,
        Error::Contradiction { .. } => 2,
        Error::Argument(_) | Error::DomainMismatch(_) | Error::Json(_) | Error::Io(_) => 3,
    }
}

/// Reads and parses a JSON file, tagging any failure with the path so the
/// user sees which file broke.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read `{}`: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Argument(format!("cannot parse `{}`: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use catbound::propagation::{BoundKind, Certificate, RuleId, Slot};

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(
            exit_code_for(&Error::InvalidInput { name: "x".into(), report: "r".into() }),
            1
        );
        assert_eq!(exit_code_for(&Error::Replay("bad".into())), 1);
        let cert = Certificate::leaf("X", Slot::Cat, BoundKind::AtLeast { value: 2 }, RuleId::UserFact);
        assert_eq!(
            exit_code_for(&Error::Contradiction {
                entity: "X".into(),
                slot: "cat".into(),
                lo: 2,
                hi: 1,
                lower_certificate: Box::new(cert.clone()),
                upper_certificate: Box::new(cert),
            }),
            2
        );
        assert_eq!(exit_code_for(&Error::Argument("bad".into())), 3);
    }

    #[test]
    fn read_json_reports_the_path() {
        let err = read_json::<serde_json::Value>(Path::new("/no/such/file.json")).unwrap_err();
        assert!(err.to_string().contains("/no/such/file.json"));
        assert_eq!(exit_code_for(&err), 3);
    }
}
