use shortsums::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input; exit status 2.
    #[error("{0}")]
    Validation(String),
    /// An internal check failed; exit status 1.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 2,
            Self::Check(_) => 1,
        }
    }

    pub fn flag(flag: &str, reason: impl std::fmt::Display) -> Self {
        Self::Validation(format!("--{flag}: {reason}"))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInterval(_)
            | Error::InvalidParameter { .. }
            | Error::UncoveredPrime { .. }
            | Error::UncoveredPrimePower { .. }
            | Error::OutOfValidity { .. }
            | Error::CostGuard(_)
            | Error::EmptyPolynomial
            | Error::PrimeCache(_)
            | Error::Io(_) => Self::Validation(e.to_string()),
            _ => Self::Check(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Check(format!("serialization failed: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::Consistency("defect".into())).exit_code(), 1);
        assert_eq!(CliError::from(Error::NonAgreement { direct: 1.0, accelerated: 2.0 }).exit_code(), 1);
        assert_eq!(CliError::from(Error::InvalidInterval("x".into())).exit_code(), 2);
        assert_eq!(CliError::flag("x", "missing").exit_code(), 2);
        assert!(CliError::flag("x", "missing").to_string().starts_with("--x"));
    }
}
