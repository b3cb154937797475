use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error("{message}")]
    Hypotheses { message: String, report: Option<Value> },
    #[error("{0}")]
    IncompatibleLifts(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Inapplicable(_) => 4,
            CliError::Hypotheses { .. } => 5,
            CliError::IncompatibleLifts(_) => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Internal(_) => "internal",
            CliError::Inapplicable(_) => "inapplicable",
            CliError::Hypotheses { .. } => "hypotheses",
            CliError::IncompatibleLifts(_) => "incompatible_lifts",
        }
    }
}

impl From<spinc::Error> for CliError {
    fn from(e: spinc::Error) -> Self {
        use spinc::Error as E;
        let msg = e.to_string();
        match e {
            E::Parse { .. }
            | E::RepeatedVertex { .. }
            | E::DegreeOutOfRange { .. }
            | E::NotSubcomplex(_)
            | E::NotSimplicial(_)
            | E::Mismatch(_)
            | E::NotCocycle(_)
            | E::InvalidGroup(_)
            | E::InvalidTwist(_) => CliError::Input(msg),
            E::NotClosed(_) | E::NotOrientable | E::NotPure(_) | E::DegeneratePairing(_) | E::EmptyTorsor(_) => {
                CliError::Inapplicable(msg)
            }
            E::Hypotheses(_) | E::NotInImage(_) => CliError::Hypotheses { message: msg, report: None },
            E::IncompatibleLifts(_) | E::Consistency(_) => CliError::IncompatibleLifts(msg),
            E::InfiniteGroup | E::TwoTorsion(_) | E::NotDivisible(_) | E::Internal(_) => CliError::Internal(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
