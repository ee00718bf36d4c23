use smashprod_core::cayley::CayleyError;
use smashprod_core::hopf::HopfError;
use smashprod_core::lie::LieError;
use smashprod_core::weights::{ParseWeightError, WeightError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::NotAnIdeal { .. } | LieError::NotNilpotent | LieError::NotSolvable | LieError::Containment(_) => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        match e {
            HopfError::Unsupported(_) | HopfError::DegreeMismatch(..) => CliError::Input(e.to_string()),
            HopfError::Commutator(_) => CliError::Verification(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseWeightError> for CliError {
    fn from(e: ParseWeightError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::NotAutomorphism(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
