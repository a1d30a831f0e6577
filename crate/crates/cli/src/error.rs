use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("unknown or spectrum-less scheme: {0}")]
    UnknownScheme(String),
    #[error("{path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] actionvar_core::Error),
}

impl CliError {
    /// 1 for usage and configuration problems, 2 when an oracle fails to
    /// converge, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        use actionvar_core::Error as E;
        match self {
            CliError::ConfigInvalid(_) | CliError::UnknownScheme(_) => 1,
            CliError::IoFailure { .. } => 3,
            CliError::Core(
                E::QuadratureNotConverged { .. }
                | E::EnergyDriftExceeded { .. }
                | E::NoPeriodFound(_)
                | E::BasisNotConverged(_)
                | E::EigensolverStalled(_),
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
