use crate::config::{ConfigError, Issue};
use crate::format::fmt_g;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("computation failed at {variable} = {}: {source}", fmt_g(*.value))]
    Compute {
        variable: &'static str,
        value: f64,
        source: cvnet_core::Error,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config(ConfigError {
            issues: vec![Issue {
                path: path.into(),
                message: message.into(),
            }],
        })
    }

    /// 2 for configuration errors, 3 for everything raised while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute { .. } | CliError::Io(_) => 3,
        }
    }
}
