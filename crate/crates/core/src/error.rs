use thiserror::Error;

/// Errors raised when a trust or evidence operation receives input outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrustError {
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfUnitRange { name: &'static str, value: f64 },

    #[error("mass components ({trusted}, {risky}, {uncertain}) do not sum to 1")]
    NotNormalized {
        trusted: f64,
        risky: f64,
        uncertain: f64,
    },

    #[error("cannot fuse an empty report list")]
    EmptyReports,

    #[error("severity class {0} is not one of 1, 2, 3, 4")]
    InvalidSeverityClass(u8),

    #[error("local trust {lt_old} exceeds the maximum trust {t_max}")]
    AboveMaximum { lt_old: f64, t_max: f64 },

    #[error("invalid trust parameters: {0}")]
    InvalidParams(String),
}

/// Errors produced while loading or validating scenario and sweep files.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A parse failure. `field` is the dotted path to the offending value.
    #[error("field `{field}`: {message} (line {line}, column {column})")]
    Parse {
        field: String,
        message: String,
        line: usize,
        column: usize,
    },

    #[error("field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64, TrustError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(TrustError::OutOfUnitRange { name, value })
    }
}
