use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GiniError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed to converge on [{lo}, {hi}] within depth {max_depth}")]
    Quadrature { lo: f64, hi: f64, max_depth: u32 },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("invalid scan spec: {0}")]
    InvalidSpec(String),

    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, GiniError>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(GiniError::Domain(format!(
            "{name} must be finite, got {value}"
        )))
    }
}
