use thiserror::Error;

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Domain errors raised by the models when an input leaves its valid range.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{field} must be {expected}, got {value}")]
    OutOfRange {
        field: &'static str,
        expected: &'static str,
        value: f64,
    },
    #[error("fronthaul load {load} b/s exceeds link capacity {capacity} b/s")]
    FronthaulOverload { load: f64, capacity: f64 },
    #[error("year {year} precedes the trend anchor year {anchor}")]
    BeforeAnchor { year: i32, anchor: i32 },
    #[error("{0} must not be empty")]
    Empty(&'static str),
}

impl ModelError {
    pub(crate) fn range(field: &'static str, expected: &'static str, value: f64) -> Self {
        ModelError::OutOfRange {
            field,
            expected,
            value,
        }
    }
}

/// Rejects NaN, infinities and values `<= 0`.
pub(crate) fn positive(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::range(field, "finite and > 0", value))
    }
}

pub(crate) fn non_negative(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ModelError::range(field, "finite and >= 0", value))
    }
}

/// Accepts `[0, 1)`.
pub(crate) fn fraction_below_one(field: &'static str, value: f64) -> Result<f64> {
    if (0.0..1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ModelError::range(field, "in [0, 1)", value))
    }
}
