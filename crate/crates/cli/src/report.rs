use serde::Serialize;

use crate::table::Table;

/// A non-fatal finding, printed to stderr as one JSON object per line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Warning {
    pub level: &'static str,
    pub kind: &'static str,
    pub subject: String,
    pub message: String,
}

impl Warning {
    pub fn new(kind: &'static str, subject: &str, message: impl Into<String>) -> Self {
        Warning {
            level: "warning",
            kind,
            subject: subject.to_string(),
            message: message.into(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub warnings: Vec<Warning>,
}
