use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{quantity} = {value} is outside the valid domain ({expected})")]
    Domain {
        quantity: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{table} table, line {line}: {reason}")]
    Table {
        table: &'static str,
        line: usize,
        reason: String,
    },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{what} is degenerate: {reason}")]
    Degenerate {
        what: &'static str,
        reason: &'static str,
    },
    #[error("sweep row {index} (axis value {value}) failed: {error}")]
    SweepRow {
        index: usize,
        value: f64,
        error: Box<Error>,
    },
}

pub(crate) fn domain(quantity: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        quantity,
        value,
        expected,
    }
}

/// Checks `lo <= value <= hi`; NaN always fails.
pub(crate) fn ensure_within(
    quantity: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<f64> {
    if value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(domain(quantity, value, expected))
    }
}
