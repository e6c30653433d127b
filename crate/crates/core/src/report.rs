//! Check records and deterministic numeric formatting for reports.

use serde::Serialize;
use serde_json::Value;

/// Significant digits kept in report numbers.
pub const REPORT_DIGITS: usize = 12;

/// One verification outcome.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub observed: Value,
    pub bound: Value,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        params: Value,
        observed: impl Serialize,
        bound: impl Serialize,
        tolerance: f64,
        pass: bool,
    ) -> Self {
        Self {
            check: check.into(),
            params,
            observed: serde_json::to_value(observed).unwrap_or(Value::Null),
            bound: serde_json::to_value(bound).unwrap_or(Value::Null),
            tolerance,
            pass,
        }
    }
}

/// Rounds to [`REPORT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every floating-point number in a JSON value.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(num) if num.is_f64() => num
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded numbers.
pub fn to_report_json(value: &impl Serialize) -> serde_json::Result<String> {
    let v = round_json(serde_json::to_value(value)?);
    serde_json::to_string_pretty(&v)
}
