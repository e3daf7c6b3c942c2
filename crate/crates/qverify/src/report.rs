//! Per-identity verification reports and their JSON shape.

use serde::Serialize;

/// Outcome of checking one identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Both sides agree on every coefficient below the order.
    Ok,
    /// Both sides evaluated, but some coefficient differs.
    Fail,
    /// One of the sides failed to evaluate (divergent sum, formal pole, ...).
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// The first differing coefficient of a failed identity.
///
/// The exponent is rendered as an integer or a reduced fraction (`"7"`,
/// `"15/2"`); the two coefficient values are exact rationals rendered the
/// same way the library prints them.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of verifying a single identity.
///
/// Serializes to exactly the five keys `identity`, `order`, `status`,
/// `first_mismatch`, `ms`; the human-readable `detail` line for errors is
/// deliberately kept out of the JSON so that reports stay machine-stable.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub identity: String,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub ms: u64,
    #[serde(skip)]
    pub detail: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let ok = Report {
            identity: "demo".into(),
            order: 50,
            status: Status::Ok,
            first_mismatch: None,
            ms: 12,
            detail: None,
        };
        let text = serde_json::to_string(&ok).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"demo","order":50,"status":"ok","first_mismatch":null,"ms":12}"#
        );

        let fail = Report {
            identity: "demo".into(),
            order: 50,
            status: Status::Fail,
            first_mismatch: Some(Mismatch {
                exponent: "7/2".into(),
                lhs: "1".into(),
                rhs: "-1".into(),
            }),
            ms: 3,
            detail: Some("not serialized".into()),
        };
        let text = serde_json::to_string(&fail).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"demo","order":50,"status":"fail","first_mismatch":{"exponent":"7/2","lhs":"1","rhs":"-1"},"ms":3}"#
        );
    }
}
