//! JSON with keys in sorted order.

use serde::Serialize;

/// Serializes through `serde_json::Value`, whose object map keeps keys sorted.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("value serializes");
    serde_json::to_string(&v).expect("value serializes")
}
