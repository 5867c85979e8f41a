//! JSON helpers. Every document goes through `serde_json::Value`, whose map
//! keeps keys sorted, so output is byte-stable.

use serde::Serialize;

pub fn to_sorted_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("document types serialize infallibly")
}

pub fn to_sorted_string<T: Serialize>(value: &T) -> String {
    to_sorted_value(value).to_string()
}

pub fn to_sorted_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(&to_sorted_value(value)).expect("value serializes")
}
