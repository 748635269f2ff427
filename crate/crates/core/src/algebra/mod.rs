//! Exact integer, polynomial and real-algebraic arithmetic.

pub mod factor;
pub mod field;
pub mod interval;
pub mod lll;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod roots;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

/// JSON rendering of a big integer: a number when it fits in `i64`, else a string.
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}
