//! Exact JSON encoding of big integers.

use num_bigint::BigInt;
use serde_json::{Number, Value};

/// An integer as a JSON number with all digits preserved.
pub fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

/// Serde adapter for `BigInt` fields.
pub mod bigint {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::big(x).serialize(s)
    }
}

/// Serde adapter for `Option<BigInt>` fields.
pub mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(super::big).serialize(s)
    }
}

/// Serde adapter for `Vec<BigInt>` fields.
pub mod vec_bigint {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        super::bigs(x).serialize(s)
    }
}
