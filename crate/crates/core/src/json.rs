//! Exact numbers in JSON: big integers are written as JSON numbers with all
//! their digits, rationals as `[numerator, denominator]`.

use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

pub fn value_int(v: &Value, field: &str) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Schema(format!("{field}: expected an integer, found {v}"))),
    };
    BigInt::from_str(&text)
        .map_err(|_| Error::Schema(format!("{field}: expected an integer, found {text}")))
}

pub fn rational_pair(r: &BigRational) -> [Value; 2] {
    [int_value(r.numer()), int_value(r.denom())]
}

pub fn pair_rational(pair: &[Value], field: &str) -> Result<BigRational> {
    if pair.len() != 2 {
        return Err(Error::Schema(format!("{field}: expected [numerator, denominator]")));
    }
    let n = value_int(&pair[0], field)?;
    let d = value_int(&pair[1], field)?;
    if d.is_zero() {
        return Err(Error::Schema(format!("{field}: zero denominator")));
    }
    Ok(BigRational::new(n, d))
}
