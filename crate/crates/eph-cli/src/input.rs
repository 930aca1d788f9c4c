//! Parsing of numbers, points, cycles and matrices from text or JSON.

use eph::scalar::{format_rational, parse_scalar};
use eph::{Cycle, Rational, Scalar, SL2};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub type Parsed<T> = std::result::Result<T, InputError>;

fn err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// "3/4", "-2", "0.125" or "1e-3"; decimals are read exactly first.
pub fn number<T: Scalar>(text: &str) -> Parsed<T> {
    parse_scalar(text).ok_or_else(|| err(format!("not a number: {text:?}")))
}

/// Comma- or whitespace-separated list of exactly `len` numbers.
pub fn numbers<T: Scalar>(text: &str, len: usize) -> Parsed<Vec<T>> {
    let parts: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    if parts.len() != len {
        return Err(err(format!("expected {len} numbers, got {}: {text:?}", parts.len())));
    }
    parts.iter().map(|p| number(p)).collect()
}

pub fn point<T: Scalar>(text: &str) -> Parsed<(T, T)> {
    let v = numbers::<T>(text, 2)?;
    let [u, w]: [T; 2] = v.try_into().unwrap();
    Ok((u, w))
}

/// Cycle from "k,l,n,m".
pub fn cycle<T: Scalar>(text: &str) -> Parsed<Cycle<T>> {
    let v = numbers::<T>(text, 4)?;
    let [k, l, n, m]: [T; 4] = v.try_into().unwrap();
    Cycle::new(k, l, n, m).map_err(|e| err(e.to_string()))
}

/// SL(2,R) element from "a,b,c,d"; floats accept a determinant within 1e-9.
pub fn sl2<T: Scalar>(text: &str) -> Parsed<SL2<T>> {
    let v = numbers::<T>(text, 4)?;
    let [a, b, c, d]: [T; 4] = v.try_into().unwrap();
    SL2::new(a, b, c, d).map_err(|e| err(e.to_string()))
}

/// Text form of a JSON scalar or array, so JSON input reuses the text parsers.
pub fn json_text(v: &Value) -> Parsed<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => Ok(items.iter().map(json_text).collect::<Parsed<Vec<_>>>()?.join(",")),
        other => Err(err(format!("unsupported JSON value {other}"))),
    }
}

/// Display form of a scalar: "p/q" for rationals, shortest round-trip for floats.
pub trait Format {
    fn format(&self) -> String;
}

impl Format for Rational {
    fn format(&self) -> String {
        format_rational(self)
    }
}

impl Format for f64 {
    fn format(&self) -> String {
        format!("{self}")
    }
}

pub fn format_point<T: Format>(p: &(T, T)) -> Value {
    Value::from(vec![p.0.format(), p.1.format()])
}

pub fn format_cycle<T: Format>(c: &Cycle<T>) -> Value {
    Value::from(vec![c.k.format(), c.l.format(), c.n.format(), c.m.format()])
}
