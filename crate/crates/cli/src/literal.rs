//! Complex literals of the form `a+bi`, `a-bi`, `bi`, `a`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A complex number read from or written as a literal string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLit(pub Complex64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseComplexError(String);

impl fmt::Display for ParseComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid complex literal {:?}", self.0)
    }
}

impl std::error::Error for ParseComplexError {}

fn parse_real(s: &str, whole: &str) -> Result<f64, ParseComplexError> {
    let v: f64 = s.parse().map_err(|_| ParseComplexError(whole.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseComplexError(whole.to_string()))
    }
}

fn parse_imag(s: &str, whole: &str) -> Result<f64, ParseComplexError> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

impl FromStr for ComplexLit {
    type Err = ParseComplexError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseComplexError(raw.to_string()));
        }
        let Some(body) = s.strip_suffix(['i', 'j']) else {
            return Ok(ComplexLit(Complex64::new(parse_real(&s, raw)?, 0.0)));
        };
        // split at the last sign that is not an exponent sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (parse_real(&body[..k], raw)?, parse_imag(&body[k..], raw)?),
            None => (0.0, parse_imag(body, raw)?),
        };
        Ok(ComplexLit(Complex64::new(re, im)))
    }
}

/// Shortest round-trip decimal for a finite float.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float")
    } else {
        x.to_string()
    }
}

/// `re+imi` with shortest round-trip components.
pub fn format_complex(c: Complex64) -> String {
    let im = format_real(c.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", format_real(c.re))
}

impl fmt::Display for ComplexLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.0))
    }
}

impl Serialize for ComplexLit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_complex(self.0))
    }
}

impl<'de> Deserialize<'de> for ComplexLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ComplexLit;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a complex literal such as \"1.5-0.5i\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ComplexLit, E> {
                Ok(ComplexLit(Complex64::new(v, 0.0)))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ComplexLit, E> {
                Ok(ComplexLit(Complex64::new(v as f64, 0.0)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ComplexLit, E> {
                Ok(ComplexLit(Complex64::new(v as f64, 0.0)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ComplexLit, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}
