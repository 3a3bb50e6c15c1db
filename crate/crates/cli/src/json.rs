//! Stable JSON: keys sorted (serde_json's default map is a `BTreeMap`),
//! floats written with 17 significant digits.

use serde_json::{Map, Number, Value};

/// A float with 17 significant digits, or `null` when not finite.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(float_text(x).parse::<Number>().expect("valid number literal"))
}

/// `d.ddddddddddddddddde±x`, the same text in JSON and CSV.
pub fn float_text(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let text = format!("{x:.16e}");
    let (mantissa, exp) = text.split_once('e').expect("exponent present");
    if exp.starts_with('-') {
        text
    } else {
        format!("{mantissa}e+{exp}")
    }
}

pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Writes a line to stdout; a closed pipe is not an error worth a panic.
pub fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
