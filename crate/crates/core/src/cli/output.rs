use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::interval::fmt_endpoint;

/// Fixed six-decimal rendering shared by JSON and CSV.
pub fn fixed(v: f64) -> String {
    if v.is_finite() {
        let s = format!("{v:.6}");
        // Avoid "-0.000000".
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    } else {
        fmt_endpoint(v)
    }
}

/// A JSON number with six decimals; non-finite values become strings.
pub fn num(v: f64) -> Value {
    let text = fixed(v);
    match Number::from_str(&text) {
        Ok(n) if v.is_finite() => Value::Number(n),
        _ => Value::String(text),
    }
}

pub fn object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// One JSON object per invocation, newline-terminated.
pub fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

/// Quotes a CSV field when it contains a delimiter or a quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_decimals() {
        assert_eq!(fixed(0.046479047), "0.046479");
        assert_eq!(fixed(-1e-9), "0.000000");
        assert_eq!(fixed(f64::INFINITY), "inf");
        assert_eq!(num(0.5).to_string(), "0.500000");
        assert_eq!(num(f64::NEG_INFINITY), Value::String("-inf".into()));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(
            csv_row(&["a".into(), "b,c".into(), "d\"e".into()]),
            "a,\"b,c\",\"d\"\"e\"\n"
        );
    }
}
