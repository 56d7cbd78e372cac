//! Deterministic text forms shared by the JSON and CSV serializers: floats
//! always print with 17 significant digits (enough to round-trip f64), and
//! strings are escaped per the JSON grammar.

/// Scientific form with 17 significant digits, e.g. `5.0000000000000000e-1`.
/// Non-finite values print as `inf`, `-inf` or `NaN` (suitable for CSV; use
/// [`json_float`] inside JSON documents).
pub fn float_repr(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON value for a float: [`float_repr`] when finite, `null` otherwise
/// (JSON has no representation for infinities or NaN).
pub fn json_float(x: f64) -> String {
    if x.is_finite() {
        float_repr(x)
    } else {
        "null".to_string()
    }
}

/// JSON string literal for `s`, including the surrounding quotes.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
