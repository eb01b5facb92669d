//! Deterministic output formatting: C-style %.12g floats and CSV rows.

/// Formats a float like C's `%.12g`: 12 significant digits, fixed or
/// scientific notation depending on the decimal exponent, trailing zeros
/// trimmed, two-digit exponent.
pub fn g12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    const P: i32 = 12;
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (_, exp) = sci.split_once('e').expect("e-format always has an exponent");
    let x: i32 = exp.parse().expect("exponent is an integer");
    if (-4..P).contains(&x) {
        let decimals = (P - 1 - x) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        let (mant, _) = sci.split_once('e').unwrap();
        let mant = trim_zeros(mant.to_string());
        let sign = if x < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", x.abs())
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Builds a CSV document from a header and rows of preformatted cells.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
