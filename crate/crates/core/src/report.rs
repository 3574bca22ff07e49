//! Report serialization helpers: CSV with 17 significant digits and
//! gnuplot-ready two-column curves.

use std::fmt::Write as _;

/// Format a float with 17 significant digits, `.`-decimal.
pub fn g17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Render a CSV document: header row, then rows of 17-significant-digit
/// fields. RFC-4180 line endings are left as plain `\n` since no field ever
/// needs quoting.
pub fn csv_document(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|&v| g17(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Two-column whitespace-separated plot data with `#` header comments.
pub fn curve_document(comments: &[String], pairs: &[(f64, f64)]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for &(x, y) in pairs {
        let _ = writeln!(out, "{} {}", g17(x), g17(y));
    }
    out
}
