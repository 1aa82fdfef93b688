//! Output formatting: fixed significant digits for table parity, full
//! precision behind a flag, and log10 objects for numbers outside the f64
//! range.

use serde_json::{json, Value};

pub const FULL_PRECISION_DIGITS: usize = 16;
const LN_10: f64 = std::f64::consts::LN_10;

/// Decimal text with the given number of significant digits. Plain notation
/// inside a sane magnitude window, scientific outside it.
pub fn fmt_sig(v: f64, sig: u32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..9).contains(&exp) {
        return format!("{:.*e}", sig as usize - 1, v);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, v)
}

/// Table cell formatter: 6 significant digits normally, 17 when full
/// precision is requested (17 digits always round-trip an f64).
pub fn fmt_value(v: f64, full_precision: bool) -> String {
    if full_precision {
        format!("{:.*e}", FULL_PRECISION_DIGITS, v)
    } else {
        fmt_sig(v, 6)
    }
}

/// JSON number from a natural logarithm: a plain number while the linear
/// value fits comfortably in f64, otherwise `{"log10": ...}`.
pub fn json_from_ln(ln_value: f64) -> Value {
    let log10 = ln_value / LN_10;
    if log10.abs() > 300.0 {
        json!({ "log10": log10 })
    } else {
        json!(ln_value.exp())
    }
}
