use std::fs;
use std::io::{self, Write};
use std::path::Path;

use jrsp_core::Complex64;

/// Significant digits used for every emitted number.
pub const SIG_DIGITS: usize = 12;

/// `SIG_DIGITS` significant digits, trailing zeros trimmed. Magnitudes below
/// `1e-5` switch to exponent form.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round through scientific notation so the digit count is exact.
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let rounded: f64 = sci.parse().expect("valid float");
    let exp = rounded.abs().log10().floor() as i32;
    if exp < -5 {
        let (mantissa, e) = sci.split_once('e').expect("exponent");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{e}");
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Value after a round trip through [`fmt_num`], for JSON output.
pub fn round_sig(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

pub fn fmt_complex(z: Complex64) -> String {
    let im = fmt_num(z.im.abs());
    let sign = if z.im < 0.0 && im != "0" { '-' } else { '+' };
    format!("{}{}{}i", fmt_num(z.re), sign, im)
}

/// Writes to `path` or stdout.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
