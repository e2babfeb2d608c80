//! Working-precision plumbing: binary/decimal digit mapping, shared
//! constants, and deterministic parse/format helpers for MPFR floats.

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::{Float, Integer};

/// Default working precision in binary digits; carries 58 decimal digits,
/// comfortably beyond the 50-digit reference coefficients plus headroom.
pub const DEFAULT_PREC: u32 = 192;

/// Decimal digits faithfully representable at `prec` binary digits.
pub fn decimal_digits(prec: u32) -> u32 {
    (f64::from(prec) * std::f64::consts::LOG10_2).ceil() as u32
}

/// Binary precision needed to carry `digits` decimal digits.
pub fn prec_for_digits(digits: u32) -> u32 {
    (f64::from(digits) / std::f64::consts::LOG10_2).ceil() as u32 + 4
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

pub fn two_pi(prec: u32) -> Float {
    pi(prec) * 2u32
}

pub fn ln_two_pi(prec: u32) -> Float {
    two_pi(prec).ln()
}

/// Parses an ASCII decimal (optional sign, point, exponent) at `prec` bits.
pub fn parse_decimal(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s).ok().map(|v| v.complete(prec))
}

/// Renders `x` with `digits` significant decimal digits. Positional notation
/// near unit scale, scientific otherwise; both parse back with
/// [`parse_decimal`].
pub fn to_decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(2) as usize;
    let (sign, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero float has a decimal exponent");
    let sign = if sign { "-" } else { "" };
    // mantissa "d1d2.." with value 0.d1d2.. * 10^exp
    if exp >= -3 && exp <= digits as i32 + 2 {
        if exp <= 0 {
            let zeros = "0".repeat(exp.unsigned_abs() as usize);
            format!("{sign}0.{zeros}{mantissa}")
        } else if (exp as usize) >= mantissa.len() {
            let zeros = "0".repeat(exp as usize - mantissa.len());
            format!("{sign}{mantissa}{zeros}")
        } else {
            let (int, frac) = mantissa.split_at(exp as usize);
            format!("{sign}{int}.{frac}")
        }
    } else {
        let (first, rest) = mantissa.split_at(1);
        format!("{sign}{first}.{rest}e{}", exp - 1)
    }
}

/// Renders `x` in fixed-point form with exactly `frac_digits` fractional
/// digits, rounding to nearest. The zero-table writer depends on this being
/// deterministic.
pub fn to_fixed(x: &Float, frac_digits: u32) -> String {
    let work = x.prec() + prec_for_digits(frac_digits) + 8;
    let scale = Integer::from(Integer::u_pow_u(10, frac_digits));
    let scaled = Float::with_val(work, x * scale);
    let (int, _) = scaled.to_integer_round(Round::Nearest).expect("finite");
    let neg = int.is_negative();
    let mut s = int.abs().to_string();
    let frac = frac_digits as usize;
    if s.len() <= frac {
        s.insert_str(0, &"0".repeat(frac - s.len() + 1));
    }
    if frac > 0 {
        s.insert(s.len() - frac, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}
