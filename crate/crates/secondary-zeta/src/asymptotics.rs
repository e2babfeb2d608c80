//! Closed-form smooth terms of the zero-counting function and the error
//! envelopes attached to the truncated-sum estimators.
//!
//! Everything here is an exact formula evaluated at the precision of its
//! input; no table data is consulted except by [`q_emp`], which subtracts
//! the smooth term from an actual count.

use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::prec::{decimal_digits, parse_decimal, to_decimal, two_pi};
use crate::zero_source::ZeroTable;

/// Largest log power any coefficient-indexed routine accepts; far above the
/// range where the estimators retain any accuracy, but a hard stop against
/// accidental huge indices.
pub const COEFF_INDEX_CAP: u32 = 200;

/// Constants of the empirical envelope for the boundary-corrected estimator
/// error: |remainder| <= 2(a0 + a1 log T)|m log^(m-1) T - log^m T|/T^2
/// + (a1 + a2) log^m T / T^2.
pub struct BptConstants {
    pub a0: Float,
    pub a1: Float,
    pub a2: Float,
}

impl BptConstants {
    pub fn new(prec: u32) -> Self {
        Self {
            a0: parse_decimal("2.067", prec).expect("literal"),
            a1: parse_decimal("0.059", prec).expect("literal"),
            a2: parse_decimal("0.007", prec).expect("literal"),
        }
    }
}

/// Smooth main term of the zero count:
/// L(T) = 7/8 + (T/2pi) log(T/2pi) - T/2pi.
pub fn l_main(t: &Float) -> Float {
    let prec = t.prec();
    let x = t / two_pi(prec);
    let seven_eighths = Float::with_val(prec, 7u32) / 8u32;
    seven_eighths + x.clone() * x.clone().ln() - x
}

pub fn l_main_f64(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    0.875 + x * x.ln() - x
}

/// Closed form of the smooth part of the log-power sums:
/// (1/2pi) integral from 1 to T of log^n(t) log(t/2pi) / t dt
///   = log^(n+1)(T) [ (n+1) log T - (n+2) log 2pi ] / (2pi (n+1)(n+2)).
/// The expanded bracket keeps every intermediate at log scale.
pub fn a_main(n: u32, t: &Float) -> Float {
    let prec = t.prec();
    let ln_t = t.clone().ln();
    let ln_2pi = two_pi(prec).ln();
    let bracket = (&ln_t * (n + 1)).complete(prec) - ln_2pi * (n + 2);
    let pow = ln_t.pow_u(n + 1);
    pow * bracket / (two_pi(prec) * ((n + 1) * (n + 2)))
}

/// Empirical counting remainder Q(T) = N(T) - L(T) from an actual table.
pub fn q_emp(table: &ZeroTable, t: &Float) -> Result<Float> {
    let n = table.count_below(t)?;
    Ok(Float::with_val(t.prec(), n as u64) - l_main(t))
}

/// Error envelope of the boundary-corrected estimator at log power `n`:
/// 2(a0 + a1 log T) |n log^(n-1) T - log^n T| / T^2 + (a1+a2) log^n T / T^2,
/// with the n = 0 convention n log^(n-1) T -> 0.
pub fn e2_bound(n: u32, t: &Float, c: &BptConstants) -> Float {
    let prec = t.prec();
    let ln_t = t.clone().ln();
    let t_sq = t.clone().square();
    let log_n = ln_t.clone().pow_u(n);
    let m_term = if n == 0 {
        Float::new(prec)
    } else {
        ln_t.clone().pow_u(n - 1) * n
    };
    let envelope = (&c.a1 * &ln_t).complete(prec) + &c.a0;
    let first = envelope * 2u32 * (m_term - &log_n).abs();
    let second = (&c.a1 + &c.a2).complete(prec) * log_n;
    (first + second) / t_sq
}

/// Lower-limit constant of the finite-cutoff identity: the m = 0 case picks
/// up L(1) from the 0^0 = 1 convention at the integration base t = 1; every
/// higher power of log t vanishes there.
pub fn boundary_constant(m: u32, prec: u32) -> Float {
    if m == 0 {
        l_main(&Float::with_val(prec, 1u32))
    } else {
        Float::new(prec)
    }
}

/// Inverse of [`l_main`] on its increasing branch T > 2pi, by safeguarded
/// bisection at extended precision. Defined for N above the branch minimum
/// L(2pi) = -1/8.
pub fn inverse_l(target: &Float) -> Result<Float> {
    let prec = target.prec();
    let work = prec + 64;
    let n = Float::with_val(work, target);
    let min_val = Float::with_val(work, -1f64) / 8u32;
    if n <= min_val {
        return Err(Error::NoBracket {
            target: to_decimal(target, 20),
        });
    }
    let mut lo = two_pi(work);
    let mut hi = lo.clone() * 2u32;
    let mut tries = 0;
    while l_main(&hi) < n {
        hi *= 2u32;
        tries += 1;
        if tries > 200 {
            return Err(Error::NoBracket {
                target: to_decimal(target, 20),
            });
        }
    }
    for _ in 0..work {
        let mid = Float::with_val(work, &lo + &hi) / 2u32;
        if l_main(&mid) < n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = (lo + hi) / 2u32;
    let resid = Float::with_val(work, l_main(&root) - &n).abs();
    let tol = Float::with_val(work, Integer::from(Integer::u_pow_u(10, decimal_digits(prec)))).recip();
    if resid >= tol {
        return Err(Error::NoConvergence);
    }
    root.set_prec(prec);
    Ok(root)
}

trait PowU {
    fn pow_u(self, e: u32) -> Float;
}
impl PowU for Float {
    fn pow_u(self, e: u32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}
