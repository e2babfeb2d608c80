//! The two truncated-sum estimators for the Laurent coefficients C_n, and
//! the digit-matching used to report agreement against reference values.
//!
//! Both estimators evaluate (-1)^n [ S_n(T) - A_n(T) - correction ] where
//! S_n is the log-power sum over tabulated ordinates below T and A_n the
//! closed-form smooth term. The plain form omits the correction and carries
//! an O(log^{n+1} T / T) heuristic envelope; the boundary-corrected form
//! subtracts (log^n T / T) Q(T), canceling the leading error and tightening
//! the envelope to the explicit O(log^{n+1} T / T^2) bound.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::asymptotics::{a_main, e2_bound, q_emp, BptConstants};
use crate::error::Result;
use crate::prec::decimal_digits;
use crate::sums::power_log_sum;
use crate::zero_source::ZeroTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// difference of sum and smooth term only; heuristic error envelope
    Plain,
    /// boundary-corrected; explicit-constant error bound
    Bpt,
}

#[derive(Debug, Clone)]
pub struct Estimate {
    pub n: u32,
    pub value: Float,
    pub cutoff: Float,
    pub method: Method,
    pub error_bound: Float,
    pub zeros_used: usize,
}

/// Envelope constant for the plain method: 2(a0 + a1), the T-independent
/// part of the boundary-term bound. Heuristic; reported as such.
pub fn plain_envelope_constant(prec: u32) -> Float {
    let c = BptConstants::new(prec);
    (c.a0 + c.a1) * 2u32
}

/// (-1)^n [ S_n(T) - A_n(T) ], error envelope c_plain log^{n+1}(T) / T.
pub fn estimate_plain(table: &ZeroTable, n: u32, t: &Float) -> Result<Estimate> {
    let sum = power_log_sum(table, n, t)?;
    let prec = sum.value.prec();
    let t_work = Float::with_val(prec, t);
    let raw = sum.value.clone() - a_main(n, &t_work);
    let value = apply_sign(raw, n);
    let error_bound =
        plain_envelope_constant(prec) * t_work.clone().ln().pow(n + 1) / &t_work;
    Ok(Estimate {
        n,
        value,
        cutoff: t.clone(),
        method: Method::Plain,
        error_bound,
        zeros_used: sum.terms,
    })
}

/// (-1)^n [ S_n(T) - A_n(T) - (log^n T / T) Q(T) ], with the explicit
/// envelope of [`e2_bound`].
pub fn estimate_bpt(table: &ZeroTable, n: u32, t: &Float) -> Result<Estimate> {
    let sum = power_log_sum(table, n, t)?;
    let prec = sum.value.prec();
    let t_work = Float::with_val(prec, t);
    let q = q_emp(table, &t_work)?;
    let boundary = t_work.clone().ln().pow(n) / &t_work * q;
    let raw = sum.value.clone() - a_main(n, &t_work) - boundary;
    let value = apply_sign(raw, n);
    let error_bound = e2_bound(n, &t_work, &BptConstants::new(prec));
    Ok(Estimate {
        n,
        value,
        cutoff: t.clone(),
        method: Method::Bpt,
        error_bound,
        zeros_used: sum.terms,
    })
}

fn apply_sign(raw: Float, n: u32) -> Float {
    if n % 2 == 1 {
        -raw
    } else {
        raw
    }
}

/// Result of comparing an estimate against a reference value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitMatch {
    /// largest k with |estimate - reference| < 0.5 * 10^(-k)
    pub digits: u32,
    /// signs disagreed; the comparison was made on magnitudes
    pub sign_differs: bool,
}

/// Decimal places to which `estimate` matches `reference`: the largest k
/// with an absolute difference below half a unit in the k-th place. When
/// the signs differ the magnitudes are compared and the mismatch flagged.
/// Capped at the shared working precision's decimal digits.
pub fn matched_digits(estimate: &Float, reference: &Float) -> DigitMatch {
    let prec = estimate.prec().min(reference.prec());
    let cap = decimal_digits(prec) as i64;
    let sign_differs =
        !estimate.is_zero() && !reference.is_zero() && (estimate.is_sign_negative() != reference.is_sign_negative());
    let diff = if sign_differs {
        Float::with_val(prec, estimate.clone().abs() - reference.clone().abs()).abs()
    } else {
        Float::with_val(prec, estimate - reference).abs()
    };
    if diff.is_zero() {
        return DigitMatch {
            digits: cap as u32,
            sign_differs,
        };
    }
    let two_diff = diff.clone() * 2u32;
    let guess = (-two_diff.log10().to_f64()).floor() as i64;
    let mut k = guess.clamp(0, cap);
    // settle on the boundary exactly: need diff < 0.5 * 10^(-k)
    while k > 0 && diff >= half_ulp(prec, k) {
        k -= 1;
    }
    while k < cap && diff < half_ulp(prec, k + 1) {
        k += 1;
    }
    if diff >= half_ulp(prec, k) {
        k = 0;
    }
    DigitMatch {
        digits: k as u32,
        sign_differs,
    }
}

/// 0.5 * 10^(-k)
fn half_ulp(prec: u32, k: i64) -> Float {
    debug_assert!(k >= 0);
    let p = Float::with_val(prec, Integer::from(Integer::u_pow_u(10, k as u32)));
    p.recip() / 2u32
}
