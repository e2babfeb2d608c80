//! Deterministic high-precision partial sums over zero ordinates: the
//! log-power sums sum_{gamma < T} log^n(gamma)/gamma feeding the coefficient
//! estimators, and plain power sums sum gamma^(-s) for the direct series.
//!
//! Accumulation contract: terms are added in ascending-ordinate order inside
//! fixed 4096-term chunks; chunk subtotals are combined in index order. The
//! result is therefore bit-identical no matter how many workers map the
//! chunks.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::asymptotics::COEFF_INDEX_CAP;
use crate::error::{Error, Result};
use crate::prec::to_decimal;
use crate::zero_source::ZeroTable;

pub const CHUNK: usize = 4096;

/// Which family of terms a [`SumResult`] accumulated.
#[derive(Debug, Clone)]
pub enum SumKind {
    /// log^n(gamma) / gamma
    LogPower(u32),
    /// gamma^(-s)
    PowerReal(Float),
}

#[derive(Debug, Clone)]
pub struct SumResult {
    pub value: Float,
    pub kind: SumKind,
    /// zeros included, always count_below(cutoff)
    pub terms: usize,
    pub cutoff: Float,
    /// roundoff plus input-precision propagation: terms * ulp-scale +
    /// terms * 10^(-source_digits) * max |d(term)/d(gamma)|
    pub accumulation_error_bound: Float,
}

/// sum_{gamma < T} log^n(gamma) / gamma.
pub fn power_log_sum(table: &ZeroTable, n: u32, t: &Float) -> Result<SumResult> {
    if n > COEFF_INDEX_CAP {
        return Err(Error::IndexBeyondCap {
            n,
            cap: COEFF_INDEX_CAP,
        });
    }
    let work = t.prec().max(table.prec());
    let count = table.count_below(t)?;
    let value = chunked_sum(&table.gammas()[..count], work, |g| {
        let x = Float::with_val(work, g);
        x.clone().ln().pow(n) / x
    });
    // |d/dgamma [log^n(g)/g]| = |n log^(n-1) g - log^n g| / g^2, bounded by
    // the sum of both magnitudes at the extremes
    let ln_hi = hi_log(t, work);
    let deriv_cap = (ln_hi.clone().pow(n) + deriv_m_term(&ln_hi, n)) / first_gamma_sq(table, work);
    let bound = accumulation_bound(&value, count, table.source_digits(), &deriv_cap);
    Ok(SumResult {
        value,
        kind: SumKind::LogPower(n),
        terms: count,
        cutoff: t.clone(),
        accumulation_error_bound: bound,
    })
}

/// sum_{gamma < T} gamma^(-s) for real s > 1.
pub fn power_sum(table: &ZeroTable, s: &Float, t: &Float) -> Result<SumResult> {
    if !(s.clone() > 1u32) {
        return Err(Error::ExponentNotAboveOne {
            s: to_decimal(s, 10),
        });
    }
    let work = t.prec().max(table.prec()).max(s.prec());
    let count = table.count_below(t)?;
    let neg_s = -Float::with_val(work, s);
    let value = chunked_sum(&table.gammas()[..count], work, |g| {
        Float::with_val(work, g).pow(&neg_s)
    });
    // |d/dgamma gamma^(-s)| = s gamma^(-s-1), maximal at the first ordinate
    let first = Float::with_val(work, &table.gammas()[0]);
    let deriv_cap = first.pow(&(neg_s - 1u32)) * s;
    let bound = accumulation_bound(&value, count, table.source_digits(), &deriv_cap);
    Ok(SumResult {
        value,
        kind: SumKind::PowerReal(s.clone()),
        terms: count,
        cutoff: t.clone(),
        accumulation_error_bound: bound,
    })
}

/// Ascending in-order sum of f over fixed-size chunks, chunk results folded
/// in index order; bit-identical across worker counts.
pub(crate) fn chunked_sum<F>(gammas: &[Float], work: u32, f: F) -> Float
where
    F: Fn(&Float) -> Float + Sync,
{
    let partials: Vec<Float> = gammas
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Float::new(work);
            for g in chunk {
                acc += f(g);
            }
            acc
        })
        .collect();
    let mut total = Float::new(work);
    for p in partials {
        total += p;
    }
    total
}

fn hi_log(t: &Float, work: u32) -> Float {
    let hi = Float::with_val(work, t).max(&Float::with_val(work, 3u32));
    hi.ln()
}

/// n log^(n-1), with the n = 0 convention that the whole term vanishes.
fn deriv_m_term(ln_hi: &Float, n: u32) -> Float {
    if n == 0 {
        Float::new(ln_hi.prec())
    } else {
        ln_hi.clone().pow(n - 1) * n
    }
}

fn first_gamma_sq(table: &ZeroTable, work: u32) -> Float {
    Float::with_val(work, &table.gammas()[0]).square()
}

fn accumulation_bound(value: &Float, terms: usize, source_digits: u32, deriv_cap: &Float) -> Float {
    let work = value.prec();
    let ulp_scale = Float::with_val(work, Float::i_exp(1, 1 - work as i32));
    let roundoff = value.clone().abs() * ulp_scale * terms as u64;
    let input_res = Float::with_val(
        work,
        Integer::from(Integer::u_pow_u(10, source_digits)),
    )
    .recip();
    roundoff + input_res * deriv_cap * terms as u64
}
