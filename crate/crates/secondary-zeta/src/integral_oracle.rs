//! Independent verification route for the coefficient estimates: the exact
//! finite-cutoff identity
//!
//! ```text
//! sum_{gamma < T} log^m(gamma)/gamma
//!   = A_m(T) + (log^m T / T) Q(T) + B_m
//!     + integral_1^T (log^m t - m log^{m-1} t) / t^2 * Q(t) dt
//! ```
//!
//! with Q = N - L. N is a step function jumping at the tabulated ordinates,
//! so its integral telescopes through the kernel antiderivative; L is smooth
//! with an elementary antiderivative against the kernel. Every piece is a
//! closed form: the identity holds to arithmetic roundoff on real data, which
//! makes its residual a whole-workspace correctness gate.

use rug::ops::Pow;
use rug::Float;

use crate::asymptotics::{a_main, boundary_constant, q_emp, COEFF_INDEX_CAP};
use crate::error::{Error, Result};
use crate::estimator::{plain_envelope_constant, Estimate, Method};
use crate::prec::two_pi;
use crate::sums::{chunked_sum, power_log_sum};
use crate::zero_source::ZeroTable;

/// Closed form of integral log^k(t)/t^2 dt:
/// G_k(t) = -(1/t) sum_{j=0..k} (k!/j!) log^j(t).
pub struct KernelAntiderivative {
    k: u32,
    /// falling-factorial weights k!/j!, j = 0..=k
    coeffs: Vec<Float>,
}

impl KernelAntiderivative {
    pub fn new(k: u32, prec: u32) -> Result<Self> {
        if k > COEFF_INDEX_CAP {
            return Err(Error::IndexBeyondCap {
                n: k,
                cap: COEFF_INDEX_CAP,
            });
        }
        let mut coeffs = vec![Float::new(prec); (k + 1) as usize];
        let mut w = Float::with_val(prec, 1u32);
        for j in (0..=k).rev() {
            coeffs[j as usize] = w.clone();
            if j > 0 {
                w *= j;
            }
        }
        let out = Self { k, coeffs };
        debug_assert!(out.derivative_check(prec), "antiderivative self-check");
        Ok(out)
    }

    /// G_k(t); Horner in log t.
    pub fn eval(&self, t: &Float) -> Float {
        let prec = t.prec();
        let ln_t = t.clone().ln();
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc * &ln_t + c;
        }
        -(acc / t)
    }

    /// d/dt G_k at a generic point must reproduce log^k(t)/t^2.
    fn derivative_check(&self, prec: u32) -> bool {
        let work = prec + 64;
        let t0 = Float::with_val(work, 37u32) / 10u32;
        let h = Float::with_val(work, Float::i_exp(1, -(work as i32) / 3));
        let hi = self.eval(&(t0.clone() + &h));
        let lo = self.eval(&(t0.clone() - &h));
        let fd = (hi - lo) / (h * 2u32);
        let exact = t0.clone().ln().pow(self.k) / t0.square();
        let diff = Float::with_val(work, &fd - &exact).abs();
        diff < exact.abs() * Float::with_val(work, Float::i_exp(1, -(work as i32) / 4))
    }
}

/// Antiderivative F_m of the identity kernel (log^m t - m log^{m-1} t)/t^2,
/// i.e. G_m - m G_{m-1} (just G_0 when m = 0).
pub fn kernel_primitive(m: u32, t: &Float, prec: u32) -> Result<Float> {
    let g_m = KernelAntiderivative::new(m, prec)?.eval(t);
    if m == 0 {
        return Ok(g_m);
    }
    let g_prev = KernelAntiderivative::new(m - 1, prec)?.eval(t);
    Ok(g_m - g_prev * m)
}

/// integral_1^T (log^m t - m log^{m-1} t)/t^2 * Q(t) dt, exactly.
///
/// The N-part telescopes: with F_m the kernel antiderivative and N the count,
/// it equals count * F_m(T) - sum_{gamma < T} F_m(gamma). The L-part is the
/// elementary closed form below. Their difference is the integral of Q.
pub fn integral_q_kernel(table: &ZeroTable, m: u32, t: &Float) -> Result<Float> {
    if m > COEFF_INDEX_CAP {
        return Err(Error::IndexBeyondCap {
            n: m,
            cap: COEFF_INDEX_CAP,
        });
    }
    let prec = t.prec().max(table.prec());
    let t_work = Float::with_val(prec, t);
    let count = table.count_below(&t_work)?;

    let f_m = KernelAntiderivative::new(m, prec)?;
    let f_prev = if m == 0 {
        None
    } else {
        Some(KernelAntiderivative::new(m - 1, prec)?)
    };
    let f_at = |x: &Float| -> Float {
        let v = f_m.eval(x);
        match &f_prev {
            Some(g) => v - g.eval(x) * m,
            None => v,
        }
    };

    let n_part = if count == 0 {
        Float::new(prec)
    } else {
        let sum_f = chunked_sum(&table.gammas()[..count], prec, |g| {
            f_at(&Float::with_val(prec, g))
        });
        f_at(&t_work) * count as u64 - sum_f
    };

    Ok(n_part - l_part(m, &t_work, &f_at))
}

/// integral_1^T K_m(t) L(t) dt in closed form, where K_m is the kernel and
/// L(t) = 7/8 + (t/2pi) log(t/2pi) - t/2pi:
///
///   (7/8) [F_m(T) - F_m(1)]
///   + (1/2pi) [ P_{m+1}(T) - (c + m) P_m(T) + m c P_{m-1}(T) ]
///
/// with P_j(t) = log^{j+1}(t)/(j+1) and c = log(2pi) + 1. The P terms vanish
/// at t = 1.
fn l_part<F>(m: u32, t: &Float, f_at: &F) -> Float
where
    F: Fn(&Float) -> Float,
{
    let prec = t.prec();
    let seven_eighths = Float::with_val(prec, 7u32) / 8u32;
    let f_m_at_one = if m == 0 {
        Float::with_val(prec, -1f64)
    } else {
        Float::new(prec)
    };
    let step = seven_eighths * (f_at(t) - f_m_at_one);

    let ln_t = t.clone().ln();
    let p = |j: u32| -> Float { ln_t.clone().pow(j + 1) / (j + 1) };
    let c = two_pi(prec).ln() + 1u32;
    let mut bracket = p(m + 1) - (c.clone() + m) * p(m);
    if m > 0 {
        bracket += c * m * p(m - 1);
    }
    step + bracket / two_pi(prec)
}

/// Residual of the finite-cutoff identity; magnitudes beyond roundoff mean
/// some piece of the workspace is wrong.
pub fn stieltjes_identity_residual(table: &ZeroTable, m: u32, t: &Float) -> Result<Float> {
    let prec = t.prec().max(table.prec());
    let t_work = Float::with_val(prec, t);
    let lhs = power_log_sum(table, m, &t_work)?.value;
    let boundary = t_work.clone().ln().pow(m) / &t_work * q_emp(table, &t_work)?;
    let rhs = a_main(m, &t_work)
        + boundary
        + boundary_constant(m, prec)
        + integral_q_kernel(table, m, &t_work)?;
    Ok(lhs - rhs)
}

/// Coefficient estimate along the integral route:
/// (-1)^m [ B_m + integral_1^T K_m Q dt ]. Algebraically this equals the
/// boundary-corrected estimator, so agreement between the two is a cross-
/// check of every closed form involved. The tail envelope follows the plain
/// heuristic convention (and so does the method tag).
pub fn c_from_integral(table: &ZeroTable, m: u32, t: &Float) -> Result<Estimate> {
    let prec = t.prec().max(table.prec());
    let t_work = Float::with_val(prec, t);
    let raw = boundary_constant(m, prec) + integral_q_kernel(table, m, &t_work)?;
    let value = if m % 2 == 1 { -raw } else { raw };
    let error_bound = plain_envelope_constant(prec) * t_work.clone().ln().pow(m + 1) / &t_work;
    let zeros_used = table.count_below(&t_work)?;
    Ok(Estimate {
        n: m,
        value,
        cutoff: t.clone(),
        method: Method::Plain,
        error_bound,
        zeros_used,
    })
}

/// Rounding allowance for the identity residual: one ulp of the largest
/// intermediate per accumulated term (two sums walk the table), plus slack.
pub fn residual_gate(table: &ZeroTable, m: u32, t: &Float) -> Result<Float> {
    let prec = t.prec().max(table.prec());
    let t_work = Float::with_val(prec, t);
    let sum = power_log_sum(table, m, &t_work)?;
    let mut scale = sum.value.clone().abs();
    let a = a_main(m, &t_work).abs();
    if a > scale {
        scale = a;
    }
    let count_scale = Float::with_val(prec, sum.terms as u64);
    if count_scale > scale {
        scale = count_scale;
    }
    let ops = Float::with_val(prec, 2 * sum.terms as u64 + 10);
    Ok(scale * ops * Float::with_val(prec, Float::i_exp(1, 1 - prec as i32)))
}
