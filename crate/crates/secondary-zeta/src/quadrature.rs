//! Tanh-sinh quadrature over finite intervals. This is a verification
//! oracle for the closed-form antiderivatives elsewhere in the crate; no
//! production path integrates numerically.

use rug::Float;

use crate::error::{Error, Result};
use crate::prec::pi;

/// Integrates `f` over [a, b] to relative tolerance `rel_tol` by doubling
/// tanh-sinh node density until two consecutive levels agree. Suited to the
/// smooth log-polynomial integrands used in tests; not a general-purpose
/// adaptive integrator.
pub fn tanh_sinh<F>(f: F, a: &Float, b: &Float, prec: u32, rel_tol: &Float) -> Result<Float>
where
    F: Fn(&Float) -> Float,
{
    let work = prec + 32;
    let center = Float::with_val(work, a + b) / 2u32;
    let radius = Float::with_val(work, b - a) / 2u32;
    let half_pi = pi(work) / 2u32;
    let tiny = Float::with_val(work, Float::i_exp(1, -(work as i32 + 16)));

    // sum of w(u) [f(c+r tanh((pi/2) sinh u)) + f(c - ...)] over u = k h,
    // w(u) = (pi/2) cosh(u) sech^2((pi/2) sinh u); stops once w underflows
    let node_sum = |h: &Float, ks: &mut dyn Iterator<Item = u64>| -> Float {
        let mut acc = Float::new(work);
        for k in ks {
            let u = Float::with_val(work, k) * h;
            let (sinh_u, cosh_u) = u.sinh_cosh(Float::new(work));
            let arg = Float::with_val(work, &half_pi * &sinh_u);
            let weight =
                Float::with_val(work, &half_pi * &cosh_u) * arg.clone().cosh().recip().square();
            if weight < tiny {
                break;
            }
            let offset = Float::with_val(work, &radius * &arg.tanh());
            let hi = Float::with_val(work, &center + &offset);
            acc += f(&hi) * &weight;
            if k > 0 {
                let lo = Float::with_val(work, &center - &offset);
                acc += f(&lo) * &weight;
            }
        }
        acc
    };

    let mut h = Float::with_val(work, 1u32);
    let mut total = node_sum(&h, &mut (0..100_000u64));
    let mut prev: Option<Float> = None;
    for _level in 0..14 {
        h /= 2u32;
        total += node_sum(&h, &mut (1..200_000u64).step_by(2));
        let value = Float::with_val(work, &total * &h) * &radius;
        if let Some(p) = prev {
            let diff = Float::with_val(work, &value - &p).abs();
            let scale = value.clone().abs().max(&Float::with_val(work, 1u32));
            if diff <= scale * rel_tol.clone() {
                return Ok(value);
            }
        }
        prev = Some(value);
    }
    Err(Error::NoConvergence)
}
