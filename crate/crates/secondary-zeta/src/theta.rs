//! The Riemann-Siegel theta function, the phase that makes
//! Z(t) = exp(i theta(t)) zeta(1/2 + it) real on the critical line.
//!
//! Two evaluation routes: a double-precision asymptotic series for root
//! scanning and Gram-point seeding, and an arbitrary-precision route through
//! the imaginary part of log Gamma(1/4 + it/2) with a lifted Stirling series,
//! exact at any height because the argument is shifted right until the
//! asymptotic tail drops below the working precision.

use rug::ops::CompleteRound;
use rug::{Complex, Float};

use crate::prec::pi;

/// Asymptotic series theta(t) = (t/2)log(t/2pi) - t/2 - pi/8 + sum c_n t^(1-2n)
/// with c_n = (1 - 2^(1-2n)) |B_2n| / (4n(2n-1)). Four correction terms keep
/// the error below 1e-12 for t >= 6 and below 1e-16 for t >= 14.
pub fn theta_f64(t: f64) -> f64 {
    debug_assert!(t >= 6.0, "f64 theta series needs t >= 6");
    let tau = t / (2.0 * std::f64::consts::PI);
    let t2 = t * t;
    let mut corr = 0.0;
    for c in [
        1.0 / 48.0,
        7.0 / 5760.0,
        31.0 / 80640.0,
        127.0 / 430080.0,
    ]
    .iter()
    .rev()
    {
        corr = corr / t2 + c;
    }
    0.5 * t * tau.ln() - 0.5 * t - std::f64::consts::FRAC_PI_8 + corr / t
}

/// d theta / dt, accurate enough for Newton steps.
pub fn theta_deriv_f64(t: f64) -> f64 {
    0.5 * (t / (2.0 * std::f64::consts::PI)).ln() - 1.0 / (48.0 * t * t)
}

/// Gram point g_n, the unique t above 2 pi with theta(t) = n pi. Defined for
/// n >= -1 (g_-1 ~ 9.667, g_0 ~ 17.846).
pub fn gram_point(n: i64) -> f64 {
    let target = n as f64 * std::f64::consts::PI;
    let mut lo = 6.3f64;
    let mut hi = 20.0f64;
    while theta_f64(hi) < target {
        lo = hi;
        hi *= 1.5;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if theta_f64(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..3 {
        x -= (theta_f64(x) - target) / theta_deriv_f64(x);
    }
    x
}

/// Arbitrary-precision theta through Im log Gamma(1/4 + it/2).
pub struct ThetaEngine {
    work: u32,
    /// Stirling coefficients B_2k / (2k (2k-1)), k = 1..
    coeffs: Vec<Float>,
    /// |w| above which the Stirling tail is below 2^-(work+8)
    radius: f64,
}

impl ThetaEngine {
    pub fn new(prec: u32) -> Self {
        let work = prec + 32;
        let radius = 0.111 * f64::from(work + 8) + 6.0;
        let kmax = (std::f64::consts::PI * radius).ceil() as u32 + 8;
        let cprec = work + 16;
        let mut coeffs = Vec::with_capacity(kmax as usize);
        let two_pi_sq = pi(cprec).square() * 4u32;
        // B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2pi)^(2k); the (2pi)^(2k)
        // comes from a running power, everything else is per-term
        let mut pow = Float::with_val(cprec, 1u32);
        for k in 1..=kmax {
            pow /= &two_pi_sq;
            let zeta2k = Float::with_val(cprec, 2 * k).zeta();
            let fact = Float::factorial(2 * k).complete(cprec);
            let mut b2k = fact * zeta2k * &pow * 2u32;
            if k % 2 == 0 {
                b2k = -b2k;
            }
            coeffs.push(b2k / ((2 * k) * (2 * k - 1)));
        }
        Self {
            work,
            coeffs,
            radius,
        }
    }

    /// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, for t > 0.
    pub fn theta(&self, t: &Float) -> Float {
        let work = self.work;
        let half_t = Float::with_val(work, t / 2u32);
        let ht = half_t.to_f64();
        // shift right until |w| clears the Stirling radius
        let shift = if ht >= self.radius {
            0u32
        } else {
            ((self.radius * self.radius - ht * ht).sqrt() - 0.25)
                .ceil()
                .max(0.0) as u32
                + 1
        };
        let re = Float::with_val(work, 0.25f64) + shift;
        let w = Complex::with_val(work, (&re, &half_t));
        let ln_w = w.clone().ln();
        // Im[(w - 1/2) ln w - w]
        let mut im = Float::with_val(work, &re - 0.5f64) * ln_w.imag()
            + (&half_t * ln_w.real()).complete(work)
            - &half_t;
        // Stirling tail: Im sum_k coeffs[k] w^(1-2k); stop once the term
        // modulus is below working precision (the lift guarantees it gets
        // there before the asymptotic tail turns around)
        let inv = Complex::with_val(work, 1u32) / &w;
        let inv_sq = inv.clone().square();
        let mut p = inv;
        let eps_sq = Float::with_val(work, Float::i_exp(1, -2 * (work as i32 - 8)));
        let mut prev_bound = Float::with_val(work, rug::float::Special::Infinity);
        for c in &self.coeffs {
            let bound = c.clone().square() * p.clone().norm().into_real_imag().0;
            im += (c * p.imag()).complete(work);
            if bound < eps_sq || bound > prev_bound {
                break;
            }
            prev_bound = bound;
            p *= &inv_sq;
        }
        // undo the shift: Im log(z + j) = atan2(t/2, 1/4 + j)
        for j in 0..shift {
            let x = Float::with_val(work, 0.25f64) + j;
            im -= half_t.clone().atan2(&x);
        }
        im - half_t * pi(work).ln()
    }
}

/// One-shot arbitrary-precision theta; tests and diagnostics. Hot paths hold
/// a [`ThetaEngine`] instead.
pub fn theta_hp(t: &Float, prec: u32) -> Float {
    let mut v = ThetaEngine::new(prec).theta(t);
    v.set_prec(prec);
    v
}
