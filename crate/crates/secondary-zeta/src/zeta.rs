//! Euler-Maclaurin evaluation of zeta(1/2 + it) and of the rotated real
//! function Z(t) = exp(i theta(t)) zeta(1/2 + it), whose sign changes locate
//! the zero ordinates.
//!
//! The cutoff N ~ (t + 2M)/pi makes each Bernoulli correction term shrink by
//! a factor of about 4, so M correction terms buy 2M bits. A double-precision
//! variant handles bracketing scans; the MPFR variant, with per-engine log
//! and reciprocal-square-root caches, polishes roots to the requested
//! precision.

use std::sync::OnceLock;

use rug::ops::CompleteRound;
use rug::{Complex, Float};

use crate::prec::pi;
use crate::theta::{theta_f64, ThetaEngine};

#[derive(Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.norm_sq();
        C64 {
            re: (self.re * o.re + self.im * o.im) / d,
            im: (self.im * o.re - self.re * o.im) / d,
        }
    }
    fn scale(self, x: f64) -> C64 {
        C64 {
            re: self.re * x,
            im: self.im * x,
        }
    }
}

/// Ratios B_{2k+2} (2k)! / (B_2k (2k+2)!) of consecutive Euler-Maclaurin
/// coefficient pairs, via B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2pi)^(2k).
fn bern_ratios_f64() -> &'static [f64] {
    static RHO: OnceLock<Vec<f64>> = OnceLock::new();
    RHO.get_or_init(|| {
        let zeta_even = |j: u32| Float::with_val(96, j).zeta();
        let four_pi_sq = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        (1..=30u32)
            .map(|k| -(zeta_even(2 * k + 2) / zeta_even(2 * k)).to_f64() / four_pi_sq)
            .collect()
    })
}

const M_F64: usize = 18;

/// zeta(1/2 + it) in double precision, absolute error around 1e-12 for
/// t up to about 3e4. Scanning accuracy, not reference accuracy.
pub fn zeta_half_f64(t: f64) -> (f64, f64) {
    let n_cut = ((t + 2.0 * M_F64 as f64) / std::f64::consts::PI).ceil().max(16.0) as u64;
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    let mut last = C64 { re: 0.0, im: 0.0 };
    for n in 1..=n_cut {
        let nf = n as f64;
        let amp = 1.0 / nf.sqrt();
        let (s, c) = (t * nf.ln()).sin_cos();
        last = C64 {
            re: amp * c,
            im: -amp * s,
        };
        re += last.re;
        im += last.im;
    }
    re -= 0.5 * last.re;
    im -= 0.5 * last.im;
    let nf = n_cut as f64;
    // N^(1-s) / (s-1), with N^(1-s) = sqrt(N) e^(-it ln N)
    let (sa, ca) = (t * nf.ln()).sin_cos();
    let sqrt_n = nf.sqrt();
    let tail = C64 {
        re: sqrt_n * ca,
        im: -sqrt_n * sa,
    }
    .div(C64 { re: -0.5, im: t });
    re += tail.re;
    im += tail.im;
    // correction terms via the term-to-term ratio
    // T_1 = (1/12) s N^(-s-1), T_{k+1}/T_k = rho_k (s+2k-1)(s+2k) / N^2
    let rho = bern_ratios_f64();
    let n_pow = C64 {
        re: ca / (nf * sqrt_n),
        im: -sa / (nf * sqrt_n),
    };
    let mut term = C64 { re: 0.5, im: t }.mul(n_pow).scale(1.0 / 12.0);
    let inv_n_sq = 1.0 / (nf * nf);
    let mut prev = f64::INFINITY;
    for (k, &rho_k) in rho.iter().enumerate().take(M_F64) {
        re += term.re;
        im += term.im;
        let mag = term.norm_sq();
        if mag < 1e-60 || mag > prev {
            break;
        }
        prev = mag;
        let k = (k + 1) as f64;
        let poly = C64 {
            re: 4.0 * k * k - 0.25 - t * t,
            im: 4.0 * k * t,
        };
        term = term.mul(poly).scale(rho_k * inv_n_sq);
    }
    (re, im)
}

/// Z(t) in double precision; real, with sign changes exactly at the zero
/// ordinates. Needs t >= 6 for the theta series.
pub fn z_f64(t: f64) -> f64 {
    let (re, im) = zeta_half_f64(t);
    let (s, c) = theta_f64(t).sin_cos();
    re * c - im * s
}

/// MPFR evaluator for zeta(1/2 + it) and Z(t), with caches sized for a fixed
/// ordinate ceiling so repeated evaluations share the n-dependent work.
pub struct ZEngine {
    work: u32,
    m_max: usize,
    ln_n: Vec<Float>,
    rsqrt_n: Vec<Float>,
    /// rho[k-1] multiplies term k into term k+1
    rho: Vec<Float>,
    theta: ThetaEngine,
}

impl ZEngine {
    /// Evaluator valid for 6 <= t <= t_max, delivering about `prec` bits.
    pub fn new(prec: u32, t_max: f64) -> Self {
        let work = prec + 48;
        let m_max = (work / 2 + 8) as usize;
        let n_max = ((t_max + 2.0 * m_max as f64) / std::f64::consts::PI).ceil() as usize + 8;
        let n_max = n_max.max(16);
        let mut ln_n = Vec::with_capacity(n_max);
        let mut rsqrt_n = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let nf = Float::with_val(work, n as u64);
            ln_n.push(nf.clone().ln());
            rsqrt_n.push(nf.recip_sqrt());
        }
        let cprec = work + 16;
        let four_pi_sq = pi(cprec).square() * 4u32;
        let mut rho = Vec::with_capacity(m_max);
        for k in 1..m_max as u32 {
            let za = Float::with_val(cprec, 2 * k).zeta();
            let zb = Float::with_val(cprec, 2 * k + 2).zeta();
            let mut r = zb / (za * &four_pi_sq);
            r = -r;
            r.set_prec(work);
            rho.push(r);
        }
        Self {
            work,
            m_max,
            ln_n,
            rsqrt_n,
            rho,
            theta: ThetaEngine::new(prec + 16),
        }
    }

    pub fn work_prec(&self) -> u32 {
        self.work
    }

    /// zeta(1/2 + it) at the working precision.
    pub fn zeta_half(&self, t: &Float) -> Complex {
        let n_cut =
            ((t.to_f64() + 2.0 * self.m_max as f64) / std::f64::consts::PI).ceil() as usize;
        let n_cut = n_cut.clamp(16, self.ln_n.len());
        self.zeta_half_at(t, n_cut)
    }

    fn zeta_half_at(&self, t: &Float, n_cut: usize) -> Complex {
        let work = self.work;
        let mut re = Float::new(work);
        let mut im = Float::new(work);
        let mut last_re = Float::new(work);
        let mut last_im = Float::new(work);
        for n in 0..n_cut {
            let angle = (t * &self.ln_n[n]).complete(work);
            let (s, c) = angle.sin_cos(Float::new(work));
            last_re = c * &self.rsqrt_n[n];
            last_im = -(s * &self.rsqrt_n[n]);
            re += &last_re;
            im += &last_im;
        }
        re -= last_re / 2u32;
        im -= last_im / 2u32;
        let mut acc = Complex::with_val(work, (&re, &im));

        // N^(1-s)/(s-1) = sqrt(N) e^(-it ln N) / (-1/2 + it)
        let nf = Float::with_val(work, n_cut as u64);
        let angle = (t * &self.ln_n[n_cut - 1]).complete(work);
        let (sa, ca) = angle.sin_cos(Float::new(work));
        let sqrt_n = nf.clone().sqrt();
        let num = Complex::with_val(work, ((&sqrt_n * &ca).complete(work), -(&sqrt_n * &sa).complete(work)));
        let den = Complex::with_val(work, (Float::with_val(work, -0.5f64), t));
        acc += num / &den;

        // T_1 = (1/12) s N^(-s-1); T_{k+1} = T_k rho_k (s+2k-1)(s+2k) / N^2
        let amp = (&self.rsqrt_n[n_cut - 1] / &nf).complete(work);
        let n_pow = Complex::with_val(work, ((&amp * &ca).complete(work), -(&amp * &sa).complete(work)));
        let s_val = Complex::with_val(work, (Float::with_val(work, 0.5f64), t));
        let mut term = s_val * n_pow / 12u32;
        let inv_n_sq = Float::with_val(work, &nf * &nf).recip();
        let eps_sq = Float::with_val(work, Float::i_exp(1, -2 * (work as i32 - 6)));
        let t_sq = t.clone().square();
        let mut prev = Float::with_val(work, rug::float::Special::Infinity);
        let mut converged = false;
        for (k, rho_k) in self.rho.iter().enumerate() {
            acc += &term;
            let mag = term.clone().norm().into_real_imag().0;
            if mag < eps_sq {
                converged = true;
                break;
            }
            if mag > prev {
                break;
            }
            prev = mag;
            let kf = (k + 1) as u32;
            let poly = Complex::with_val(
                work,
                (
                    (Float::with_val(work, 4 * kf * kf) - 0.25f64 - &t_sq),
                    (4 * kf * t).complete(work),
                ),
            );
            term *= poly;
            term *= rho_k;
            term *= &inv_n_sq;
        }
        if !converged && n_cut < self.ln_n.len() {
            // ratio not yet in the geometric regime; a larger cutoff always is
            return self.zeta_half_at(t, (n_cut * 2).min(self.ln_n.len()));
        }
        acc
    }

    /// Z(t) = Re[ e^(i theta(t)) zeta(1/2 + it) ], real by construction.
    pub fn z(&self, t: &Float) -> Float {
        let zh = self.zeta_half(t);
        let th = self.theta.theta(t);
        let (s, c) = th.sin_cos(Float::new(self.work));
        let (re, im) = zh.into_real_imag();
        re * c - im * s
    }

    pub fn theta(&self, t: &Float) -> Float {
        self.theta.theta(t)
    }
}
