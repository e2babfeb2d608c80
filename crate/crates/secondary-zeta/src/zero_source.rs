//! Ordered tables of Riemann-zero ordinates: file ingestion with precision
//! inference, counting queries N(T), and a desk-scale generator that finds
//! ordinates as sign changes of Z(t) on a Gram-point-seeded grid.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rug::ops::CompleteRound;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::prec::{prec_for_digits, to_decimal, to_fixed, two_pi};
use crate::theta::gram_point;
use crate::zeta::{z_f64, ZEngine};

/// Hard ceiling for the generator; scanning higher than the ~75000th Gram
/// interval in double precision is out of scope for a desk-scale tool.
pub const GENERATOR_CAP: usize = 100_000;

/// Most fractional digits the polish stage will promise.
pub const GENERATOR_DIGIT_BUDGET: u32 = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    File,
    Generated,
}

/// Immutable, strictly ascending table of zero ordinates. `source_digits` is
/// the number of fractional decimal digits every entry is good for; all
/// precision claims downstream are made relative to it.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    gammas: Vec<Float>,
    source_digits: u32,
    prec: u32,
    origin: Origin,
}

impl ZeroTable {
    /// Builds a table from already-materialized ordinates, enforcing the
    /// structural invariants (nonempty, above the first zero, strictly
    /// ascending).
    pub fn from_ordinates(gammas: Vec<Float>, source_digits: u32, prec: u32) -> Result<Self> {
        Self::from_parts(gammas, source_digits, prec, Origin::Generated, None)
    }

    fn from_parts(
        gammas: Vec<Float>,
        source_digits: u32,
        prec: u32,
        origin: Origin,
        lines: Option<&[usize]>,
    ) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::EmptyTable);
        }
        if gammas[0] <= 14u32 {
            return Err(Error::OrdinateBelowFirstZero { index: 0 });
        }
        for i in 1..gammas.len() {
            if gammas[i] <= gammas[i - 1] {
                return Err(match lines {
                    Some(lines) => Error::NonMonotonic {
                        path: PathBuf::from("<ordinates>"),
                        line: lines[i],
                        value: to_decimal(&gammas[i], 20),
                    },
                    None => Error::NonMonotonic {
                        path: PathBuf::from("<ordinates>"),
                        line: i,
                        value: to_decimal(&gammas[i], 20),
                    },
                });
            }
        }
        Ok(Self {
            gammas,
            source_digits,
            prec,
            origin,
        })
    }

    /// Loads a newline-separated ordinate table. Lines starting with '#' are
    /// comments. The per-entry precision is inferred from the digits actually
    /// present (headers are not trusted) and must reach `min_digits`.
    pub fn load(path: &Path, min_digits: u32) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut entries: Vec<(usize, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            entries.push((idx + 1, line));
        }
        if entries.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut min_frac = u32::MAX;
        let mut max_sig = 0u32;
        for &(line, s) in &entries {
            let (frac, sig) = decimal_digit_counts(s).ok_or_else(|| Error::ParseOrdinate {
                path: path.to_owned(),
                line,
                reason: format!("not a decimal number: {s:?}"),
            })?;
            min_frac = min_frac.min(frac);
            max_sig = max_sig.max(sig);
        }
        if min_frac < min_digits {
            return Err(Error::InsufficientDigits {
                observed: min_frac,
                required: min_digits,
            });
        }
        let prec = prec_for_digits(max_sig.max(20)) + 8;
        let mut gammas = Vec::with_capacity(entries.len());
        let mut lines = Vec::with_capacity(entries.len());
        for &(line, s) in &entries {
            let v = Float::parse(s)
                .map(|v| v.complete(prec))
                .map_err(|e| Error::ParseOrdinate {
                    path: path.to_owned(),
                    line,
                    reason: e.to_string(),
                })?;
            if let Some(prev) = gammas.last() {
                if v <= *prev {
                    return Err(Error::NonMonotonic {
                        path: path.to_owned(),
                        line,
                        value: s.to_string(),
                    });
                }
            }
            gammas.push(v);
            lines.push(line);
        }
        let mut table = Self::from_parts(gammas, min_frac, prec, Origin::File, Some(&lines))?;
        table.origin = Origin::File;
        Ok(table)
    }

    /// Writes the table in the same text format `load` reads: a '#' header
    /// with count, digits, and writer version, then one fixed-point ordinate
    /// per line at exactly `source_digits` fractional digits.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        out.push_str(&format!(
            "# zero ordinates: count={} digits={}\n# writer: {} v{}\n",
            self.gammas.len(),
            self.source_digits,
            env!("CARGO_PKG_NAME"),
            env!("CARGO_PKG_VERSION"),
        ));
        for g in &self.gammas {
            out.push_str(&to_fixed(g, self.source_digits));
            out.push('\n');
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// N(T): zeros strictly below T. Errors if T sits on a tabulated
    /// ordinate within the table's own precision (the count would be
    /// ill-defined) or beyond coverage (the count would be a lie).
    ///
    /// Coverage extends one mean gap past the last entry: the table's own
    /// average gap when it has two or more entries, else the local
    /// asymptotic 2 pi / log(gamma / 2 pi).
    pub fn count_below(&self, t: &Float) -> Result<usize> {
        let last = self.last();
        let mean_gap = if self.gammas.len() >= 2 {
            Float::with_val(64, last - &self.gammas[0]) / (self.gammas.len() - 1) as u64
        } else {
            two_pi(64) / (last.clone() / two_pi(64)).ln()
        };
        if (last.clone() + mean_gap) < *t {
            return Err(Error::CutoffBeyondCoverage {
                t: to_decimal(t, 20),
                last: to_decimal(last, 20),
            });
        }
        let idx = self.gammas.partition_point(|g| g < t);
        let tol = tolerance(self.prec, self.source_digits);
        for cand in [idx.wrapping_sub(1), idx] {
            if let Some(g) = self.gammas.get(cand) {
                let diff = Float::with_val(self.prec, g - t).abs();
                if diff < tol {
                    return Err(Error::CutoffOnOrdinate {
                        t: to_decimal(t, 20),
                    });
                }
            }
        }
        Ok(idx)
    }

    /// A cutoff guaranteed to cover the whole table: last ordinate plus half
    /// the local mean gap 2 pi / log(gamma / 2 pi).
    pub fn default_cutoff(&self) -> Float {
        let prec = self.prec.max(96);
        let last = Float::with_val(prec, self.last());
        let half_gap = crate::prec::pi(prec) / (last.clone() / two_pi(prec)).ln();
        last + half_gap
    }

    /// First `k` entries as a table of their own; used for convergence
    /// studies over growing zero counts.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyTable);
        }
        Ok(Self {
            gammas: self.gammas[..k.min(self.gammas.len())].to_vec(),
            source_digits: self.source_digits,
            prec: self.prec,
            origin: self.origin,
        })
    }

    pub fn gammas(&self) -> &[Float] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn last(&self) -> &Float {
        self.gammas.last().expect("table is never empty")
    }

    pub fn source_digits(&self) -> u32 {
        self.source_digits
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }
}

/// (fractional digits, significant digits) carried by a decimal literal,
/// exponent-adjusted; None if the string is not a plain decimal.
fn decimal_digit_counts(s: &str) -> Option<(u32, u32)> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mant, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let frac = (frac_part.len() as i64 - exp).max(0) as u32;
    let sig = (int_part.trim_start_matches('0').len() + frac_part.len()) as u32;
    Some((frac, sig))
}

/// 10^(-digits) at `prec` bits, the table's own resolution.
fn tolerance(prec: u32, digits: u32) -> Float {
    Float::with_val(prec, Integer::from(Integer::u_pow_u(10, digits))).recip()
}

/// Generates the first `count` ordinates, each correct to at least
/// `target_digits` fractional digits.
///
/// Pipeline: seed a grid with Gram points (8 nodes per Gram interval), scan
/// Z(t) in double precision for sign changes, densify any stretch whose
/// candidate gap exceeds 1.6x the local mean, then audit the census: a step
/// in the windowed drift of bracket count against the smooth count exposes
/// close pairs that fit inside one scan cell, and the space around the step
/// is rescanned at escalating density. Each bracket is bisected to ~1e-6 and
/// polished with a safeguarded secant iteration on the MPFR evaluator. The
/// count found below several sample heights is cross-checked against the
/// smooth counting term before the table is accepted.
pub fn generate_zeros(count: usize, target_digits: u32) -> Result<ZeroTable> {
    generate_zeros_tuned(count, target_digits, 8, 0)
}

/// `generate_zeros` with the scan density and polish precision exposed, so a
/// run can be cross-checked against a denser, higher-precision run of the
/// same pipeline.
pub fn generate_zeros_tuned(
    count: usize,
    target_digits: u32,
    scan_parts: usize,
    prec_boost: u32,
) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::CountZero);
    }
    if count > GENERATOR_CAP {
        return Err(Error::CountBeyondCap {
            requested: count,
            cap: GENERATOR_CAP,
        });
    }
    if target_digits > GENERATOR_DIGIT_BUDGET {
        return Err(Error::DigitsBeyondBudget {
            digits: target_digits,
            budget: GENERATOR_DIGIT_BUDGET,
        });
    }

    // Gram points up to index count+8 cover the first `count` zeros with
    // slack; Gram's law failures move single zeros by about one interval,
    // and the census audit needs a few trailing brackets to see a step.
    let grid_hi = count as i64 + 8;
    let mut nodes: Vec<f64> = Vec::with_capacity(scan_parts * (grid_hi as usize + 2));
    let mut g_prev = gram_point(-1);
    for n in 0..=grid_hi {
        let g_next = gram_point(n);
        push_scan_nodes(&mut nodes, g_prev, g_next, scan_parts);
        g_prev = g_next;
    }
    nodes.push(g_prev);

    let mut brackets = scan_brackets(&nodes);
    densify(&mut brackets, &nodes)?;
    recover_missed_zeros(&mut brackets)?;
    if brackets.len() < count {
        return Err(Error::MissedZeros {
            missing: count - brackets.len(),
            near: g_prev,
        });
    }
    brackets.truncate(count);

    // double-precision bisection to a width the polish stage can trust
    let seeds: Vec<(f64, f64)> = brackets
        .iter()
        .map(|&(mut a, mut b)| {
            let mut fa = z_f64(a);
            for _ in 0..24 {
                let m = 0.5 * (a + b);
                let fm = z_f64(m);
                if fa * fm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            (a, b)
        })
        .collect();

    let polish_prec = prec_for_digits(target_digits + 6) + 24 + prec_boost;
    let engine = ZEngine::new(polish_prec, seeds.last().expect("nonempty").1 + 1.0);
    let gammas: Vec<Float> = seeds
        .par_iter()
        .map(|&(a, b)| polish_root(&engine, a, b, target_digits))
        .collect::<Result<_>>()?;

    let table = ZeroTable::from_parts(
        gammas,
        target_digits,
        polish_prec,
        Origin::Generated,
        None,
    )?;
    validate_against_smooth_count(&table)?;
    Ok(table)
}

fn push_scan_nodes(nodes: &mut Vec<f64>, a: f64, b: f64, parts: usize) {
    let h = (b - a) / parts as f64;
    for i in 0..parts {
        nodes.push(a + i as f64 * h);
    }
}

/// Sign-change brackets of Z(t) across consecutive grid nodes.
fn scan_brackets(nodes: &[f64]) -> Vec<(f64, f64)> {
    let values: Vec<f64> = nodes.iter().map(|&t| z_f64(t)).collect();
    let mut out = Vec::new();
    for i in 1..nodes.len() {
        if values[i - 1] * values[i] < 0.0 {
            out.push((nodes[i - 1], nodes[i]));
        }
    }
    out
}

/// Re-scans any stretch of the grid not covered by a bracket whose length
/// exceeds 1.6x the local mean zero gap, at 4x the density per round.
/// Catches the close pairs a uniform Gram-interval grid steps over. Only the
/// space between bracket endpoints is rescanned, so an already-bracketed
/// zero can never be found a second time.
fn densify(brackets: &mut Vec<(f64, f64)>, nodes: &[f64]) -> Result<()> {
    for round in 0..5u32 {
        let mut suspects: Vec<(f64, f64, usize)> = Vec::new();
        let density = 8usize << (2 * round);
        for i in 0..=brackets.len() {
            let lo = if i == 0 { nodes[0] } else { brackets[i - 1].1 };
            let hi = if i == brackets.len() {
                *nodes.last().expect("grid nonempty")
            } else {
                brackets[i].0
            };
            if hi <= lo {
                continue;
            }
            let t_mid = 0.5 * (lo + hi);
            if t_mid < 16.0 {
                continue;
            }
            let mean_gap = 2.0 * std::f64::consts::PI / (t_mid / (2.0 * std::f64::consts::PI)).ln();
            if hi - lo > 1.6 * mean_gap {
                let parts = (((hi - lo) / mean_gap) as usize + 1) * density;
                suspects.push((lo, hi, parts.min(20_000)));
            }
        }
        if suspects.is_empty() {
            return Ok(());
        }
        let mut found_new = false;
        for (lo, hi, parts) in suspects {
            let mut sub = Vec::with_capacity(parts + 1);
            push_scan_nodes(&mut sub, lo, hi, parts);
            sub.push(hi);
            let extra = scan_brackets(&sub);
            if !extra.is_empty() {
                found_new = true;
                brackets.extend(extra);
            }
        }
        if !found_new {
            return Ok(());
        }
        brackets.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite brackets"));
        brackets.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);
    }
    Ok(())
}

/// Bracket count minus the smooth count at each bracket's midpoint. Hovers
/// inside +/-1.3 at desk heights; a missed zero shifts everything after it
/// down by one.
fn census_drift(brackets: &[(f64, f64)]) -> Vec<f64> {
    brackets
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (i + 1) as f64 - crate::asymptotics::l_main_f64(0.5 * (a + b)))
        .collect()
}

fn median(w: &[f64]) -> f64 {
    let mut v = w.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite drift"));
    0.5 * (v[v.len() / 2] + v[(v.len() - 1) / 2])
}

fn merge_overlaps(windows: &mut Vec<(usize, usize)>) {
    windows.sort_unstable();
    let mut merged: Vec<(usize, usize)> = Vec::with_capacity(windows.len());
    for &(lo, hi) in windows.iter() {
        if let Some(last) = merged.last_mut() {
            if lo <= last.1 {
                last.1 = last.1.max(hi);
                continue;
            }
        }
        merged.push((lo, hi));
    }
    *windows = merged;
}

/// Both zeros of a Lehmer-like pair can fall inside one scan cell, leaving
/// every visible gap ordinary; only the census exposes them. A step of about
/// one in the windowed median of the census drift marks the spot, and the
/// uncovered space around it is rescanned at escalating density. A step that
/// survives every rescan is a hard error, never a silent deficit.
fn recover_missed_zeros(brackets: &mut Vec<(f64, f64)>) -> Result<()> {
    const W: usize = 16;
    for round in 0..4u32 {
        let drift = census_drift(brackets);
        let mut windows: Vec<(usize, usize)> = Vec::new();
        let mut c = W;
        while c + W <= drift.len() {
            let step = median(&drift[c..c + W]) - median(&drift[c - W..c]);
            if step.abs() >= 0.55 {
                windows.push((c.saturating_sub(W + 8), (c + W + 8).min(brackets.len() - 1)));
            }
            c += W / 2;
        }
        merge_overlaps(&mut windows);
        if windows.is_empty() {
            break;
        }
        let density = 256u64 << (2 * round);
        let mut found_new = false;
        for (lo_idx, hi_idx) in windows {
            for j in lo_idx..hi_idx {
                let lo = brackets[j].1;
                let hi = brackets[j + 1].0;
                if hi <= lo {
                    continue;
                }
                let t_mid = 0.5 * (lo + hi);
                let mean_gap =
                    2.0 * std::f64::consts::PI / (t_mid / (2.0 * std::f64::consts::PI)).ln();
                let parts = (((hi - lo) / mean_gap * density as f64) as usize).clamp(64, 200_000);
                let mut sub = Vec::with_capacity(parts + 1);
                push_scan_nodes(&mut sub, lo, hi, parts);
                sub.push(hi);
                let extra = scan_brackets(&sub);
                if !extra.is_empty() {
                    found_new = true;
                    brackets.extend(extra);
                }
            }
        }
        if !found_new {
            break;
        }
        brackets.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite brackets"));
        brackets.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);
    }

    // a step that survived every rescan round marks real missing zeros;
    // natural windowed-median fluctuation stays well below this line
    let drift = census_drift(brackets);
    let mut c = W;
    while c + W <= drift.len() {
        let step = median(&drift[c..c + W]) - median(&drift[c - W..c]);
        if step.abs() >= 0.80 {
            return Err(Error::MissedZeros {
                missing: step.abs().round().max(1.0) as usize,
                near: 0.5 * (brackets[c].0 + brackets[c].1),
            });
        }
        c += W / 2;
    }
    Ok(())
}

/// Secant iteration with a sign-bracket safeguard; falls back to bisection
/// whenever the secant step leaves the bracket or degenerates.
fn polish_root(engine: &ZEngine, a: f64, b: f64, target_digits: u32) -> Result<Float> {
    let work = engine.work_prec();
    let mut lo = Float::with_val(work, a);
    let mut hi = Float::with_val(work, b);
    let mut f_lo = engine.z(&lo);
    let f_hi = engine.z(&hi);
    if f_lo.is_zero() {
        return Ok(lo);
    }
    if f_hi.is_zero() {
        return Ok(hi);
    }
    let lo_neg = f_lo.is_sign_negative();
    debug_assert!(lo_neg != f_hi.is_sign_negative(), "seed bracket lost the sign change");
    let tol = tolerance(work, target_digits + 3);

    let mut x0 = lo.clone();
    let mut f0 = f_lo.clone();
    let mut x1 = hi.clone();
    let mut f1 = f_hi;
    for _ in 0..80 {
        let width = Float::with_val(work, &hi - &lo);
        if width < tol {
            return Ok(Float::with_val(work, &lo + &hi) / 2u32);
        }
        let denom = Float::with_val(work, &f1 - &f0);
        let mut x2 = if denom.is_zero() {
            Float::with_val(work, &lo + &hi) / 2u32
        } else {
            let step = (&x1 - &x0).complete(work) * &f1 / denom;
            x1.clone() - step
        };
        if !(x2 > lo && x2 < hi) {
            x2 = Float::with_val(work, &lo + &hi) / 2u32;
        }
        let f2 = engine.z(&x2);
        if f2.is_zero() {
            return Ok(x2);
        }
        if f2.is_sign_negative() == lo_neg {
            lo = x2.clone();
            f_lo = f2.clone();
        } else {
            hi = x2.clone();
        }
        let _ = &f_lo;
        x0 = std::mem::replace(&mut x1, x2);
        f0 = std::mem::replace(&mut f1, f2);
    }
    Err(Error::NoConvergence)
}

/// |N(T) - L(T)| must stay within the empirical counting-remainder slack
/// 3 + 0.5 log T at a spread of sample heights, else zeros were missed.
fn validate_against_smooth_count(table: &ZeroTable) -> Result<()> {
    let samples = 16.min(table.len());
    for i in 1..=samples {
        let idx = table.len() * i / samples;
        let idx = idx.clamp(1, table.len()) - 1;
        let g = table.gammas()[idx].to_f64();
        let t = g + 1e-6;
        let found = (idx + 1) as f64;
        let smooth = crate::asymptotics::l_main_f64(t);
        let slack = 3.0 + 0.5 * t.ln();
        if (found - smooth).abs() > slack {
            let missing = ((smooth - found).abs() - slack).ceil() as usize;
            return Err(Error::MissedZeros {
                missing: missing.max(1),
                near: t,
            });
        }
    }
    Ok(())
}
