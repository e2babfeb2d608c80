//! Reference Laurent coefficients of Z(s) about s = 1 and evaluation of the
//! expansion
//!
//! ```text
//! Z(s) = 1/(2 pi (s-1)^2) - log(2 pi)/(2 pi (s-1))
//!        + sum_{n>=0} C_n (s-1)^n / n!
//! ```
//!
//! inside the open disk |s - 1| < 2, plus the independent cross-check for
//! real s > 1: direct summation over tabulated ordinates with a closed-form
//! smooth tail and boundary correction.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

use crate::asymptotics::{q_emp, BptConstants};
use crate::error::{Error, Result};
use crate::prec::{parse_decimal, to_decimal, two_pi};
use crate::sums::power_sum;
use crate::zero_source::ZeroTable;

/// The printed 50-digit reference values: contiguous through n = 10, then
/// every tenth index through 50.
const REFERENCE_ENTRIES: [(u32, &str); 15] = [
    (0, "0.2516367513127059665334663293426453755147595873836"),
    (1, "-0.1300444859118885707285274533988846777460553964263"),
    (2, "0.0824214912550528039526632284933172430791521350021"),
    (3, "-0.0321581827282544905964296099391141952179545405019"),
    (4, "-0.0531801364893419772868761573698112582469915802523"),
    (5, "0.2110321083617385257637243839874627961215847994456"),
    (6, "-0.4933371057135871285817870279321636575675112589435"),
    (7, "0.9731261196976619662852108486791876458635644729040"),
    (8, "-1.8021253179931622367536330625155209079039086674443"),
    (9, "3.7133510644596133576858937986178468541115390150895"),
    (10, "-11.583138616714443418004214394156033470878899508634"),
    (20, "-7.6931751083769270011123002218244304577221846239268e9"),
    (30, "-8.1910409909869137068367900925700302382658971132757e20"),
    (40, "-2.4605043425772457379890548734866774381567481629777e33"),
    (50, "-8.9568228254793711194813512752380738598982095960590e46"),
];

/// C_0 to 111 decimal places, kept as a standalone constant; series
/// evaluation uses the uniform 50-digit table instead.
pub const C0_EXTENDED: &str = "0.251636751312705966533466329342645375514759587383654550533059356530585960570182311791574050852516937760994148142";

/// Sparse map n -> C_n. Indices need not be contiguous; evaluation is only
/// allowed through the contiguous prefix.
pub struct CoefficientTable {
    entries: BTreeMap<u32, Float>,
    provenance: String,
}

impl CoefficientTable {
    /// The embedded 15-entry reference table.
    pub fn reference(prec: u32) -> Self {
        let entries = REFERENCE_ENTRIES
            .iter()
            .map(|(n, s)| (*n, parse_decimal(s, prec).expect("embedded literal")))
            .collect();
        Self {
            entries,
            provenance: "embedded 50-digit reference table".to_string(),
        }
    }

    /// Loads "n<TAB>decimal" lines; '#' comments and blank lines ignored.
    pub fn load(path: &Path, prec: u32) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| Error::ParseCoefficient {
                path: PathBuf::from(path),
                line: idx + 1,
                reason,
            };
            let (n_str, v_str) = line
                .split_once('\t')
                .ok_or_else(|| err("expected index<TAB>value".to_string()))?;
            let n: u32 = n_str
                .trim()
                .parse()
                .map_err(|e| err(format!("bad index: {e}")))?;
            let v = parse_decimal(v_str.trim(), prec)
                .ok_or_else(|| err(format!("bad decimal: {v_str:?}")))?;
            if entries.insert(n, v).is_some() {
                return Err(err(format!("duplicate index {n}")));
            }
        }
        if entries.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(Self {
            entries,
            provenance: path.display().to_string(),
        })
    }

    /// Writes the table in the exact format [`CoefficientTable::load`] reads.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::from("# laurent coefficients: n<TAB>C_n\n");
        for (n, v) in &self.entries {
            out.push_str(&format!("{n}\t{}\n", to_decimal(v, 50)));
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    pub fn get(&self, n: u32) -> Option<&Float> {
        self.entries.get(&n)
    }

    /// Largest k such that 0..=k are all present.
    pub fn contiguous_max(&self) -> Option<u32> {
        let mut k = None;
        let mut expect = 0u32;
        for n in self.entries.keys() {
            if *n != expect {
                break;
            }
            k = Some(expect);
            expect += 1;
        }
        k
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Float)> {
        self.entries.iter()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

/// One evaluation of the truncated expansion.
pub struct LaurentPoint {
    pub s: Complex,
    /// regular-series terms included (max_n + 1)
    pub terms_used: u32,
    pub value: Complex,
    /// magnitude of the last regular term, a truncation indicator
    pub last_term_magnitude: Float,
}

/// Evaluates principal part plus the regular series through index `max_n`.
/// Requires 0 < |s - 1| < 2 and a coefficient table contiguous through
/// `max_n`.
pub fn laurent_eval(s: &Complex, coeffs: &CoefficientTable, max_n: u32) -> Result<LaurentPoint> {
    let prec = s.prec().0;
    let u = Complex::with_val(prec, s - &Complex::with_val(prec, 1u32));
    if u.real().is_zero() && u.imag().is_zero() {
        return Err(Error::PoleAtOne);
    }
    let radius = u
        .clone()
        .norm()
        .into_real_imag()
        .0
        .sqrt();
    if !(radius.clone() < 2u32) {
        return Err(Error::OutsideDisk {
            radius: to_decimal(&radius, 10),
        });
    }
    let available = coeffs.contiguous_max().unwrap_or(0);
    if coeffs.contiguous_max().is_none() || max_n > available {
        return Err(Error::NonContiguousCoefficients {
            requested: max_n,
            available,
        });
    }

    let two_pi = two_pi(prec);
    // principal part 1/(2 pi u^2) - log(2 pi)/(2 pi u)
    let u_sq = u.clone().square();
    let mut value = Complex::with_val(prec, 1u32) / (u_sq * &two_pi);
    value -= Complex::with_val(prec, (two_pi.clone().ln(), Float::new(prec))) / (u.clone() * &two_pi);

    // regular series, accumulated in index order; core_n = u^n / n!
    let mut core = Complex::with_val(prec, 1u32);
    let mut last = Float::new(prec);
    for n in 0..=max_n {
        if n > 0 {
            core *= &u;
            core /= n;
        }
        let c_n = coeffs.get(n).expect("contiguity checked");
        let term = Complex::with_val(
            prec,
            (
                (c_n * core.real()).complete(prec),
                (c_n * core.imag()).complete(prec),
            ),
        );
        last = term
            .clone()
            .norm()
            .into_real_imag()
            .0
            .sqrt();
        value += term;
    }
    Ok(LaurentPoint {
        s: s.clone(),
        terms_used: max_n + 1,
        value,
        last_term_magnitude: last,
    })
}

/// One regular term C_n (s-1)^n / n!, for increment checks.
pub fn laurent_term(s: &Complex, coeffs: &CoefficientTable, n: u32) -> Result<Complex> {
    let prec = s.prec().0;
    let c_n = coeffs
        .get(n)
        .ok_or(Error::NonContiguousCoefficients {
            requested: n,
            available: coeffs.contiguous_max().unwrap_or(0),
        })?;
    let u = Complex::with_val(prec, s - &Complex::with_val(prec, 1u32));
    let mut core = Complex::with_val(prec, 1u32);
    for k in 1..=n {
        core *= &u;
        core /= k;
    }
    Ok(Complex::with_val(
        prec,
        (
            (c_n * core.real()).complete(prec),
            (c_n * core.imag()).complete(prec),
        ),
    ))
}

/// Direct evaluation of Z(s) for real s > 1 from a finite table: the power
/// sum below T, the closed-form smooth tail
/// (1/2pi)[T^{1-s} log(T/2pi)/(s-1) + T^{1-s}/(s-1)^2], and the boundary
/// correction -Q(T)/T^s.
pub struct TailEstimate {
    pub value: Float,
    /// step-remainder envelope [2s(a0 + a1 log T) + (a1+a2)] / T^{s+1}
    pub error_envelope: Float,
    pub zeros_used: usize,
    pub cutoff: Float,
}

pub fn direct_z_tail(s: &Float, table: &ZeroTable, t: &Float) -> Result<TailEstimate> {
    let sum = power_sum(table, s, t)?;
    let prec = sum.value.prec();
    let t_work = Float::with_val(prec, t);
    let s_work = Float::with_val(prec, s);

    let s_minus_1 = Float::with_val(prec, &s_work - 1u32);
    let t_pow = t_work.clone().pow(&(Float::with_val(prec, 1u32) - &s_work));
    let log_ratio = (t_work.clone() / two_pi(prec)).ln();
    let tail = (t_pow.clone() * log_ratio / &s_minus_1 + t_pow / s_minus_1.clone().square())
        / two_pi(prec);

    let q = q_emp(table, &t_work)?;
    let correction = q / t_work.clone().pow(&s_work);

    let c = BptConstants::new(prec);
    let ln_t = t_work.clone().ln();
    let envelope_num = ((&c.a1 * &ln_t).complete(prec) + &c.a0) * 2u32 * &s_work
        + (&c.a1 + &c.a2).complete(prec);
    let envelope = envelope_num / t_work.clone().pow(&(s_work + 1u32));

    Ok(TailEstimate {
        value: sum.value + tail - correction,
        error_envelope: envelope,
        zeros_used: sum.terms,
        cutoff: t.clone(),
    })
}
