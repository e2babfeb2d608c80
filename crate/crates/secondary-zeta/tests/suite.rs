//! Module-level correctness suite: frozen reference values, closed-form
//! cross-checks, and invariants at desk scale. Reference decimals were
//! produced by an independent arbitrary-precision implementation and are
//! asserted to stated absolute tolerances.

use rug::Float;
use secondary_zeta::prec::{self, parse_decimal, to_decimal, to_fixed, DEFAULT_PREC};
use secondary_zeta::theta::{gram_point, theta_f64, theta_hp, ThetaEngine};
use secondary_zeta::zeta::{z_f64, zeta_half_f64, ZEngine};

fn dec(s: &str) -> Float {
    parse_decimal(s, DEFAULT_PREC).expect("valid reference decimal")
}

/// |x - reference| < 10^tol_exp
fn assert_close(x: &Float, reference: &str, tol_exp: i32, what: &str) {
    let r = dec(reference);
    let diff = Float::with_val(DEFAULT_PREC, x - &r).abs();
    let tol = Float::with_val(DEFAULT_PREC, Float::i_exp(1, 0)) * Float::with_val(DEFAULT_PREC, 10f64).pow_i(tol_exp);
    assert!(
        diff < tol,
        "{what}: |{} - {reference}| = {} >= 1e{tol_exp}",
        to_decimal(x, 40),
        to_decimal(&diff, 6)
    );
}

trait PowI {
    fn pow_i(self, e: i32) -> Float;
}
impl PowI for Float {
    fn pow_i(self, e: i32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}

mod prec_tests {
    use super::*;

    #[test]
    fn digit_mapping_round_trips() {
        assert_eq!(prec::decimal_digits(192), 58);
        assert!(prec::prec_for_digits(58) >= 192);
        for d in [8, 12, 20, 50, 100] {
            assert!(prec::decimal_digits(prec::prec_for_digits(d)) >= d);
        }
    }

    #[test]
    fn decimal_format_parses_back() {
        for s in [
            "0.42333783699382573900809415541",
            "-0.13005204046642585705",
            "1131944.47182486226849153321",
            "3.7133510644596133576858937986",
            "-8.1910409909869137068367900925700302382658971132757e20",
            "2.5e-30",
        ] {
            let x = dec(s);
            let out = to_decimal(&x, 40);
            let back = dec(&out);
            let diff = Float::with_val(DEFAULT_PREC, &x - &back).abs();
            let scale = x.clone().abs();
            assert!(diff <= scale * Float::with_val(DEFAULT_PREC, 1e-38), "{s} -> {out}");
        }
    }

    #[test]
    fn fixed_format_is_exact_width() {
        let x = dec("14.1347251417346937904572519836");
        assert_eq!(to_fixed(&x, 9), "14.134725142");
        assert_eq!(to_fixed(&x, 0), "14");
        let neg = dec("-0.0004");
        assert_eq!(to_fixed(&neg, 6), "-0.000400");
        let z = Float::new(64);
        assert_eq!(to_fixed(&z, 3), "0.000");
    }
}

mod theta_tests {
    use super::*;

    // theta at spot heights, 33 reference digits
    const THETA_G1: &str = "-1.72867024667583774735096150324271";
    const THETA_100: &str = "87.9721652317872196254831291137487";
    const THETA_1000: &str = "2034.54642803803160870334515120760";
    const THETA_10000: &str = "31861.9238308358208729503350141636";

    #[test]
    fn high_precision_theta_matches_reference() {
        let eng = ThetaEngine::new(DEFAULT_PREC);
        for (t, want) in [
            ("14.134725141734694", THETA_G1),
            ("100", THETA_100),
            ("1000", THETA_1000),
            ("10000", THETA_10000),
        ] {
            let v = eng.theta(&dec(t));
            assert_close(&v, want, -28, "theta");
        }
    }

    #[test]
    fn one_shot_matches_engine() {
        let eng = ThetaEngine::new(DEFAULT_PREC);
        let t = dec("371.9");
        let a = eng.theta(&t);
        let b = theta_hp(&t, DEFAULT_PREC);
        let diff = Float::with_val(DEFAULT_PREC, &a - &b).abs();
        assert!(diff < Float::with_val(DEFAULT_PREC, 1e-50));
    }

    #[test]
    fn f64_series_tracks_high_precision() {
        let eng = ThetaEngine::new(96);
        for t in [14.134725141734694, 50.0, 100.0, 1000.0, 10000.0, 25000.0] {
            let hp = eng.theta(&Float::with_val(96, t)).to_f64();
            let lo = theta_f64(t);
            assert!(
                (hp - lo).abs() <= 1e-11 * hp.abs().max(1.0),
                "theta_f64({t}) = {lo}, reference {hp}"
            );
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for t in [20.0, 100.0, 5000.0] {
            let h = 1e-5;
            let fd = (theta_f64(t + h) - theta_f64(t - h)) / (2.0 * h);
            assert!((theta_deriv_reference(t) - fd).abs() < 1e-7);
        }
        fn theta_deriv_reference(t: f64) -> f64 {
            secondary_zeta::theta::theta_deriv_f64(t)
        }
    }

    #[test]
    fn gram_points_match_reference() {
        for (n, want) in [
            (-1i64, 9.666908056130192),
            (0, 17.845599540410861),
            (100, 238.58259051450292),
        ] {
            let g = gram_point(n);
            assert!((g - want).abs() < 1e-9, "g_{n} = {g}, want {want}");
            // defining property theta(g_n) = n pi
            let resid = theta_f64(g) - n as f64 * std::f64::consts::PI;
            assert!(resid.abs() < 1e-8);
        }
    }
}

mod zeta_tests {
    use super::*;

    const ZETA_100_RE: &str = "2.69261988568132409047609647052";
    const ZETA_100_IM: &str = "-0.0203860296025981617707268532983";
    const Z_100: &str = "2.69269705666446347499537982869";
    const ZETA_1000_RE: &str = "0.356334367194396055074402476711";
    const ZETA_1000_IM: &str = "0.931997831232993665115060432737";
    const Z_1000: &str = "0.997794637521586613986002685188";

    #[test]
    fn high_precision_zeta_matches_reference() {
        let eng = ZEngine::new(DEFAULT_PREC, 1100.0);
        let v100 = eng.zeta_half(&dec("100"));
        assert_close(v100.real(), ZETA_100_RE, -27, "Re zeta(1/2+100i)");
        assert_close(v100.imag(), ZETA_100_IM, -27, "Im zeta(1/2+100i)");
        let v1000 = eng.zeta_half(&dec("1000"));
        assert_close(v1000.real(), ZETA_1000_RE, -27, "Re zeta(1/2+1000i)");
        assert_close(v1000.imag(), ZETA_1000_IM, -27, "Im zeta(1/2+1000i)");
    }

    #[test]
    fn high_precision_z_matches_reference() {
        let eng = ZEngine::new(DEFAULT_PREC, 1100.0);
        assert_close(&eng.z(&dec("100")), Z_100, -27, "Z(100)");
        assert_close(&eng.z(&dec("1000")), Z_1000, -27, "Z(1000)");
    }

    #[test]
    fn z_vanishes_at_first_ordinate() {
        let eng = ZEngine::new(DEFAULT_PREC, 50.0);
        let gamma1 = dec("14.1347251417346937904572519836");
        let v = eng.z(&gamma1).abs();
        // reference ordinate carries 29 digits; Z' there is O(1)
        assert!(v < Float::with_val(DEFAULT_PREC, 1e-27), "Z(gamma_1) = {}", to_decimal(&v, 6));
    }

    #[test]
    fn f64_zeta_tracks_reference() {
        let (re, im) = zeta_half_f64(100.0);
        assert!((re - 2.6926198856813241).abs() < 1e-10);
        assert!((im + 0.0203860296025982).abs() < 1e-10);
        assert!((z_f64(100.0) - 2.6926970566644635).abs() < 1e-10);
        assert!((z_f64(1000.0) - 0.9977946375215866).abs() < 1e-9);
    }

    #[test]
    fn f64_z_changes_sign_across_first_ordinates() {
        // gamma_1 ~ 14.1347, gamma_2 ~ 21.0220, gamma_3 ~ 25.0109
        for (a, b) in [(14.0, 14.3), (20.9, 21.1), (24.9, 25.1)] {
            assert!(z_f64(a) * z_f64(b) < 0.0, "no sign change in ({a},{b})");
        }
    }

    #[test]
    fn engine_agrees_with_f64_at_height() {
        let eng = ZEngine::new(96, 30000.0);
        for t in [6.5, 777.7, 9877.0, 29000.0] {
            let hp = eng.z(&Float::with_val(96, t)).to_f64();
            let lo = z_f64(t);
            assert!(
                (hp - lo).abs() < 1e-8 * hp.abs().max(1.0),
                "z({t}): f64 {lo} vs mpfr {hp}"
            );
        }
    }
}

use std::path::PathBuf;
use std::sync::OnceLock;

use secondary_zeta::zero_source::{self, generate_zeros, ZeroTable};

/// Shared desk-scale fixture: first 1000 ordinates at 12 fractional digits.
fn fixture() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| generate_zeros(1000, 12).expect("fixture generation"))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// First three reference ordinates at 29-30 digits.
const GAMMA_1: &str = "14.1347251417346937904572519836";
const GAMMA_2: &str = "21.0220396387715549926284795939";
const GAMMA_3: &str = "25.0108575801456887632137909926";

fn three_zero_table() -> ZeroTable {
    let gammas = vec![dec(GAMMA_1), dec(GAMMA_2), dec(GAMMA_3)];
    ZeroTable::from_ordinates(gammas, 28, DEFAULT_PREC).expect("valid")
}

mod zero_source_tests {
    use super::*;
    use secondary_zeta::zero_source::{Origin, GENERATOR_CAP, GENERATOR_DIGIT_BUDGET};
    use secondary_zeta::Error;

    #[test]
    fn loads_and_counts_reference_ordinates() {
        let path = tmp("three_zeros.txt");
        std::fs::write(&path, "# first three\n14.13472514\n21.02203963\n25.01085758\n").unwrap();
        let table = ZeroTable::load(&path, 8).expect("loads");
        assert_eq!(table.len(), 3);
        assert_eq!(table.source_digits(), 8);
        assert_eq!(table.origin(), Origin::File);
        // counting examples: below first, between first and second, third
        for (t, want) in [("10", 0usize), ("15", 1), ("22", 2)] {
            let got = table.count_below(&dec(t)).expect("in coverage");
            assert_eq!(got, want, "count_below({t})");
        }
    }

    #[test]
    fn load_rejects_malformed_line() {
        let path = tmp("bad_line.txt");
        std::fs::write(&path, "14.13472514\nnot-a-number\n").unwrap();
        match ZeroTable::load(&path, 4) {
            Err(Error::ParseOrdinate { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn load_rejects_disorder() {
        let path = tmp("disorder.txt");
        std::fs::write(&path, "21.02203963\n14.13472514\n").unwrap();
        match ZeroTable::load(&path, 4) {
            Err(Error::NonMonotonic { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected monotonicity error, got {other:?}"),
        }
    }

    #[test]
    fn load_rejects_empty_and_thin_files() {
        let empty = tmp("empty.txt");
        std::fs::write(&empty, "# nothing\n").unwrap();
        assert!(matches!(ZeroTable::load(&empty, 4), Err(Error::EmptyTable)));

        let thin = tmp("thin.txt");
        std::fs::write(&thin, "14.134\n21.022\n").unwrap();
        match ZeroTable::load(&thin, 8) {
            Err(Error::InsufficientDigits { observed, required }) => {
                assert_eq!((observed, required), (3, 8));
            }
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn save_load_round_trips_bit_exactly() {
        let path_a = tmp("round_a.txt");
        std::fs::write(&path_a, "14.13472514\n21.02203963\n25.01085758\n").unwrap();
        let a = ZeroTable::load(&path_a, 8).unwrap();
        let path_b = tmp("round_b.txt");
        a.save(&path_b).unwrap();
        let b = ZeroTable::load(&path_b, 8).unwrap();
        assert_eq!(a.prec(), b.prec());
        assert_eq!(a.source_digits(), b.source_digits());
        for (x, y) in a.gammas().iter().zip(b.gammas()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn constructor_enforces_invariants() {
        assert!(matches!(
            ZeroTable::from_ordinates(vec![], 10, 96),
            Err(Error::EmptyTable)
        ));
        assert!(matches!(
            ZeroTable::from_ordinates(vec![Float::with_val(96, 13.9f64)], 10, 96),
            Err(Error::OrdinateBelowFirstZero { index: 0 })
        ));
        let bad = vec![Float::with_val(96, 21f64), Float::with_val(96, 15f64)];
        assert!(matches!(
            ZeroTable::from_ordinates(bad, 10, 96),
            Err(Error::NonMonotonic { .. })
        ));
    }

    #[test]
    fn cutoff_coincident_with_ordinate_is_rejected() {
        let table = three_zero_table();
        let on_zero = table.gammas()[1].clone();
        assert!(matches!(
            table.count_below(&on_zero),
            Err(Error::CutoffOnOrdinate { .. })
        ));
        let beyond = Float::with_val(DEFAULT_PREC, 40u32);
        assert!(matches!(
            table.count_below(&beyond),
            Err(Error::CutoffBeyondCoverage { .. })
        ));
    }

    #[test]
    fn default_cutoff_covers_table() {
        let table = three_zero_table();
        let t = table.default_cutoff();
        assert_close(&t, "27.28501255383417094992", -6, "three-zero default cutoff");
        assert_eq!(table.count_below(&t).unwrap(), 3);

        let single =
            ZeroTable::from_ordinates(vec![dec(GAMMA_1)], 28, DEFAULT_PREC).unwrap();
        let t1 = single.default_cutoff();
        assert!(t1 > dec(GAMMA_1) && t1 < dec(GAMMA_2), "single-zero cutoff before next zero");
    }

    #[test]
    fn generator_rejects_bad_requests() {
        assert!(matches!(generate_zeros(0, 8), Err(Error::CountZero)));
        assert!(matches!(
            generate_zeros(GENERATOR_CAP + 1, 8),
            Err(Error::CountBeyondCap { .. })
        ));
        assert!(matches!(
            generate_zeros(3, GENERATOR_DIGIT_BUDGET + 1),
            Err(Error::DigitsBeyondBudget { .. })
        ));
    }

    #[test]
    fn generator_reproduces_first_three_ordinates() {
        let table = generate_zeros(3, 8).expect("generates");
        for (g, want) in table.gammas().iter().zip([GAMMA_1, GAMMA_2, GAMMA_3]) {
            let diff = Float::with_val(96, g - &dec(want)).abs();
            assert!(diff < 1e-8, "ordinate {} vs {want}", to_decimal(g, 20));
        }
    }

    #[test]
    fn generator_matches_denser_higher_precision_run() {
        let base = generate_zeros(100, 20).expect("base run");
        let oracle =
            zero_source::generate_zeros_tuned(100, 20, 16, 64).expect("oracle run");
        for (i, (a, b)) in base.gammas().iter().zip(oracle.gammas()).enumerate() {
            let diff = Float::with_val(160, a - b).abs();
            assert!(diff < 1e-20, "zero {i}: {} vs {}", to_decimal(a, 25), to_decimal(b, 25));
        }
    }

    #[test]
    fn generator_prefix_is_stable() {
        let small = generate_zeros(50, 10).expect("small");
        let large = generate_zeros(51, 10).expect("large");
        for (a, b) in small.gammas().iter().zip(large.gammas()) {
            assert_eq!(a, b, "prefix must be bit-identical");
        }
    }

    #[test]
    fn fixture_count_tracks_smooth_term() {
        let table = fixture();
        assert_eq!(table.len(), 1000);
        // spot-check the counting remainder allowance over the table
        for idx in [9usize, 99, 499, 999] {
            let t = table.gammas()[idx].to_f64() + 1e-9;
            let q = (idx + 1) as f64 - secondary_zeta::asymptotics::l_main_f64(t);
            assert!(q.abs() <= 3.0 + 0.5 * t.ln(), "Q({t}) = {q}");
        }
        // reference heights for the 1000th ordinate
        let g1000 = table.gammas()[999].to_f64();
        assert!((g1000 - 1419.42248094599569).abs() < 1e-9, "gamma_1000 = {g1000}");
    }

    #[test]
    fn prefix_view_matches_slice() {
        let table = fixture();
        let p = table.prefix(10).unwrap();
        assert_eq!(p.len(), 10);
        assert_eq!(p.gammas()[9], table.gammas()[9]);
        assert!(table.prefix(0).is_err());
    }
}

mod asymptotics_tests {
    use super::*;
    use secondary_zeta::asymptotics::{
        a_main, boundary_constant, e2_bound, inverse_l, l_main, l_main_f64, q_emp, BptConstants,
    };
    use secondary_zeta::quadrature::tanh_sinh;

    const L_AT_ONE: &str = "0.42333783699382573900809415541040558552834196";
    const T_PAPERLIKE: &str = "1131944.47182486226849153321";

    #[test]
    fn smooth_count_at_unit_height() {
        let v = l_main(&dec("1"));
        assert_close(&v, L_AT_ONE, -40, "l_main(1)");
        assert_close(&boundary_constant(0, DEFAULT_PREC), L_AT_ONE, -40, "B_0");
        assert!(boundary_constant(3, DEFAULT_PREC).is_zero());
    }

    #[test]
    fn smooth_count_special_points() {
        let at_2pi = l_main(&secondary_zeta::prec::two_pi(DEFAULT_PREC));
        let diff = Float::with_val(DEFAULT_PREC, &at_2pi + 0.125f64).abs();
        assert!(diff < 1e-50, "L(2pi) = -1/8");
        let big = l_main(&dec(T_PAPERLIKE));
        assert!(big > 2_000_000u32 - 20u32 && big < 2_000_000u32 + 20u32);
        assert!((l_main_f64(1000.0) - l_main(&dec("1000")).to_f64()).abs() < 1e-9);
    }

    #[test]
    fn smooth_sum_term_reference_values() {
        let t = dec(T_PAPERLIKE);
        assert_close(&a_main(0, &t), "11.3851659191300629625988922835", -24, "a_main(0)");
        assert_close(&a_main(1, &t), "115.274706656226879515389687441", -23, "a_main(1)");
        assert_close(&a_main(2, &t), "1238.16054417633393497968180553", -22, "a_main(2)");
        for n in [0, 1, 5, 10] {
            assert!(a_main(n, &dec("1")).is_zero(), "a_main({n}, 1) = 0");
        }
    }

    #[test]
    fn smooth_sum_term_low_order_identity() {
        // n = 0 collapses to (1/4pi) log T log(T/4pi^2)
        for t_str in ["50", "1000", "123456.789"] {
            let t = dec(t_str);
            let pi = secondary_zeta::prec::pi(DEFAULT_PREC);
            let four_pi_sq = pi.clone().square() * 4u32;
            let direct = t.clone().ln() * (t.clone() / four_pi_sq).ln() / (pi * 4u32);
            let diff = Float::with_val(DEFAULT_PREC, a_main(0, &t) - direct).abs();
            assert!(diff < 1e-50, "identity at T={t_str}");
        }
    }

    #[test]
    fn smooth_sum_term_matches_quadrature() {
        // oracle: (1/2pi) integral of log^n(t) log(t/2pi) / t
        let tol = dec("1e-13");
        for (n, hi) in [(5u32, "1000"), (0, "250"), (2, "10000")] {
            let t = dec(hi);
            let two_pi = secondary_zeta::prec::two_pi(DEFAULT_PREC + 32);
            let q = tanh_sinh(
                |x| {
                    let ln_x = x.clone().ln();
                    let mut v = Float::with_val(DEFAULT_PREC + 32, 1u32);
                    for _ in 0..n {
                        v *= &ln_x;
                    }
                    v * (x.clone() / &two_pi).ln() / x
                },
                &dec("1"),
                &t,
                DEFAULT_PREC,
                &tol,
            )
            .expect("quadrature converges")
                / two_pi;
            let a = a_main(n, &t);
            let rel = Float::with_val(DEFAULT_PREC, &a - &q).abs() / a.clone().abs();
            assert!(rel < 1e-12, "a_main({n},{hi}) vs quadrature: rel {}", to_decimal(&rel, 5));
        }
    }

    #[test]
    fn smooth_sum_term_derivative_property() {
        // d/dT a_main = (1/2pi) log^n(T) log(T/2pi) / T at relative 1e-8
        for n in [0u32, 1, 2, 10] {
            for t_str in ["50", "1000", "1000000"] {
                let t = dec(t_str);
                let h = Float::with_val(DEFAULT_PREC, &t) * Float::with_val(DEFAULT_PREC, 1e-12f64);
                let hi = a_main(n, &(t.clone() + &h));
                let lo = a_main(n, &(t.clone() - &h));
                let fd = (hi - lo) / (h * 2u32);
                let two_pi = secondary_zeta::prec::two_pi(DEFAULT_PREC);
                let mut exact = (t.clone() / &two_pi).ln() / &t / two_pi.clone();
                for _ in 0..n {
                    exact *= t.clone().ln();
                }
                let rel = Float::with_val(DEFAULT_PREC, &fd - &exact).abs() / exact.abs();
                assert!(rel < 1e-8, "derivative n={n} T={t_str}");
            }
        }
    }

    #[test]
    fn counting_remainder_examples() {
        let table = three_zero_table();
        let q1 = q_emp(&table, &dec("1")).unwrap();
        let mut want = l_main(&dec("1"));
        want = -want;
        let diff = Float::with_val(DEFAULT_PREC, &q1 - &want).abs();
        assert!(diff < 1e-55, "q_emp(1) = -L(1)");
        let q15 = q_emp(&table, &dec("15")).unwrap();
        let want15 = Float::with_val(DEFAULT_PREC, 1u32) - l_main(&dec("15"));
        assert!(Float::with_val(DEFAULT_PREC, &q15 - &want15).abs() < 1e-55);
    }

    #[test]
    fn counting_remainder_stays_in_envelope() {
        let table = fixture();
        // deterministic pseudo-random cutoffs across the covered range
        let lo = 20.0f64;
        let hi = table.last().to_f64() - 1.0;
        let mut x = 0.5f64;
        for _ in 0..1000 {
            x = (x * 9301.0 + 49297.0) % 233280.0 / 233280.0;
            let t = dec(&format!("{:.6}", lo + (hi - lo) * x));
            let q = q_emp(table, &t).unwrap().to_f64();
            let allow = 3.0 + 0.5 * t.to_f64().ln();
            assert!(q.abs() <= allow, "Q({}) = {q}", t.to_f64());
        }
    }

    #[test]
    fn error_envelope_reference_values() {
        let t = dec(T_PAPERLIKE);
        let c = BptConstants::new(DEFAULT_PREC);
        // exact evaluations of the envelope formula, frozen independently
        for (n, exact, printed) in [
            (0u32, "4.561665976608157829e-12", "4.5614e-12"),
            (1, "5.9076947594882058513e-11", "5.9073e-11"),
            (2, "7.6063092963781591802e-10", "7.6058e-10"),
        ] {
            let v = e2_bound(n, &t, &c);
            let e = dec(exact);
            let rel = Float::with_val(DEFAULT_PREC, &v - &e).abs() / e.clone();
            assert!(rel < 1e-15, "e2_bound({n}) exact form");
            let p = dec(printed);
            let rel_printed = Float::with_val(DEFAULT_PREC, &v - &p).abs() / p;
            assert!(rel_printed < 0.01, "e2_bound({n}) within 1% of printed value");
        }
    }

    #[test]
    fn error_envelope_decreases_in_t() {
        let c = BptConstants::new(DEFAULT_PREC);
        for n in [0u32, 1, 2, 5] {
            let mut prev: Option<Float> = None;
            for exp in 2..=7 {
                let t = dec(&format!("1e{exp}"));
                let v = e2_bound(n, &t, &c);
                assert!(v.is_sign_positive() && !v.is_zero());
                if let Some(p) = prev {
                    assert!(v < p, "e2_bound({n}) not decreasing at T=1e{exp}");
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn smooth_count_inverse_round_trips() {
        let t100 = inverse_l(&l_main(&dec("100"))).unwrap();
        let diff = Float::with_val(DEFAULT_PREC, &t100 - 100u32).abs();
        assert!(diff < 1e-50, "inverse_l(l_main(100))");
        for n_str in ["10", "1000", "2000000"] {
            let n = dec(n_str);
            let t = inverse_l(&n).unwrap();
            let back = l_main(&t);
            // the root carries 192-bit relative precision, so compare relatively
            let rel = Float::with_val(DEFAULT_PREC, &back - &n).abs() / &n;
            assert!(rel < 1e-54, "l_main(inverse_l({n_str}))");
        }
    }

    #[test]
    fn smooth_count_inverse_reference_and_edge() {
        let t = inverse_l(&dec("2000000")).unwrap();
        assert_close(&t, "1131944.79033751032926220544996", -18, "inverse_l(2e6)");
        // distance from the cutoff used by the large published run
        let d = Float::with_val(DEFAULT_PREC, &t - &dec(T_PAPERLIKE));
        assert_close(&d, "0.31851264806077067224", -15, "cutoff distance");

        let near_min = l_main(&secondary_zeta::prec::two_pi(DEFAULT_PREC)) + dec("1e-30");
        let edge = inverse_l(&near_min).unwrap();
        let delta = edge - secondary_zeta::prec::two_pi(DEFAULT_PREC);
        assert!(delta > 0u32 && delta < 1e-13f64, "edge root just above 2pi");

        assert!(inverse_l(&dec("-0.125")).is_err());
    }
}

mod sums_tests {
    use super::*;
    use secondary_zeta::sums::{power_log_sum, power_sum, SumKind};
    use secondary_zeta::Error;

    #[test]
    fn three_term_arithmetic() {
        let table = three_zero_table();
        let t = dec("30");
        let s = power_log_sum(&table, 0, &t).unwrap();
        assert_eq!(s.terms, 3);
        let mut direct = Float::new(DEFAULT_PREC);
        for g in [GAMMA_1, GAMMA_2, GAMMA_3] {
            direct += dec(g).recip();
        }
        let diff = Float::with_val(DEFAULT_PREC, &s.value - &direct).abs();
        assert!(diff < 1e-55);
        assert_close(&s.value, "0.15829946", -7, "harmonic sum of first three");
        assert!(matches!(s.kind, SumKind::LogPower(0)));

        let p = power_sum(&table, &dec("2"), &t).unwrap();
        let mut direct2 = Float::new(DEFAULT_PREC);
        for g in [GAMMA_1, GAMMA_2, GAMMA_3] {
            direct2 += dec(g).square().recip();
        }
        assert!(Float::with_val(DEFAULT_PREC, &p.value - &direct2).abs() < 1e-55);
    }

    #[test]
    fn empty_sums_are_zero() {
        let table = three_zero_table();
        for n in [0u32, 3] {
            let s = power_log_sum(&table, n, &dec("10")).unwrap();
            assert_eq!(s.terms, 0);
            assert!(s.value.is_zero());
        }
        let p = power_sum(&table, &dec("2"), &dec("10")).unwrap();
        assert!(p.value.is_zero());
    }

    #[test]
    fn rejects_bad_exponent_and_cap() {
        let table = three_zero_table();
        assert!(matches!(
            power_sum(&table, &dec("1"), &dec("30")),
            Err(Error::ExponentNotAboveOne { .. })
        ));
        assert!(matches!(
            power_log_sum(&table, 201, &dec("30")),
            Err(Error::IndexBeyondCap { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_digits() {
        let table = fixture();
        let t = table.default_cutoff();
        let reference = power_log_sum(table, 1, &t).unwrap().value;
        for threads in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let v = pool.install(|| power_log_sum(table, 1, &t).unwrap().value);
            assert_eq!(v, reference, "drift at {threads} workers");
            assert_eq!(
                to_decimal(&v, 58),
                to_decimal(&reference, 58),
                "digit drift at {threads} workers"
            );
        }
    }

    #[test]
    fn interval_decomposition() {
        let table = fixture();
        let t1 = dec("500.1");
        let t2 = dec("900.7");
        let n = 2u32;
        let full = power_log_sum(table, n, &t2).unwrap();
        let head = power_log_sum(table, n, &t1).unwrap();
        let lo = table.count_below(&t1).unwrap();
        let hi = table.count_below(&t2).unwrap();
        let mut middle = Float::new(full.value.prec());
        for g in &table.gammas()[lo..hi] {
            let x = Float::with_val(full.value.prec(), g);
            middle += x.clone().ln().square() / x;
        }
        let got = Float::with_val(full.value.prec(), &full.value - &head.value);
        let diff = Float::with_val(full.value.prec(), &got - &middle).abs();
        let allow = full.accumulation_error_bound.clone() + &head.accumulation_error_bound;
        assert!(diff <= allow, "interval split drifted: {}", to_decimal(&diff, 5));
    }

    #[test]
    fn log_sums_grow_with_cutoff() {
        let table = fixture();
        for n in [0u32, 1, 2] {
            let mut prev: Option<Float> = None;
            for idx in [99usize, 299, 600, 999] {
                let mid = Float::with_val(
                    DEFAULT_PREC,
                    (table.gammas()[idx].to_f64() + table.gammas()[idx - 1].to_f64()) / 2.0,
                );
                let s = power_log_sum(table, n, &mid).unwrap().value;
                if let Some(p) = prev {
                    assert!(s > p, "sum not increasing, n={n}");
                }
                prev = Some(s);
            }
        }
    }

    #[test]
    fn matches_naive_sequential_reference() {
        let table = fixture();
        let t = table.default_cutoff();
        let s = power_sum(table, &dec("2"), &t).unwrap();
        let work = s.value.prec();
        let mut naive = Float::new(work);
        for g in table.gammas() {
            naive += Float::with_val(work, g).square().recip();
        }
        assert_eq!(s.value, naive, "chunked vs naive sequential");
    }
}

mod estimator_tests {
    use super::*;
    use secondary_zeta::asymptotics::{e2_bound, q_emp, BptConstants};
    use secondary_zeta::estimator::{estimate_bpt, estimate_plain, matched_digits, Method};
    use secondary_zeta::laurent::CoefficientTable;

    #[test]
    fn methods_differ_by_remainder_correction() {
        // bpt - plain = (-1)^(n+1) (log^n T / T) Q(T), an algebraic identity
        let table = fixture();
        let t = Float::with_val(DEFAULT_PREC, table.default_cutoff());
        let q = q_emp(table, &t).unwrap();
        for n in [0u32, 1, 2, 3] {
            let plain = estimate_plain(table, n, &t).unwrap();
            let bpt = estimate_bpt(table, n, &t).unwrap();
            assert_eq!(plain.method, Method::Plain);
            assert_eq!(bpt.method, Method::Bpt);
            assert_eq!(plain.zeros_used, 1000);
            let prec = plain.value.prec();
            let mut correction = Float::with_val(prec, &q) / &t;
            for _ in 0..n {
                correction *= Float::with_val(prec, &t).ln();
            }
            if n % 2 == 0 {
                correction = -correction;
            }
            let lhs = Float::with_val(prec, &bpt.value - &plain.value);
            let diff = Float::with_val(prec, &lhs - &correction).abs();
            assert!(diff < 1e-48, "identity drift at n={n}: {}", to_decimal(&diff, 5));
        }
    }

    #[test]
    fn estimates_track_reference_coefficients() {
        // at the fixture cutoff the corrected estimate should sit within a
        // small multiple of its own error bound from the reference value
        let table = fixture();
        let t = Float::with_val(DEFAULT_PREC, table.default_cutoff());
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let c = BptConstants::new(DEFAULT_PREC);
        for n in [0u32, 1, 2] {
            let est = estimate_bpt(table, n, &t).unwrap();
            let want = refs.get(n).unwrap();
            let err = Float::with_val(DEFAULT_PREC, &est.value - want).abs();
            let bound = e2_bound(n, &t, &c);
            let ratio = err.clone() / &bound;
            assert!(
                err <= bound.clone() * 10u32,
                "n={n}: |bpt - C_n| = {} vs bound {} (ratio {})",
                to_decimal(&err, 5),
                to_decimal(&bound, 5),
                to_decimal(&ratio, 5)
            );
            let est_bound = &est.error_bound;
            let bdiff = Float::with_val(DEFAULT_PREC, est_bound - &bound).abs();
            assert!(bdiff < 1e-40, "estimate carries the envelope it was built from");
        }
    }

    #[test]
    fn plain_estimate_vanishes_at_unit_cutoff() {
        let table = three_zero_table();
        for n in [0u32, 2, 7] {
            let est = estimate_plain(&table, n, &dec("1")).unwrap();
            assert!(est.value.is_zero(), "empty sum minus zero main term");
            assert!(est.error_bound.is_zero(), "log(1) kills the envelope");
            assert_eq!(est.zeros_used, 0);
        }
    }

    #[test]
    fn digit_matching_examples() {
        let c0 = dec("0.2516367513127059665334663293426453755147595873836");
        let plain_like = dec("0.25163729326778528275");
        let m = matched_digits(&plain_like, &c0);
        assert_eq!(m.digits, 5);
        assert!(!m.sign_differs);

        let bpt_like = dec("0.25163675131253386814");
        let m = matched_digits(&bpt_like, &c0);
        assert_eq!(m.digits, 12);

        let same = matched_digits(&c0, &c0);
        assert_eq!(same.digits, secondary_zeta::prec::decimal_digits(DEFAULT_PREC));

        // magnitudes agree to 11 digits but the signs disagree
        let c1 = dec("-0.1300444859118885707285274533988846777460553964263");
        let flipped = dec("0.13004448590966041896");
        let m = matched_digits(&flipped, &c1);
        assert!(m.sign_differs);
        assert_eq!(m.digits, 11);

        // clear-cut rounding boundaries
        let m = matched_digits(&dec("0.12349"), &dec("0.1230"));
        assert_eq!(m.digits, 3);
        let m = matched_digits(&dec("0.12351"), &dec("0.1230"));
        assert_eq!(m.digits, 2);
    }
}

mod integral_oracle_tests {
    use super::*;
    use secondary_zeta::asymptotics::{boundary_constant, l_main, q_emp};
    use secondary_zeta::estimator::{estimate_bpt, estimate_plain};
    use secondary_zeta::integral_oracle::{
        c_from_integral, integral_q_kernel, kernel_primitive, residual_gate,
        stieltjes_identity_residual, KernelAntiderivative,
    };
    use secondary_zeta::quadrature::tanh_sinh;

    #[test]
    fn antiderivative_matches_quadrature() {
        // closed form of integral log^k(t)/t^2 dt against adaptive quadrature
        let tol = dec("1e-24");
        for k in [0u32, 1, 2, 5, 10] {
            let anti = KernelAntiderivative::new(k, DEFAULT_PREC + 32).unwrap();
            for hi_str in ["10", "1000000"] {
                let hi = dec(hi_str);
                let q = tanh_sinh(
                    |x| {
                        let ln_x = x.clone().ln();
                        let mut v = x.clone().square().recip();
                        for _ in 0..k {
                            v *= &ln_x;
                        }
                        v
                    },
                    &dec("1"),
                    &hi,
                    DEFAULT_PREC,
                    &tol,
                )
                .expect("quadrature converges");
                let closed = anti.eval(&Float::with_val(DEFAULT_PREC + 32, &hi))
                    - anti.eval(&Float::with_val(DEFAULT_PREC + 32, 1u32));
                let rel = Float::with_val(DEFAULT_PREC, &closed - &q).abs() / q.clone().abs();
                assert!(
                    rel < 1e-20,
                    "k={k}, X={hi_str}: rel drift {}",
                    to_decimal(&rel, 5)
                );
            }
        }
    }

    #[test]
    fn combined_kernel_primitive_at_unit_height() {
        let one = dec("1");
        let f0 = kernel_primitive(0, &one, DEFAULT_PREC).unwrap();
        let diff = Float::with_val(DEFAULT_PREC, &f0 + 1u32).abs();
        assert!(diff < 1e-55, "F_0(1) = -1");
        for m in [1u32, 2, 5] {
            let fm = kernel_primitive(m, &one, DEFAULT_PREC).unwrap();
            assert!(fm.clone().abs() < 1e-55, "F_m(1) = 0 for m={m}");
        }
    }

    #[test]
    fn remainder_integral_matches_quadrature_below_first_zero() {
        // below the first ordinate Q(t) = -L(t), so the kernel integral has a
        // direct quadrature oracle
        let table = three_zero_table();
        let t10 = dec("10");
        let tol = dec("1e-30");
        for m in [0u32, 1] {
            let got = integral_q_kernel(&table, m, &t10).unwrap();
            let want = tanh_sinh(
                |x| {
                    let prec = x.prec();
                    let ln_x = x.clone().ln();
                    let mut num = Float::with_val(prec, 1u32);
                    for _ in 0..m {
                        num *= &ln_x;
                    }
                    if m > 0 {
                        let mut lower = Float::with_val(prec, m);
                        for _ in 0..m - 1 {
                            lower *= &ln_x;
                        }
                        num -= lower;
                    }
                    let kernel = num / x.clone().square();
                    -kernel * l_main(&x)
                },
                &dec("1"),
                &t10,
                DEFAULT_PREC,
                &tol,
            )
            .expect("quadrature converges");
            let diff = Float::with_val(DEFAULT_PREC, &got - &want).abs();
            let rel = diff / want.clone().abs();
            assert!(rel < 1e-25, "m={m}: rel {}", to_decimal(&rel, 5));
        }
    }

    #[test]
    fn remainder_integral_vanishes_at_unit_cutoff() {
        let table = three_zero_table();
        for m in [0u32, 1, 4] {
            let v = integral_q_kernel(&table, m, &dec("1")).unwrap();
            assert!(v.clone().abs() < 1e-55, "integral over empty range, m={m}");
        }
    }

    #[test]
    fn identity_residual_collapses_below_first_zero() {
        let table = three_zero_table();
        let r = stieltjes_identity_residual(&table, 0, &dec("5")).unwrap();
        assert!(r.clone().abs() < 1e-40, "residual {}", to_decimal(&r, 5));
    }

    #[test]
    fn identity_residual_collapses_on_fixture() {
        let table = fixture();
        let t = Float::with_val(DEFAULT_PREC, table.default_cutoff());
        for m in [0u32, 1, 2, 3, 5, 10] {
            let r = stieltjes_identity_residual(table, m, &t).unwrap();
            let gate = residual_gate(table, m, &t).unwrap();
            assert!(
                r.clone().abs() < 1e-40 && r.clone().abs() < gate,
                "m={m}: residual {} gate {}",
                to_decimal(&r, 5),
                to_decimal(&gate, 5)
            );
        }
    }

    #[test]
    fn identity_residual_at_random_cutoffs() {
        let table = fixture();
        let lo = 20.0f64;
        let hi = table.last().to_f64() - 1.0;
        let mut x = 0.37f64;
        for i in 0..20 {
            x = (x * 9301.0 + 49297.0) % 233280.0 / 233280.0;
            let t = dec(&format!("{:.6}", lo + (hi - lo) * x));
            let m = (i % 4) as u32;
            let r = stieltjes_identity_residual(table, m, &t).unwrap();
            assert!(
                r.clone().abs() < 1e-40,
                "cutoff {} m={m}: residual {}",
                t.to_f64(),
                to_decimal(&r, 5)
            );
        }
    }

    #[test]
    fn integral_route_boundary_value() {
        let table = three_zero_table();
        let c = c_from_integral(&table, 0, &dec("1")).unwrap();
        // at T=1 every T-dependent piece vanishes, leaving the boundary term
        let want = boundary_constant(0, DEFAULT_PREC);
        let diff = Float::with_val(DEFAULT_PREC, &c.value - &want).abs();
        assert!(diff < 1e-55);
    }

    #[test]
    fn integral_route_agrees_with_estimators() {
        let table = fixture();
        let t = Float::with_val(DEFAULT_PREC, table.default_cutoff());
        let q = q_emp(table, &t).unwrap();
        for m in [0u32, 1, 2, 3] {
            let via_integral = c_from_integral(table, m, &t).unwrap();
            let bpt = estimate_bpt(table, m, &t).unwrap();
            let plain = estimate_plain(table, m, &t).unwrap();

            // same value as the corrected estimator, to rounding noise
            let d_bpt = Float::with_val(DEFAULT_PREC, &via_integral.value - &bpt.value).abs();
            assert!(d_bpt < 1e-44, "m={m}: integral vs corrected {}", to_decimal(&d_bpt, 5));

            // differs from the plain estimator by the remainder correction
            let prec = plain.value.prec();
            let mut corr = Float::with_val(prec, &q) / &t;
            for _ in 0..m {
                corr *= Float::with_val(prec, &t).ln();
            }
            if m % 2 == 0 {
                corr = -corr;
            }
            let lhs = Float::with_val(prec, &via_integral.value - &plain.value);
            let d_plain = Float::with_val(prec, &lhs - &corr).abs();
            assert!(d_plain < 1e-44, "m={m}: plain relation {}", to_decimal(&d_plain, 5));
        }
    }
}

mod laurent_tests {
    use super::*;
    use rug::Complex;
    use secondary_zeta::laurent::{
        direct_z_tail, laurent_eval, laurent_term, CoefficientTable, C0_EXTENDED,
    };
    use secondary_zeta::Error;

    fn cplx(re: &str, im: &str) -> Complex {
        Complex::with_val(DEFAULT_PREC, (dec(re), dec(im)))
    }

    #[test]
    fn reference_table_shape() {
        let t = CoefficientTable::reference(DEFAULT_PREC);
        assert_eq!(t.contiguous_max(), Some(10));
        for n in [0u32, 5, 10, 20, 30, 40, 50] {
            assert!(t.get(n).is_some(), "entry {n} present");
        }
        assert!(t.get(11).is_none());
        assert!(t.get(15).is_none());
        assert!(!t.provenance().is_empty());
        // leading entry sign pattern as printed: + - + - - + - + - + -
        let signs: Vec<bool> = (0..=10)
            .map(|n| t.get(n).unwrap().is_sign_positive())
            .collect();
        assert_eq!(
            signs,
            [true, false, true, false, false, true, false, true, false, true, false]
        );
    }

    #[test]
    fn extended_constant_consistent_with_table() {
        let t = CoefficientTable::reference(DEFAULT_PREC);
        let ext = dec(C0_EXTENDED);
        let diff = Float::with_val(DEFAULT_PREC, t.get(0).unwrap() - &ext).abs();
        assert!(diff < 1e-49, "50-digit entry truncates the long constant");
    }

    #[test]
    fn coefficient_file_round_trip() {
        let t = CoefficientTable::reference(DEFAULT_PREC);
        let path = tmp("coeffs.tsv");
        t.save(&path).unwrap();
        let back = CoefficientTable::load(&path, DEFAULT_PREC).unwrap();
        assert_eq!(back.contiguous_max(), Some(10));
        for (n, v) in t.iter() {
            let b = back.get(*n).unwrap();
            assert_eq!(to_decimal(v, 50), to_decimal(b, 50), "entry {n}");
        }
    }

    #[test]
    fn coefficient_file_rejects_garbage() {
        let path = tmp("bad_coeffs.tsv");
        std::fs::write(&path, "0\t0.25\n0\t0.3\n").unwrap();
        assert!(matches!(
            CoefficientTable::load(&path, DEFAULT_PREC),
            Err(Error::ParseCoefficient { .. })
        ));
        let path2 = tmp("bad_coeffs2.tsv");
        std::fs::write(&path2, "zero\t0.25\n").unwrap();
        assert!(CoefficientTable::load(&path2, DEFAULT_PREC).is_err());
    }

    #[test]
    fn expansion_domain_is_enforced() {
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        assert!(matches!(
            laurent_eval(&cplx("1", "0"), &refs, 10),
            Err(Error::PoleAtOne)
        ));
        // |s-1| = 2 sits on the circle of convergence: rejected
        assert!(matches!(
            laurent_eval(&cplx("3", "0"), &refs, 10),
            Err(Error::OutsideDisk { .. })
        ));
        assert!(matches!(
            laurent_eval(&cplx("1", "2"), &refs, 10),
            Err(Error::OutsideDisk { .. })
        ));
        // just inside is fine
        assert!(laurent_eval(&cplx("2.9", "0"), &refs, 10).is_ok());
        // truncation order beyond the contiguous run is refused
        assert!(matches!(
            laurent_eval(&cplx("2", "0"), &refs, 11),
            Err(Error::NonContiguousCoefficients { requested: 11, available: 10 })
        ));
    }

    #[test]
    fn expansion_reference_point() {
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let p = laurent_eval(&cplx("2", "0"), &refs, 10).unwrap();
        assert_eq!(p.terms_used, 11);
        assert!(p.value.imag().is_zero());
        // frozen independent evaluation of principal part + 11 regular terms
        assert_close(
            &p.value.real().clone(),
            "0.02310403455109261703",
            -18,
            "expansion at s=2",
        );
        assert!(p.last_term_magnitude < 1e-5f64 && p.last_term_magnitude > 1e-8f64);
    }

    #[test]
    fn expansion_term_increment() {
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let s = cplx("1.7", "0.3");
        let p9 = laurent_eval(&s, &refs, 9).unwrap();
        let p10 = laurent_eval(&s, &refs, 10).unwrap();
        let term = laurent_term(&s, &refs, 10).unwrap();
        let inc = p10.value.clone() - &p9.value;
        let drift = (inc - term).norm().into_real_imag().0;
        assert!(drift < 1e-52f64, "increment identity");
    }

    #[test]
    fn expansion_conjugate_symmetry() {
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let p = laurent_eval(&cplx("1.3", "0.7"), &refs, 10).unwrap();
        let q = laurent_eval(&cplx("1.3", "-0.7"), &refs, 10).unwrap();
        assert_eq!(p.value.real(), q.value.real(), "real parts bitwise equal");
        let neg = Float::with_val(DEFAULT_PREC, q.value.imag()) * -1i32;
        assert_eq!(p.value.imag(), &neg, "imaginary parts bitwise opposite");
    }

    #[test]
    fn expansion_pole_dominates_near_one() {
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let s = cplx("1.00000001", "0");
        let p = laurent_eval(&s, &refs, 10).unwrap();
        // principal part alone
        let u = dec("0.00000001");
        let two_pi = secondary_zeta::prec::two_pi(DEFAULT_PREC);
        let ln_two_pi = two_pi.clone().ln();
        let principal = (u.clone().square() * &two_pi).recip() - ln_two_pi / (u * two_pi);
        let regular = Float::with_val(DEFAULT_PREC, p.value.real() - &principal).abs();
        let ratio = principal.clone().abs() / regular;
        assert!(ratio > 1e15f64, "pole dominance ratio {}", to_decimal(&ratio, 5));
    }

    #[test]
    fn tail_route_reduces_to_closed_form_below_first_zero() {
        let table = three_zero_table();
        let s = dec("2");
        let t10 = dec("10");
        let est = direct_z_tail(&s, &table, &t10).unwrap();
        assert_eq!(est.zeros_used, 0);
        let prec = DEFAULT_PREC;
        let two_pi = secondary_zeta::prec::two_pi(prec);
        // T^(1-s) [ log(T/2pi)/(s-1) + 1/(s-1)^2 ] / 2pi + L(T)/T^s
        let log_ratio = (t10.clone() / &two_pi).ln();
        let t_pow = t10.clone().recip();
        let tail = (t_pow.clone() * &log_ratio + t_pow) / two_pi;
        let want = tail + secondary_zeta::asymptotics::l_main(&t10) / t10.clone().square();
        let diff = Float::with_val(prec, &est.value - &want).abs();
        assert!(diff < 1e-54, "closed-form reduction {}", to_decimal(&diff, 5));
    }

    #[test]
    fn tail_route_reference_value() {
        // Z(2) through the truncated-sum-plus-tail route on the fixture
        let table = fixture();
        let t = table.default_cutoff();
        let est = direct_z_tail(&dec("2"), table, &t).unwrap();
        assert_eq!(est.zeros_used, 1000);
        assert_close(&est.value, "0.023104992285455091563", -7, "Z(2) by direct route");
        assert!(est.error_envelope < 1e-8f64 && est.error_envelope > 1e-10f64);
    }

    #[test]
    fn tail_route_stable_across_midpoints() {
        let table = fixture();
        let gs = table.gammas();
        let n = gs.len();
        let mids: Vec<Float> = [(n - 4, n - 3), (n - 3, n - 2), (n - 2, n - 1)]
            .iter()
            .map(|&(i, j)| {
                let m = Float::with_val(DEFAULT_PREC, &gs[i] + &gs[j]) / 2u32;
                m
            })
            .collect();
        let vals: Vec<Float> = mids
            .iter()
            .map(|t| direct_z_tail(&dec("2"), table, t).unwrap().value)
            .collect();
        for w in vals.windows(2) {
            let d = Float::with_val(DEFAULT_PREC, &w[0] - &w[1]).abs();
            assert!(d < 1e-8, "midpoint wobble {}", to_decimal(&d, 5));
        }
    }

    #[test]
    fn expansion_agrees_with_tail_route_inside_disk() {
        let table = fixture();
        let refs = CoefficientTable::reference(DEFAULT_PREC);
        let t = table.default_cutoff();
        // truncation envelope: the known entries decay like K 2^-n per order,
        // so the missing n > 10 block is below K (u/2)^11 / (1 - u/2)
        let k_margin = 0.02f64;
        for s_str in ["1.5", "2", "2.5", "2.9"] {
            let s = dec(s_str);
            let u = s.to_f64() - 1.0;
            let exp = laurent_eval(&cplx(s_str, "0"), &refs, 10).unwrap();
            let direct = direct_z_tail(&s, table, &t).unwrap();
            let gap = Float::with_val(DEFAULT_PREC, exp.value.real() - &direct.value).abs();
            let trunc_env = k_margin * (u / 2.0).powi(11) / (1.0 - u / 2.0);
            let allow = trunc_env + direct.error_envelope.to_f64() + 1e-7;
            assert!(
                gap.to_f64() < allow,
                "s={s_str}: gap {} vs envelope {allow}",
                to_decimal(&gap, 5)
            );
        }
    }
}
