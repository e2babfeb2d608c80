//! Command-line front end: generate or validate zero tables, run the
//! coefficient estimators and the exact-identity oracle, evaluate the Laurent
//! expansion, and emit convergence series.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or compute failure.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rug::ops::Pow;
use rug::{Complex, Float};

use report::{ConvergeRow, CsvRow, EstimateRow, Format, Inputs, LaurentRow, OracleRow, Report, TextRow, SCHEMA};
use secondary_zeta::asymptotics::{boundary_constant, l_main_f64, q_emp};
use secondary_zeta::estimator::{estimate_bpt, estimate_plain, matched_digits, Estimate};
use secondary_zeta::integral_oracle::{c_from_integral, residual_gate, stieltjes_identity_residual};
use secondary_zeta::laurent::{direct_z_tail, laurent_eval, CoefficientTable};
use secondary_zeta::prec::{decimal_digits, parse_decimal, to_decimal};
use secondary_zeta::sums::power_log_sum;
use secondary_zeta::zero_source::generate_zeros;
use secondary_zeta::ZeroTable;

#[derive(Parser)]
#[command(name = "secondary-zeta", version, about = "Laurent coefficients of the secondary zeta function from Riemann-zero ordinates")]
struct Cli {
    /// working precision in bits
    #[arg(long, global = true, default_value_t = 192, value_parser = clap::value_parser!(u32).range(32..=16384))]
    precision: u32,

    /// worker threads (results are bit-identical at any count)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=512))]
    threads: Option<u64>,

    /// cutoff overriding the table's default (last ordinate plus half a gap)
    #[arg(long = "T", global = true, value_name = "DECIMAL")]
    cutoff: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// generate or validate zero-ordinate tables
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// truncated-sum coefficient estimates against embedded references
    Estimate {
        /// zero-ordinate table
        #[arg(long, value_name = "PATH")]
        zeros: PathBuf,
        /// coefficient indices, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// reference coefficients (default: embedded table)
        #[arg(long, value_name = "PATH")]
        coeffs: Option<PathBuf>,
    },
    /// exact-identity residuals beside integral- and sum-path estimates
    Oracle {
        #[arg(long, value_name = "PATH")]
        zeros: PathBuf,
        /// log powers, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// evaluate the expansion about s = 1, optionally against the direct series
    Laurent {
        /// real part of s
        #[arg(long, value_name = "DECIMAL")]
        s: String,
        /// imaginary part of s
        #[arg(long, value_name = "DECIMAL")]
        si: Option<String>,
        /// highest regular-series index included
        #[arg(long, default_value_t = 10)]
        terms: u32,
        /// coefficient table (default: embedded)
        #[arg(long, value_name = "PATH")]
        coeffs: Option<PathBuf>,
        /// zero table for the direct-series cross check (real s > 1)
        #[arg(long, value_name = "PATH")]
        zeros: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// estimator errors at geometrically spaced prefix counts
    Converge {
        #[arg(long, value_name = "PATH")]
        zeros: PathBuf,
        /// coefficient index
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=1000))]
        checkpoints: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ZerosAction {
    /// scan the critical line and write a table
    Gen {
        #[arg(long)]
        count: usize,
        /// correct fractional digits per ordinate
        #[arg(long, default_value_t = 12)]
        digits: u32,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// check format, ordering, and the counting-function sanity bound
    Verify { path: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum MethodArg {
    Plain,
    Bpt,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CliResult<T> = Result<T, String>;

fn lib<T>(r: secondary_zeta::Result<T>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

/// Cutoff at working precision: explicit --T, else the table default lifted.
fn resolve_cutoff(spec: &Option<String>, table: &ZeroTable, prec: u32) -> CliResult<Float> {
    match spec {
        Some(s) => parse_decimal(s, prec).ok_or_else(|| format!("cannot parse cutoff {s:?}")),
        None => Ok(Float::with_val(prec, table.default_cutoff())),
    }
}

fn table_inputs(path: &Path, table: &ZeroTable, prec: u32) -> Inputs {
    Inputs {
        zeros: Some(path.display().to_string()),
        zero_count: Some(table.len()),
        source_digits: Some(table.source_digits()),
        precision_bits: prec,
    }
}

fn finish<R: serde::Serialize + CsvRow + TextRow>(
    command: &str,
    inputs: Inputs,
    cutoff: Option<String>,
    records: Vec<R>,
    started: Instant,
    format: Format,
) {
    let report = Report {
        schema: SCHEMA,
        command: command.into(),
        inputs,
        cutoff,
        records,
        timing_ms: started.elapsed().as_millis(),
        version: env!("CARGO_PKG_VERSION"),
    };
    print!("{}", report.render(format));
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let started = Instant::now();
    let prec = cli.precision;
    let digits = decimal_digits(prec);
    let dec = |x: &Float| to_decimal(x, digits);

    match cli.command {
        Command::Zeros { action } => match action {
            ZerosAction::Gen { count, digits, out } => {
                let table = lib(generate_zeros(count, digits))?;
                lib(table.save(&out))?;
                println!("wrote {} ordinates to {} ({} fractional digits)", table.len(), out.display(), digits);
                Ok(ExitCode::SUCCESS)
            }
            ZerosAction::Verify { path } => {
                let table = lib(ZeroTable::load(&path, 1))?;
                // N(t) jumps to i+1 just above the i-th ordinate; the remainder
                // against the smooth count must stay inside 3 + 0.5 log t.
                let mut worst = 0.0f64;
                let mut worst_t = 0.0f64;
                for (i, g) in table.gammas().iter().enumerate() {
                    let t = g.to_f64();
                    let q = (i + 1) as f64 - l_main_f64(t);
                    if q.abs() > worst {
                        worst = q.abs();
                        worst_t = t;
                    }
                    let bound = 3.0 + 0.5 * t.ln();
                    if q.abs() > bound {
                        eprintln!(
                            "{}: counting-function remainder {:.4} at ordinate {} exceeds sanity bound {:.4}",
                            path.display(),
                            q,
                            i + 1,
                            bound
                        );
                        return Ok(ExitCode::from(2));
                    }
                }
                println!(
                    "{}: {} ordinates, {} fractional digits, max |N - L| = {:.4} (bound {:.4} there)",
                    path.display(),
                    table.len(),
                    table.source_digits(),
                    worst,
                    3.0 + 0.5 * worst_t.ln()
                );
                Ok(ExitCode::SUCCESS)
            }
        },

        Command::Estimate { zeros, n, method, format, coeffs } => {
            let table = lib(ZeroTable::load(&zeros, 1))?;
            let t = resolve_cutoff(&cli.cutoff, &table, prec)?;
            let refs = match &coeffs {
                Some(p) => lib(CoefficientTable::load(p, prec))?,
                None => CoefficientTable::reference(prec),
            };
            let methods: &[MethodArg] = match method {
                MethodArg::Plain => &[MethodArg::Plain],
                MethodArg::Bpt => &[MethodArg::Bpt],
                MethodArg::Both => &[MethodArg::Plain, MethodArg::Bpt],
            };
            let mut rows = Vec::new();
            for &idx in &n {
                let sum = lib(power_log_sum(&table, idx, &t))?;
                let a = secondary_zeta::asymptotics::a_main(idx, &t);
                for &m in methods {
                    let (est, kind, corr): (Estimate, &'static str, Option<Float>) = match m {
                        MethodArg::Plain => (lib(estimate_plain(&table, idx, &t))?, "heuristic", None),
                        MethodArg::Bpt => {
                            let wp = t.prec().max(table.prec());
                            let tw = Float::with_val(wp, &t);
                            let q = lib(q_emp(&table, &t))?;
                            let corr = tw.clone().ln().pow(idx) / &tw * &q;
                            (lib(estimate_bpt(&table, idx, &t))?, "rigorous", Some(corr))
                        }
                        MethodArg::Both => unreachable!(),
                    };
                    let reference = refs.get(idx);
                    let matched = reference.map(|r| matched_digits(&est.value, r));
                    rows.push(EstimateRow {
                        n: idx,
                        method: if kind == "heuristic" { "plain" } else { "bpt" },
                        sum: dec(&sum.value),
                        a_main: dec(&a),
                        bpt_correction: corr.as_ref().map(&dec),
                        estimate: dec(&est.value),
                        error_bound: dec(&est.error_bound),
                        error_bound_kind: kind,
                        reference: reference.map(&dec),
                        matched_digits: matched.map(|m| m.digits),
                        sign_mismatch: matched.map(|m| m.sign_differs),
                    });
                }
            }
            let inputs = table_inputs(&zeros, &table, prec);
            finish("estimate", inputs, Some(dec(&t)), rows, started, format);
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle { zeros, m, format } => {
            let table = lib(ZeroTable::load(&zeros, 1))?;
            let t = resolve_cutoff(&cli.cutoff, &table, prec)?;
            let mut rows = Vec::new();
            let mut breached = false;
            for &idx in &m {
                let residual = lib(stieltjes_identity_residual(&table, idx, &t))?;
                let gate = lib(residual_gate(&table, idx, &t))?;
                if residual > gate {
                    breached = true;
                }
                rows.push(OracleRow {
                    m: idx,
                    residual: dec(&residual),
                    gate: dec(&gate),
                    integral_estimate: dec(&lib(c_from_integral(&table, idx, &t))?.value),
                    bpt_estimate: dec(&lib(estimate_bpt(&table, idx, &t))?.value),
                    plain_estimate: dec(&lib(estimate_plain(&table, idx, &t))?.value),
                    boundary_term: dec(&boundary_constant(idx, prec)),
                });
            }
            let inputs = table_inputs(&zeros, &table, prec);
            finish("oracle", inputs, Some(dec(&t)), rows, started, format);
            if breached {
                eprintln!("identity residual exceeds the working-precision gate");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Laurent { s, si, terms, coeffs, zeros, format } => {
            let re = parse_decimal(&s, prec).ok_or_else(|| format!("cannot parse --s {s:?}"))?;
            let im = match &si {
                Some(v) => parse_decimal(v, prec).ok_or_else(|| format!("cannot parse --si {v:?}"))?,
                None => Float::with_val(prec, 0),
            };
            let refs = match &coeffs {
                Some(p) => lib(CoefficientTable::load(p, prec))?,
                None => CoefficientTable::reference(prec),
            };
            let point = lib(laurent_eval(&Complex::with_val(prec, (&re, &im)), &refs, terms))?;

            let mut inputs = Inputs {
                zeros: None,
                zero_count: None,
                source_digits: None,
                precision_bits: prec,
            };
            let mut cutoff = None;
            let mut direct_value = None;
            let mut direct_envelope = None;
            let mut gap = None;
            if let Some(zpath) = &zeros {
                if im.is_zero() && re > 1u32 {
                    let table = lib(ZeroTable::load(zpath, 1))?;
                    let t = resolve_cutoff(&cli.cutoff, &table, prec)?;
                    let tail = lib(direct_z_tail(&re, &table, &t))?;
                    let g = Float::with_val(prec, point.value.real() - &tail.value).abs();
                    inputs = table_inputs(zpath, &table, prec);
                    cutoff = Some(dec(&t));
                    direct_value = Some(dec(&tail.value));
                    direct_envelope = Some(dec(&tail.error_envelope));
                    gap = Some(dec(&g));
                }
            }
            let row = LaurentRow {
                s_re: dec(&re),
                s_im: dec(&im),
                terms_used: point.terms_used,
                value_re: dec(point.value.real()),
                value_im: dec(point.value.imag()),
                last_term_magnitude: dec(&point.last_term_magnitude),
                direct_value,
                direct_envelope,
                gap,
            };
            finish("laurent", inputs, cutoff, vec![row], started, format);
            Ok(ExitCode::SUCCESS)
        }

        Command::Converge { zeros, n, checkpoints, format } => {
            let table = lib(ZeroTable::load(&zeros, 1))?;
            let refs = CoefficientTable::reference(prec);
            let reference = refs.get(n);
            let floor = (table.len() / 10).clamp(1, 100);
            let counts = checkpoint_counts(floor, table.len(), checkpoints as usize);
            let mut rows = Vec::new();
            for &count in &counts {
                let prefix = lib(table.prefix(count))?;
                // an explicit --T pins the final checkpoint only; earlier ones
                // stop at their own prefix coverage
                let t = if count == table.len() {
                    resolve_cutoff(&cli.cutoff, &prefix, prec)?
                } else {
                    Float::with_val(prec, prefix.default_cutoff())
                };
                let plain = lib(estimate_plain(&prefix, n, &t))?;
                let bpt = lib(estimate_bpt(&prefix, n, &t))?;
                let errs = reference.map(|r| {
                    let ep = Float::with_val(prec, &plain.value - r).abs();
                    let eb = Float::with_val(prec, &bpt.value - r).abs();
                    (ep, eb)
                });
                rows.push(ConvergeRow {
                    zeros: count,
                    t: dec(&t),
                    plain: dec(&plain.value),
                    bpt: dec(&bpt.value),
                    e2_bound: dec(&bpt.error_bound),
                    err_plain: errs.as_ref().map(|(p, _)| dec(p)),
                    err_bpt: errs.as_ref().map(|(_, b)| dec(b)),
                });
            }
            let inputs = table_inputs(&zeros, &table, prec);
            finish("converge", inputs, None, rows, started, format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Geometrically spaced prefix sizes from `lo` to `hi`, deduplicated after
/// rounding; a single checkpoint is the full table.
fn checkpoint_counts(lo: usize, hi: usize, k: usize) -> Vec<usize> {
    if k <= 1 || lo >= hi {
        return vec![hi];
    }
    let (a, b) = (lo as f64, hi as f64);
    let mut v: Vec<usize> = (0..k)
        .map(|i| {
            let f = i as f64 / (k - 1) as f64;
            (a * (b / a).powf(f)).round() as usize
        })
        .collect();
    *v.last_mut().unwrap() = hi;
    v.dedup();
    v
}
