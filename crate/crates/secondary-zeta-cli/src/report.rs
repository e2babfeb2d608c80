//! Report rendering. Every numeric field is pre-rendered to a decimal string
//! at the working precision, so JSON, CSV, and text output carry identical
//! digits and the report body is deterministic modulo `timing_ms`.

use serde::Serialize;

pub const SCHEMA: &str = "secondary-zeta/report/v1";

#[derive(Serialize)]
pub struct Report<R: Serialize> {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<String>,
    pub records: Vec<R>,
    pub timing_ms: u128,
    pub version: &'static str,
}

#[derive(Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_digits: Option<u32>,
    pub precision_bits: u32,
}

/// One estimator evaluation. Optional fields are absent when no embedded
/// reference exists for the index or the method takes no correction term.
#[derive(Serialize)]
pub struct EstimateRow {
    pub n: u32,
    pub method: &'static str,
    pub sum: String,
    pub a_main: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bpt_correction: Option<String>,
    pub estimate: String,
    pub error_bound: String,
    pub error_bound_kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_digits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_mismatch: Option<bool>,
}

/// One identity-oracle evaluation: the residual against its rounding gate,
/// and the integral-path coefficient beside both estimator-path values.
#[derive(Serialize)]
pub struct OracleRow {
    pub m: u32,
    pub residual: String,
    pub gate: String,
    pub integral_estimate: String,
    pub bpt_estimate: String,
    pub plain_estimate: String,
    pub boundary_term: String,
}

#[derive(Serialize)]
pub struct LaurentRow {
    pub s_re: String,
    pub s_im: String,
    pub terms_used: u32,
    pub value_re: String,
    pub value_im: String,
    pub last_term_magnitude: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_envelope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
}

#[derive(Serialize)]
pub struct ConvergeRow {
    pub zeros: usize,
    pub t: String,
    pub plain: String,
    pub bpt: String,
    pub e2_bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub err_plain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub err_bpt: Option<String>,
}

/// Column layout for the CSV body; one implementation per row kind.
pub trait CsvRow {
    fn header() -> &'static str;
    fn row(&self) -> String;
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("")
}

impl CsvRow for EstimateRow {
    fn header() -> &'static str {
        "n,method,sum,a_main,bpt_correction,estimate,error_bound,error_bound_kind,reference,matched_digits,sign_mismatch"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.method,
            self.sum,
            self.a_main,
            opt(&self.bpt_correction),
            self.estimate,
            self.error_bound,
            self.error_bound_kind,
            opt(&self.reference),
            self.matched_digits.map(|d| d.to_string()).unwrap_or_default(),
            self.sign_mismatch.map(|b| b.to_string()).unwrap_or_default(),
        )
    }
}

impl CsvRow for OracleRow {
    fn header() -> &'static str {
        "m,residual,gate,integral_estimate,bpt_estimate,plain_estimate,boundary_term"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.m,
            self.residual,
            self.gate,
            self.integral_estimate,
            self.bpt_estimate,
            self.plain_estimate,
            self.boundary_term,
        )
    }
}

impl CsvRow for LaurentRow {
    fn header() -> &'static str {
        "s_re,s_im,terms_used,value_re,value_im,last_term_magnitude,direct_value,direct_envelope,gap"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.s_re,
            self.s_im,
            self.terms_used,
            self.value_re,
            self.value_im,
            self.last_term_magnitude,
            opt(&self.direct_value),
            opt(&self.direct_envelope),
            opt(&self.gap),
        )
    }
}

impl CsvRow for ConvergeRow {
    fn header() -> &'static str {
        "zeros,t,plain,bpt,e2_bound,err_plain,err_bpt"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.zeros,
            self.t,
            self.plain,
            self.bpt,
            self.e2_bound,
            opt(&self.err_plain),
            opt(&self.err_bpt),
        )
    }
}

/// Per-row label/value pairs for the text format.
pub trait TextRow {
    fn lines(&self) -> Vec<(String, String)>;
}

impl TextRow for EstimateRow {
    fn lines(&self) -> Vec<(String, String)> {
        let mut v = vec![
            (format!("n={} [{}] sum", self.n, self.method), self.sum.clone()),
            ("  a_main".into(), self.a_main.clone()),
        ];
        if let Some(c) = &self.bpt_correction {
            v.push(("  correction".into(), c.clone()));
        }
        v.push(("  estimate".into(), self.estimate.clone()));
        v.push((
            format!("  error_bound ({})", self.error_bound_kind),
            self.error_bound.clone(),
        ));
        if let Some(r) = &self.reference {
            v.push(("  reference".into(), r.clone()));
        }
        if let Some(d) = self.matched_digits {
            let flag = if self.sign_mismatch == Some(true) {
                " (sign mismatch)"
            } else {
                ""
            };
            v.push(("  matched_digits".into(), format!("{d}{flag}")));
        }
        v
    }
}

impl TextRow for OracleRow {
    fn lines(&self) -> Vec<(String, String)> {
        vec![
            (format!("m={} residual", self.m), self.residual.clone()),
            ("  gate".into(), self.gate.clone()),
            ("  integral_estimate".into(), self.integral_estimate.clone()),
            ("  bpt_estimate".into(), self.bpt_estimate.clone()),
            ("  plain_estimate".into(), self.plain_estimate.clone()),
            ("  boundary_term".into(), self.boundary_term.clone()),
        ]
    }
}

impl TextRow for LaurentRow {
    fn lines(&self) -> Vec<(String, String)> {
        let mut v = vec![
            (
                format!("s = {} + {}i, {} terms", self.s_re, self.s_im, self.terms_used),
                String::new(),
            ),
            ("  value_re".into(), self.value_re.clone()),
            ("  value_im".into(), self.value_im.clone()),
            ("  last_term_magnitude".into(), self.last_term_magnitude.clone()),
        ];
        if let Some(d) = &self.direct_value {
            v.push(("  direct_value".into(), d.clone()));
        }
        if let Some(e) = &self.direct_envelope {
            v.push(("  direct_envelope".into(), e.clone()));
        }
        if let Some(g) = &self.gap {
            v.push(("  gap".into(), g.clone()));
        }
        v
    }
}

impl TextRow for ConvergeRow {
    fn lines(&self) -> Vec<(String, String)> {
        let mut v = vec![
            (format!("zeros={} T", self.zeros), self.t.clone()),
            ("  plain".into(), self.plain.clone()),
            ("  bpt".into(), self.bpt.clone()),
            ("  e2_bound".into(), self.e2_bound.clone()),
        ];
        if let Some(e) = &self.err_plain {
            v.push(("  err_plain".into(), e.clone()));
        }
        if let Some(e) = &self.err_bpt {
            v.push(("  err_bpt".into(), e.clone()));
        }
        v
    }
}

impl<R: Serialize + CsvRow + TextRow> Report<R> {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                s.push_str(R::header());
                s.push('\n');
                for r in &self.records {
                    s.push_str(&r.row());
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut s = format!("command: {}\n", self.command);
                if let Some(z) = &self.inputs.zeros {
                    s.push_str(&format!(
                        "zeros: {z} ({} entries, {} digits)\n",
                        self.inputs.zero_count.unwrap_or(0),
                        self.inputs.source_digits.unwrap_or(0)
                    ));
                }
                s.push_str(&format!("precision: {} bits\n", self.inputs.precision_bits));
                if let Some(t) = &self.cutoff {
                    s.push_str(&format!("cutoff T: {t}\n"));
                }
                for r in &self.records {
                    for (k, v) in r.lines() {
                        if v.is_empty() {
                            s.push_str(&format!("{k}\n"));
                        } else {
                            s.push_str(&format!("{k:<28} {v}\n"));
                        }
                    }
                }
                s.push_str(&format!("timing_ms: {}\n", self.timing_ms));
                s
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}
