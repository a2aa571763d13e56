use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One measured statistic of one trial; one CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub experiment: String,
    pub trial: usize,
    pub variant: String,
    pub n: usize,
    pub p: Option<f64>,
    pub m: Option<u64>,
    pub seed: u64,
    pub statistic: String,
    pub value: f64,
    pub threshold: Option<f64>,
    pub pass: Option<bool>,
    pub extra: String,
    /// Wall time of the whole trial. Kept out of the CSV, which must not
    /// depend on the machine.
    pub wall_ms: f64,
}

pub const CSV_HEADER: [&str; 12] =
    ["experiment", "trial", "variant", "n", "p", "m", "seed", "statistic", "value", "threshold", "pass", "extra"];

/// Integral values print exactly, everything else with 6 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format");
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.experiment.clone(),
            r.trial.to_string(),
            r.variant.clone(),
            r.n.to_string(),
            opt(r.p, format_float),
            opt(r.m, |m| m.to_string()),
            r.seed.to_string(),
            r.statistic.clone(),
            format_float(r.value),
            opt(r.threshold, format_float),
            opt(r.pass, |b| b.to_string()),
            r.extra.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[TrialRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
