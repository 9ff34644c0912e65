// SPDX-License-Identifier: Apache-2.0

//! Results CSV and JSON log.

use std::path::Path;

use serde_json::{json, Value};

use crate::experiment::Row;
use crate::{io_error, Result};

pub const CSV_HEADER: &str =
    "experiment,function_id,alpha,n,N,J_f,J_fstar,bestmass_f,bestmass_fstar,G_f,G_fstar,gap,certificate_ok,seed";

/// 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(r: &Row) -> String {
    [
        field(&r.experiment),
        field(&r.function_id),
        field(&r.alpha),
        r.n.to_string(),
        r.big_n.map(|n| n.to_string()).unwrap_or_default(),
        opt(r.j_f),
        opt(r.j_fstar),
        opt(r.bestmass_f),
        opt(r.bestmass_fstar),
        opt(r.g_f),
        opt(r.g_fstar),
        opt(r.gap),
        r.certificate_ok.to_string(),
        r.seed.to_string(),
    ]
    .join(",")
}

pub fn csv(rows: &[Row]) -> String {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&csv_line(r));
        text.push('\n');
    }
    text
}

pub fn write_csv(rows: &[Row], path: &Path) -> Result<()> {
    std::fs::write(path, csv(rows)).map_err(|e| io_error(path, e))
}

/// The log: timestamp, command line and one entry per experiment.
pub fn log(args: &[String], experiments: Vec<Value>) -> Value {
    json!({
        "timestamp": chrono::Utc::now().to_rfc3339(),
        "arguments": args,
        "experiments": experiments,
    })
}

pub fn write_json(value: &Value, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| io_error(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| io_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> Row {
        Row {
            experiment: "minorant".into(),
            function_id: "gaussian_1d".into(),
            alpha: "0".into(),
            n: 1,
            big_n: Some(3),
            j_f: Some(std::f64::consts::PI.sqrt()),
            j_fstar: None,
            bestmass_f: Some(1.5),
            bestmass_fstar: None,
            g_f: Some(0.1),
            g_fstar: None,
            gap: Some(1e-9),
            certificate_ok: true,
            seed: 7,
        }
    }

    #[test]
    fn seventeen_digits_and_empty_fields() {
        let line = csv_line(&row());
        assert_eq!(
            line,
            "minorant,gaussian_1d,0,1,3,1.7724538509055159e0,,1.5000000000000000e0,,1.0000000000000001e-1,,1.0000000000000001e-9,true,7"
        );
        assert_eq!(line.split(',').count(), CSV_HEADER.split(',').count());
        let v: f64 = format_float(std::f64::consts::PI.sqrt()).parse().unwrap();
        assert_eq!(v, std::f64::consts::PI.sqrt());
    }

    #[test]
    fn ids_with_commas_are_quoted() {
        let mut r = row();
        r.function_id = "a,b".into();
        assert!(csv_line(&r).contains("\"a,b\""));
    }
}
