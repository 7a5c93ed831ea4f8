//! Analysis-ready serialization of runs and sweeps (CSV and JSON).
//!
//! Numbers are written with 17 significant digits so files round-trip
//! exactly to f64; CSV uses LF line endings and empty fields for nulls.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::measures::TimeSeriesRecord;
use crate::sweep::SweepResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown output format '{other}' (expected csv or json)"
            ))),
        }
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serde wrapper emitting 17-significant-digit decimal strings is not needed
/// for JSON: serde_json already prints the shortest representation that
/// round-trips exactly.
pub fn write_records_csv(records: &[TimeSeriesRecord], out: &mut dyn Write) -> std::io::Result<()> {
    let mut header = vec!["time".to_string()];
    if let Some(first) = records.first() {
        for pc in &first.pair_concurrences {
            header.push(format!("C_{}_{}", pc.i, pc.j));
        }
    }
    header.extend(["purity_1N".into(), "norm".into(), "energy".into()]);
    out.write_all(header.join(",").as_bytes())?;
    out.write_all(b"\n")?;
    for rec in records {
        let mut fields = vec![fmt_f64(rec.time)];
        fields.extend(rec.pair_concurrences.iter().map(|pc| fmt_f64(pc.value)));
        fields.push(fmt_f64(rec.purity_1n));
        fields.push(fmt_f64(rec.norm));
        fields.push(fmt_f64(rec.energy));
        out.write_all(fields.join(",").as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_records_json<C: Serialize>(
    config_echo: &C,
    records: &[TimeSeriesRecord],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let max_c1n = records
        .iter()
        .filter_map(|r| {
            r.pair_concurrences
                .iter()
                .find(|pc| pc.i == 1)
                .map(|pc| pc.value)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let doc = json!({
        "config": config_echo,
        "records": records,
        "summary": {
            "n_records": records.len(),
            "max_end_pair_concurrence": if max_c1n.is_finite() { Some(max_c1n) } else { None },
        },
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    out.write_all(b"\n")
}

pub fn write_sweep_csv(result: &SweepResult, out: &mut dyn Write) -> std::io::Result<()> {
    out.write_all(b"t1,t2,concurrence\n")?;
    for i1 in 0..result.grid.t1_range.count {
        for i2 in 0..result.grid.t2_range.count {
            let t1 = result.grid.t1_range.value(i1);
            let t2 = result.grid.t2_range.value(i2);
            let cell = match result.value(i1, i2) {
                Some(v) => fmt_f64(v),
                None => String::new(),
            };
            writeln!(out, "{},{},{}", fmt_f64(t1), fmt_f64(t2), cell)?;
        }
    }
    let (t1, t2, c) = result.argmax;
    writeln!(out, "# argmax,{},{},{}", fmt_f64(t1), fmt_f64(t2), fmt_f64(c))?;
    Ok(())
}

pub fn write_sweep_json(result: &SweepResult, out: &mut dyn Write) -> std::io::Result<()> {
    let doc = json!({
        "config": result.grid,
        "records": result.values,
        "summary": {
            "argmax": { "t1": result.argmax.0, "t2": result.argmax.1, "concurrence": result.argmax.2 },
        },
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::PairConcurrence;

    fn sample_records() -> Vec<TimeSeriesRecord> {
        vec![TimeSeriesRecord {
            time: 0.5,
            pair_concurrences: vec![PairConcurrence {
                i: 1,
                j: 3,
                value: 0.25,
            }],
            purity_1n: 1.0,
            norm: 1.0,
            energy: 0.0,
        }]
    }

    #[test]
    fn csv_header_and_layout() {
        let mut buf = Vec::new();
        write_records_csv(&sample_records(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "time,C_1_3,purity_1N,norm,energy");
        let row = lines.next().unwrap();
        assert!(row.starts_with("5.0000000000000000e-1,"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn csv_values_round_trip() {
        let mut buf = Vec::new();
        write_records_csv(&sample_records(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row: Vec<f64> = text
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|f| f.parse().unwrap())
            .collect();
        assert_eq!(row, vec![0.5, 0.25, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn json_contains_config_records_summary() {
        let mut buf = Vec::new();
        write_records_json(&serde_json::json!({"n_spins": 3}), &sample_records(), &mut buf)
            .unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["config"]["n_spins"], 3);
        assert_eq!(doc["records"][0]["time"], 0.5);
        assert_eq!(doc["summary"]["n_records"], 1);
    }

    #[test]
    fn format_parse() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
