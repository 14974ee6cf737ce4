//! CSV output of Monte Carlo results.
//!
//! Header: `policy,n,mean_subopt,std_subopt,mean_subopt_over_ln_n,mean_regret,std_regret,runs`,
//! optionally followed by `mean_m_1..mean_m_K` (mean sensing count per band).
//! Rows are sorted by policy label then `n`. Floats use the shortest decimal
//! form that parses back to the same `f64`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::MetricSeries;

pub const HEADER: [&str; 8] = [
    "policy",
    "n",
    "mean_subopt",
    "std_subopt",
    "mean_subopt_over_ln_n",
    "mean_regret",
    "std_regret",
    "runs",
];

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub policy: String,
    pub n: u64,
    pub mean_subopt: f64,
    pub std_subopt: f64,
    pub mean_subopt_over_ln_n: f64,
    pub mean_regret: f64,
    pub std_regret: f64,
    pub runs: usize,
    /// Empty unless band columns were requested.
    pub mean_counts: Vec<f64>,
}

/// Flattens `series` into sorted rows.
pub fn rows(series: &MetricSeries, band_counts: bool) -> Vec<CsvRow> {
    let mut out: Vec<CsvRow> = series
        .policies
        .iter()
        .flat_map(|p| {
            p.points.iter().map(move |s| CsvRow {
                policy: p.label.clone(),
                n: s.n,
                mean_subopt: s.mean_subopt,
                std_subopt: s.std_subopt,
                mean_subopt_over_ln_n: s.mean_subopt_over_ln_n,
                mean_regret: s.mean_regret,
                std_regret: s.std_regret,
                runs: series.runs,
                mean_counts: if band_counts {
                    s.mean_counts.clone()
                } else {
                    Vec::new()
                },
            })
        })
        .collect();
    out.sort_by(|a, b| a.policy.cmp(&b.policy).then(a.n.cmp(&b.n)));
    out
}

pub fn write_rows<W: Write>(rows: &[CsvRow], out: W) -> Result<()> {
    let bands = rows.first().map_or(0, |r| r.mean_counts.len());
    if rows.iter().any(|r| r.mean_counts.len() != bands) {
        return Err(Error::Config(
            "rows disagree on the number of band columns".into(),
        ));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header: Vec<String> = HEADER.iter().map(|s| s.to_string()).collect();
    header.extend((1..=bands).map(|k| format!("mean_m_{k}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.policy.clone(),
            r.n.to_string(),
            r.mean_subopt.to_string(),
            r.std_subopt.to_string(),
            r.mean_subopt_over_ln_n.to_string(),
            r.mean_regret.to_string(),
            r.std_regret.to_string(),
            r.runs.to_string(),
        ];
        rec.extend(r.mean_counts.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv<W: Write>(series: &MetricSeries, band_counts: bool, out: W) -> Result<()> {
    write_rows(&rows(series, band_counts), out)
}

pub fn to_csv_string(series: &MetricSeries, band_counts: bool) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(series, band_counts, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn save_csv(series: &MetricSeries, band_counts: bool, path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(series, band_counts, std::io::BufWriter::new(file))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let names: Vec<&str> = header.iter().collect();
    if names.len() < HEADER.len() || names[..HEADER.len()] != HEADER {
        return Err(Error::Config(format!("unexpected csv header {names:?}")));
    }
    let bands = names.len() - HEADER.len();
    for (k, name) in names[HEADER.len()..].iter().enumerate() {
        if *name != format!("mean_m_{}", k + 1) {
            return Err(Error::Config(format!("unexpected csv column `{name}`")));
        }
    }
    let float = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Config(format!("bad number `{s}` in csv")))
    };
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        out.push(CsvRow {
            policy: rec[0].to_string(),
            n: rec[1]
                .parse()
                .map_err(|_| Error::Config(format!("bad slot `{}` in csv", &rec[1])))?,
            mean_subopt: float(&rec[2])?,
            std_subopt: float(&rec[3])?,
            mean_subopt_over_ln_n: float(&rec[4])?,
            mean_regret: float(&rec[5])?,
            std_regret: float(&rec[6])?,
            runs: rec[7]
                .parse()
                .map_err(|_| Error::Config(format!("bad run count `{}` in csv", &rec[7])))?,
            mean_counts: (0..bands)
                .map(|k| float(&rec[HEADER.len() + k]))
                .collect::<Result<_>>()?,
        });
    }
    Ok(out)
}
